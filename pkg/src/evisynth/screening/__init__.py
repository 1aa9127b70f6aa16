"""Article screening: prompt assembly, decision parsing, stage running,
and composition of the three screening strategies."""

from .criteria import ScreeningCriteria, Stage, default_criteria, load_criteria, save_criteria
from .prompts import FullTextArticle, assemble_prompt
from .decisions import (
    ScreeningDecision,
    StrategyMode,
    Verdict,
    compose_strategy,
    decision_tags,
    parse_decision,
    read_decisions_csv,
    run_stage,
    write_decisions_csv,
)

__all__ = [
    "ScreeningCriteria",
    "Stage",
    "default_criteria",
    "load_criteria",
    "save_criteria",
    "FullTextArticle",
    "assemble_prompt",
    "ScreeningDecision",
    "StrategyMode",
    "Verdict",
    "compose_strategy",
    "decision_tags",
    "parse_decision",
    "read_decisions_csv",
    "run_stage",
    "write_decisions_csv",
]
