"""Run orchestration: configuration, per-stage execution with resume,
and run/cost reporting."""

from .config import RunConfig, load_config, STAGES
from .orchestrator import RunSummary, run, report_run

__all__ = ["RunConfig", "load_config", "STAGES", "RunSummary", "run",
           "report_run"]
