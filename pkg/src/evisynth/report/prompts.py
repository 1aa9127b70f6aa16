"""Prompts for the report synthesis and refinement loop.

The outbreak and model report prompts share one template with the
scope constraint and scope rubric dimension swapped.
"""

from __future__ import annotations

SYNTHESIS_SYSTEM = (
    "You are a senior epidemiologist editing a living {noun} review. You "
    "are revising a first draft prepared by a research assistant who "
    "summarized extracted {records}.")

CRITIQUE_SYSTEM = "You are a meticulous scientific editor. Return only valid JSON."

REVISE_SYSTEM = ("You are a senior epidemiologist performing an "
                 "evidence-grounded revision.")

_SCOPE = {
    "outbreak": {
        "noun": "outbreak surveillance",
        "records": "outbreak records",
        "scope_dimension": "outbreak_focus",
        "scope_text": ("Focus on documented outbreak events and outbreak "
                       "characteristics. Do not broaden into transmission "
                       "modelling, pathogen biology, or clinical management "
                       "beyond what is supported by the outbreak dataset."),
        "scope_rubric": ("stays centered on documented outbreak events and "
                         "outbreak surveillance rather than transmission "
                         "modelling or pathogen biology."),
    },
    "model": {
        "noun": "transmission-modelling",
        "records": "transmission model records",
        "scope_dimension": "model_focus",
        "scope_text": ("Focus on documented transmission models and their "
                       "characteristics. Do not broaden into outbreak "
                       "narratives, pathogen biology, or clinical management "
                       "beyond what is supported by the model dataset."),
        "scope_rubric": ("stays centered on documented transmission models "
                         "and their characteristics rather than outbreak "
                         "narratives or pathogen biology."),
    },
}


def rubric_dimensions(kind: str) -> list[str]:
    scope = _SCOPE[kind]["scope_dimension"]
    return ["data_fidelity", scope, "figure_table_presence", "traceability",
            "clarity", "completeness", "interpretation_blocks", "formatting"]


_TRUTHFULNESS = (
    "Truthfulness Constraints:\n"
    "- Do not invent characteristics, counts, locations, or external "
    "facts.\n"
    "- Outside of AI-Interpretation blocks, every numeric or categorical "
    "claim must be directly supported by the evidence packet and must cite "
    "its support as (Figure X), (Table Y), or (Dataset Statistics).\n"
    "- Interpretation is allowed ONLY inside blockquotes starting with: "
    "> AI-Interpretation:\n"
    "- Inside AI-Interpretation blocks you may propose plausible "
    "implications, but label them as hypotheses and do not introduce new "
    "numbers that are not in the evidence packet.")

_FIGURE_TABLE = (
    "Figures and Tables Constraints:\n"
    "- All figures must appear as markdown images using their existing "
    "paths (e.g., ![Alt](figures/fig1_...png)). Placement is free.\n"
    "- Tables must all be present. You may reformat tables, but values "
    "must remain identical.\n\n"
    "Formatting Agency:\n"
    "- You may include an OPTIONAL HTML comment immediately after any "
    "figure image line to suggest sizing for PDF rendering.\n"
    "- Format: <!-- fig-layout: width_in=5.5 max_height_in=7.5 -->\n"
    "- If absent, defaults will be used.")


def synthesis_prompt(kind: str, packet_text: str) -> tuple[str, str]:
    scope = _SCOPE[kind]
    user = "\n\n".join([
        "Method Basis:\nDo not cite external sources; just follow these "
        "behaviors:\n"
        "- Iterative critique then refine loop.\n"
        "- Rubric-based form-filling evaluation mindset.\n"
        "- Attribution-first revision: every descriptive claim must be "
        "attributable to the provided evidence packet.\n"
        "- Living review principles: explicitly describe what is present in "
        "the dataset snapshot and what is missing; avoid academic "
        "formatting.",
        "Hard Scope Constraint:\n" + scope["scope_text"],
        _TRUTHFULNESS,
        _FIGURE_TABLE,
        "Output Requirements:\n"
        f"- Produce a living {scope['noun']} review in Markdown.\n"
        "- Use descriptive, report-like sections rather than academic paper "
        "structure.\n"
        "- For each main section, include: (1) Evidence-based description, "
        "then (2) one AI-Interpretation blockquote.",
        "Task: Produce Version 1 of the living review. Use the evidence "
        "packet below. Maintain honesty and verifiability.",
        "## Evidence Packet\n\n" + packet_text,
    ])
    system = SYNTHESIS_SYSTEM.format(noun=scope["noun"],
                                     records=scope["records"])
    return system, user


def critique_prompt(kind: str, stats_text: str, figure_paths: list[str],
                    current_report: str) -> tuple[str, str]:
    scope = _SCOPE[kind]
    dims = rubric_dimensions(kind)
    dimension_lines = "\n".join(
        f'    "{d}": {{"score": 1-5, "issues": [...], "suggestions": [...]}}'
        + ("," if i < len(dims) - 1 else "")
        for i, d in enumerate(dims))
    rubric = "\n".join([
        f"1) data_fidelity: descriptive claims supported by evidence packet; "
        "no invented characteristics, counts, or geographic information.",
        f"2) {scope['scope_dimension']}: {scope['scope_rubric']}",
        "3) figure_table_presence: all required figures present; all tables "
        "present.",
        "4) traceability: outside AI-Interpretation blocks, claims cite "
        "support as (Figure X)/(Table Y)/(Dataset Statistics).",
        "5) clarity: readable, precise, minimal ambiguity, consistent "
        "terminology.",
        "6) completeness: covers major patterns described by available "
        "figures/tables.",
        "7) interpretation_blocks: each main section includes a blockquote "
        "starting with > AI-Interpretation: and interpretation stays inside "
        "it.",
        "8) formatting: figure layout directives used sensibly where "
        "needed; no broken markdown.",
    ])
    user = "\n\n".join([
        f"You are a scientific editor evaluating a living {scope['noun']} "
        "review for faithfulness to the provided evidence packet.\n"
        "Return STRICT JSON only.",
        "## Evidence Packet Summary\n\n" + stats_text,
        "## Required Figure Paths\n\nAll of the following must appear at "
        "least once:\n" + "\n".join(figure_paths),
        "## Report to Critique\n\n" + current_report,
        "## Evaluation Dimensions\n\nEvaluate dimensions (score 1-5). "
        "Provide issues and concrete suggestions.\n\n" + rubric,
        "## JSON Response Format\n\nReturn JSON of the form:\n"
        "{\n  \"dimensions\": {\n" + dimension_lines + "\n  },\n"
        "  \"priority_fixes\": [...]\n}",
    ])
    return CRITIQUE_SYSTEM, user


def revise_prompt(kind: str, dimension_scores: str, priority_fixes: str,
                  packet_text: str, current_report: str) -> tuple[str, str]:
    scope = _SCOPE[kind]
    user = "\n\n".join([
        "Revision Constraints:\n"
        "- Follow an attribution-first editing approach: outside "
        "AI-Interpretation blocks, every claim must be supported by the "
        "evidence packet.\n"
        f"- Keep the document {scope['noun']}-focused.\n"
        "- All figures must appear at least once as markdown images with "
        "their existing paths.\n"
        "- All tables must be present; you may reformat, but values must "
        "not change.\n"
        "- Interpretation is permitted only within blockquotes beginning "
        "with > AI-Interpretation:.\n"
        "- You may add optional figure sizing directives as HTML comments "
        "immediately after image lines: "
        "<!-- fig-layout: width_in=5.5 max_height_in=7.5 -->",
        "## Quality Scores\n\n" + dimension_scores,
        "## Priority Fixes\n\n" + priority_fixes,
        "## Evidence Packet\n\n" + packet_text,
        "## Current Report\n\n" + current_report,
        "Revision Requirements:\n"
        "- Fix all critique issues.\n"
        "- Ensure each main section has (1) evidence-based description with "
        "citations (Figure/Table/Dataset Statistics), then (2) "
        "> AI-Interpretation: block.\n"
        "- Remove or relabel any statement not supported by the evidence "
        "packet.\n"
        "- Keep document a living review (descriptive, update-ready), not "
        "an academic paper.\n\n"
        "Return the complete revised Markdown.",
    ])
    return REVISE_SYSTEM, user
