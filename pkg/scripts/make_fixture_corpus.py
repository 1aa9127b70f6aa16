#!/usr/bin/env python3
"""Build the three-article mock corpus used for end-to-end runs.

Emits, under the destination directory: article metadata (JSONL),
single-page PDFs, scripted OCR markdown, the scripted LLM rule file,
a ground-truth directory for the evaluate stage, and a ready-to-run
pipeline config. Everything is deterministic so repeated runs hash
identically.

Usage:
    python scripts/make_fixture_corpus.py --dest /tmp/corpus
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

FIXED_TS = "2026-01-01T00:00:00+00:00"

ARTICLES = [
    {
        "article_id": "A001",
        "source": "PubMed",
        "title": "Lassa fever outbreak investigation in Edo State",
        "abstract": "We investigated a Lassa fever outbreak in Edo State, "
                    "Nigeria, estimating transmission and severity "
                    "parameters from 120 confirmed cases.",
        "pmid": "30000001",
        "doi": "10.1000/lassa.a001",
        "year": 2019,
        "journal": "J Trop Epi",
        "authors": "Okafor C; Bello A",
    },
    {
        "article_id": "A002",
        "source": "OpenAlex",
        "title": "A stochastic SEIR model of Lassa virus transmission",
        "abstract": "We fitted a stochastic compartmental SEIR model of "
                    "Lassa virus transmission to surveillance data and "
                    "report the basic reproduction number.",
        "doi": "10.1000/lassa.a002",
        "year": 2021,
        "journal": "Epi Modelling",
        "authors": "Diallo M",
    },
    {
        "article_id": "A003",
        "source": "EuropePMC",
        "title": "In-vitro replication kinetics of arenaviruses",
        "abstract": "Cell-culture study of arenavirus replication kinetics "
                    "with no human or animal subjects.",
        "pmid": "30000003",
        "year": 2020,
        "journal": "Virology Letters",
        "authors": "Chen L",
    },
]

DOC_A001 = """# Lassa fever outbreak investigation in Edo State

## Outbreak description

A Lassa fever outbreak occurred in Edo State; Nigeria between March 2018
and July 2018. Surveillance identified 120 laboratory-confirmed cases and
17 deaths. Cases were detected by RT-PCR. The outbreak was declared over
in July 2018.

## Severity

Among 48 hospitalised patients, the case fatality ratio was 12/48 = 25%.

## Transmission

From the case series we estimated R0 = 1.3 (95% CI 1.1-1.5) using a
branching process method. The mean incubation period was 5 days.
"""

DOC_A002 = """# A stochastic SEIR model of Lassa virus transmission

We developed a stochastic compartmental SEIR model of Lassa virus
transmission including a rodent reservoir component, and fitted it to
weekly surveillance counts. The fitted model yielded R0 = 2.1 under
homogeneous mixing. Vaccination and quarantine interventions were
evaluated. Model code is available on Github in R.
"""

DOC_A003 = """# In-vitro replication kinetics of arenaviruses

We measured replication kinetics of arenaviruses in Vero cell culture.
No human or animal subjects were involved and no epidemiological
parameters were estimated.
"""

SEVERITY_SUMMARY = ("Among 48 hospitalised patients, the case fatality "
                    "ratio was 12/48 = 25%.")
R0_SUMMARY_A001 = "We estimated R0 = 1.3 (95% CI 1.1-1.5) using a branching process method."
DELAY_SUMMARY = "The mean incubation period was 5 days."
R0_SUMMARY_A002 = "The fitted model yielded R0 = 2.1 under homogeneous mixing."

OUTBREAK_DIMS = ["data_fidelity", "outbreak_focus", "figure_table_presence",
                 "traceability", "clarity", "completeness",
                 "interpretation_blocks", "formatting"]
MODEL_DIMS = ["data_fidelity", "model_focus", "figure_table_presence",
              "traceability", "clarity", "completeness",
              "interpretation_blocks", "formatting"]


def _critique_json(dims: list[str]) -> str:
    return json.dumps({
        "dimensions": {d: {"score": 4, "issues": [],
                           "suggestions": []} for d in dims},
        "priority_fixes": ["keep every figure and table present"],
    })


def _tool(name: str, arguments: dict) -> dict:
    return {"name": name, "arguments": arguments}


def llm_rules() -> list[dict]:
    screen_sys = "expert epidemiologist screening abstracts"
    rules: list[dict] = []

    # --- abstract screening ------------------------------------------------
    rules += [
        {"name": "abs-A001",
         "when": {"system_contains": screen_sys,
                  "user_contains": ["Abstract (To Screen)", "Edo State"]},
         "text": "Outbreak with parameters; relevant.\n"
                 "<decision>INCLUDE</decision>"},
        {"name": "abs-A002",
         "when": {"system_contains": screen_sys,
                  "user_contains": ["Abstract (To Screen)", "SEIR model"]},
         "text": "Transmission model; relevant.\n"
                 "<decision>INCLUDE</decision>"},
        {"name": "abs-A003",
         "when": {"system_contains": screen_sys,
                  "user_contains": ["Abstract (To Screen)", "In-vitro"]},
         "text": "In-vitro only; excluded by criteria.\n"
                 "<decision>EXCLUDE</decision>"},
    ]

    # --- full-text screening ----------------------------------------------
    rules += [
        {"name": "ft-A001",
         "when": {"system_contains": screen_sys,
                  "user_contains": ["Full-Text Article (To Screen)",
                                    "Edo State"]},
         "text": "Extractable outbreak and parameters present.\n"
                 "<decision>INCLUDE</decision>"},
        {"name": "ft-A002",
         "when": {"system_contains": screen_sys,
                  "user_contains": ["Full-Text Article (To Screen)",
                                    "SEIR model"]},
         "text": "Extractable model present.\n<decision>INCLUDE</decision>"},
        {"name": "ft-A003",
         "when": {"system_contains": screen_sys,
                  "user_contains": ["Full-Text Article (To Screen)",
                                    "arenaviruses in Vero cell"]},
         "text": "No extractable data.\n<decision>EXCLUDE</decision>"},
    ]

    # --- parameter class screening ------------------------------------------
    rules += [
        {"name": "pscreen-severity-A001",
         "when": {"user_contains": ["Summary Extraction Task Definition",
                                    "severity:", "Edo State"]},
         "tool_calls": [_tool("extract_parameter_summaries",
                              {"summaries": [SEVERITY_SUMMARY]})]},
        {"name": "pscreen-r0-A001",
         "when": {"user_contains": ["Summary Extraction Task Definition",
                                    "reproduction number:", "Edo State"]},
         "tool_calls": [_tool("extract_parameter_summaries",
                              {"summaries": [R0_SUMMARY_A001]})]},
        {"name": "pscreen-delay-A001",
         "when": {"user_contains": ["Summary Extraction Task Definition",
                                    "human delay:", "Edo State"]},
         "tool_calls": [_tool("extract_parameter_summaries",
                              {"summaries": [DELAY_SUMMARY]})]},
        {"name": "pscreen-r0-A002",
         "when": {"user_contains": ["Summary Extraction Task Definition",
                                    "reproduction number:", "SEIR model"]},
         "tool_calls": [_tool("extract_parameter_summaries",
                              {"summaries": [R0_SUMMARY_A002]})]},
        {"name": "pscreen-none",
         "when": {"user_contains": "Summary Extraction Task Definition"},
         "text": "The article does not estimate this parameter class."},
    ]

    # --- value extraction ---------------------------------------------------
    rules += [
        {"name": "value-severity-A001",
         "when": {"user_contains": ["Value Extraction Task Definition",
                                    "12/48"]},
         "tool_calls": [_tool("extract_parameter_values", {
             "value": 0.25, "numerator": 12, "denominator": 48,
             "parameter_type": "CFR", "method": "naive",
             "value_type": "mean",
             "statistical_approach": "observed_sample_statistic"})]},
        {"name": "value-r0-A001",
         "when": {"user_contains": ["Value Extraction Task Definition",
                                    "R0 = 1.3"]},
         "tool_calls": [_tool("extract_parameter_values", {
             "value": 1.3, "type": "basic R0", "transmission": "human",
             "method": "branching process", "value_type": "mean",
             "paired_uncertainty_type": "95% CI",
             "paired_uncertainty_lower": 1.1,
             "paired_uncertainty_upper": 1.5})]},
        {"name": "value-delay-A001",
         "when": {"user_contains": ["Value Extraction Task Definition",
                                    "incubation period was 5 days"]},
         "tool_calls": [_tool("extract_parameter_values", {
             "value": 5, "unit": "days", "delay_type": "incubation period",
             "value_type": "mean"})]},
        {"name": "value-r0-A002",
         "when": {"user_contains": ["Value Extraction Task Definition",
                                    "R0 = 2.1"]},
         "tool_calls": [_tool("extract_parameter_values", {
             "value": 2.1, "type": "basic R0", "transmission": "human",
             "method": "compartmental model",
             "statistical_approach": "estimated_model_parameter"})]},
    ]

    # --- population context ---------------------------------------------------
    rules += [
        {"name": "population-hospital",
         "when": {"user_contains": ["Population Extraction Task Definition",
                                    "12/48"]},
         "tool_calls": [_tool("extract_population_context", {
             "population_sample_type": "hospital based",
             "population_group": "persons with symptoms",
             "population_sample_size": 48,
             "population_countries": ["Nigeria"],
             "population_location": "Edo State"})]},
        {"name": "population-default",
         "when": {"user_contains": "Population Extraction Task Definition"},
         "tool_calls": [_tool("extract_population_context", {
             "population_countries": ["Nigeria"],
             "population_group": "general population"})]},
    ]

    # --- model screening and extraction ---------------------------------------
    rules += [
        {"name": "mscreen-A001",
         "when": {"system_contains": "dynamic transmission models",
                  "user_contains": "Edo State"},
         "text": "False"},
        {"name": "mscreen-A002",
         "when": {"system_contains": "dynamic transmission models",
                  "user_contains": "SEIR model"},
         "text": "True"},
        {"name": "mextract-A002",
         "when": {"user_contains": ["Model extraction task", "SEIR model"]},
         "tool_calls": [_tool("extract_model_data", {
             "model_type": "Compartmental", "compartmental_type": "SEIR",
             "stoch_deter": "Stochastic",
             "transmission_route": ["Vector/Animal to human",
                                    "Human to human (direct contact)"],
             "uncertainty_was_considered": True,
             "spillover_included": True,
             "assumptions": ["Homogeneous mixing"],
             "theoretical_model": False,
             "interventions_type": ["Vaccination", "Quarantine"],
             "code_available": True, "coding_language": "R",
             "is_data_used_available": "Yes - on Github",
             "readme_included": True})]},
    ]

    # --- outbreak screening and extraction ----------------------------------
    rules += [
        {"name": "oscreen-A001",
         "when": {"system_contains": "reports concluded, real-world outbreak",
                  "user_contains": "Edo State"},
         "text": "True"},
        {"name": "oscreen-A002",
         "when": {"system_contains": "reports concluded, real-world outbreak",
                  "user_contains": "SEIR model"},
         "text": "False"},
        {"name": "oextract-A001",
         "when": {"user_contains": ["Outbreak extraction task", "Edo State"]},
         "tool_calls": [_tool("extract_outbreak_data", {
             "outbreak_start_month": "Mar", "outbreak_start_year": 2018,
             "outbreak_end_month": "Jul", "outbreak_end_year": 2018,
             "outbreak_is_currently_ongoing": False,
             "outbreak_country": "Nigeria",
             "outbreak_location": "Edo State",
             "outbreak_location_type": "state",
             "mode_of_detection": "Molecular (PCR etc)",
             "cases_confirmed": 120, "deaths": 17,
             "asymptomatic_transmission_described": False})]},
    ]

    # --- provenance --------------------------------------------------------
    rules += [
        {"name": "prov-severity",
         "when": {"user_contains": ["Provenance Task Definition",
                                    '"parameter_type": "CFR"']},
         "tool_calls": [
             _tool("cite_evidence", {
                 "field": "value",
                 "quote": "the case fatality ratio was 12/48 = 25%"}),
             _tool("cite_evidence", {
                 "field": "parameter_type",
                 "quote": "case fatality ratio"})]},
        {"name": "prov-r0-A001",
         "when": {"user_contains": ["Provenance Task Definition",
                                    '"value": 1.3']},
         "tool_calls": [_tool("cite_evidence", {
             "field": "value", "quote": "R0 = 1.3 (95% CI 1.1-1.5)"})]},
        {"name": "prov-delay",
         "when": {"user_contains": ["Provenance Task Definition",
                                    '"delay_type": "incubation period"']},
         "tool_calls": [_tool("cite_evidence", {
             "field": "value",
             "quote": "mean incubation period was 5 days"})]},
        {"name": "prov-r0-A002",
         "when": {"user_contains": ["Provenance Task Definition",
                                    '"value": 2.1']},
         "tool_calls": [_tool("cite_evidence", {
             "field": "value", "quote": "yielded R0 = 2.1"})]},
        {"name": "prov-model",
         "when": {"user_contains": ["Provenance Task Definition",
                                    '"model_type": "Compartmental"']},
         "tool_calls": [
             _tool("cite_evidence", {
                 "field": "model_type",
                 "quote": "stochastic compartmental SEIR model"}),
             _tool("cite_evidence", {
                 "field": "interventions_type", "option": "Vaccination",
                 "quote": "Vaccination and quarantine interventions were "
                          "evaluated"}),
             _tool("cite_evidence", {
                 "field": "interventions_type", "option": "Quarantine",
                 "quote": "Vaccination and quarantine interventions were "
                          "evaluated"})]},
        {"name": "prov-outbreak",
         "when": {"user_contains": ["Provenance Task Definition",
                                    '"outbreak_country": "Nigeria"']},
         "tool_calls": [
             _tool("cite_evidence", {
                 "field": "outbreak_country",
                 "quote": "outbreak occurred in Edo State; Nigeria"}),
             _tool("cite_evidence", {
                 "field": "cases_confirmed",
                 "quote": "120 laboratory-confirmed cases"})]},
    ]

    # --- report generation ----------------------------------------------------
    rules += [
        {"name": "report-synthesis",
         "when": {"user_contains": "Produce Version 1 of the living"},
         "text": "# Living review\n\nEvidence-based synthesis of the "
                 "extraction snapshot. (Dataset Statistics)\n\n"
                 "> AI-Interpretation: patterns below reflect the current "
                 "snapshot only.\n"},
        {"name": "report-critique-outbreak",
         "when": {"user_contains": "outbreak surveillance review for "
                                   "faithfulness"},
         "text": _critique_json(OUTBREAK_DIMS)},
        {"name": "report-critique-model",
         "when": {"user_contains": "transmission-modelling review for "
                                   "faithfulness"},
         "text": _critique_json(MODEL_DIMS)},
        {"name": "report-revise",
         "when": {"user_contains": "Return the complete revised Markdown"},
         "text": "# Living review (revised)\n\nThe dataset snapshot is "
                 "summarised below with all required evidence. (Dataset "
                 "Statistics)\n\n> AI-Interpretation: stable under "
                 "refinement.\n"},
    ]
    return rules


def _write_pdf(path: Path, text: str) -> None:
    from reportlab.lib.pagesizes import letter
    from reportlab.pdfgen import canvas

    buf = io.BytesIO()
    c = canvas.Canvas(buf, pagesize=letter, invariant=1)
    y = 720
    for line in text.splitlines():
        c.drawString(72, y, line[:95])
        y -= 14
        if y < 72:
            break
    c.showPage()
    c.save()
    path.write_bytes(buf.getvalue())


def ground_truth(dest: Path) -> None:
    dest.mkdir(parents=True, exist_ok=True)
    (dest / "includes.txt").write_text("A001\nA002\n", encoding="utf-8")
    (dest / "outbreaks.csv").write_text(
        "article_id,outbreak_country,outbreak_start_year,outbreak_start_month,"
        "outbreak_end_year,cases_confirmed,deaths,mode_of_detection,"
        "outbreak_is_currently_ongoing,asymptomatic_transmission_described\n"
        "A001,Nigeria,2018,Mar,2018,120,17,Molecular (PCR etc),false,false\n",
        encoding="utf-8")
    (dest / "models.csv").write_text(
        "article_id,model_type,compartmental_type,stoch_deter,"
        "theoretical_model,assumptions,interventions_type,transmission_route\n"
        "A002,Compartmental,SEIR,Stochastic,false,Homogeneous mixing,"
        "Vaccination; Quarantine,Vector/Animal to human\n",
        encoding="utf-8")
    (dest / "parameters.csv").write_text(
        "article_id,parameter_class,parameter_type,value,unit,method,"
        "value_type,population_sex,population_group,population_sample_type\n"
        "A001,severity,CFR,0.25,,naive,mean,unspecified,"
        "persons with symptoms,hospital based\n"
        "A001,reproduction number,basic R0,1.3,,branching process,mean,"
        "unspecified,general population,unspecified\n"
        "A001,human delay,incubation period,5,days,,mean,unspecified,"
        "general population,unspecified\n"
        "A002,reproduction number,basic R0,2.1,,compartmental model,,"
        "unspecified,general population,unspecified\n",
        encoding="utf-8")


def build_corpus(dest: str | Path) -> Path:
    dest = Path(dest)
    (dest / "pdfs").mkdir(parents=True, exist_ok=True)
    (dest / "ocr").mkdir(exist_ok=True)
    (dest / "mock_llm").mkdir(exist_ok=True)

    with open(dest / "articles.jsonl", "w", encoding="utf-8") as f:
        for article in ARTICLES:
            row = {"pathogen": "lassa", "query": "fixture",
                   "harvested_at": FIXED_TS, "downloaded": False}
            row.update(article)
            f.write(json.dumps(row, ensure_ascii=False) + "\n")

    for article_id, doc in (("A001", DOC_A001), ("A002", DOC_A002),
                            ("A003", DOC_A003)):
        _write_pdf(dest / "pdfs" / f"{article_id}.pdf", doc)
        (dest / "ocr" / f"{article_id}.md").write_text(doc, encoding="utf-8")

    with open(dest / "mock_llm" / "rules.json", "w", encoding="utf-8") as f:
        json.dump(llm_rules(), f, indent=1, ensure_ascii=False)

    ground_truth(dest / "ground_truth")

    config = {
        "pathogen": "lassa",
        "pathogen_name": "Lassa fever",
        "output_root": str(dest / "run"),
        "stages": ["retrieve", "screen-abstract", "convert",
                   "screen-fulltext", "extract", "evaluate", "report"],
        "model_name": "scripted-mock",
        "mock_llm_dir": str(dest / "mock_llm"),
        "mock_ocr_dir": str(dest / "ocr"),
        "fixture_articles": str(dest / "articles.jsonl"),
        "fixture_pdf_dir": str(dest / "pdfs"),
        "ground_truth_dir": str(dest / "ground_truth"),
        "seed": 7,
        "workers": 2,
        "fixed_timestamp": FIXED_TS,
    }
    with open(dest / "config.json", "w", encoding="utf-8") as f:
        json.dump(config, f, indent=2)
    return dest


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dest", required=True)
    args = parser.parse_args()
    build_corpus(args.dest)
    print(f"fixture corpus written to {args.dest}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
