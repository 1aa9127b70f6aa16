"""Prompt templates for the extraction pipelines.

All prompts are deterministic string assemblies; pathogen name, class
guidance, article text, and excerpt blocks are interpolated at marked
positions.
"""

from __future__ import annotations

from ..screening.criteria import default_criteria, Stage
from . import catalog

PARAMETER_SYSTEM = (
    "You are an expert epidemiologist extracting epidemiological parameters "
    "from scientific articles. You will be provided with the processed text "
    "of a scientific article. Your task is to extract information about "
    "epidemiological parameters according to the provided schema.")

MODEL_SCREEN_SYSTEM = (
    "You are an epidemiologist specializing in infectious disease modeling. "
    "Determine if this article contains dynamic transmission models for "
    "infectious disease.")

MODEL_EXTRACT_SYSTEM = (
    "You are an epidemiologist specializing in infectious disease modeling. "
    "Extract information about transmission models from scientific articles.")

OUTBREAK_SCREEN_SYSTEM = (
    "You are an epidemiologist conducting systematic review of infectious "
    "disease outbreaks. Determine if this article reports concluded, "
    "real-world outbreak events with defined case counts.")

OUTBREAK_EXTRACT_SYSTEM = (
    "You are an epidemiologist conducting systematic review of infectious "
    "disease outbreaks. Extract structured data about concluded outbreak "
    "events from scientific articles.")

TRUE_FALSE_DIRECTIVE = 'Respond with only "True" or "False".'


def study_objectives(pathogen_name: str) -> str:
    return default_criteria(pathogen_name, Stage.ABSTRACT).study_objectives


def short_objectives(pathogen_name: str) -> str:
    return ("This systematic review collates transmission models, outbreaks "
            f"and parameters for {pathogen_name}.")


def _fulltext_block(title: str, full_text: str) -> str:
    return f"## Full Text\n\nTitle: {title}\nFull Text: {full_text}"


_SUMMARY_TASK = (
    "For your first task, you will be provided with the full text of a "
    "scientific article and a specific type of parameter. We are only "
    "extracting parameters that are estimated from or fitted to actual "
    "data. For transmission models, if it is only a theoretical model and "
    "they have just chosen parameters from other studies/randomly, then "
    "please don't extract these.\n\n"
    "Your task is to scan the provided text and determine whether this "
    "article estimates any parameters of the provided type. If it does, you "
    "must use the provided tool to extract relevant summaries from the text "
    "about this parameter. If the article makes no mention of the "
    "parameter, simply do not call the tool.\n\n"
    "If there are multiple pieces of information about the same parameter, "
    "return them as separate list items. You will need to call the tool "
    "multiple times if there are multiple separate parameter estimates of "
    "the provided type.\n\n"
    "In future steps, we will be using the provided summaries to extract "
    "structured information about the parameter, including:\n"
    "(a) The estimated value\n(b) Uncertainty intervals\n"
    "(c) Sample study population\n\n"
    "Please make sure your summaries provide all of this information if it "
    "is provided. Please be thorough: err on the side of extracting more "
    "information rather than less.")


def parameter_screening_prompt(pathogen_name: str, parameter_class: str,
                               title: str, full_text: str) -> str:
    details = catalog.PARAMETER_SCREENING_DETAILS[parameter_class]
    return "\n\n".join([
        "## Study Objectives\n\n" + study_objectives(pathogen_name),
        "## Summary Extraction Task Definition\n\n" + _SUMMARY_TASK,
        f"## Parameter Class Screening Details\n\n{parameter_class}: "
        f"{details}",
        _fulltext_block(title, full_text),
    ])


_VALUE_TASK = (
    "For your next task, you will be provided with excerpts from a "
    "scientific article and a specific type of parameter. We are only "
    "extracting parameters that are estimated from or fitted to actual "
    "data. For transmission models, if it is only a theoretical model and "
    "they have just chosen parameters from other studies/randomly, then "
    "please don't extract these.\n\n"
    "Scan the provided text and for the requested parameter and return all "
    "estimated parameter values using the provided tool. You will need to "
    "call the tool multiple times if there are multiple separate estimates.")


def value_extraction_prompt(pathogen_name: str, parameter_class: str,
                            summary: str) -> str:
    screening = catalog.PARAMETER_SCREENING_DETAILS[parameter_class]
    details = catalog.VALUE_EXTRACTION_DETAILS[parameter_class]
    return "\n\n".join([
        "## Study Objectives\n\n" + study_objectives(pathogen_name),
        "## Value Extraction Task Definition\n\n" + _VALUE_TASK,
        f"## Parameter Class Screening Details\n\n{parameter_class}: "
        f"parameter value extraction\n\n{screening}\n\n"
        f"### Value Extraction Details for {parameter_class}\n\n{details}",
        "## Value Excerpts\n\nThe following are excerpts from the scientific "
        "article about parameter value:\n\n" + summary,
    ])


_POPULATION_TASK = (
    "For your next task, you will be provided with excerpts from a "
    "scientific article and an estimated parameter that has been extracted "
    "from that article. Your task is to scan the provided text and extract "
    "relevant sample population information for the given parameter. You "
    "will use the provided tool, which sets the schema you should follow "
    "when returning population information.")


def population_prompt(pathogen_name: str, parameter_json: str,
                      summary: str) -> str:
    return "\n\n".join([
        "## Study Objectives\n\n" + study_objectives(pathogen_name),
        "## Population Extraction Task Definition\n\n" + _POPULATION_TASK,
        "## Extracted Parameter\n\n" + parameter_json,
        "## Population Excerpts\n\nThe following are excerpts from the "
        "scientific article about parameter population context:\n\n"
        + summary,
    ])


def aggregation_prompt(pathogen_name: str, pathogen_key: str,
                       parameters_json: str) -> str:
    task = (
        "For your next task, you will be provided with a list of parameters "
        "already extracted from an epidemiological study. Your task is to "
        "provide aggregations of these parameter values when suitable.\n\n"
        "Some epidemiological papers have a huge level of parameter "
        "disaggregation (e.g. age, sex, location) and so we have established "
        "different rules to ease our meta-review process. For "
        "non-location-related disaggregations, please remember the rule of "
        "three. If there are three or more disaggregations for a parameter, "
        "e.g. Rt values for three or more age groups, extract these as a "
        "range and specify that disaggregated data is available and what "
        "the parameter is disaggregated by.\n\n"
        "Each pathogen has different rules on location, which we state "
        "here:\n"
        "- marburg; ebola; MERS: Location is included within the rule of "
        "three.\n"
        "- lassa; SARS; zika; nipah: Please do not aggregate values if the "
        "disaggregation is by location as much as possible and do not apply "
        "the rule of three for geographic regions down to admin level 2 "
        "(sub-regions) of a country. However, please respect the rule of "
        "three for estimates by neighborhood for example.\n\n"
        "If the provided parameters do not contain adequate population "
        "information to perform an aggregation, then do not return any "
        "aggregated values.\n\n"
        "If you decide that an aggregation is necessary, use the provided "
        "tool to submit aggregated values according to the tool's schema. "
        "Provide the lower_bound and upper_bound of the parameter values, "
        "and list the types of population disaggregation (like 'age', "
        "'sex', etc.) in the disaggregated_by field. Fill the "
        "aggregated_ids list with all of the ids from the parameters you "
        "aggregated.")
    return "\n\n".join([
        "## Study Objectives\n\n" + study_objectives(pathogen_name),
        "## Aggregation Task Definition\n\n" + task,
        f"(This article's pathogen: {pathogen_key})",
        "## Extracted Parameters\n\nExtracted parameters: " + parameters_json,
    ])


MODEL_SCREEN_TASK = (
    "## Screening Task Definition\n\n"
    "Include (respond \"True\"):\n"
    "- Compartmental models (SIR, SEIR, etc.)\n"
    "- Agent-based or individual-based models\n"
    "- Branching process models\n"
    "- Network transmission models\n\n"
    "Exclude (respond \"False\"):\n"
    "- Pure statistical/regression analyses\n"
    "- Time series forecasting without mechanistic transmission\n"
    "- Risk factor analyses without transmission dynamics\n"
    "- Seroprevalence studies without modeling\n\n"
    + TRUE_FALSE_DIRECTIVE)


def model_screening_prompt(title: str, full_text: str) -> str:
    return "\n\n".join([MODEL_SCREEN_TASK, _fulltext_block(title, full_text)])


MODEL_EXTRACT_TASK = (
    "## Extraction Task Definition\n\n"
    "Model extraction task\n\n"
    "Extract ALL dynamic transmission models described in the article that "
    "were actually used or implemented.\n\n"
    "Do not extract:\n"
    "- Models only mentioned as possible alternatives without "
    "implementation\n"
    "- Regression-only analyses\n"
    "- Purely statistical forecasting\n\n"
    "Tool Calling:\n"
    "- Call extract_model_data once per model identified in the article\n"
    "- After extracting all model/s, stop calling the tool (no completion "
    "call needed)\n\n"
    "Schema Requirements:\n"
    "- transmission_route, assumptions, interventions_type are arrays "
    "(multiple-select)\n"
    "- All other fields are single values (single-select)\n"
    "- Use null for optional single-select fields when not stated\n"
    "- Use [\"Unspecified\"] for required arrays when not stated")


def model_extraction_prompt(pathogen_name: str, title: str,
                            full_text: str) -> str:
    return "\n\n".join([
        "## Study Objectives\n\n" + short_objectives(pathogen_name),
        MODEL_EXTRACT_TASK,
        _fulltext_block(title, full_text),
    ])


OUTBREAK_SCREEN_TASK = (
    "## Screening Task Definition\n\n"
    "Include (respond \"True\"):\n"
    "- Discrete outbreak events with ALL of: specific location, defined "
    "time period, and case counts\n"
    "- Outbreak investigations describing a bounded epidemic event\n"
    "- Case series (2 or more cases) from a specific outbreak\n\n"
    "Exclude (respond \"False\"):\n"
    "- Ongoing outbreaks at time of publication\n"
    "- Modeled, simulated, or forecasted outbreaks\n"
    "- Routine surveillance or annual disease burden (e.g., \"X cases per "
    "year\")\n"
    "- Seroprevalence or risk factor studies without outbreak context\n"
    "- Single case reports\n\n"
    "Key Question: Can you identify a specific outbreak event (not general "
    "disease occurrence) with a start/end period and case count?\n\n"
    + TRUE_FALSE_DIRECTIVE)


def outbreak_screening_prompt(title: str, full_text: str) -> str:
    return "\n\n".join([OUTBREAK_SCREEN_TASK, _fulltext_block(title, full_text)])


def outbreak_extraction_task(pathogen_key: str) -> str:
    size_rule = catalog.OUTBREAK_SIZE_RULES.get(
        pathogen_key.lower(), "Extract all outbreaks as reported")
    return (
        "## Extraction Task Definition\n\n"
        "Outbreak extraction task\n\n"
        "Extract concluded outbreaks with defined case counts from the "
        "article. Call extract_outbreak_data once for each distinct "
        "outbreak (different location, time, or both).\n\n"
        "Important Notes:\n"
        "We are extracting everything as presented in the paper, even if "
        "you think it is an error by the author(s).\n"
        "Extract data EXACTLY as stated in the paper. Do NOT perform "
        "calculations, convert units, or infer missing values.\n"
        "DO NOT use commas in any field. If you need to separate items "
        "within a field, please use a semicolon.\n\n"
        "Schema Requirements: Only three fields are required:\n"
        "- outbreak_is_currently_ongoing: true or false\n"
        "- outbreak_country: Must be valid WHO country name\n"
        "- asymptomatic_transmission_described: true or false\n"
        "All other fields: Use null when not stated in the paper.\n\n"
        "Extraction Rules:\n"
        "- Only select values that appear in the allowed lists for "
        "categorical fields\n"
        "- Extract dates as separate components (day, month, year)\n"
        "- Do NOT calculate outbreak_duration_months; only extract if "
        "explicitly stated\n"
        "- If you receive a validation error message, correct the tool call "
        "and try again\n\n"
        "Location guidance: outbreak_country MUST match WHO standard names "
        "exactly (e.g., \"United States of America\" not \"USA\", "
        "\"Viet Nam\" not \"Vietnam\"); outbreak_location is extracted as "
        "written with semicolons not commas (e.g., \"Lagos; Abuja\").\n\n"
        "Duration: ONLY extract if paper explicitly states duration. Do NOT "
        "calculate from dates.\n\n"
        f"Pathogen-Specific Rules:\n- {size_rule}")


def outbreak_extraction_prompt(pathogen_name: str, pathogen_key: str,
                               title: str, full_text: str) -> str:
    return "\n\n".join([
        "## Study Objectives\n\n" + short_objectives(pathogen_name),
        outbreak_extraction_task(pathogen_key),
        _fulltext_block(title, full_text),
    ])


PROVENANCE_TASK = (
    "## Provenance Task Definition\n\n"
    "You are given a structured extraction previously produced from this "
    "article. For each extracted characteristic, identify the verbatim "
    "quote, equation reference, or table citation from the article that "
    "justifies the selected value. Use the provided tool once per "
    "characteristic; for multi-select fields cite each selected option "
    "independently via the option argument. Quotes must be copied exactly "
    "from the article text.")


def provenance_prompt(record_json: str, title: str, full_text: str) -> str:
    return "\n\n".join([
        PROVENANCE_TASK,
        "## Extracted Record\n\n" + record_json,
        _fulltext_block(title, full_text),
    ])
