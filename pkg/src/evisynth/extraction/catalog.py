"""The extraction schema catalogue: per-class parameter value schemas,
the population context schema, the transmission model schema, and the
outbreak schema, together with the screening and value-extraction
guidance text interpolated into prompts.

Every enum lists its allowed values exhaustively; these same lists
drive both tool-call generation and payload validation.
"""

from __future__ import annotations

from importlib import resources

from .schema import FieldSchema, Kind

# -------------------------------------------------------------- WHO list


def who_country_names() -> tuple[str, ...]:
    text = resources.files("evisynth.data").joinpath("who_countries.txt").read_text(
        encoding="utf-8")
    return tuple(line.strip() for line in text.splitlines() if line.strip())


WHO_COUNTRIES = who_country_names()

# ------------------------------------------------------- parameter classes

PARAMETER_CLASSES = (
    "attack rate",
    "doubling time",
    "growth rate",
    "human delay",
    "mutation rate",
    "overdispersion",
    "relative contribution",
    "reproduction number",
    "risk factors",
    "seroprevalence",
    "severity",
)

# Classes with dedicated screening guidance; the default set evaluated
# by the flagging metric.
EVALUATED_PARAMETER_CLASSES = (
    "attack rate",
    "growth rate",
    "human delay",
    "mutation rate",
    "relative contribution",
    "reproduction number",
    "risk factors",
    "seroprevalence",
    "severity",
)

PARAMETER_SCREENING_DETAILS = {
    "attack rate": (
        "The attack rate is the proportion of an at-risk population contracting "
        "the disease during a specified time interval. It is often reported as a "
        "percentage or rate, e.g. 52 people per 10,000 people."),
    "growth rate": (
        "The epidemic growth rate is a key metric that reflects how quickly the "
        "number of infections is changing day by day in a population. It is a "
        "time-dependent measure, usually expressed as a percentage or a rate per "
        "unit of time (e.g. per day), and is crucial for monitoring the speed "
        "and trajectory of an outbreak."),
    "human delay": (
        "These parameters all refer to time intervals in the natural history of "
        "infection of the host."),
    "mutation rate": (
        "Mutation rates, like substitution rate or evolutionary rate, describe "
        "the speed at which genetic changes accumulate in a population."),
    "relative contribution": (
        "This parameter is intended for pathogens (e.g. MERS) where there is "
        "both human to human (h2h) and animal to human (a2h) transmission, and "
        "aims to capture the relative magnitude of these two routes of "
        "infections in humans. We expect these to be proportions or "
        "percentages. E.g. a study might estimate 60% of infections in humans "
        "to be from h2h infection."),
    "reproduction number": (
        "We are extracting either the basic reproduction number R0 or the "
        "effective reproduction number Re."),
    "risk factors": (
        "We are extracting general information about risk factors in the "
        "included papers. We are extracting both univariate (naive) and "
        "multivariate (adjusted) risk factors, even if they are both "
        "available."),
    "seroprevalence": (
        "These parameters refer to estimations of seroprevalence in the paper. "
        "This may also be referred to as antibody prevalence. These parameters "
        "will all be expressed in a proportion or percentage of the "
        "population."),
    "severity": (
        "Severity refers to either the case fatality ratio or the infection "
        "fatality ratio. The case fatality ratio is the proportion of cases "
        "who end up dying of the disease. Note this depends on the case "
        "definition used, as the denominator is people identified as 'cases'. "
        "The infection fatality ratio is the proportion of infections who end "
        "up dying of the disease."),
    # No dedicated screening blurbs exist for these two; their value
    # schema descriptions double as screening details.
    "doubling time": "The doubling time is the time required for the number "
                     "of infections to double.",
    "overdispersion": "Overdispersion measures variation in the distribution "
                      "of individual infectiousness, e.g. the negative "
                      "binomial k parameter.",
}

VALUE_EXTRACTION_DETAILS = {
    "attack rate": (
        "If the attack rate is reported as a percentage, extract the percentage "
        "in the value field and set unit to percentage. If the attack rate is "
        "reported as a rate, extract the numerator in the value field and set "
        "rate_denominator to the denominator of the rate.\n\nPlease extract "
        "attack rates as written in the paper."),
    "doubling time": "Extract the doubling time in days in the value field.",
    "growth rate": (
        "Please extract growth rates from the paper. Populate the value field "
        "with a numerical value as it is specified in the paper. If the paper "
        "provides a percentage value like 33%, record this value as 0.33. "
        "Populate the unit field with one of the provided units according to "
        "the tool schema."),
    "human delay": (
        "The delay_type field records the specific type of time interval. Use "
        "one of the listed values; if none apply, set delay_type = 'other' and "
        "record the type of delay in the delay_type_note field.\n\nUse the "
        "value and unit fields to record the parameter estimate (e.g. x hours, "
        "days, weeks, or other)."),
    "mutation rate": (
        "We extract parameters estimated from pathogen genetic sequences only. "
        "substitution_rate, evolutionary_rate, and mutation_rate are different "
        "type values; choose based on the wording used by the authors. The "
        "unit value is very important: the most common unit is substitutions "
        "per site per year; if units are unclear set unit to unspecified. Fill "
        "the genome_site field with the portion of the pathogen's genome used "
        "to estimate the parameter."),
    "overdispersion": "Extract the overdispersion parameter value and its unit.",
    "relative contribution": (
        "Extract the relative contribution value as a proportion and set type "
        "to human-to-human or zoonotic-to-human."),
    "reproduction number": (
        "Extract each reproduction number estimate; set type to basic R0 or "
        "effective Re, the transmission type, and the estimation method."),
    "risk factors": (
        "Extract each risk factor with its outcome, significance, and whether "
        "the estimate is adjusted. If name includes occupation, set the "
        "occupation field to the closest listed occupations."),
    "seroprevalence": (
        "Extract the seroprevalence value as a proportion between 0.0 and 1.0, "
        "the assay type, and the numerator and denominator used to calculate "
        "it when provided."),
    "severity": (
        "We extract case fatality ratios (CFR), infection fatality ratios "
        "(IFR), and symptomatic/asymptomatic proportions. We don't do any "
        "calculation ourselves: if a paper quotes deaths and cases but not a "
        "CFR, do not calculate the CFR. Extract the numerator and denominator "
        "that generate the ratio; if the numerator and denominator are "
        "presented but the percentage severity is not, leave the central "
        "value blank. The method field records whether the calculation is "
        "naive, adjusted, or unknown. Extract the value as a proportion "
        "between 0.0 and 1.0. Only one value_type can be extracted: prefer "
        "mean when SD/variance/CIs are available, else median when only "
        "IQR/CrIs are available, mode after mean or median, and shape for "
        "Weibull distribution parameters."),
}

# Shared uncertainty/statistics fields appended to every class schema.
_UNCERTAINTY_FIELDS = (
    FieldSchema("value_type", Kind.ENUM,
                allowed_values=("mean", "median", "mode", "shape", "other",
                                "unspecified"),
                description="The measure of central tendency reported."),
    FieldSchema("statistical_approach", Kind.ENUM,
                allowed_values=("observed_sample_statistic",
                                "estimated_model_parameter", "case_study",
                                "unspecified"),
                description="Whether the central estimate is summarised "
                            "directly from empirical data or estimated with a "
                            "transmission model."),
    FieldSchema("single_type_uncertainty", Kind.ENUM,
                allowed_values=("standard deviation", "standard error",
                                "variance", "coefficient of variation",
                                "other", "unspecified"),
                description="The single-valued uncertainty measure reported, "
                            "if any."),
    FieldSchema("single_uncertainty_value", Kind.FLOAT,
                description="The value of the single uncertainty measure."),
    FieldSchema("paired_uncertainty_type", Kind.ENUM,
                allowed_values=("95% CI", "90% CI", "95% CrI", "IQR", "range",
                                "other", "unspecified"),
                description="The paired uncertainty interval type reported, "
                            "if any."),
    FieldSchema("paired_uncertainty_lower", Kind.FLOAT,
                description="Lower bound of the paired uncertainty interval."),
    FieldSchema("paired_uncertainty_upper", Kind.FLOAT,
                description="Upper bound of the paired uncertainty interval."),
)

PARAMETER_VALUE_SCHEMAS: dict[str, tuple[FieldSchema, ...]] = {
    "attack rate": (
        FieldSchema("value", Kind.FLOAT, "The value of the attack rate."),
        FieldSchema("unit", Kind.ENUM, "The unit of the provided attack rate.",
                    allowed_values=("percentage", "rate")),
        FieldSchema("type", Kind.ENUM,
                    "Whether primary or secondary attack rate.",
                    allowed_values=("primary", "secondary")),
        FieldSchema("rate_denominator", Kind.INTEGER,
                    "The denominator of the value, if the parameter is "
                    "provided as a rate."),
    ),
    "doubling time": (
        FieldSchema("value", Kind.FLOAT, "The value of the doubling time, in days."),
    ),
    "growth rate": (
        FieldSchema("value", Kind.FLOAT, "The value of the growth rate."),
        FieldSchema("unit", Kind.ENUM, "The unit of the provided growth rate.",
                    allowed_values=("per hour", "per day", "per week",
                                    "per month", "per year", "other",
                                    "unspecified")),
    ),
    "human delay": (
        FieldSchema("value", Kind.FLOAT, "The value of the human delay parameter."),
        FieldSchema("unit", Kind.ENUM, "The unit of the delay value.",
                    allowed_values=("hours", "days", "weeks", "other",
                                    "unspecified")),
        FieldSchema("delay_type", Kind.ENUM,
                    "The specific delay parameter reported.",
                    allowed_values=("admission to death",
                                    "admission to discharge or recovery",
                                    "generation time", "incubation period",
                                    "infectious period", "serial interval",
                                    "symptom onset to admission",
                                    "symptom onset to death",
                                    "symptom onset to discharge or recovery",
                                    "time in care", "other")),
        FieldSchema("delay_type_note", Kind.STRING,
                    "The type of delay when delay_type is 'other'."),
    ),
    "mutation rate": (
        FieldSchema("value", Kind.FLOAT, "The value of the mutation rate parameter."),
        FieldSchema("type", Kind.ENUM,
                    "The specific mutation rate parameter reported.",
                    allowed_values=("evolutionary rate", "mutation rate",
                                    "substitution rate")),
        FieldSchema("unit", Kind.ENUM,
                    "The unit of the mutation rate parameter value.",
                    allowed_values=("substitutions per site per year",
                                    "mutations per genome per generation",
                                    "percentage", "other", "unspecified")),
        FieldSchema("genome_site", Kind.STRING,
                    "The specific genome site or region associated with the "
                    "mutation rate value."),
    ),
    "overdispersion": (
        FieldSchema("value", Kind.FLOAT, "The value of the overdispersion parameter."),
        FieldSchema("unit", Kind.ENUM, "The unit of the overdispersion parameter.",
                    allowed_values=("no units",
                                    "max number of cases superspreading")),
    ),
    "relative contribution": (
        FieldSchema("value", Kind.FLOAT,
                    "The value of the relative contribution parameter."),
        FieldSchema("type", Kind.ENUM,
                    "The type of relative contribution reported.",
                    allowed_values=("human-to-human", "zoonotic-to-human")),
    ),
    "reproduction number": (
        FieldSchema("value", Kind.FLOAT,
                    "The value of the reproduction number parameter."),
        FieldSchema("type", Kind.ENUM,
                    "The type of reproduction number reported.",
                    allowed_values=("basic R0", "effective Re")),
        FieldSchema("transmission", Kind.ENUM,
                    "The type of transmission for this reproduction number "
                    "estimate.",
                    allowed_values=("human", "mosquito", "unspecified", "other")),
        FieldSchema("method", Kind.ENUM,
                    "The method used to obtain the reproduction number "
                    "estimate.",
                    allowed_values=("branching process", "growth rate",
                                    "compartmental model",
                                    "next generation matrix", "empirical",
                                    "genomic", "other")),
    ),
    "risk factors": (
        FieldSchema("name", Kind.LIST_OF_ENUM, "The name of the risk factor.",
                    allowed_values=("age", "close contact", "breastfeeding",
                                    "comorbidity", "contact with animal",
                                    "environmental", "funeral",
                                    "hospitalisation", "household contact",
                                    "humidity", "non-household contact",
                                    "occupation",
                                    "prior immunity to arboviruses",
                                    "rainfall", "sex", "social gathering",
                                    "temperature", "other")),
        FieldSchema("outcome", Kind.LIST_OF_ENUM,
                    "The outcome for which the risk factor was evaluated.",
                    allowed_values=("death in general population",
                                    "Guillain Barre Syndrome", "infection",
                                    "low birthweight", "microcephaly",
                                    "miscarriage or stillbirth",
                                    "other neurological symptoms in general "
                                    "population",
                                    "premature birth", "serology",
                                    "severe disease in general population",
                                    "spillover risk", "recovery",
                                    "Zika congenital syndrome or other birth "
                                    "defects",
                                    "other")),
        FieldSchema("occupation", Kind.LIST_OF_ENUM,
                    "If name includes occupation, the closest listed "
                    "occupation(s).",
                    allowed_values=("abattoir services",
                                    "correctional facilities", "education",
                                    "funeral and burial services",
                                    "healthcare", "laboratory",
                                    "livestock and animal herders",
                                    "public transport",
                                    "quarantine facilities", "veterinary",
                                    "other", "unspecified")),
        FieldSchema("significant", Kind.ENUM,
                    "Whether the risk factor is significant or not.",
                    allowed_values=("significant", "not significant",
                                    "unspecified")),
        FieldSchema("adjusted", Kind.ENUM,
                    "Whether the estimates of the risk factors are adjusted "
                    "or unadjusted.",
                    allowed_values=("adjusted", "not adjusted", "unspecified")),
    ),
    "seroprevalence": (
        FieldSchema("value", Kind.FLOAT,
                    "The seroprevalence value as a proportion between 0.0 "
                    "and 1.0.",
                    minimum=0.0, maximum=1.0),
        FieldSchema("parameter_type", Kind.ENUM,
                    "The type of seroprevalence parameter.",
                    allowed_values=("IgG", "IgM", "PRNT", "HAI", "IFA",
                                    "unspecified")),
        FieldSchema("numerator", Kind.INTEGER,
                    "The numerator used to calculate the seroprevalence "
                    "value. If not provided, set to null."),
        FieldSchema("denominator", Kind.INTEGER,
                    "The denominator used to calculate the seroprevalence "
                    "value. If not provided, set to null."),
    ),
    "severity": (
        FieldSchema("value", Kind.FLOAT,
                    "The value of the severity parameter as a proportion "
                    "between 0.0 and 1.0.",
                    minimum=0.0, maximum=1.0),
        FieldSchema("numerator", Kind.INTEGER,
                    "The numerator of the CFR or IFR parameter, if provided."),
        FieldSchema("denominator", Kind.INTEGER,
                    "The denominator of the CFR or IFR parameter, if "
                    "provided."),
        FieldSchema("parameter_type", Kind.ENUM,
                    "The type of severity parameter reported.",
                    allowed_values=("CFR", "IFR",
                                    "proportion of symptomatic cases",
                                    "proportion of asymptomatic cases")),
        FieldSchema("method", Kind.ENUM,
                    "The method used to calculate the CFR or IFR.",
                    allowed_values=("naive", "adjusted", "unknown")),
    ),
}

for _name, _schema in PARAMETER_VALUE_SCHEMAS.items():
    PARAMETER_VALUE_SCHEMAS[_name] = _schema + _UNCERTAINTY_FIELDS


# The summary-screening tool shared by every parameter class.
SUMMARY_TOOL_SCHEMA = (
    FieldSchema("summaries", Kind.LIST_OF_STRING, required=True, nullable=False,
                description="Verbatim or lightly condensed excerpts from the "
                            "article about one parameter estimate, including "
                            "its value, uncertainty, and sample population "
                            "when provided."),
)

# ------------------------------------------------------- population schema

POPULATION_SCHEMA = (
    FieldSchema("population_sex", Kind.ENUM,
                "The sex composition of your study population. If you have 99 "
                "men and 1 woman you would still put both in this option.",
                allowed_values=("female", "male", "both", "unspecified")),
    FieldSchema("population_sample_type", Kind.ENUM,
                "How was the study conducted?",
                allowed_values=("community based", "hospital based",
                                "household based", "housing estate based",
                                "population based", "school based",
                                "travel based", "trade or business based",
                                "contact based", "mixed settings", "other",
                                "unspecified")),
    FieldSchema("population_group", Kind.ENUM,
                "Demographic i.e. who was sampled?",
                allowed_values=("healthcare workers", "farmers",
                                "outdoor workers", "animal workers",
                                "butchers", "abattoir workers",
                                "pregnant women", "children", "sex workers",
                                "people who inject drugs",
                                "household contacts of survivors",
                                "persons under investigation",
                                "general population", "persons with symptoms",
                                "mixed settings", "unspecified", "other")),
    FieldSchema("population_sample_size", Kind.INTEGER,
                "Number of participants/samples tested etc."),
    FieldSchema("population_age_min", Kind.INTEGER,
                "Minimum age in the sample. If your sample is people over 18 "
                "you would put age min = 18 and leave age max blank.",
                cross_field_rules=("age_range",)),
    FieldSchema("population_age_max", Kind.INTEGER,
                "Maximum age in the sample.",
                cross_field_rules=("age_range",)),
    FieldSchema("population_countries", Kind.LIST_OF_STRING,
                "Where was the study undertaken?"),
    FieldSchema("population_location", Kind.STRING,
                "Location reported i.e. Kerry Town Ebola Treatment Centre."),
    FieldSchema("method_moment_value", Kind.ENUM,
                "When in the outbreak was this study undertaken?",
                allowed_values=("start outbreak", "mid outbreak",
                                "end outbreak", "post outbreak", "endemic",
                                "unspecified")),
)

# ------------------------------------------------------- aggregation schema

AGGREGATION_SCHEMA = (
    FieldSchema("lower_bound", Kind.FLOAT, required=True, nullable=False,
                description="Lower bound of the aggregated parameter range.",
                cross_field_rules=("bound_order",)),
    FieldSchema("upper_bound", Kind.FLOAT, required=True, nullable=False,
                description="Upper bound of the aggregated parameter range.",
                cross_field_rules=("bound_order",)),
    FieldSchema("disaggregated_by", Kind.LIST_OF_STRING, required=True,
                nullable=False,
                description="The types of population disaggregation (like "
                            "'age', 'sex', etc.)."),
    FieldSchema("aggregated_ids", Kind.LIST_OF_STRING, required=True,
                nullable=False,
                description="The ids of all parameters you aggregated."),
)

# ------------------------------------------------------------ model schema

MODEL_SCHEMA = (
    FieldSchema("model_type", Kind.ENUM, required=True, nullable=False,
                description="Primary modeling framework used for transmission "
                            "dynamics.",
                allowed_values=("Compartmental", "Branching process",
                                "Agent/Individual based", "Other",
                                "Unspecified"),
                cross_field_rules=("compartmental_consistency",)),
    FieldSchema("compartmental_type", Kind.ENUM, required=True, nullable=False,
                description="Specific compartmental model architecture if "
                            "applicable. Use 'Not compartmental' for "
                            "non-compartmental models.",
                allowed_values=("SIS", "SIR", "SEIR", "SEIR-SEI", "SAIR-SEI",
                                "Not compartmental", "Other compartmental"),
                cross_field_rules=("compartmental_consistency",)),
    FieldSchema("stoch_deter", Kind.ENUM,
                description="Whether the model is stochastic or deterministic. "
                            "Only extract if explicitly stated. Null if not "
                            "specified.",
                allowed_values=("Stochastic", "Deterministic")),
    FieldSchema("transmission_route", Kind.LIST_OF_ENUM, required=True,
                nullable=False,
                description="Primary pathway(s) through which pathogen "
                            "transmission occurs. Multiple routes can be "
                            "selected; use ['Unspecified'] when not stated.",
                allowed_values=("Airborne or close contact",
                                "Human to human (direct contact)",
                                "Human to human (direct non-sexual contact)",
                                "Vector/Animal to human", "Sexual",
                                "Unspecified")),
    FieldSchema("uncertainty_was_considered", Kind.BOOLEAN,
                description="Whether uncertainty was considered through "
                            "stochasticity, multiple models, or parameter "
                            "variation. Null if not specified."),
    FieldSchema("spatial_model", Kind.BOOLEAN,
                description="Whether the model explicitly incorporated spatial "
                            "or geographic heterogeneity. Null if not "
                            "specified."),
    FieldSchema("spillover_included", Kind.BOOLEAN,
                description="Whether the model explicitly modelled spillover. "
                            "Null if not specified."),
    FieldSchema("assumptions", Kind.LIST_OF_ENUM, required=True, nullable=False,
                description="Key structural and behavioural assumptions, "
                            "explicitly described or clear from model "
                            "equations. Use ['Unspecified'] when not stated.",
                allowed_values=("Homogeneous mixing",
                                "Latent period is same as incubation period",
                                "Heterogeneity in transmission rates - "
                                "between human groups",
                                "Heterogeneity in transmission rates - "
                                "between groups",
                                "Heterogeneity in transmission rates - "
                                "between human and vector",
                                "Heterogeneity in transmission rates - "
                                "over time",
                                "Age dependent susceptibility",
                                "Cross-immunity between Zika and dengue",
                                "Other", "Unspecified")),
    FieldSchema("theoretical_model", Kind.BOOLEAN, required=True, nullable=False,
                description="Whether the model was NOT fitted to data. True if "
                            "not fitted; False if fitted to actual data."),
    FieldSchema("interventions_type", Kind.LIST_OF_ENUM, required=True,
                nullable=False,
                description="Categories of control measures evaluated or "
                            "incorporated in the model(s). Use "
                            "['Unspecified'] when not stated.",
                allowed_values=("Vaccination", "Quarantine",
                                "Vector/Animal control", "Treatment",
                                "Contact tracing", "Hospitals",
                                "Treatment centres", "Safe burials",
                                "Behaviour changes",
                                "Wolbachia replacement/suppression",
                                "Genetically modified mosquitoes",
                                "Mechanical removal of breeding sites",
                                "Pesticides/larvicides",
                                "Insecticide-treated nets",
                                "Indoor residual spraying", "Other",
                                "Unspecified")),
    FieldSchema("code_available", Kind.BOOLEAN, required=True, nullable=False,
                description="Whether model implementation code was made "
                            "publicly available."),
    FieldSchema("coding_language", Kind.ENUM,
                description="Programming language used for model "
                            "implementation if code is available. Null if "
                            "not specified.",
                allowed_values=("R", "Python", "Matlab", "Julia", "C++",
                                "Other")),
    FieldSchema("is_data_used_available", Kind.ENUM,
                description="Whether input data used for the model was shared "
                            "and how. Null if not specified.",
                allowed_values=("Yes - as an attachment", "Yes - with a DOI",
                                "Yes - on Github", "Yes - on another platform",
                                "Not available", "Unspecified")),
    FieldSchema("readme_included", Kind.BOOLEAN,
                description="Whether a README or detailed documentation "
                            "accompanied the code repository. Null if not "
                            "applicable."),
    FieldSchema("notes", Kind.STRING,
                description="Additional context or notes about the extracted "
                            "model. Free text field."),
)

# --------------------------------------------------------- outbreak schema

_MONTHS = ("Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep",
           "Oct", "Nov", "Dec")

OUTBREAK_SCHEMA = (
    FieldSchema("outbreak_start_day", Kind.INTEGER,
                "Day of outbreak onset. Null if not provided.",
                minimum=1, maximum=31),
    FieldSchema("outbreak_start_month", Kind.ENUM,
                "Month of outbreak onset. Null if not provided.",
                allowed_values=_MONTHS),
    FieldSchema("outbreak_start_year", Kind.INTEGER,
                "Year of outbreak onset. Null if not provided."),
    FieldSchema("outbreak_end_day", Kind.INTEGER,
                "Day of outbreak conclusion. Null if not provided.",
                minimum=1, maximum=31),
    FieldSchema("outbreak_end_month", Kind.ENUM,
                "Month of outbreak conclusion. Null if not provided.",
                allowed_values=_MONTHS),
    FieldSchema("outbreak_end_year", Kind.INTEGER,
                "Year of outbreak conclusion. Null if not provided."),
    FieldSchema("outbreak_duration_months", Kind.FLOAT,
                "Duration in months. ONLY if explicitly stated; not "
                "calculated. Null if not stated."),
    FieldSchema("outbreak_is_currently_ongoing", Kind.BOOLEAN, required=True,
                nullable=False,
                description="Whether outbreak was concluded (False) or ongoing "
                            "(True) at publication."),
    FieldSchema("outbreak_country", Kind.ENUM, required=True, nullable=False,
                description="Country where outbreak occurred. MUST match WHO "
                            "standard names.",
                allowed_values=WHO_COUNTRIES),
    FieldSchema("outbreak_location", Kind.STRING,
                "Specific location within country. Multiple locations "
                "separated by semicolons. Null if not provided.",
                no_commas=True),
    FieldSchema("outbreak_location_type", Kind.STRING,
                "Type of administrative or geographic unit (e.g. district, "
                "province, county, state, hospital). Null if not specified.",
                no_commas=True),
    FieldSchema("outbreak_source", Kind.ENUM,
                "Known or suspected source of outbreak introduction. Null if "
                "not provided.",
                allowed_values=("Domestic animal", "Wild animal",
                                "Date palm sap", "Unknown", "Other")),
    FieldSchema("mode_of_detection", Kind.ENUM,
                "Primary method used to identify and confirm cases. Null if "
                "not provided.",
                allowed_values=("Molecular (PCR etc)", "Symptoms",
                                "Confirmed + Suspected", "Unspecified")),
    FieldSchema("method_of_case_definition", Kind.STRING,
                "Criteria used to classify cases as described in paper. Null "
                "if not provided.",
                no_commas=True),
    FieldSchema("pre_outbreak", Kind.ENUM,
                "Baseline disease status prior to outbreak. Null if not "
                "provided.",
                allowed_values=("Disease-free baseline", "Endemic equilibrium",
                                "Unspecified", "Probable")),
    FieldSchema("cases_confirmed", Kind.FLOAT,
                "Number of laboratory-confirmed cases. Null if not provided.",
                minimum=0),
    FieldSchema("cases_probable", Kind.FLOAT,
                "Number of probable cases. Null if not provided.", minimum=0),
    FieldSchema("cases_suspected", Kind.FLOAT,
                "Number of suspected cases. Null if not provided.", minimum=0),
    FieldSchema("cases_unspecified", Kind.FLOAT,
                "Number of cases with unspecified confirmation status. Null "
                "if not provided.",
                minimum=0),
    FieldSchema("cases_asymptomatic", Kind.FLOAT,
                "Number of asymptomatic infections. Null if not provided.",
                minimum=0),
    FieldSchema("cases_severe", Kind.FLOAT,
                "Number of severe cases or hospitalizations. Null if not "
                "provided.",
                minimum=0),
    FieldSchema("deaths", Kind.FLOAT,
                "Number of deaths attributed to outbreak. Null if not "
                "provided.",
                minimum=0),
    FieldSchema("asymptomatic_transmission_described", Kind.BOOLEAN,
                required=True, nullable=False,
                description="Whether article explicitly described or "
                            "discussed asymptomatic transmission."),
    FieldSchema("population_size_geographical_area", Kind.FLOAT,
                "Total population of affected geographic area. Null if not "
                "provided.",
                minimum=0),
    FieldSchema("type_cases_sex_disagg", Kind.ENUM,
                "Case type for which sex disaggregation was reported. Null "
                "if not provided.",
                allowed_values=("Confirmed", "Suspected", "Other",
                                "Unspecified")),
    FieldSchema("male_cases", Kind.FLOAT,
                "Number of male cases for specified case type. Null if not "
                "provided.",
                minimum=0),
    FieldSchema("prop_male_cases", Kind.FLOAT,
                "Proportion (0.0-1.0) or percentage (0-100) of cases in "
                "males. Null if not provided.",
                minimum=0, maximum=100),
    FieldSchema("female_cases", Kind.FLOAT,
                "Number of female cases for specified case type. Null if not "
                "provided.",
                minimum=0),
    FieldSchema("prop_female_cases", Kind.FLOAT,
                "Proportion (0.0-1.0) or percentage (0-100) of cases in "
                "females. Null if not provided.",
                minimum=0, maximum=100),
    FieldSchema("notes", Kind.STRING,
                "Additional context or clarifications about outbreak "
                "characteristics. Null if not needed.",
                no_commas=True),
)

SCHEMAS_BY_DATA_TYPE = {
    "model": MODEL_SCHEMA,
    "outbreak": OUTBREAK_SCHEMA,
    "population": POPULATION_SCHEMA,
}

# Per-pathogen outbreak size rules surfaced in the extraction prompt.
OUTBREAK_SIZE_RULES = {
    "zika": "Zika, RVF: Only extract outbreaks with 10 or more cases",
    "rvf": "Zika, RVF: Only extract outbreaks with 10 or more cases",
    "marburg": "Marburg, Lassa, Nipah: Extract all outbreaks",
    "lassa": "Marburg, Lassa, Nipah: Extract all outbreaks",
    "nipah": "Marburg, Lassa, Nipah: Extract all outbreaks",
}

# Pathogens whose location disaggregations fall under the rule of three.
LOCATION_AGGREGATION_INCLUDED = ("marburg", "ebola", "mers")
LOCATION_AGGREGATION_EXCLUDED = ("lassa", "sars", "zika", "nipah")
