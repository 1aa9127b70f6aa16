"""Boolean search query construction for the three bibliographic databases.

PubMed and Europe PMC accept wildcard truncation (``transmissi*``); the
OpenAlex API strips ``*`` during query processing, so every truncated
term is replaced by its expanded variant list via WILDCARD_EXPANSIONS.
The table is editable data: a truncated term with no entry raises
ConfigurationError instead of silently passing the asterisk through.
Entries mapping to an empty list are dropped from the OpenAlex form
(hyphenated variants that OpenAlex tokenises away).
"""

from __future__ import annotations

import re

from .records import PathogenQueryConfig

DATABASES = ("PubMed", "EuropePMC", "OpenAlex")


class ConfigurationError(ValueError):
    pass


# Core epidemiological term groups of the standardised base query.
# Each group renders as a parenthesised OR-list; `not_terms` renders as
# a trailing NOT clause inside the group.
_GROUP = lambda terms, not_terms=(): {"terms": list(terms), "not_terms": list(not_terms)}

BASE_TERM_GROUPS = [
    _GROUP(["transmissi*", "epidemiolog*"]),
    _GROUP(["model*"], not_terms=["imag*"]),
    _GROUP(["severity", '"case fatality ratio*"', "CFR", '"case fatality rate*"',
            '"mortality rate*"', '"attack rate*"']),
    _GROUP(['"infectious period*"', '"serial interval*"', '"incubation period*"',
            '"generation time*"', '"generation interval*"', '"latent period*"',
            "latency"]),
    _GROUP(["heterogeneit*", "superspread*", '"super spread*"', "super-spread*",
            "overdispersion", "overdispersed", "over-dispersion", "over-dispersed",
            '"over dispersion"', '"over dispersed"']),
    _GROUP(["infectivity", "infectiousness", '"growth rate*"',
            '"reproduction number*"', '"reproductive number*"', "R0",
            '"reproduction ratio*"', '"reproductive rate*"']),
    _GROUP(['"pre-existing immunity"', "serological", "serology", "serosurvey*"]),
    _GROUP(["evolution*", "mutation*", "substitution*"]),
    _GROUP(["outbreak*", "cluster*", "epidemic*"]),
    _GROUP(['"risk factor*"']),
]

WILDCARD_EXPANSIONS: dict[str, list[str]] = {
    "transmissi*": ["transmission", "transmissibility", "transmissible",
                    "transmitted", "transmitting", "transmit"],
    "epidemiolog*": ["epidemiology", "epidemiological", "epidemiologic"],
    "model*": ["model", "models", "modeling", "modelling", "modeled", "modelled"],
    "imag*": ["image", "images", "imaging"],
    '"case fatality ratio*"': ['"case fatality ratio"', '"case fatality ratios"'],
    '"case fatality rate*"': ['"case fatality rate"', '"case fatality rates"'],
    '"mortality rate*"': ['"mortality rate"', '"mortality rates"'],
    '"attack rate*"': ['"attack rate"', '"attack rates"'],
    '"infectious period*"': ['"infectious period"', '"infectious periods"'],
    '"serial interval*"': ['"serial interval"', '"serial intervals"'],
    '"incubation period*"': ['"incubation period"', '"incubation periods"'],
    '"generation time*"': ['"generation time"'],
    '"generation interval*"': ['"generation interval"', '"generation intervals"'],
    '"latent period*"': ['"latent period"', '"latent periods"'],
    "heterogeneit*": ["heterogeneity", "heterogeneous"],
    "superspread*": ["superspread", "superspreader", "superspreaders",
                     "superspreading"],
    '"super spread*"': ['"super spread"', '"super spreader"', '"super spreaders"',
                        '"super spreading"'],
    # OpenAlex tokenises hyphens away; these collapse onto existing variants.
    "super-spread*": [],
    "over-dispersion": [],
    "over-dispersed": [],
    '"growth rate*"': ['"growth rate"', '"growth rates"'],
    '"reproduction number*"': ['"reproduction number"', '"reproduction numbers"'],
    '"reproductive number*"': ['"reproductive number"', '"reproductive numbers"'],
    '"reproduction ratio*"': ['"reproduction ratio"', '"reproduction ratios"'],
    '"reproductive rate*"': ['"reproductive rate"', '"reproductive rates"',
                             '"basic reproduction number"'],
    "serosurvey*": ["serosurvey", "serosurveys", "seroprevalence",
                    "serosurveillance"],
    "evolution*": ["evolution", "evolutionary", "evolving", "evolved"],
    "mutation*": ["mutation", "mutations", "mutant", "mutants", "mutate",
                  "mutated"],
    "substitution*": ["substitution", "substitutions"],
    "outbreak*": ["outbreak", "outbreaks"],
    "cluster*": ["cluster", "clusters", "clustering"],
    "epidemic*": ["epidemic", "epidemics", "pandemic", "pandemics"],
    '"risk factor*"': ['"risk factor"', '"risk factors"'],
}

# Pathogen-specific interpolations for the standard query.
DEFAULT_PATHOGEN_CONFIGS = {
    "marburg": PathogenQueryConfig("Marburg virus", "Marburg virus"),
    "ebola": PathogenQueryConfig("Ebola virus", "Ebola"),
    "lassa": PathogenQueryConfig("Lassa fever", "Lassa"),
    "sars": PathogenQueryConfig(
        "SARS-CoV-1",
        'SARS OR SARS-CoV-1 OR "Severe acute respiratory syndrome"',
        exclusion_clause="NOT (COVID-19 OR SARS-CoV-2)",
    ),
    "zika": PathogenQueryConfig(
        "Zika virus",
        "zika",
        additional_terms='OR ("extrinsic incubation period" OR "EIP" OR '
                         '"vector competence" OR "vectorial capacity")',
    ),
    "nipah": PathogenQueryConfig("Nipah virus", "Nipah"),
    "mers": PathogenQueryConfig(
        "MERS-CoV",
        'MERS OR MERS-CoV OR "Middle East respiratory syndrome" OR '
        '"Middle East Respiratory Syndrome Coronavirus"',
    ),
    "rvf": PathogenQueryConfig(
        "Rift Valley fever virus",
        '"Rift valley fever" OR RVF OR "Rift Valley Fever Virus" OR RVFV',
    ),
    "cchf": PathogenQueryConfig(
        "CCHF virus",
        '"Crimean Congo haemorrhagic fever" OR "Crimean-Congo hemorrhagic fever" '
        'OR CCHF OR "CCHF virus" OR CCHFV',
    ),
}

def load_pathogen_config(path) -> PathogenQueryConfig:
    """Read one pathogen's query config document (JSON)."""
    import json

    with open(path, encoding="utf-8") as f:
        doc = json.load(f)
    return PathogenQueryConfig(
        pathogen_name=doc["pathogen_name"],
        identifier_clause=doc["identifier_clause"],
        additional_terms=doc.get("additional_terms"),
        exclusion_clause=doc.get("exclusion_clause"))


_TOKEN = re.compile(r'"[^"]*"\*?|\S+')


def _expand_term(term: str) -> list[str]:
    if term in WILDCARD_EXPANSIONS:
        return WILDCARD_EXPANSIONS[term]
    if "*" in term:
        raise ConfigurationError(
            f"no OpenAlex expansion registered for truncated term {term!r}"
        )
    return [term]


def _render_group(group: dict, expand: bool) -> str:
    if expand:
        terms = [v for t in group["terms"] for v in _expand_term(t)]
        negs = [v for t in group["not_terms"] for v in _expand_term(t)]
    else:
        terms = group["terms"]
        negs = group["not_terms"]
    body = " OR ".join(terms)
    if negs:
        neg = negs[0] if len(negs) == 1 else "(" + " OR ".join(negs) + ")"
        body = f"{body} NOT {neg}"
    return f"({body})"


def _expand_clause(clause: str) -> str:
    out = []
    for tok in _TOKEN.findall(clause):
        if "*" in tok:
            variants = _expand_term(tok)
            if not variants:
                continue
            out.append(variants[0] if len(variants) == 1
                       else "(" + " OR ".join(variants) + ")")
        else:
            out.append(tok)
    return " ".join(out)


def build_query(config: PathogenQueryConfig, database: str) -> str:
    """Render the full search query for one pathogen and one database."""
    if database not in DATABASES:
        raise ConfigurationError(f"unknown database {database!r}")
    expand = database == "OpenAlex"

    identifier = config.identifier_clause.strip()
    additional = (config.additional_terms or "").strip()
    exclusion = (config.exclusion_clause or "").strip()
    if expand:
        identifier = _expand_clause(identifier)
        additional = _expand_clause(additional) if additional else ""
        exclusion = _expand_clause(exclusion) if exclusion else ""

    groups = " OR ".join(_render_group(g, expand) for g in BASE_TERM_GROUPS)
    query = f"{identifier} AND ( {groups}"
    if additional:
        query += f" {additional}"
    query += " )"
    if exclusion:
        query += f" {exclusion}"
    return query
