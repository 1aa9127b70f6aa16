"""Screening criteria as data.

Criteria live in per-pathogen JSON documents so the pipeline can be
re-skinned for other domains without code changes; default_criteria
builds the epidemiology set used throughout, with the stricter
full-text additions (extractable-quantitative-data requirement, the
under-10-cases exclusion, literature reviews and meta-analyses
excluded).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, asdict
from pathlib import Path


class Stage:
    ABSTRACT = "Abstract"
    FULLTEXT = "FullText"


EXTRACTABILITY_ITEM = (
    "Data Extraction Requirement: Must contain extractable mathematical "
    "models, transmission models, or quantitative parameter estimates (with "
    "values or ranges) for disease modeling. This includes: reproduction "
    "numbers, transmission rates, incubation periods, case fatality ratios, "
    "model structures, intervention effects, or other modeling parameters. "
    "Articles without extractable quantitative parameters or models should "
    "be excluded."
)

SMALL_CASE_SERIES_ITEM = "Case studies/reports with <10 human cases"


@dataclass
class ScreeningCriteria:
    study_objectives: str
    inclusion_items: list[str]
    exclusion_items: list[str]
    stage: str

    def __post_init__(self):
        if self.stage not in (Stage.ABSTRACT, Stage.FULLTEXT):
            raise ValueError(f"unknown stage {self.stage!r}")
        if self.stage == Stage.FULLTEXT:
            if not any("extractable" in item.lower()
                       for item in self.inclusion_items):
                raise ValueError("full-text criteria must include the "
                                 "extractable-quantitative-data requirement")
            if not any("<10 human cases" in item
                       for item in self.exclusion_items):
                raise ValueError("full-text criteria must exclude case "
                                 "studies/reports with <10 human cases")


def _study_objectives(pathogen_name: str) -> str:
    return (
        f"This systematic review aims to collate transmission and modelling "
        f"parameters for {pathogen_name}. The review seeks to:\n"
        "1. Provide estimates of key infectious disease metrics (reproduction "
        "number, CFR, generation time, serial interval, incubation period, "
        "etc.)\n"
        "2. Document historical outbreak characteristics (size, location, "
        "duration, deaths)\n"
        "3. Identify mathematical/statistical models of transmission\n"
        "4. Collate risk factors for infection, severe disease, and death\n"
        "5. Summarize seroprevalence data\n"
        "6. Support infectious disease modelling and outbreak response "
        "efforts\n\n"
        "This information enables effective outbreak preparedness, resource "
        f"targeting, and mathematical modelling for nowcasting and "
        f"forecasting of {pathogen_name}."
    )


def _inclusion_items(pathogen_name: str) -> list[str]:
    return [
        f"Pathogen: Must be about {pathogen_name}",
        "Language: English only",
        "Study type: Peer-reviewed, original research (note systematic "
        "reviews/meta-analyses for special consideration)",
        "Population: Human subjects (animal studies acceptable if reporting "
        "EITHER: (a) transmission parameters: R0, Rt, Re, r, growth rate, "
        "mutation rate, OR (b) vector parameters: extrinsic incubation "
        "period, vector reproduction numbers, vector competence, mosquito "
        "delays)",
        "Content: Must contain AT LEAST ONE of: (a) Quantitative details of "
        "concluded/ongoing human outbreak (size, year, location, duration, "
        "spatial scale); (b) Mathematical or statistical model of disease "
        "transmission; (c) Measures/estimates of transmission parameters: R, "
        "R0, Rt, r, Re, growth rate, doubling time; (d) Measures/estimates "
        "of timing parameters: generation time, serial interval, incubation "
        "period, latent period, infectious period; (e) Measures/estimates of "
        "severity: CFR, IFR, hospitalization rate, mortality rate, attack "
        "rate; (f) Measures/estimates of genetic evolution: mutation rate, "
        "substitution rate, evolutionary rate; (g) Measures of "
        "overdispersion or superspreading (k parameter, transmission "
        "heterogeneity); (h) Seroprevalence data or serological surveys; (i) "
        "Risk factors for infection, severe disease, death, or "
        "hospitalization (with statistical measures); (j) Measures/estimates "
        "of vector parameters: extrinsic incubation period (EIP), mosquito "
        "reproduction numbers, vector competence, mosquito delays, or "
        "relative transmission contributions (human-to-human vs "
        "vector-borne/zoonotic)",
    ]


def default_criteria(pathogen_name: str, stage: str) -> ScreeningCriteria:
    inclusion = _inclusion_items(pathogen_name)
    if stage == Stage.ABSTRACT:
        exclusion = [
            f"Pathogen: Not about {pathogen_name} (excludes studies on other "
            "pathogens)",
            "Language: Non-English",
            "Publication type: Conference proceedings, abstract-only, "
            "posters, correspondence",
            "Study design: In-vitro studies only (no human or animal "
            "component)",
            "Study design: Solely animal studies AND animal studies that do "
            "not report transmission parameters (R0, Rt, Re, r, growth rate, "
            "mutation rate)",
            "Outbreak type: Accidental laboratory outbreaks (not natural "
            "disease transmission)",
        ]
    else:
        inclusion = inclusion + [EXTRACTABILITY_ITEM]
        exclusion = [
            f"Not about {pathogen_name} (excludes other pathogens)",
            "Non-English language",
            "Conference proceedings, abstract-only, posters, correspondence, "
            "Literature reviews, meta-analyses",
            "In-vitro studies only (no human or animal component)",
            "Animal studies without transmission parameters (R0, Rt, Re, r, "
            "growth rate, mutation rate) or solely animal studies.",
            SMALL_CASE_SERIES_ITEM,
            "Accidental laboratory outbreaks",
        ]
    return ScreeningCriteria(
        study_objectives=_study_objectives(pathogen_name),
        inclusion_items=inclusion,
        exclusion_items=exclusion,
        stage=stage,
    )


def save_criteria(criteria: ScreeningCriteria, path: str | Path) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(asdict(criteria), f, indent=2, ensure_ascii=False)


def load_criteria(path: str | Path) -> ScreeningCriteria:
    with open(path, encoding="utf-8") as f:
        return ScreeningCriteria(**json.load(f))
