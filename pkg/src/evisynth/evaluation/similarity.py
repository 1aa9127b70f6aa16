"""Weighted field similarity between extraction records.

s(E, Ê) = Σ_k w_k · J(E[k], Ê[k]) where J is Jaccard similarity over
the field values viewed as sets (singletons for single-value fields).
Two absent values agree: J(∅, ∅) = 1. Numeric equality is exact after
canonical float parsing; a relative-tolerance mode is available behind
a flag for singleton numeric comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
from typing import Mapping


def _canonical(value):
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            return float(text)
        except ValueError:
            return text
    return value


def value_set(value) -> frozenset:
    """View one field value as a set of canonical elements."""
    if value is None or value == "" or value == []:
        return frozenset()
    if isinstance(value, (list, tuple, set, frozenset)):
        return frozenset(_canonical(v) for v in value
                         if v is not None and v != "")
    return frozenset([_canonical(value)])


def jaccard(a, b, *, rel_tolerance: float | None = None) -> float:
    """Jaccard similarity of two field values as sets.

    J(∅, ∅) = 1 by convention (two absent values agree); J(A, ∅) = 0
    for non-empty A.
    """
    sa, sb = value_set(a), value_set(b)
    if not sa and not sb:
        return 1.0
    if not sa or not sb:
        return 0.0
    if rel_tolerance is not None and len(sa) == 1 and len(sb) == 1:
        (x,), (y,) = tuple(sa), tuple(sb)
        if isinstance(x, float) and isinstance(y, float):
            if abs(x - y) <= rel_tolerance * max(abs(x), abs(y), 1e-300):
                return 1.0
            return 0.0
    return len(sa & sb) / len(sa | sb)


@dataclass(frozen=True)
class WeightProfile:
    """Per-field weights (normalised to sum 1) plus the field-to-group
    mapping used for metric rollups."""

    weights: Mapping[str, float]
    groups: Mapping[str, str] = dataclass_field(default_factory=dict)
    rel_tolerance: float | None = None

    def __post_init__(self):
        total = sum(self.weights.values())
        if total <= 0:
            raise ValueError("weights must sum to a positive value")
        object.__setattr__(self, "weights",
                           {k: w / total for k, w in self.weights.items()})
        groups = dict(self.groups)
        for name in self.weights:
            groups.setdefault(name, "all")
        unknown = set(groups) - set(self.weights)
        if unknown:
            raise ValueError(f"groups reference unknown fields: {unknown}")
        object.__setattr__(self, "groups", groups)

    @property
    def fields(self) -> tuple[str, ...]:
        return tuple(self.weights)


def get_field(record, name: str):
    """Read a key field from an extraction record or a plain row dict."""
    if isinstance(record, Mapping):
        return record.get(name)
    if hasattr(record, name):
        return getattr(record, name)
    fields = getattr(record, "fields", None)
    if isinstance(fields, dict) and name in fields:
        return fields[name]
    population = getattr(record, "population", None)
    if population is not None and hasattr(population, name):
        return getattr(population, name)
    return None


def field_similarity(truth_record, pred_record, profile: WeightProfile) -> float:
    """Weighted Jaccard similarity between two records, in [0, 1]."""
    total = 0.0
    for name, weight in profile.weights.items():
        total += weight * jaccard(get_field(truth_record, name),
                                  get_field(pred_record, name),
                                  rel_tolerance=profile.rel_tolerance)
    return total


def _grouped_weights(group_fields: dict[str, tuple[str, ...]]) -> dict[str, float]:
    """Equal total weight per group, split uniformly within the group."""
    weights: dict[str, float] = {}
    share = 1.0 / len(group_fields)
    for _, members in group_fields.items():
        for name in members:
            weights[name] = share / len(members)
    return weights


_PARAMETER_GROUPS = {
    "categorical": ("parameter_class", "parameter_type"),
    "value": ("value", "unit", "method"),
    "uncertainty": ("value_type", "statistical_approach",
                    "single_type_uncertainty", "paired_uncertainty"),
    "population": ("population_sex", "population_group",
                   "population_sample_type"),
}

PARAMETER_PROFILE = WeightProfile(
    weights=_grouped_weights(_PARAMETER_GROUPS),
    groups={name: group for group, members in _PARAMETER_GROUPS.items()
            for name in members})

_MODEL_FIELDS = ("model_type", "compartmental_type", "stoch_deter",
                 "theoretical_model", "assumptions", "interventions_type",
                 "transmission_route")

MODEL_PROFILE = WeightProfile(
    weights={name: 1.0 / len(_MODEL_FIELDS) for name in _MODEL_FIELDS},
    groups={"model_type": "structural", "compartmental_type": "structural",
            "stoch_deter": "structural", "theoretical_model": "structural",
            "assumptions": "features", "interventions_type": "features",
            "transmission_route": "features"})

# Key-field weights by discriminative power: 1.0 for the anchors, 0.7
# for supporting temporal fields, 0.6 for contextual fields (midpoints
# of the 0.6-0.8 and 0.5-0.7 ranges), then normalised.
_OUTBREAK_WEIGHTS = {
    "outbreak_country": 1.0,
    "outbreak_start_year": 1.0,
    "cases_confirmed": 1.0,
    "deaths": 1.0,
    "outbreak_start_month": 0.7,
    "outbreak_start_day": 0.7,
    "outbreak_end_year": 0.7,
    "outbreak_end_month": 0.7,
    "outbreak_end_day": 0.7,
    "outbreak_location": 0.6,
    "mode_of_detection": 0.6,
    "pre_outbreak": 0.6,
}

OUTBREAK_PROFILE = WeightProfile(
    weights=_OUTBREAK_WEIGHTS,
    groups={"outbreak_start_year": "temporal", "outbreak_start_month": "temporal",
            "outbreak_start_day": "temporal", "outbreak_end_year": "temporal",
            "outbreak_end_month": "temporal", "outbreak_end_day": "temporal",
            "outbreak_country": "geographic", "outbreak_location": "geographic",
            "cases_confirmed": "case-burden", "deaths": "case-burden",
            "mode_of_detection": "context", "pre_outbreak": "context"})

# Two-field profile used in worked matching examples: exact match on
# model type plus Jaccard on interventions, equally weighted.
TWO_FIELD_DEMO_PROFILE = WeightProfile(
    weights={"model_type": 0.5, "interventions_type": 0.5})

DEFAULT_PROFILES = {
    "parameter": PARAMETER_PROFILE,
    "model": MODEL_PROFILE,
    "outbreak": OUTBREAK_PROFILE,
}
