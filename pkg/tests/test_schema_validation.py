from __future__ import annotations

import pytest

from evisynth.extraction import catalog
from evisynth.extraction.records import (
    ModelExtraction,
    OutbreakExtraction,
    ParameterExtraction,
)
from evisynth.extraction.schema import FieldSchema, Kind, validate_payload


VALID_MODEL = {
    "model_type": "Compartmental",
    "compartmental_type": "SEIR",
    "stoch_deter": "Stochastic",
    "transmission_route": ["Human to human (direct contact)"],
    "uncertainty_was_considered": True,
    "spatial_model": None,
    "spillover_included": None,
    "assumptions": ["Homogeneous mixing"],
    "theoretical_model": False,
    "interventions_type": ["Vaccination", "Quarantine"],
    "code_available": True,
    "coding_language": "R",
    "is_data_used_available": "Yes - on Github",
    "readme_included": True,
    "notes": None,
}

VALID_OUTBREAK = {
    "outbreak_start_month": "Mar",
    "outbreak_start_year": 2018,
    "outbreak_end_month": "Jul",
    "outbreak_end_year": 2018,
    "outbreak_is_currently_ongoing": False,
    "outbreak_country": "Nigeria",
    "outbreak_location": "Lagos; Abuja",
    "cases_confirmed": 120,
    "deaths": 17,
    "asymptomatic_transmission_described": False,
}

VALID_SEVERITY = {
    "value": 0.25,
    "numerator": 12,
    "denominator": 48,
    "parameter_type": "CFR",
    "method": "naive",
    "value_type": "mean",
}


def test_conformant_payloads_accepted():
    assert validate_payload(VALID_MODEL, catalog.MODEL_SCHEMA) == []
    assert validate_payload(VALID_OUTBREAK, catalog.OUTBREAK_SCHEMA) == []
    assert validate_payload(VALID_SEVERITY,
                            catalog.PARAMETER_VALUE_SCHEMAS["severity"]) == []


def test_cross_field_compartmental_violation():
    payload = dict(VALID_MODEL, model_type="Branching process",
                   compartmental_type="SIR")
    errors = validate_payload(payload, catalog.MODEL_SCHEMA)
    assert len(errors) == 1
    assert "compartmental_type" in errors[0]
    assert "Not compartmental" in errors[0]


def test_outbreak_country_enum_error_names_allowed_value():
    payload = dict(VALID_OUTBREAK, outbreak_country="USA")
    errors = validate_payload(payload, catalog.OUTBREAK_SCHEMA)
    assert len(errors) == 1
    assert "outbreak_country" in errors[0]
    assert "United States of America" in errors[0]


def test_comma_in_location_rejected():
    payload = dict(VALID_OUTBREAK, outbreak_location="Lagos, Abuja")
    errors = validate_payload(payload, catalog.OUTBREAK_SCHEMA)
    assert len(errors) == 1
    assert "no_commas" in errors[0] and "outbreak_location" in errors[0]


def test_missing_required_outbreak_field():
    payload = {k: v for k, v in VALID_OUTBREAK.items()
               if k != "outbreak_country"}
    errors = validate_payload(payload, catalog.OUTBREAK_SCHEMA)
    assert any("outbreak_country" in e and "required" in e for e in errors)


def test_bad_enum_rejected():
    payload = dict(VALID_SEVERITY, method="guesswork")
    errors = validate_payload(payload,
                              catalog.PARAMETER_VALUE_SCHEMAS["severity"])
    assert len(errors) == 1
    assert "'method'" in errors[0] and "naive" in errors[0]


def test_severity_value_bounds():
    payload = dict(VALID_SEVERITY, value=25.0)
    errors = validate_payload(payload,
                              catalog.PARAMETER_VALUE_SCHEMAS["severity"])
    assert any("maximum" in e for e in errors)


def test_day_bounds():
    payload = dict(VALID_OUTBREAK, outbreak_start_day=32)
    errors = validate_payload(payload, catalog.OUTBREAK_SCHEMA)
    assert any("outbreak_start_day" in e and "maximum" in e for e in errors)


def test_unknown_field_rejected():
    payload = dict(VALID_OUTBREAK, bogus_field=1)
    errors = validate_payload(payload, catalog.OUTBREAK_SCHEMA)
    assert any("bogus_field" in e for e in errors)


def test_null_for_required_rejected():
    payload = dict(VALID_MODEL, code_available=None)
    errors = validate_payload(payload, catalog.MODEL_SCHEMA)
    assert any("code_available" in e and "required" in e for e in errors)


def test_age_range_rule():
    payload = {"population_sex": "both", "population_age_min": 40,
               "population_age_max": 12}
    errors = validate_payload(payload, catalog.POPULATION_SCHEMA)
    assert any("age_range" in e for e in errors)


def test_list_of_enum_names_bad_item():
    payload = dict(VALID_MODEL,
                   interventions_type=["Vaccination", "Moonbeams"])
    errors = validate_payload(payload, catalog.MODEL_SCHEMA)
    assert len(errors) == 1
    assert "Moonbeams" in errors[0] and "interventions_type" in errors[0]


def test_who_country_list_has_195_names():
    assert len(catalog.WHO_COUNTRIES) == 195
    assert "United States of America" in catalog.WHO_COUNTRIES
    assert "Viet Nam" in catalog.WHO_COUNTRIES
    assert "USA" not in catalog.WHO_COUNTRIES


def test_enum_schema_requires_allowed_values():
    with pytest.raises(ValueError):
        FieldSchema("x", Kind.ENUM)


# ---------------------------------------------------------------- records

def test_model_record_defaults_and_payload_roundtrip():
    rec = ModelExtraction.from_payload(VALID_MODEL, id="E1", article_id="A1",
                                       pathogen="lassa")
    assert rec.model_type == "Compartmental"
    assert rec.interventions_type == ["Vaccination", "Quarantine"]
    bare = ModelExtraction(id="E2", article_id="A1", pathogen="lassa")
    assert bare.transmission_route == ["Unspecified"]
    assert bare.assumptions == ["Unspecified"]
    assert bare.compartmental_type == "Not compartmental"


def test_parameter_record_from_payload():
    rec = ParameterExtraction.from_payload(
        VALID_SEVERITY, id="P1", article_id="A1", pathogen="lassa",
        parameter_class="severity")
    assert rec.value == 0.25
    assert rec.parameter_type == "CFR"
    assert rec.fields["numerator"] == 12
    assert rec.value_type == "mean"
    assert rec.paired_uncertainty is None


def test_outbreak_record_from_payload():
    rec = OutbreakExtraction.from_payload(VALID_OUTBREAK, id="O1",
                                          article_id="A1", pathogen="lassa")
    assert rec.outbreak_country == "Nigeria"
    assert rec.cases_confirmed == 120
    assert rec.outbreak_is_currently_ongoing is False
