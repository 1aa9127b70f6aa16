"""Machine-readable field schemas driving tool-call generation and
payload validation.

A FieldSchema set describes one tool call: field kinds, allowed values
for enums, nullability, numeric bounds, and cross-field rules. The
same schema renders the OpenAI function-calling JSON schema and
validates returned payloads; error messages name the offending field,
the violated rule, and the allowed values, because they are fed back
to the model verbatim in the correction loop.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable


class Kind:
    FLOAT = "float"
    INTEGER = "integer"
    STRING = "string"
    BOOLEAN = "boolean"
    ENUM = "enum"
    LIST_OF_ENUM = "list_of_enum"
    LIST_OF_STRING = "list_of_string"


@dataclass(frozen=True)
class FieldSchema:
    name: str
    kind: str
    description: str = ""
    allowed_values: tuple[str, ...] | None = None
    required: bool = False
    nullable: bool = True
    minimum: float | None = None
    maximum: float | None = None
    no_commas: bool = False
    cross_field_rules: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind in (Kind.ENUM, Kind.LIST_OF_ENUM) and not self.allowed_values:
            raise ValueError(f"field {self.name!r}: enum kinds need allowed_values")
        for rule in self.cross_field_rules:
            if rule not in CROSS_FIELD_RULES:
                raise ValueError(f"field {self.name!r}: unknown rule {rule!r}")

    def to_json_schema(self) -> dict:
        """Render this field for an OpenAI-style tool parameter schema."""
        base: dict
        if self.kind == Kind.FLOAT:
            base = {"type": "number"}
        elif self.kind == Kind.INTEGER:
            base = {"type": "integer"}
        elif self.kind == Kind.BOOLEAN:
            base = {"type": "boolean"}
        elif self.kind == Kind.STRING:
            base = {"type": "string"}
        elif self.kind == Kind.ENUM:
            base = {"type": "string", "enum": list(self.allowed_values)}
        elif self.kind == Kind.LIST_OF_ENUM:
            base = {"type": "array",
                    "items": {"type": "string", "enum": list(self.allowed_values)}}
        elif self.kind == Kind.LIST_OF_STRING:
            base = {"type": "array", "items": {"type": "string"}}
        else:
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.minimum is not None:
            base["minimum"] = self.minimum
        if self.maximum is not None:
            base["maximum"] = self.maximum
        if self.nullable and not self.required:
            base = {"anyOf": [base, {"type": "null"}]}
        if self.description:
            base["description"] = self.description
        return base


def tool_parameters_schema(fields: Iterable[FieldSchema]) -> dict:
    fields = list(fields)
    return {
        "type": "object",
        "properties": {f.name: f.to_json_schema() for f in fields},
        "required": [f.name for f in fields if f.required],
        "additionalProperties": False,
    }


# ---------------------------------------------------------------- rules

def _rule_compartmental(payload: dict) -> list[str]:
    model_type = payload.get("model_type")
    comp = payload.get("compartmental_type")
    if model_type is not None and model_type != "Compartmental" \
            and comp not in (None, "Not compartmental"):
        return [
            "field 'compartmental_type' violates rule 'compartmental_consistency': "
            f"model_type is {model_type!r}, so compartmental_type must be "
            "'Not compartmental'"
        ]
    return []


def _rule_age_range(payload: dict) -> list[str]:
    lo = payload.get("population_age_min")
    hi = payload.get("population_age_max")
    if lo is not None and hi is not None and lo > hi:
        return [
            "field 'population_age_max' violates rule 'age_range': "
            f"population_age_min ({lo}) must not exceed population_age_max ({hi})"
        ]
    return []


def _rule_bound_order(payload: dict) -> list[str]:
    lo = payload.get("lower_bound")
    hi = payload.get("upper_bound")
    if lo is not None and hi is not None and lo > hi:
        return [
            "field 'upper_bound' violates rule 'bound_order': "
            f"lower_bound ({lo}) must not exceed upper_bound ({hi})"
        ]
    return []


CROSS_FIELD_RULES: dict[str, Callable[[dict], list[str]]] = {
    "compartmental_consistency": _rule_compartmental,
    "age_range": _rule_age_range,
    "bound_order": _rule_bound_order,
}


# ---------------------------------------------------------------- validation

def _check_value(f: FieldSchema, value) -> list[str]:
    errors: list[str] = []

    def type_error(expected: str):
        errors.append(
            f"field {f.name!r} violates rule 'type': expected {expected}, "
            f"got {type(value).__name__}"
        )

    if f.kind == Kind.FLOAT:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            type_error("a number")
            return errors
    elif f.kind == Kind.INTEGER:
        if isinstance(value, bool) or not isinstance(value, int):
            type_error("an integer")
            return errors
    elif f.kind == Kind.BOOLEAN:
        if not isinstance(value, bool):
            type_error("a boolean")
            return errors
    elif f.kind == Kind.STRING:
        if not isinstance(value, str):
            type_error("a string")
            return errors
    elif f.kind == Kind.ENUM:
        if not isinstance(value, str) or value not in f.allowed_values:
            errors.append(
                f"field {f.name!r} violates rule 'allowed_values': {value!r} is "
                f"not one of the allowed values: {', '.join(f.allowed_values)}"
            )
            return errors
    elif f.kind == Kind.LIST_OF_ENUM:
        if not isinstance(value, list):
            type_error("a list")
            return errors
        for item in value:
            if not isinstance(item, str) or item not in f.allowed_values:
                errors.append(
                    f"field {f.name!r} violates rule 'allowed_values': {item!r} is "
                    f"not one of the allowed values: {', '.join(f.allowed_values)}"
                )
        return errors
    elif f.kind == Kind.LIST_OF_STRING:
        if not isinstance(value, list) or any(not isinstance(i, str) for i in value):
            type_error("a list of strings")
            return errors

    if f.minimum is not None or f.maximum is not None:
        numbers = value if isinstance(value, list) else [value]
        for number in numbers:
            if not isinstance(number, (int, float)):
                continue
            if f.minimum is not None and number < f.minimum:
                errors.append(
                    f"field {f.name!r} violates rule 'minimum': {number} is below "
                    f"the minimum {f.minimum}"
                )
            if f.maximum is not None and number > f.maximum:
                errors.append(
                    f"field {f.name!r} violates rule 'maximum': {number} is above "
                    f"the maximum {f.maximum}"
                )

    if f.no_commas:
        texts = value if isinstance(value, list) else [value]
        for text in texts:
            if isinstance(text, str) and "," in text:
                errors.append(
                    f"field {f.name!r} violates rule 'no_commas': commas are not "
                    "allowed in any field; separate items with semicolons"
                )
    return errors


def validate_payload(payload: dict, schema: Iterable[FieldSchema]) -> list[str]:
    """Validate one tool-call payload against a schema set.

    Returns the error list; an empty list means the payload conforms.
    This is the single write gate: no extraction is persisted unless it
    passed here.
    """
    fields = {f.name: f for f in schema}
    errors: list[str] = []

    if not isinstance(payload, dict):
        return ["payload violates rule 'shape': expected a JSON object"]

    for name in payload:
        if name not in fields:
            errors.append(
                f"field {name!r} violates rule 'known_fields': it is not part of "
                "the schema"
            )

    rules: set[str] = set()
    for f in fields.values():
        rules.update(f.cross_field_rules)
        present = name_present = f.name in payload
        value = payload.get(f.name)
        if f.required and (not present or value is None):
            errors.append(
                f"field {f.name!r} violates rule 'required': a value must be "
                "provided"
            )
            continue
        if not name_present or value is None:
            if value is None and name_present and not f.nullable:
                errors.append(
                    f"field {f.name!r} violates rule 'nullable': null is not "
                    "allowed"
                )
            continue
        errors.extend(_check_value(f, value))

    for rule in sorted(rules):
        errors.extend(CROSS_FIELD_RULES[rule](payload))
    return errors
