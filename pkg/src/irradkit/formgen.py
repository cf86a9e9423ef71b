"""Form schemas derived from class restrictions.

Widget inference is table-driven and deterministic; per-class hints embedded
in the built-in terminology override it.  Rules, in order:

1. a widget hint on the filler class wins (registry entities become
   ``reference`` pickers, free-text carriers become ``text``);
2. fillers under the time-position class render as ``datetime``;
3. fillers under the quantity class render as ``number-with-unit``;
4. fillers with two to eight leaf subclasses render as a ``select`` over
   those leaves;
5. anything else nests: ``subform`` for direct fields, ``reference`` when
   the schema itself is generated for nesting inside another form.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Mapping

from . import builtin
from .errors import TypeMismatch, ValidationError
from .ontology import (
    Dataset,
    HAS_VALUE,
    Individual,
    Iri,
    Literal,
    Ontology,
    Restriction,
    parse_instant,
)
from .validation import Violation, validate_individual

SELECT_OPTION_LIMIT = 8

WIDGETS = ("text", "number-with-unit", "datetime", "select", "reference", "subform")


@dataclass(frozen=True)
class FieldSpec:
    property_iri: Iri
    label: str
    widget: str
    min_count: int
    max_count: int | None = None
    options: tuple[Iri, ...] = ()
    target_class: Iri | None = None

    def __post_init__(self):
        if self.widget not in WIDGETS:
            raise ValidationError(f"unknown widget: {self.widget!r}")
        if self.max_count is not None and self.min_count > self.max_count:
            raise ValidationError("minCount must not exceed maxCount")
        if self.widget == "select" and not self.options:
            raise ValidationError("a select field needs options")

    def to_dict(self) -> dict:
        return {
            "propertyIri": str(self.property_iri),
            "label": self.label,
            "widget": self.widget,
            "minCount": self.min_count,
            "maxCount": self.max_count,
            "options": [str(o) for o in self.options],
            "targetClass": str(self.target_class) if self.target_class else None,
        }


@dataclass(frozen=True)
class FormSchema:
    class_iri: Iri
    fields: tuple[FieldSpec, ...] = field(default_factory=tuple)

    def field_for(self, property_iri: Iri) -> FieldSpec | None:
        for spec in self.fields:
            if spec.property_iri == property_iri:
                return spec
        return None

    def to_dict(self) -> dict:
        return {
            "classIri": str(self.class_iri),
            "fields": [spec.to_dict() for spec in self.fields],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _label_for(ontology: Ontology, restriction: Restriction) -> str:
    pdef = ontology.property_def(restriction.on_property)
    return pdef.label or restriction.on_property.local


def _widget_for(
    ontology: Ontology, filler: Iri, depth: int
) -> tuple[str, tuple[Iri, ...], Iri | None]:
    hint = ontology.widget_hints.get(filler)
    if hint is not None:
        return hint, (), filler
    if ontology.is_subclass_of(filler, builtin.TIME_POSITION):
        return "datetime", (), filler
    if ontology.is_subclass_of(filler, builtin.OM_QUANTITY):
        return "number-with-unit", (), filler
    leaves = ontology.leaf_subclasses(filler)
    if 2 <= len(leaves) <= SELECT_OPTION_LIMIT:
        return "select", tuple(leaves), filler
    if depth <= 1:
        return "subform", (), filler
    return "reference", (), filler


def form_schema(class_iri: Iri, ontology: Ontology, depth: int = 1) -> FormSchema:
    """Derive the data-entry schema for a class from its restrictions."""
    canonical = ontology.resolve_class(class_iri)
    fields = []
    for restriction in ontology.effective_restrictions(canonical):
        widget, options, target = _widget_for(ontology, restriction.filler, depth)
        if restriction.kind == "exactly":
            min_count, max_count = restriction.cardinality, restriction.cardinality
        else:
            min_count, max_count = restriction.cardinality, None
        fields.append(
            FieldSpec(
                property_iri=restriction.on_property,
                label=_label_for(ontology, restriction),
                widget=widget,
                min_count=min_count,
                max_count=max_count,
                options=options,
                target_class=target,
            )
        )
    return FormSchema(class_iri=canonical, fields=tuple(fields))


def _as_list(value: Any) -> list[Any]:
    if isinstance(value, (list, tuple)):
        return list(value)
    return [value]


def _materialize_value(
    spec: FieldSpec,
    value: Any,
    working: Dataset,
    ontology: Ontology,
    parent: Individual,
    child_iri: Iri,
) -> None:
    prop = spec.property_iri
    if spec.widget == "reference":
        if not isinstance(value, str):
            raise TypeMismatch(f"{prop}: a reference field expects an IRI string")
        working.assert_statement(parent, prop, Iri.parse(value))
    elif spec.widget == "select":
        if not isinstance(value, str):
            raise TypeMismatch(f"{prop}: a select field expects a class IRI string")
        chosen = Iri.parse(value)
        if chosen not in spec.options:
            raise TypeMismatch(f"{prop}: {value} is not one of the offered options")
        child = working.mint_individual(chosen, child_iri)
        working.assert_statement(parent, prop, child.iri)
    elif spec.widget == "datetime":
        if not isinstance(value, str):
            raise TypeMismatch(f"{prop}: a datetime field expects an ISO string")
        try:
            parse_instant(value)
        except ValueError as exc:
            raise TypeMismatch(f"{prop}: {exc}") from None
        child = working.mint_individual(builtin.TIME_POSITION, child_iri)
        working.assert_statement(child, HAS_VALUE, Literal(value, "dateTime"))
        working.assert_statement(parent, prop, child.iri)
    elif spec.widget == "number-with-unit":
        if not isinstance(value, Mapping) or "value" not in value:
            raise TypeMismatch(f"{prop}: expected a mapping with 'value' and 'unit'")
        try:
            magnitude = float(value["value"])
        except (TypeError, ValueError):
            raise TypeMismatch(f"{prop}: 'value' must be numeric") from None
        unit_text = value.get("unit")
        if not isinstance(unit_text, str):
            raise TypeMismatch(f"{prop}: 'unit' must be a unit IRI string")
        quantity_class = (
            Iri.parse(value["type"]) if isinstance(value.get("type"), str) else None
        ) or spec.target_class
        assert quantity_class is not None
        child = working.mint_individual(quantity_class, child_iri)
        working.assert_statement(child, HAS_VALUE, Literal(repr(magnitude), "double"))
        unit_iri = Iri.parse(unit_text)
        if unit_iri not in working:
            working.mint_individual(builtin.OM_UNIT, unit_iri)
        working.assert_statement(child, builtin.HAS_UNIT, unit_iri)
        working.assert_statement(parent, prop, child.iri)
    elif spec.widget == "subform":
        if not isinstance(value, Mapping):
            raise TypeMismatch(f"{prop}: a subform field expects a mapping of values")
        assert spec.target_class is not None
        sub_schema = form_schema(spec.target_class, ontology, depth=2)
        _materialize_into(sub_schema, value, working, ontology, child_iri)
        working.assert_statement(parent, prop, child_iri)
    elif spec.widget == "text":
        if not isinstance(value, str):
            raise TypeMismatch(f"{prop}: a text field expects a string")
        assert spec.target_class is not None
        child = working.mint_individual(spec.target_class, child_iri)
        working.assert_statement(child, HAS_VALUE, Literal(value, "string"))
        working.assert_statement(parent, prop, child.iri)
    else:  # pragma: no cover - the widget vocabulary is closed
        raise TypeMismatch(f"{prop}: no materialization for widget {spec.widget!r}")


def _materialize_into(
    schema: FormSchema,
    values: Mapping[str, Any],
    working: Dataset,
    ontology: Ontology,
    iri: Iri,
) -> Individual:
    ind = working.mint_individual(schema.class_iri, iri)
    for spec in schema.fields:
        raw = values.get(str(spec.property_iri))
        if raw is None:
            continue
        for position, value in enumerate(_as_list(raw), start=1):
            child_iri = Iri(
                iri.prefix, f"{iri.local}_{spec.property_iri.local}_{position}"
            )
            _materialize_value(spec, value, working, ontology, ind, child_iri)
    return ind


def materialize_submission(
    schema: FormSchema,
    values: Mapping[str, Any],
    ds: Dataset,
    ontology: Ontology,
    new_iri: Iri,
) -> Individual | list[Violation]:
    """Mint an individual from submitted values, keeping it only when clean.

    Returns the individual on success; on constraint violations the dataset
    is left untouched and the violations are returned instead.
    """
    working = ds.clone()
    before = {ind.iri for ind in ds}
    root = _materialize_into(schema, values, working, ontology, new_iri)
    violations: list[Violation] = []
    for ind in working:
        if ind.iri in before:
            continue
        violations.extend(validate_individual(ind, working, ontology))
    if violations:
        return sorted(violations, key=Violation.sort_key)
    ds.merge_from(working)
    resolved = ds.get(root.iri)
    assert resolved is not None
    return resolved


__all__ = [
    "FieldSpec",
    "FormSchema",
    "SELECT_OPTION_LIMIT",
    "WIDGETS",
    "form_schema",
    "materialize_submission",
]
