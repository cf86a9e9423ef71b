"""Constraint checks over individuals and whole datasets.

Violations are data, never exceptions: a full report is always produced.
Draft mode softens cardinality under-counts into warnings so partially
entered experiments can still be saved; an over-count against an exact
cardinality is always a violation.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import builtin
from .ontology import Dataset, Individual, Iri, Ontology, Restriction

CARDINALITY_EXACT = "CardinalityExact"
CARDINALITY_MIN = "CardinalityMin"
FILLER_TYPE_MISMATCH = "FillerTypeMismatch"
DANGLING_REFERENCE = "DanglingReference"
TEMPORAL_ORDER = "TemporalOrder"
VALUE_RANGE = "ValueRange"

_NONNEGATIVE_CLASSES = (
    builtin.FLUENCE,
    builtin.OM_ABSORBED_DOSE,
    builtin.OM_ACTIVITY,
)


@dataclass(frozen=True)
class Violation:
    subject: Iri
    rule: str
    property: Iri | None
    expected: str
    found: str
    message: str

    def sort_key(self):
        return (str(self.subject), self.rule, str(self.property or ""))

    def to_dict(self) -> dict:
        return {
            "subject": str(self.subject),
            "rule": self.rule,
            "property": str(self.property) if self.property else None,
            "expected": self.expected,
            "found": self.found,
            "message": self.message,
        }

    def render(self) -> str:
        prop = f" property={self.property}" if self.property else ""
        return (
            f"{self.rule} subject={self.subject}{prop} "
            f"expected={self.expected!r} found={self.found!r} :: {self.message}"
        )


@dataclass
class Report:
    violations: list[Violation]
    warnings: list[Violation]
    checked_subjects: int

    def to_dict(self) -> dict:
        return {
            "violations": [v.to_dict() for v in self.violations],
            "warnings": [v.to_dict() for v in self.warnings],
            "checkedSubjects": self.checked_subjects,
        }

    def to_text(self) -> str:
        lines = [f"checked {self.checked_subjects} subject(s)"]
        lines += [f"VIOLATION {v.render()}" for v in self.violations]
        lines += [f"WARNING {v.render()}" for v in self.warnings]
        lines.append(
            f"{len(self.violations)} violation(s), {len(self.warnings)} warning(s)"
        )
        return "\n".join(lines)


def _known_types(ind: Individual, ontology: Ontology) -> list[Iri]:
    return sorted(
        {
            ontology.resolve_class(t)
            for t in ind.types
            if ontology.has_class(t)
        },
        key=str,
    )


def _target_satisfies(target: Individual, filler: Iri, ontology: Ontology) -> bool:
    return any(
        ontology.is_subclass_of(t, filler)
        for t in target.types
        if ontology.has_class(t)
    )


def _instants_for(ind: Individual, prop: Iri, ds: Dataset) -> list:
    values = []
    for target_iri in sorted(ind.objects_for(prop), key=str):
        target = ds.get(target_iri)
        if target is None:
            continue
        for literal in target.values_for():
            if literal.datatype == "dateTime":
                values.append(literal.as_instant())
    return values


def validate_individual(
    ind: Individual, ds: Dataset, ontology: Ontology
) -> list[Violation]:
    """Check one individual against the effective restrictions of its types."""
    violations: list[Violation] = []
    types = _known_types(ind, ontology)

    restrictions: list[Restriction] = []
    for class_iri in types:
        for restriction in ontology.effective_restrictions(class_iri):
            if restriction not in restrictions:
                restrictions.append(restriction)

    by_property: dict[Iri, list[Restriction]] = {}
    for restriction in restrictions:
        by_property.setdefault(restriction.on_property, []).append(restriction)

    for prop in sorted(by_property, key=str):
        group = sorted(by_property[prop], key=Restriction.sort_key)
        targets = ind.objects_for(prop)
        for restriction in group:
            count = 0
            for target_iri in targets:
                target = ds.get(target_iri)
                if target is not None and _target_satisfies(
                    target, restriction.filler, ontology
                ):
                    count += 1
            if restriction.kind == "exactly" and count != restriction.cardinality:
                violations.append(
                    Violation(
                        ind.iri,
                        CARDINALITY_EXACT,
                        prop,
                        str(restriction.cardinality),
                        str(count),
                        f"{prop} expects exactly {restriction.cardinality} "
                        f"{restriction.filler} target(s), found {count}",
                    )
                )
            elif restriction.kind == "min" and count < restriction.cardinality:
                violations.append(
                    Violation(
                        ind.iri,
                        CARDINALITY_MIN,
                        prop,
                        str(restriction.cardinality),
                        str(count),
                        f"{prop} expects at least {restriction.cardinality} "
                        f"{restriction.filler} target(s), found {count}",
                    )
                )
        fillers = sorted({r.filler for r in group}, key=str)
        for target_iri in sorted(set(targets), key=str):
            target = ds.get(target_iri)
            if target is None:
                continue  # reported as a dangling reference at dataset level
            if not any(_target_satisfies(target, f, ontology) for f in fillers):
                violations.append(
                    Violation(
                        ind.iri,
                        FILLER_TYPE_MISMATCH,
                        prop,
                        " or ".join(str(f) for f in fillers),
                        ", ".join(str(t) for t in sorted(target.types, key=str)),
                        f"{target_iri} does not satisfy the filler of {prop}",
                    )
                )

    # start/completion instants of an exposure must be ordered
    if any(ontology.is_subclass_of(t, builtin.DUT_IRRADIATION) for t in types):
        starts = _instants_for(ind, builtin.HAS_START_TIME, ds)
        ends = _instants_for(ind, builtin.HAS_END_TIME, ds)
        if starts and ends and ends[0] < starts[0]:
            violations.append(
                Violation(
                    ind.iri,
                    TEMPORAL_ORDER,
                    builtin.HAS_END_TIME,
                    "hasEndTime >= hasStartTime",
                    f"start={starts[0].isoformat()} end={ends[0].isoformat()}",
                    "radiation exposure ends before it starts",
                )
            )

    # cumulated quantities cannot be negative
    if any(
        ontology.is_subclass_of(t, bound) for t in types for bound in _NONNEGATIVE_CLASSES
    ):
        for literal in ind.values_for():
            if literal.datatype in ("decimal", "double") and literal.as_float() < 0:
                violations.append(
                    Violation(
                        ind.iri,
                        VALUE_RANGE,
                        builtin.iedm("hasValue"),
                        ">= 0",
                        literal.lexical,
                        "cumulated quantities must be non-negative",
                    )
                )

    # role holders must be users
    has_role_type = any(
        ontology.is_subclass_of(t, role) for t in types for role in builtin.ROLE_CLASSES
    )
    if has_role_type and not any(
        ontology.is_subclass_of(t, builtin.USER) for t in types
    ):
        violations.append(
            Violation(
                ind.iri,
                FILLER_TYPE_MISMATCH,
                None,
                str(builtin.USER),
                ", ".join(str(t) for t in types),
                "a role holder must also be a user",
            )
        )

    return sorted(violations, key=Violation.sort_key)


def _softenable(violation: Violation) -> bool:
    """Cardinality under-counts may be softened to warnings in draft mode."""
    if violation.rule == CARDINALITY_MIN:
        return True
    if violation.rule == CARDINALITY_EXACT:
        try:
            return int(violation.found) < int(violation.expected)
        except ValueError:
            return False
    return False


def validate_dataset(ds: Dataset, ontology: Ontology, draft: bool = False) -> Report:
    """Per-individual checks plus dataset-wide reference integrity."""
    violations: list[Violation] = []
    warnings: list[Violation] = []
    for ind in ds:
        for violation in validate_individual(ind, ds, ontology):
            if draft and _softenable(violation):
                warnings.append(violation)
            else:
                violations.append(violation)
        for prop, target in sorted(
            ind.object_assertions, key=lambda p: (str(p[0]), str(p[1]))
        ):
            if ds.get(target) is None:
                violations.append(
                    Violation(
                        ind.iri,
                        DANGLING_REFERENCE,
                        prop,
                        "target individual present in dataset",
                        str(target),
                        f"{prop} points at {target}, which is not in the dataset",
                    )
                )
    return Report(
        sorted(violations, key=Violation.sort_key),
        sorted(warnings, key=Violation.sort_key),
        len(ds),
    )


__all__ = [
    "CARDINALITY_EXACT",
    "CARDINALITY_MIN",
    "DANGLING_REFERENCE",
    "FILLER_TYPE_MISMATCH",
    "Report",
    "TEMPORAL_ORDER",
    "VALUE_RANGE",
    "Violation",
    "validate_dataset",
    "validate_individual",
]
