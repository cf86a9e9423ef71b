"""Typed in-memory model for the irradiation-experiment vocabulary.

Holds the terminology level (classes, subclass graph, property restrictions)
and the assertion level (individuals with object/data assertions).  Classes
mirrored from foreign vocabularies are frozen once the built-in terminology
is loaded; only ``iedm``-namespace classes stay extensible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from datetime import datetime, timezone
from decimal import Decimal, InvalidOperation
from typing import Iterator, Union

from .errors import (
    AlreadyExists,
    CyclicHierarchy,
    FrozenClass,
    LiteralOnObjectProperty,
    ObjectOnDataProperty,
    UnknownClass,
    UnknownProperty,
    ValidationError,
)

# Registered namespace tokens and their default expansions.  The iedm and
# expo bases are deliberately configurable (set_prefix_expansion) so datasets
# can be re-pointed at a published copy of the vocabulary; the W3C, FOAF and
# OM bases are the canonical public ones.
DEFAULT_PREFIXES: dict[str, str] = {
    "iedm": "http://example.org/iedm#",
    "expo": "http://example.org/expo#",
    "om": "http://www.ontology-of-units-of-measure.org/resource/om-2/",
    "foaf": "http://xmlns.com/foaf/0.1/",
    "rdf": "http://www.w3.org/1999/02/22-rdf-syntax-ns#",
    "rdfs": "http://www.w3.org/2000/01/rdf-schema#",
    "owl": "http://www.w3.org/2002/07/owl#",
    "xsd": "http://www.w3.org/2001/XMLSchema#",
}

PREFIXES: dict[str, str] = dict(DEFAULT_PREFIXES)

_LOCAL_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_.-]*$")


def set_prefix_expansion(prefix: str, expansion: str) -> None:
    """Re-point a registered namespace token at a different base IRI."""
    if prefix not in PREFIXES:
        raise UnknownPrefixToken(prefix)
    PREFIXES[prefix] = expansion


class UnknownPrefixToken(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Iri:
    """A prefixed name in one of the registered namespaces."""

    prefix: str
    local: str

    def __post_init__(self):
        if self.prefix not in PREFIXES:
            raise ValueError(f"unregistered namespace token: {self.prefix!r}")
        if not _LOCAL_RE.match(self.local):
            raise ValueError(f"invalid local name: {self.local!r}")

    def __str__(self) -> str:
        return f"{self.prefix}:{self.local}"

    def expand(self) -> str:
        return PREFIXES[self.prefix] + self.local

    @classmethod
    def parse(cls, text: str) -> "Iri":
        prefix, sep, local = text.partition(":")
        if not sep:
            raise ValueError(f"not a prefixed name: {text!r}")
        return cls(prefix, local)


def iedm(local: str) -> Iri:
    return Iri("iedm", local)


def expo(local: str) -> Iri:
    return Iri("expo", local)


def om(local: str) -> Iri:
    return Iri("om", local)


def foaf(local: str) -> Iri:
    return Iri("foaf", local)


RDF_TYPE = Iri("rdf", "type")
OWL_THING = Iri("owl", "Thing")
HAS_VALUE = iedm("hasValue")

DATATYPES = ("decimal", "double", "string", "dateTime", "boolean")


def parse_instant(lexical: str) -> datetime:
    """Parse an ISO-8601 UTC instant ('Z' or '+00:00', minute or finer)."""
    text = lexical.strip()
    if text.endswith("Z"):
        text = text[:-1] + "+00:00"
    try:
        value = datetime.fromisoformat(text)
    except ValueError as exc:
        raise ValueError(f"not an ISO-8601 instant: {lexical!r}") from exc
    if "T" not in text:
        raise ValueError(f"instant needs a time component: {lexical!r}")
    if value.tzinfo is None or value.utcoffset() != timezone.utc.utcoffset(None):
        raise ValueError(f"instant must be UTC: {lexical!r}")
    return value


@dataclass(frozen=True, order=True)
class Literal:
    """A typed literal value; the lexical form is preserved verbatim."""

    lexical: str
    datatype: str = "string"

    def __post_init__(self):
        if self.datatype not in DATATYPES:
            raise ValueError(f"unsupported datatype: {self.datatype!r}")
        if self.datatype == "decimal":
            try:
                Decimal(self.lexical)
            except InvalidOperation as exc:
                raise ValueError(f"bad decimal lexical: {self.lexical!r}") from exc
        elif self.datatype == "double":
            float(self.lexical)
        elif self.datatype == "dateTime":
            parse_instant(self.lexical)
        elif self.datatype == "boolean" and self.lexical not in ("true", "false"):
            raise ValueError(f"bad boolean lexical: {self.lexical!r}")

    def as_float(self) -> float:
        if self.datatype not in ("decimal", "double"):
            raise ValueError(f"not numeric: {self}")
        return float(self.lexical)

    def as_instant(self) -> datetime:
        return parse_instant(self.lexical)

    def __str__(self) -> str:
        return f'"{self.lexical}"^^xsd:{self.datatype}'


@dataclass(frozen=True)
class TimePosition:
    """An ISO-8601 UTC instant, minute precision or finer."""

    timestamp: str

    def __post_init__(self):
        parse_instant(self.timestamp)

    @property
    def instant(self) -> datetime:
        return parse_instant(self.timestamp)


QUANTITY_KINDS = (
    iedm("Fluence"),
    om("AbsorbedDose"),
    om("Energy"),
    om("Activity"),
    iedm("RelativisticMomentum"),
)

NONNEGATIVE_KINDS = (iedm("Fluence"), om("AbsorbedDose"), om("Activity"))


@dataclass(frozen=True)
class QuantityValue:
    """A physical quantity with its unit and optional relative error."""

    value: float
    kind: Iri
    unit: Iri
    relative_error: float | None = None

    def __post_init__(self):
        if self.kind not in QUANTITY_KINDS:
            raise ValidationError(f"unsupported quantity kind: {self.kind}")
        if self.kind in NONNEGATIVE_KINDS and self.value < 0:
            raise ValidationError(f"{self.kind} must be non-negative, got {self.value}")
        if self.relative_error is not None and not 0.0 <= self.relative_error <= 1.0:
            raise ValidationError(
                f"relative error must lie in [0, 1], got {self.relative_error}"
            )


@dataclass(frozen=True)
class Restriction:
    """A cardinality constraint on an object property, with a class filler.

    The existential ("some") form is stored as min-1.  ``note`` is an
    audit annotation and takes no part in equality.
    """

    on_property: Iri
    kind: str  # "exactly" | "min"
    cardinality: int
    filler: Iri
    note: str = field(default="", compare=False)

    def __post_init__(self):
        if self.kind not in ("exactly", "min"):
            raise ValueError(f"bad restriction kind: {self.kind!r}")
        if self.cardinality < 0:
            raise ValueError("cardinality must be non-negative")
        if self.kind == "exactly" and self.cardinality < 1:
            raise ValueError("exact cardinality must be at least 1")

    @classmethod
    def some(cls, on_property: Iri, filler: Iri, note: str = "") -> "Restriction":
        return cls(on_property, "min", 1, filler, note)

    def sort_key(self):
        return (str(self.on_property), self.kind, self.cardinality, str(self.filler))


@dataclass
class ClassDef:
    iri: Iri
    superclasses: set[Iri] = field(default_factory=set)
    restrictions: list[Restriction] = field(default_factory=list)
    label: str = ""
    comment: str = ""


@dataclass(frozen=True)
class PropertyDef:
    iri: Iri
    kind: str  # "object" | "data"
    label: str = ""
    comment: str = ""


class Ontology:
    """Terminology: class definitions, subclass graph, property registry.

    After ``freeze_foreign()`` (called by the built-in loader) classes outside
    the iedm namespace reject any mutation; iedm classes stay extensible.
    """

    def __init__(self):
        self._classes: dict[Iri, ClassDef] = {}
        self._properties: dict[Iri, PropertyDef] = {}
        self._aliases: dict[Iri, Iri] = {}
        self.widget_hints: dict[Iri, str] = {}
        self._foreign_frozen = False
        self._closure_cache: dict[Iri, frozenset[Iri]] = {}

    # -- construction ------------------------------------------------------

    def add_class(self, cdef: ClassDef) -> None:
        if cdef.iri in self._classes:
            raise AlreadyExists(f"class already defined: {cdef.iri}")
        if self._foreign_frozen and cdef.iri.prefix != "iedm":
            raise FrozenClass(f"cannot define foreign class {cdef.iri} after load")
        for sup in cdef.superclasses:
            if sup not in self._classes:
                raise UnknownClass(f"unknown superclass: {sup}")
        self._classes[cdef.iri] = cdef
        self._closure_cache.clear()

    def add_superclass(self, sub: Iri, sup: Iri) -> None:
        cdef = self._require(sub)
        self._check_mutable(cdef.iri)
        self._require(self.resolve_class(sup))
        sup = self.resolve_class(sup)
        if sub == sup or sub in self.superclass_closure(sup):
            raise CyclicHierarchy(f"{sub} <= {sup} would close a cycle")
        cdef.superclasses.add(sup)
        self._closure_cache.clear()

    def add_restriction(self, class_iri: Iri, restriction: Restriction) -> None:
        cdef = self._require(class_iri)
        self._check_mutable(cdef.iri)
        if restriction.on_property not in self._properties:
            raise UnknownProperty(f"unknown property: {restriction.on_property}")
        if restriction.filler not in self._classes:
            raise UnknownClass(f"unknown filler class: {restriction.filler}")
        if restriction not in cdef.restrictions:
            cdef.restrictions.append(restriction)

    def add_property(self, pdef: PropertyDef) -> None:
        if pdef.iri in self._properties:
            raise AlreadyExists(f"property already defined: {pdef.iri}")
        self._properties[pdef.iri] = pdef

    def add_alias(self, alias: Iri, canonical: Iri) -> None:
        self._require(canonical)
        self._aliases[alias] = canonical

    def freeze_foreign(self) -> None:
        self._foreign_frozen = True

    def _check_mutable(self, iri: Iri) -> None:
        if self._foreign_frozen and iri.prefix != "iedm":
            raise FrozenClass(f"foreign class is frozen: {iri}")

    # -- lookup ------------------------------------------------------------

    def resolve_class(self, iri: Iri) -> Iri:
        """Map read aliases onto the canonical class name."""
        return self._aliases.get(iri, iri)

    def has_class(self, iri: Iri) -> bool:
        return self.resolve_class(iri) in self._classes

    def class_def(self, iri: Iri) -> ClassDef:
        return self._require(self.resolve_class(iri))

    def _require(self, iri: Iri) -> ClassDef:
        try:
            return self._classes[iri]
        except KeyError:
            raise UnknownClass(f"unknown class: {iri}") from None

    def classes(self) -> Iterator[ClassDef]:
        for iri in sorted(self._classes, key=str):
            yield self._classes[iri]

    def property_def(self, iri: Iri) -> PropertyDef:
        try:
            return self._properties[iri]
        except KeyError:
            raise UnknownProperty(f"unknown property: {iri}") from None

    def has_property(self, iri: Iri) -> bool:
        return iri in self._properties

    def properties(self) -> Iterator[PropertyDef]:
        for iri in sorted(self._properties, key=str):
            yield self._properties[iri]

    # -- subclass reasoning --------------------------------------------------

    def superclass_closure(self, iri: Iri) -> frozenset[Iri]:
        """All classes reachable over the reflexive-transitive superclass link."""
        start = self.resolve_class(iri)
        self._require(start)
        cached = self._closure_cache.get(start)
        if cached is not None:
            return cached
        seen: set[Iri] = set()
        stack = [start]
        while stack:
            current = stack.pop()
            if current in seen:
                continue
            seen.add(current)
            stack.extend(self._classes[current].superclasses)
        result = frozenset(seen)
        self._closure_cache[start] = result
        return result

    def is_subclass_of(self, sub: Iri, sup: Iri) -> bool:
        sup = self.resolve_class(sup)
        self._require(sup)
        return sup in self.superclass_closure(sub)

    def subclasses(self, iri: Iri) -> list[Iri]:
        """Strict subclasses, canonical order."""
        target = self.resolve_class(iri)
        self._require(target)
        found = [
            c.iri
            for c in self.classes()
            if c.iri != target and target in self.superclass_closure(c.iri)
        ]
        return sorted(found, key=str)

    def leaf_subclasses(self, iri: Iri) -> list[Iri]:
        """Strict subclasses that themselves have no subclasses."""
        subs = set(self.subclasses(iri))
        return sorted(
            (c for c in subs if not any(s in subs for s in self._children(c))),
            key=str,
        )

    def _children(self, iri: Iri) -> list[Iri]:
        return [c.iri for c in self._classes.values() if iri in c.superclasses]

    def effective_restrictions(self, iri: Iri) -> list[Restriction]:
        """Own plus inherited restrictions, deduplicated, deterministic order."""
        merged: list[Restriction] = []
        for ancestor in self.superclass_closure(iri):
            for r in self._classes[ancestor].restrictions:
                if r not in merged:
                    merged.append(r)
        return sorted(merged, key=Restriction.sort_key)


# -- assertions --------------------------------------------------------------

AssertionValue = Union[Iri, Literal]


@dataclass
class Individual:
    """A named instance with its types and assertions."""

    iri: Iri
    types: set[Iri]
    object_assertions: list[tuple[Iri, Iri]] = field(default_factory=list)
    data_assertions: list[tuple[Iri, Literal]] = field(default_factory=list)

    def objects_for(self, prop: Iri) -> list[Iri]:
        return [target for p, target in self.object_assertions if p == prop]

    def values_for(self, prop: Iri = HAS_VALUE) -> list[Literal]:
        return [lit for p, lit in self.data_assertions if p == prop]

    def copy(self) -> "Individual":
        return Individual(
            self.iri,
            set(self.types),
            list(self.object_assertions),
            list(self.data_assertions),
        )


class Dataset:
    """A mutable set of individuals governed by one ontology.

    Writes are expected to come from a single writer at a time; reads over a
    snapshot are safe.  Iteration order is canonical (sorted by name) so that
    downstream output is reproducible.
    """

    def __init__(self, ontology: Ontology):
        self.ontology = ontology
        self._individuals: dict[Iri, Individual] = {}

    def __len__(self) -> int:
        return len(self._individuals)

    def __contains__(self, iri: Iri) -> bool:
        return iri in self._individuals

    def __iter__(self) -> Iterator[Individual]:
        for iri in sorted(self._individuals, key=str):
            yield self._individuals[iri]

    def get(self, iri: Iri) -> Individual | None:
        return self._individuals.get(iri)

    def mint_individual(self, class_iri: Iri, iri: Iri) -> Individual:
        canonical = self.ontology.resolve_class(class_iri)
        if not self.ontology.has_class(canonical):
            raise UnknownClass(f"unknown class: {class_iri}")
        if iri in self._individuals:
            raise AlreadyExists(f"individual already exists: {iri}")
        ind = Individual(iri=iri, types={canonical})
        self._individuals[iri] = ind
        return ind

    def add_type(self, ind: Individual, class_iri: Iri) -> None:
        canonical = self.ontology.resolve_class(class_iri)
        if not self.ontology.has_class(canonical):
            raise UnknownClass(f"unknown class: {class_iri}")
        ind.types.add(canonical)

    def assert_statement(
        self, ind: Individual, prop: Iri, value: AssertionValue
    ) -> Individual:
        """Append an assertion; a repeated (property, value) pair is a no-op."""
        if not self.ontology.has_property(prop):
            raise UnknownProperty(f"unknown property: {prop}")
        pdef = self.ontology.property_def(prop)
        if isinstance(value, Literal):
            if pdef.kind != "data":
                raise LiteralOnObjectProperty(
                    f"{prop} is an object property; got literal {value}"
                )
            if (prop, value) not in ind.data_assertions:
                ind.data_assertions.append((prop, value))
        else:
            if pdef.kind != "object":
                raise ObjectOnDataProperty(
                    f"{prop} is a data property; got individual {value}"
                )
            if (prop, value) not in ind.object_assertions:
                ind.object_assertions.append((prop, value))
        return ind

    def retract_object(self, ind: Individual, prop: Iri, target: Iri) -> None:
        ind.object_assertions = [
            pair for pair in ind.object_assertions if pair != (prop, target)
        ]

    def remove_individual(self, iri: Iri) -> None:
        self._individuals.pop(iri, None)

    def clone(self) -> "Dataset":
        twin = Dataset(self.ontology)
        twin._individuals = {iri: ind.copy() for iri, ind in self._individuals.items()}
        return twin

    def merge_from(self, other: "Dataset") -> None:
        for ind in other:
            self._individuals[ind.iri] = ind.copy()


@dataclass(frozen=True)
class RadiationFieldSpec:
    """Convenience view of a radiation-field individual.

    One particle species means a singular field, several a mixed field; a
    field with no particles is rejected.
    """

    particles: tuple[Iri, ...]
    beam_momentum: QuantityValue | None = None

    def __post_init__(self):
        if not self.particles:
            raise ValidationError("a radiation field needs at least one particle")
        if (
            self.beam_momentum is not None
            and self.beam_momentum.kind != iedm("RelativisticMomentum")
        ):
            raise ValidationError("beam momentum must be a relativistic momentum")

    @property
    def field_class(self) -> Iri:
        return iedm("SingularField") if len(self.particles) == 1 else iedm("MixedField")

    def materialize(self, ds: Dataset, iri: Iri) -> Individual:
        """Create the field individual plus its particles (and momentum)."""
        ind = ds.get(iri) or ds.mint_individual(self.field_class, iri)
        for particle in self.particles:
            if particle not in ds:
                ds.mint_individual(iedm("Particle"), particle)
            ds.assert_statement(ind, iedm("hasParticle"), particle)
        if self.beam_momentum is not None:
            momentum_iri = Iri(iri.prefix, iri.local + "_momentum")
            if momentum_iri not in ds:
                momentum = ds.mint_individual(iedm("RelativisticMomentum"), momentum_iri)
                ds.assert_statement(
                    momentum,
                    HAS_VALUE,
                    Literal(repr(self.beam_momentum.value), "double"),
                )
                unit = self.beam_momentum.unit
                if unit not in ds:
                    ds.mint_individual(om("Unit"), unit)
                ds.assert_statement(momentum, iedm("hasUnit"), unit)
            ds.assert_statement(ind, iedm("hasBeamMomentum"), momentum_iri)
        return ind

    @classmethod
    def from_individual(cls, ind: Individual, ds: Dataset) -> "RadiationFieldSpec":
        particles = tuple(sorted(ind.objects_for(iedm("hasParticle")), key=str))
        momentum = None
        for target in ind.objects_for(iedm("hasBeamMomentum")):
            carrier = ds.get(target)
            if carrier is None:
                continue
            values = carrier.values_for()
            units = carrier.objects_for(iedm("hasUnit"))
            if values and units:
                momentum = QuantityValue(
                    values[0].as_float(), iedm("RelativisticMomentum"), units[0]
                )
        return cls(particles=particles, beam_momentum=momentum)


def load_builtin_ontology() -> Ontology:
    """Build a fresh copy of the built-in terminology."""
    from .builtin import build_ontology

    return build_ontology()


def is_subclass_of(sub: Iri, sup: Iri, ontology: Ontology) -> bool:
    return ontology.is_subclass_of(sub, sup)


def effective_restrictions(class_iri: Iri, ontology: Ontology) -> list[Restriction]:
    return ontology.effective_restrictions(class_iri)


def mint_individual(ds: Dataset, class_iri: Iri, iri: Iri) -> Individual:
    return ds.mint_individual(class_iri, iri)


def assert_statement(
    ds: Dataset, ind: Individual, prop: Iri, value: AssertionValue
) -> Individual:
    return ds.assert_statement(ind, prop, value)


__all__ = [
    "AssertionValue",
    "ClassDef",
    "Dataset",
    "DATATYPES",
    "DEFAULT_PREFIXES",
    "HAS_VALUE",
    "Individual",
    "Iri",
    "Literal",
    "NONNEGATIVE_KINDS",
    "OWL_THING",
    "Ontology",
    "PREFIXES",
    "PropertyDef",
    "QUANTITY_KINDS",
    "QuantityValue",
    "RDF_TYPE",
    "RadiationFieldSpec",
    "Restriction",
    "TimePosition",
    "assert_statement",
    "effective_restrictions",
    "expo",
    "foaf",
    "iedm",
    "is_subclass_of",
    "load_builtin_ontology",
    "mint_individual",
    "om",
    "parse_instant",
    "set_prefix_expansion",
]
