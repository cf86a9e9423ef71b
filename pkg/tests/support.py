"""Shared helpers: minimal valid instances and randomized datasets."""

from __future__ import annotations

import random

from irradkit.ontology import (
    Dataset,
    HAS_VALUE,
    Individual,
    Iri,
    Literal,
    Ontology,
)


class SeedBuilder:
    """Builds a minimal dataset in which an individual of a class is valid.

    Every effective restriction is satisfied by recursively instantiating the
    filler class, so the resulting dataset validates clean and a single
    mutation breaks exactly one restriction.
    """

    def __init__(self, ontology: Ontology):
        self.ontology = ontology
        self.ds = Dataset(ontology)
        self._n = 0

    def fresh_iri(self, hint: str) -> Iri:
        self._n += 1
        return Iri("iedm", f"Seed_{hint}_{self._n}")

    def instantiate(self, class_iri: Iri) -> Individual:
        ind = self.ds.mint_individual(class_iri, self.fresh_iri(class_iri.local))
        for restriction in self.ontology.effective_restrictions(class_iri):
            for _ in range(restriction.cardinality):
                target = self.instantiate(restriction.filler)
                self.ds.assert_statement(ind, restriction.on_property, target.iri)
        return ind


def declared_restrictions(ontology: Ontology):
    """(class, restriction) pairs as declared, not inherited."""
    for cdef in ontology.classes():
        for restriction in cdef.restrictions:
            yield cdef.iri, restriction


_DATATYPE_SAMPLES = {
    "string": ['plain', 'with "quotes"', "tab\tand\nnewline", "backslash \\ here"],
    "decimal": ["0", "12.5", "-3.25", "42"],
    "double": ["3e17", "-1.5e-3", "2.0", "1e0"],
    "dateTime": ["2018-03-30T12:00:00Z", "2020-01-01T00:00:00Z"],
    "boolean": ["true", "false"],
}


def random_dataset(rng: random.Random, ontology: Ontology) -> Dataset:
    """A small dataset with arbitrary types, references and literals."""
    ds = Dataset(ontology)
    class_pool = [c.iri for c in ontology.classes()]
    prop_pool = [p.iri for p in ontology.properties() if p.kind == "object"]
    names = [Iri("iedm", f"R{i}") for i in range(rng.randint(0, 8))]
    for name in names:
        ind = ds.mint_individual(rng.choice(class_pool), name)
        if rng.random() < 0.3:
            ds.add_type(ind, rng.choice(class_pool))
    for name in names:
        ind = ds.get(name)
        for _ in range(rng.randint(0, 3)):
            ds.assert_statement(
                ind, rng.choice(prop_pool), rng.choice(names)
            )
        for _ in range(rng.randint(0, 2)):
            datatype = rng.choice(list(_DATATYPE_SAMPLES))
            lexical = rng.choice(_DATATYPE_SAMPLES[datatype])
            ds.assert_statement(ind, HAS_VALUE, Literal(lexical, datatype))
    return ds


def dataset_state(ds: Dataset) -> dict:
    """Order-insensitive snapshot of types and assertions, for comparisons."""
    return {
        str(ind.iri): (
            frozenset(map(str, ind.types)),
            frozenset((str(p), str(t)) for p, t in ind.object_assertions),
            frozenset((str(p), str(lit)) for p, lit in ind.data_assertions),
        )
        for ind in ds
    }
