import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from irradkit import builtin
from irradkit.errors import TurtleSyntaxError, UnknownPrefix
from irradkit.ontology import Iri, Literal
from irradkit.turtle_io import (
    FullIri,
    Triple,
    dataset_from_graph,
    graph_from_dataset,
    parse_turtle,
    serialize_turtle,
)
from support import dataset_state, random_dataset

RDF_TYPE = Iri("rdf", "type")


class TestParser:
    def test_empty_input(self):
        assert parse_turtle("").triples == set()

    def test_single_type_triple(self):
        graph = parse_turtle(
            "@prefix iedm: <http://example.org/iedm#> .\n"
            "iedm:FCC-Radmon a iedm:IrradiationExperiment ."
        )
        assert graph.triples == {
            Triple(
                Iri("iedm", "FCC-Radmon"),
                RDF_TYPE,
                Iri("iedm", "IrradiationExperiment"),
            )
        }

    def test_missing_terminator(self):
        with pytest.raises(TurtleSyntaxError):
            parse_turtle(
                "@prefix iedm: <http://example.org/iedm#> .\niedm:x iedm:y iedm:z"
            )

    def test_undeclared_prefix(self):
        with pytest.raises(UnknownPrefix):
            parse_turtle("iedm:x iedm:y iedm:z .")

    def test_error_carries_position(self):
        try:
            parse_turtle("@prefix iedm: <http://example.org/iedm#> .\niedm:x % .")
        except TurtleSyntaxError as exc:
            assert exc.line == 2
            assert exc.column >= 8
        else:
            pytest.fail("expected a syntax error")

    def test_object_and_predicate_lists(self):
        graph = parse_turtle(
            "@prefix iedm: <http://example.org/iedm#> .\n"
            "iedm:s iedm:hasPart iedm:a , iedm:b ;\n"
            "    iedm:hasResult iedm:c ."
        )
        assert len(graph.triples) == 3

    def test_comments_and_typed_literals(self):
        graph = parse_turtle(
            "@prefix iedm: <http://example.org/iedm#> .  # header\n"
            "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n"
            'iedm:q iedm:hasValue "3e17"^^xsd:double .  # trailing\n'
        )
        (triple,) = graph.triples
        assert triple.object == Literal("3e17", "double")

    def test_bare_numbers_and_booleans(self):
        graph = parse_turtle(
            "@prefix iedm: <http://example.org/iedm#> .\n"
            "iedm:q iedm:hasValue 42 , 1.5 , 3e17 , true .\n"
        )
        objects = {t.object for t in graph.triples}
        assert objects == {
            Literal("42", "decimal"),
            Literal("1.5", "decimal"),
            Literal("3e17", "double"),
            Literal("true", "boolean"),
        }

    def test_full_iris_preserved_and_compressed(self):
        graph = parse_turtle(
            "<http://elsewhere.example/x> <http://elsewhere.example/p> "
            "<http://example.org/iedm#DUT> ."
        )
        (triple,) = graph.triples
        assert triple.subject == FullIri("http://elsewhere.example/x")
        assert triple.object == Iri("iedm", "DUT")

    def test_custom_declared_prefix_expands(self):
        graph = parse_turtle(
            "@prefix ex: <http://elsewhere.example/> .\nex:a ex:b ex:c ."
        )
        (triple,) = graph.triples
        assert triple.subject == FullIri("http://elsewhere.example/a")

    def test_unsupported_datatype_rejected(self):
        with pytest.raises(TurtleSyntaxError):
            parse_turtle(
                "@prefix iedm: <http://example.org/iedm#> .\n"
                "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n"
                'iedm:q iedm:hasValue "x"^^xsd:hexBinary .'
            )

    def test_string_escapes(self):
        graph = parse_turtle(
            "@prefix iedm: <http://example.org/iedm#> .\n"
            'iedm:q iedm:hasValue "line\\nbreak \\"quoted\\" tab\\t" .'
        )
        (triple,) = graph.triples
        assert triple.object.lexical == 'line\nbreak "quoted" tab\t'


class TestSerializer:
    def test_empty_graph(self):
        from irradkit.turtle_io import Graph

        assert serialize_turtle(Graph()) == ""

    def test_round_trip_golden(self, golden_text):
        graph = parse_turtle(golden_text)
        text = serialize_turtle(graph)
        assert parse_turtle(text).triples == graph.triples

    def test_byte_determinism_is_insertion_order_free(self, golden_text):
        graph = parse_turtle(golden_text)
        from irradkit.turtle_io import Graph

        shuffled = Graph()
        triples = list(graph.triples)
        random.Random(7).shuffle(triples)
        for triple in triples:
            shuffled.triples.add(triple)
        assert serialize_turtle(shuffled) == serialize_turtle(graph)

    def test_serialized_form_is_sorted(self, golden_text):
        text = serialize_turtle(parse_turtle(golden_text))
        lines = [l for l in text.splitlines() if l.startswith("@prefix")]
        assert lines == sorted(lines)
        assert text.endswith("\n")


    def test_totality_on_a_megabyte_of_noise(self):
        rng = random.Random(1)
        fragments = [
            "@prefix iedm: <http://example.org/iedm#> .\n",
            "iedm:a iedm:hasPart iedm:b .\n",
            '"unterminated\n',
            "<<<>>> |%$ ",
            "iedm:x a iedm:DUT ;\n",
            "# just a comment\n",
            "12.5 3e9 true false , ; .\n",
        ]
        blob = "".join(rng.choice(fragments) for _ in range(50000))
        assert len(blob.encode()) > 1_000_000
        try:
            parse_turtle(blob)
        except TurtleSyntaxError:
            pass

    def test_large_valid_input_parses(self):
        header = "@prefix iedm: <http://example.org/iedm#> .\n"
        body = "".join(
            f"iedm:s{i} a iedm:DUT ; iedm:hasPart iedm:s{i} .\n" for i in range(20000)
        )
        graph = parse_turtle(header + body)
        assert len(graph.triples) == 40000

    @given(st.text(max_size=2000))
    @settings(max_examples=200, deadline=None)
    def test_parser_totality(self, text):
        try:
            parse_turtle(text)
        except TurtleSyntaxError:
            pass


class TestDatasetMapping:
    def test_empty_graph_empty_dataset(self, ontology):
        from irradkit.turtle_io import Graph

        ds, issues = dataset_from_graph(Graph(), ontology)
        assert len(ds) == 0 and issues == []

    def test_type_triple_becomes_individual(self, ontology):
        graph = parse_turtle(
            "@prefix iedm: <http://example.org/iedm#> .\n"
            "iedm:PCB5-run2017 a iedm:DUT ."
        )
        ds, issues = dataset_from_graph(graph, ontology)
        ind = ds.get(Iri("iedm", "PCB5-run2017"))
        assert ind is not None and ind.types == {builtin.DUT}
        assert issues == []

    def test_unknown_class_warns_but_creates(self, ontology):
        graph = parse_turtle(
            "@prefix iedm: <http://example.org/iedm#> .\niedm:x a iedm:Bogus ."
        )
        ds, issues = dataset_from_graph(graph, ontology)
        assert len(ds) == 1
        assert len(issues) == 1 and issues[0].kind == "UnknownClass"

    def test_untyped_subject_warns(self, ontology):
        graph = parse_turtle(
            "@prefix iedm: <http://example.org/iedm#> .\niedm:x iedm:hasDUT iedm:y ."
        )
        ds, issues = dataset_from_graph(graph, ontology)
        assert {i.kind for i in issues} == {"UntypedSubject"}
        assert ds.get(Iri("iedm", "x")).types == {Iri("owl", "Thing")}

    def test_alias_type_normalized(self, ontology):
        graph = parse_turtle(
            "@prefix iedm: <http://example.org/iedm#> .\n"
            "iedm:x a iedm:DUTirradiationExperiment ."
        )
        ds, issues = dataset_from_graph(graph, ontology)
        assert ds.get(Iri("iedm", "x")).types == {builtin.DUT_IRRADIATION}
        assert issues == []

    def test_golden_round_trip_through_dataset(self, ontology, golden_text):
        graph = parse_turtle(golden_text)
        ds, _ = dataset_from_graph(graph, ontology)
        back = graph_from_dataset(ds, ontology)
        assert back.triples == graph.triples

    def test_randomized_datasets_round_trip(self, ontology):
        rng = random.Random(20180330)
        for _ in range(100):
            ds = random_dataset(rng, ontology)
            back, issues = dataset_from_graph(
                parse_turtle(serialize_turtle(graph_from_dataset(ds, ontology))),
                ontology,
            )
            assert issues == []
            assert dataset_state(back) == dataset_state(ds)

    def test_dataset_export_is_deterministic(self, ontology):
        rng = random.Random(99)
        ds = random_dataset(rng, ontology)
        once = serialize_turtle(graph_from_dataset(ds, ontology))
        again = serialize_turtle(graph_from_dataset(ds, ontology))
        assert once == again
