import pytest

from irradkit import builtin
from irradkit.errors import TypeMismatch, UnknownClass
from irradkit.formgen import form_schema, materialize_submission
from irradkit.ontology import Dataset, Iri, load_builtin_ontology
from irradkit.turtle_io import (
    dataset_from_graph,
    graph_from_dataset,
    parse_turtle,
    serialize_turtle,
)
from irradkit.validation import validate_dataset


def _complete_experiment_values(ds):
    """A submission mirroring a fully specified experiment."""
    from irradkit.ontology import RadiationFieldSpec

    ds.mint_individual(builtin.DUT, Iri("iedm", "PCB5-run2017"))
    ds.mint_individual(builtin.IRRADIATION_FACILITY, Iri("iedm", "CERN_IRRAD"))
    RadiationFieldSpec((Iri("iedm", "Proton"),)).materialize(
        ds, Iri("iedm", "Protons_24GeV")
    )
    return {
        "iedm:hasIrradiationCategory": "iedm:PassiveStandardIrradiation",
        "expo:HasPart": {"iedm:hasRole": "iedm:Operator"},
        "iedm:hasResult": {"value": 3e17, "unit": "om:reciprocalSquareCentimetre"},
        "iedm:hasPart": {
            "iedm:hasDUT": "iedm:PCB5-run2017",
            "iedm:hasStartTime": "2018-03-30T12:00:00Z",
            "iedm:hasEndTime": "2018-11-12T18:00:00Z",
            "iedm:hasRadiationField": "iedm:Protons_24GeV",
        },
        "iedm:performedAt": "iedm:CERN_IRRAD",
    }


class TestFormSchema:
    def test_experiment_schema_has_one_category_select(self, ontology):
        schema = form_schema(builtin.IRRADIATION_EXPERIMENT, ontology)
        selects = [f for f in schema.fields if f.widget == "select"]
        assert len(selects) == 1
        (category,) = selects
        assert category.property_iri == builtin.HAS_IRRADIATION_CATEGORY
        assert category.min_count == 1 and category.max_count == 1
        assert set(category.options) == {
            builtin.PASSIVE_STANDARD_IRRADIATION,
            builtin.PASSIVE_CUSTOM_IRRADIATION,
            builtin.ACTIVE_IRRADIATION,
        }

    def test_dut_irradiation_schema(self, ontology):
        schema = form_schema(builtin.DUT_IRRADIATION, ontology)
        dut_field = schema.field_for(builtin.HAS_DUT)
        assert dut_field.widget == "reference"
        assert dut_field.min_count == 1 and dut_field.max_count == 1
        datetimes = [f for f in schema.fields if f.widget == "datetime"]
        assert {f.property_iri for f in datetimes} == {
            builtin.HAS_START_TIME,
            builtin.HAS_END_TIME,
        }

    def test_restriction_free_class_yields_empty_schema(self, ontology):
        assert form_schema(builtin.PARTICLE, ontology).fields == ()

    def test_quantity_fillers_become_number_with_unit(self, ontology):
        schema = form_schema(builtin.IRRADIATION_EXPERIMENT, ontology)
        assert schema.field_for(builtin.HAS_RESULT).widget == "number-with-unit"

    def test_unknown_class(self, ontology):
        with pytest.raises(UnknownClass):
            form_schema(Iri("iedm", "NoSuchClass"), ontology)

    def test_every_builtin_class_yields_a_schema(self, ontology):
        for cdef in ontology.classes():
            schema = form_schema(cdef.iri, ontology)
            for field in schema.fields:
                assert field.widget in (
                    "text",
                    "number-with-unit",
                    "datetime",
                    "select",
                    "reference",
                    "subform",
                )

    def test_required_field_count_matches_restrictions(self, ontology):
        for cdef in ontology.classes():
            schema = form_schema(cdef.iri, ontology)
            required = [f for f in schema.fields if f.min_count >= 1]
            restrictions = [
                r
                for r in ontology.effective_restrictions(cdef.iri)
                if r.cardinality >= 1
            ]
            assert len(required) == len(restrictions)

    def test_deterministic(self, ontology):
        once = form_schema(builtin.IRRADIATION_EXPERIMENT, ontology).to_dict()
        again = form_schema(
            builtin.IRRADIATION_EXPERIMENT, load_builtin_ontology()
        ).to_dict()
        assert once == again

    def test_nested_depth_switches_to_reference(self, ontology):
        nested = form_schema(builtin.IRRADIATION_EXPERIMENT, ontology, depth=2)
        assert nested.field_for(builtin.EXPO_HAS_PART).widget == "reference"

    def test_custom_irradiation_gets_text_requirements(self, ontology):
        schema = form_schema(builtin.PASSIVE_CUSTOM_IRRADIATION, ontology)
        assert schema.field_for(builtin.HAS_TECHNICAL_REQUIREMENTS).widget == "text"


class TestMaterializeSubmission:
    def test_complete_submission_is_clean(self, ontology):
        ds = Dataset(ontology)
        values = _complete_experiment_values(ds)
        schema = form_schema(builtin.IRRADIATION_EXPERIMENT, ontology)
        result = materialize_submission(
            schema, values, ds, ontology, Iri("iedm", "Submitted")
        )
        assert not isinstance(result, list), [v.render() for v in result]
        assert result.types == {builtin.IRRADIATION_EXPERIMENT}
        assert ds.get(Iri("iedm", "Submitted")) is not None

    def test_missing_category_reports_exactly_one_violation(self, ontology):
        ds = Dataset(ontology)
        values = _complete_experiment_values(ds)
        del values["iedm:hasIrradiationCategory"]
        schema = form_schema(builtin.IRRADIATION_EXPERIMENT, ontology)
        result = materialize_submission(
            schema, values, ds, ontology, Iri("iedm", "Submitted")
        )
        assert isinstance(result, list)
        assert [v.rule for v in result] == ["CardinalityExact"]
        assert ds.get(Iri("iedm", "Submitted")) is None

    def test_empty_schema_empty_values(self, ontology):
        ds = Dataset(ontology)
        schema = form_schema(builtin.PARTICLE, ontology)
        result = materialize_submission(schema, {}, ds, ontology, Iri("iedm", "P1"))
        assert not isinstance(result, list)
        assert result.types == {builtin.PARTICLE}

    def test_select_value_must_be_an_option(self, ontology):
        ds = Dataset(ontology)
        schema = form_schema(builtin.IRRADIATION_EXPERIMENT, ontology)
        with pytest.raises(TypeMismatch):
            materialize_submission(
                schema,
                {"iedm:hasIrradiationCategory": "iedm:Particle"},
                ds,
                ontology,
                Iri("iedm", "Bad"),
            )

    def test_datetime_shape_checked(self, ontology):
        ds = Dataset(ontology)
        schema = form_schema(builtin.DUT_IRRADIATION, ontology)
        with pytest.raises(TypeMismatch):
            materialize_submission(
                schema,
                {"iedm:hasStartTime": "not-a-time"},
                ds,
                ontology,
                Iri("iedm", "Bad"),
            )

    def test_round_trip_through_turtle(self, ontology):
        ds = Dataset(ontology)
        values = _complete_experiment_values(ds)
        schema = form_schema(builtin.IRRADIATION_EXPERIMENT, ontology)
        result = materialize_submission(
            schema, values, ds, ontology, Iri("iedm", "Submitted")
        )
        assert not isinstance(result, list)
        text = serialize_turtle(graph_from_dataset(ds, ontology))
        back, issues = dataset_from_graph(parse_turtle(text), ontology)
        assert issues == []
        report = validate_dataset(back, ontology)
        assert report.violations == []
