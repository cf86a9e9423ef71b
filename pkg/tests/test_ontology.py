import pytest

from irradkit import builtin
from irradkit.errors import (
    AlreadyExists,
    CyclicHierarchy,
    FrozenClass,
    LiteralOnObjectProperty,
    ObjectOnDataProperty,
    UnknownClass,
    UnknownProperty,
    ValidationError,
)
from irradkit.ontology import (
    Dataset,
    HAS_VALUE,
    Iri,
    Literal,
    OWL_THING,
    QuantityValue,
    RadiationFieldSpec,
    Restriction,
    TimePosition,
    load_builtin_ontology,
)


class TestIri:
    def test_render_and_parse(self):
        iri = Iri.parse("iedm:FCC-Radmon")
        assert str(iri) == "iedm:FCC-Radmon"
        assert iri.prefix == "iedm" and iri.local == "FCC-Radmon"

    @pytest.mark.parametrize("bad", ["nope:Thing", "iedm:", "iedm:1abc", "iedm:a b"])
    def test_rejects_bad_names(self, bad):
        with pytest.raises(ValueError):
            Iri.parse(bad)

    def test_underscore_locals_are_fine(self):
        assert str(Iri.parse("iedm:_3e17_protons_per_square_cm")).endswith("_cm")


class TestLiteral:
    def test_lexical_is_verbatim(self):
        assert Literal("3e17", "double").lexical == "3e17"

    @pytest.mark.parametrize(
        "lexical,datatype",
        [("abc", "double"), ("x", "decimal"), ("maybe", "boolean"), ("2018", "dateTime")],
    )
    def test_bad_lexicals_rejected(self, lexical, datatype):
        with pytest.raises(ValueError):
            Literal(lexical, datatype)

    def test_datetime_must_be_utc(self):
        with pytest.raises(ValueError):
            Literal("2018-03-30T12:00:00+02:00", "dateTime")
        Literal("2018-03-30T12:00:00Z", "dateTime")


class TestQuantityValue:
    def test_negative_fluence_rejected(self):
        with pytest.raises(ValidationError):
            QuantityValue(-1.0, builtin.FLUENCE, builtin.UNIT_PER_SQUARE_CENTIMETRE)

    def test_relative_error_range(self):
        with pytest.raises(ValidationError):
            QuantityValue(
                1.0,
                builtin.FLUENCE,
                builtin.UNIT_PER_SQUARE_CENTIMETRE,
                relative_error=1.5,
            )

    def test_momentum_may_be_any_sign(self):
        QuantityValue(24.0, builtin.RELATIVISTIC_MOMENTUM, builtin.UNIT_GIGAELECTRONVOLT_PER_C)


class TestTimePosition:
    def test_minute_precision_accepted(self):
        assert TimePosition("2018-03-30T12:00Z").instant.hour == 12

    def test_naive_instant_rejected(self):
        with pytest.raises(ValueError):
            TimePosition("2018-03-30T12:00:00")


class TestBuiltinGraph:
    def test_cumulated_quantities_chain(self, ontology):
        assert ontology.is_subclass_of(builtin.FLUENCE, builtin.CUMULATED_QUANTITY)
        assert ontology.is_subclass_of(builtin.ABSORBED_DOSE, builtin.CUMULATED_QUANTITY)
        assert ontology.is_subclass_of(
            builtin.CUMULATED_QUANTITY, builtin.DOSIMETRIC_QUANTITY
        )

    def test_user_has_both_agent_parents(self, ontology):
        supers = ontology.class_def(builtin.USER).superclasses
        assert supers == {builtin.EXPO_SENTIENT_AGENT, builtin.FOAF_AGENT}

    def test_every_iedm_class_reaches_a_foreign_ancestor(self, ontology):
        for cdef in ontology.classes():
            if cdef.iri.prefix != "iedm":
                continue
            closure = ontology.superclass_closure(cdef.iri)
            assert any(a.prefix != "iedm" for a in closure), cdef.iri


    def test_every_documented_class_is_present(self, ontology):
        expected = [
            "iedm:IrradiationExperiment", "iedm:IrradiationExperimentObject",
            "iedm:DUT", "iedm:RadiationField", "iedm:SingularField",
            "iedm:MixedField", "iedm:Particle", "iedm:DosimetricQuantity",
            "iedm:CumulatedQuantity", "iedm:Fluence", "iedm:AbsorbedDose",
            "iedm:DUTIrradiation", "iedm:InteractionLength",
            "iedm:InteractionLengthOccupancy", "iedm:Element", "iedm:Compound",
            "iedm:Layer", "iedm:User", "iedm:IrradiationFacilityCoordinator",
            "iedm:IrradiationFacilityManager", "iedm:IrradiationFacilityUser",
            "iedm:Operator", "iedm:ResponsiblePerson",
            "iedm:PassiveStandardIrradiation", "iedm:PassiveCustomIrradiation",
            "iedm:ActiveIrradiation", "iedm:AdminInfoIrradiationExperiment",
            "iedm:TechnicalRequirements", "iedm:IrradiationFacility",
            "iedm:TimePosition", "iedm:RelativisticMomentum",
            "expo:Object", "expo:SentientAgent", "expo:SubjectRole", "expo:User",
            "expo:AdminInfoExperiment", "expo:ProcedureExecuteExperiment",
            "expo:MeasurementError", "foaf:Agent", "om:Quantity", "om:Unit",
            "om:Energy", "om:AbsorbedDose", "om:Activity",
        ]
        present = {str(c.iri) for c in ontology.classes()}
        missing = [name for name in expected if name not in present]
        assert missing == []

    def test_foreign_anchors_are_annotated(self, ontology):
        for cdef in ontology.classes():
            if cdef.iri.prefix in ("expo", "om", "foaf"):
                assert "anchor" in cdef.comment.lower()

    def test_reflexive_and_transitive_by_enumeration(self, ontology):
        classes = [c.iri for c in ontology.classes()]
        assert len(classes) < 100
        for a in classes:
            assert ontology.is_subclass_of(a, a)
        for a in classes:
            for b in ontology.superclass_closure(a):
                for c in ontology.superclass_closure(b):
                    assert ontology.is_subclass_of(a, c)

    def test_acyclic(self, ontology):
        for cdef in ontology.classes():
            for sup in cdef.superclasses:
                assert not ontology.is_subclass_of(sup, cdef.iri) or sup == cdef.iri

    def test_operator_chain(self, ontology):
        assert ontology.is_subclass_of(builtin.OPERATOR, builtin.FACILITY_USER)
        assert ontology.is_subclass_of(builtin.FACILITY_USER, builtin.USER)
        assert ontology.is_subclass_of(builtin.OPERATOR, builtin.FOAF_AGENT)

    def test_dut_is_not_an_agent(self, ontology):
        assert not ontology.is_subclass_of(builtin.DUT, builtin.FOAF_AGENT)

    def test_unknown_class_raises(self, ontology):
        with pytest.raises(UnknownClass):
            ontology.is_subclass_of(Iri("iedm", "NoSuchClass"), builtin.USER)

    def test_alias_spellings_resolve(self, ontology):
        assert ontology.resolve_class(Iri("iedm", "DUTirradiation")) == builtin.DUT_IRRADIATION
        assert (
            ontology.resolve_class(Iri("iedm", "DUTirradiationExperiment"))
            == builtin.DUT_IRRADIATION
        )


class TestForeignImmutability:
    def test_foreign_superclass_rejected(self, ontology):
        before = set(ontology.class_def(builtin.FOAF_AGENT).superclasses)
        with pytest.raises(FrozenClass):
            ontology.add_superclass(builtin.FOAF_AGENT, builtin.EXPO_OBJECT)
        assert ontology.class_def(builtin.FOAF_AGENT).superclasses == before

    def test_foreign_restriction_rejected(self, ontology):
        restriction = Restriction.some(builtin.HAS_ROLE, builtin.USER)
        before = list(ontology.class_def(builtin.OM_QUANTITY).restrictions)
        with pytest.raises(FrozenClass):
            ontology.add_restriction(builtin.OM_QUANTITY, restriction)
        assert ontology.class_def(builtin.OM_QUANTITY).restrictions == before

    def test_iedm_classes_stay_extensible(self, ontology):
        from irradkit.ontology import ClassDef

        ontology.add_class(ClassDef(Iri("iedm", "GammaField"), {builtin.RADIATION_FIELD}))
        assert ontology.is_subclass_of(Iri("iedm", "GammaField"), builtin.RADIATION_FIELD)

    def test_cycles_rejected(self, ontology):
        with pytest.raises(CyclicHierarchy):
            ontology.add_superclass(builtin.RADIATION_FIELD, builtin.SINGULAR_FIELD)


class TestEffectiveRestrictions:
    def test_experiment_contains_the_documented_constraints(self, ontology):
        found = {
            (str(r.on_property), r.kind, r.cardinality, str(r.filler))
            for r in ontology.effective_restrictions(builtin.IRRADIATION_EXPERIMENT)
        }
        assert (
            "iedm:hasIrradiationCategory",
            "exactly",
            1,
            "expo:ProcedureExecuteExperiment",
        ) in found
        assert ("iedm:hasResult", "min", 1, "iedm:CumulatedQuantity") in found
        assert ("expo:HasPart", "exactly", 1, "iedm:AdminInfoIrradiationExperiment") in found

    def test_particle_has_none(self, ontology):
        assert ontology.effective_restrictions(builtin.PARTICLE) == []

    def test_monotone_under_inheritance(self, ontology):
        for cdef in ontology.classes():
            own = set(map(Restriction.sort_key, ontology.effective_restrictions(cdef.iri)))
            for parent in cdef.superclasses:
                inherited = set(
                    map(Restriction.sort_key, ontology.effective_restrictions(parent))
                )
                assert inherited <= own

    def test_deterministic_order(self, ontology):
        once = ontology.effective_restrictions(builtin.IRRADIATION_EXPERIMENT)
        again = load_builtin_ontology().effective_restrictions(
            builtin.IRRADIATION_EXPERIMENT
        )
        assert [r.sort_key() for r in once] == [r.sort_key() for r in again]


class TestDataset:
    def test_mint_and_remint(self, ontology):
        ds = Dataset(ontology)
        ind = ds.mint_individual(builtin.DUT, Iri("iedm", "PCB5-run2017"))
        assert ind.types == {builtin.DUT}
        with pytest.raises(AlreadyExists):
            ds.mint_individual(builtin.DUT, Iri("iedm", "PCB5-run2017"))

    def test_mint_unknown_class(self, ontology):
        ds = Dataset(ontology)
        with pytest.raises(UnknownClass):
            ds.mint_individual(Iri("iedm", "NoSuchClass"), Iri("iedm", "x"))

    def test_assert_statement_idempotent(self, ontology):
        ds = Dataset(ontology)
        ind = ds.mint_individual(builtin.DUT_IRRADIATION, Iri("iedm", "irr"))
        target = ds.mint_individual(builtin.DUT, Iri("iedm", "dut"))
        ds.assert_statement(ind, builtin.HAS_DUT, target.iri)
        ds.assert_statement(ind, builtin.HAS_DUT, target.iri)
        assert ind.object_assertions.count((builtin.HAS_DUT, target.iri)) == 1

    def test_property_kind_mismatches(self, ontology):
        ds = Dataset(ontology)
        ind = ds.mint_individual(builtin.DUT, Iri("iedm", "dut"))
        with pytest.raises(LiteralOnObjectProperty):
            ds.assert_statement(ind, builtin.HAS_DUT, Literal("x"))
        with pytest.raises(ObjectOnDataProperty):
            ds.assert_statement(ind, HAS_VALUE, Iri("iedm", "dut"))
        with pytest.raises(UnknownProperty):
            ds.assert_statement(ind, Iri("iedm", "noSuchProperty"), Literal("x"))

    def test_only_data_property_is_has_value(self, ontology):
        data_props = [p.iri for p in ontology.properties() if p.kind == "data"]
        assert data_props == [HAS_VALUE]


class TestRadiationFieldSpec:
    def test_single_particle_is_singular(self):
        spec = RadiationFieldSpec((Iri("iedm", "Proton"),))
        assert spec.field_class == builtin.SINGULAR_FIELD

    def test_two_particles_are_mixed(self):
        spec = RadiationFieldSpec((Iri("iedm", "Proton"), Iri("iedm", "Neutron")))
        assert spec.field_class == builtin.MIXED_FIELD

    def test_zero_particles_rejected(self):
        with pytest.raises(ValidationError):
            RadiationFieldSpec(())

    def test_materialize_round_trip(self, ontology):
        ds = Dataset(ontology)
        momentum = QuantityValue(
            24.0, builtin.RELATIVISTIC_MOMENTUM, builtin.UNIT_GIGAELECTRONVOLT_PER_C
        )
        spec = RadiationFieldSpec((Iri("iedm", "Proton"),), beam_momentum=momentum)
        ind = spec.materialize(ds, Iri("iedm", "Protons_24GeV"))
        assert ind.types == {builtin.SINGULAR_FIELD}
        back = RadiationFieldSpec.from_individual(ind, ds)
        assert back.particles == spec.particles
        assert back.beam_momentum is not None
        assert back.beam_momentum.value == pytest.approx(24.0)

    def test_owl_thing_exists_as_root(self, ontology):
        assert ontology.class_def(OWL_THING).superclasses == set()
