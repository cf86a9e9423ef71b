"""Built-in terminology for irradiation-experiment data management.

The iedm namespace carries the experiment-specific classes; classes from the
reused vocabularies (expo, om, foaf, owl) are embedded only as mirror anchors
so the subclass graph always reaches a foreign root, and they are frozen
against modification.  Every restriction carries a note stating the domain
rule it encodes, so each cardinality choice is auditable.
"""

from __future__ import annotations

from .ontology import (
    ClassDef,
    Iri,
    Ontology,
    PropertyDef,
    Restriction,
    OWL_THING,
    expo,
    foaf,
    iedm,
    om,
)

ANCHOR_NOTE = "Mirror anchor for a reused vocabulary class; frozen, never modified."

# iedm classes
IRRADIATION_EXPERIMENT = iedm("IrradiationExperiment")
IRRADIATION_EXPERIMENT_OBJECT = iedm("IrradiationExperimentObject")
DUT = iedm("DUT")
RADIATION_FIELD = iedm("RadiationField")
SINGULAR_FIELD = iedm("SingularField")
MIXED_FIELD = iedm("MixedField")
PARTICLE = iedm("Particle")
DOSIMETRIC_QUANTITY = iedm("DosimetricQuantity")
CUMULATED_QUANTITY = iedm("CumulatedQuantity")
FLUENCE = iedm("Fluence")
ABSORBED_DOSE = iedm("AbsorbedDose")
RELATIVISTIC_MOMENTUM = iedm("RelativisticMomentum")
DUT_IRRADIATION = iedm("DUTIrradiation")
INTERACTION_LENGTH = iedm("InteractionLength")
INTERACTION_LENGTH_OCCUPANCY = iedm("InteractionLengthOccupancy")
ELEMENT = iedm("Element")
COMPOUND = iedm("Compound")
LAYER = iedm("Layer")
TIME_POSITION = iedm("TimePosition")
USER = iedm("User")
FACILITY_COORDINATOR = iedm("IrradiationFacilityCoordinator")
FACILITY_MANAGER = iedm("IrradiationFacilityManager")
FACILITY_USER = iedm("IrradiationFacilityUser")
OPERATOR = iedm("Operator")
RESPONSIBLE_PERSON = iedm("ResponsiblePerson")
PASSIVE_STANDARD_IRRADIATION = iedm("PassiveStandardIrradiation")
PASSIVE_CUSTOM_IRRADIATION = iedm("PassiveCustomIrradiation")
ACTIVE_IRRADIATION = iedm("ActiveIrradiation")
ADMIN_INFO = iedm("AdminInfoIrradiationExperiment")
TECHNICAL_REQUIREMENTS = iedm("TechnicalRequirements")
IRRADIATION_FACILITY = iedm("IrradiationFacility")

ROLE_CLASSES = (
    FACILITY_COORDINATOR,
    FACILITY_MANAGER,
    FACILITY_USER,
    OPERATOR,
    RESPONSIBLE_PERSON,
)

IRRADIATION_CATEGORIES = (
    ACTIVE_IRRADIATION,
    PASSIVE_CUSTOM_IRRADIATION,
    PASSIVE_STANDARD_IRRADIATION,
)

# foreign anchors
EXPO_OBJECT = expo("Object")
EXPO_SENTIENT_AGENT = expo("SentientAgent")
EXPO_SUBJECT_ROLE = expo("SubjectRole")
EXPO_USER = expo("User")
EXPO_ADMIN_INFO_EXPERIMENT = expo("AdminInfoExperiment")
EXPO_PROCEDURE_EXECUTE_EXPERIMENT = expo("ProcedureExecuteExperiment")
EXPO_HAS_PART = expo("HasPart")
EXPO_MEASUREMENT_ERROR = expo("MeasurementError")
FOAF_AGENT = foaf("Agent")
OM_QUANTITY = om("Quantity")
OM_UNIT = om("Unit")
OM_ENERGY = om("Energy")
OM_ABSORBED_DOSE = om("AbsorbedDose")
OM_ACTIVITY = om("Activity")

# object properties
HAS_IRRADIATION_CATEGORY = iedm("hasIrradiationCategory")
HAS_RESULT = iedm("hasResult")
HAS_PART = iedm("hasPart")
HAS_DUT = iedm("hasDUT")
HAS_START_TIME = iedm("hasStartTime")
HAS_END_TIME = iedm("hasEndTime")
HAS_RADIATION_FIELD = iedm("hasRadiationField")
HAS_PARTICLE = iedm("hasParticle")
PERFORMED_AT = iedm("performedAt")
HAS_ROLE = iedm("hasRole")
HAS_UNIT = iedm("hasUnit")
HAS_MEASUREMENT_ERROR = iedm("hasMeasurementError")
HAS_TECHNICAL_REQUIREMENTS = iedm("hasTechnicalRequirements")
INSTALLED_OBJECT = iedm("installedObject")
HAS_BEAM_MOMENTUM = iedm("hasBeamMomentum")

# well-known unit individuals (OM names units as individuals)
UNIT_PER_SQUARE_CENTIMETRE = om("reciprocalSquareCentimetre")
UNIT_GRAY = om("gray")
UNIT_ELECTRONVOLT = om("electronvolt")
UNIT_BECQUEREL = om("becquerel")
UNIT_GIGAELECTRONVOLT_PER_C = om("gigaelectronvoltPerSpeedOfLight")

UNIT_FOR_KIND: dict[Iri, Iri] = {
    FLUENCE: UNIT_PER_SQUARE_CENTIMETRE,
    OM_ABSORBED_DOSE: UNIT_GRAY,
    OM_ENERGY: UNIT_ELECTRONVOLT,
    OM_ACTIVITY: UNIT_BECQUEREL,
    RELATIVISTIC_MOMENTUM: UNIT_GIGAELECTRONVOLT_PER_C,
}

_ANCHORS: list[tuple[Iri, list[Iri], str]] = [
    (EXPO_OBJECT, [OWL_THING], "physical object taking part in an experiment"),
    (EXPO_SENTIENT_AGENT, [OWL_THING], "agent with rights, possibly with reasoning"),
    (EXPO_SUBJECT_ROLE, [OWL_THING], "role predicate over experiment participants"),
    (EXPO_USER, [EXPO_SUBJECT_ROLE], "generic experiment-user role"),
    (EXPO_ADMIN_INFO_EXPERIMENT, [OWL_THING], "administrative information block"),
    (
        EXPO_PROCEDURE_EXECUTE_EXPERIMENT,
        [OWL_THING],
        "plan of actions executing an experiment",
    ),
    (EXPO_MEASUREMENT_ERROR, [OWL_THING], "uncertainty attached to a measurement"),
    (FOAF_AGENT, [OWL_THING], "person, group or organization"),
    (OM_QUANTITY, [OWL_THING], "measurable quantity"),
    (OM_UNIT, [OWL_THING], "measurement unit"),
    (OM_ENERGY, [OM_QUANTITY], "energy"),
    (OM_ABSORBED_DOSE, [OM_QUANTITY], "radiation energy absorbed per unit mass"),
    (OM_ACTIVITY, [OM_QUANTITY], "atom decays per unit time"),
]

# (iri, superclasses, label, comment) — comments record where an unstated
# anchor had to be chosen so the placement is auditable.
_IEDM_CLASSES: list[tuple[Iri, list[Iri], str, str]] = [
    (
        IRRADIATION_EXPERIMENT,
        [OWL_THING],
        "irradiation experiment",
        "Exposure of devices to a radiation field; the one top-level class of "
        "this vocabulary.",
    ),
    (
        IRRADIATION_EXPERIMENT_OBJECT,
        [EXPO_OBJECT],
        "irradiation experiment object",
        "Facility object exposed to the field or placed under test.",
    ),
    (DUT, [IRRADIATION_EXPERIMENT_OBJECT], "device under test", ""),
    (
        RADIATION_FIELD,
        [OWL_THING],
        "radiation field",
        "Particle environment driving the exposure; anchor unstated upstream, "
        "kept at the root.",
    ),
    (SINGULAR_FIELD, [RADIATION_FIELD], "singular field", "One particle species."),
    (MIXED_FIELD, [RADIATION_FIELD], "mixed field", "Several particle species."),
    (
        PARTICLE,
        [EXPO_OBJECT],
        "particle",
        "Placed under object like the periodic-table entries.",
    ),
    (
        DOSIMETRIC_QUANTITY,
        [OM_QUANTITY],
        "dosimetric quantity",
        "Quantity family used in dosimetry; anchored under the unit-of-measure "
        "quantity concept.",
    ),
    (CUMULATED_QUANTITY, [DOSIMETRIC_QUANTITY], "cumulated quantity", ""),
    (FLUENCE, [CUMULATED_QUANTITY], "fluence", "Particles received per unit area."),
    (
        ABSORBED_DOSE,
        [CUMULATED_QUANTITY, OM_ABSORBED_DOSE],
        "absorbed dose",
        "Cumulated quantity and a specialization of the reused dose concept.",
    ),
    (
        RELATIVISTIC_MOMENTUM,
        [OM_QUANTITY],
        "relativistic momentum",
        "Beam momentum of the field particles.",
    ),
    (
        DUT_IRRADIATION,
        [OWL_THING],
        "DUT irradiation",
        "Exposure of a single device, part of an irradiation experiment "
        "(deliberately not a subclass of it).",
    ),
    (INTERACTION_LENGTH, [OM_QUANTITY], "interaction length", ""),
    (
        INTERACTION_LENGTH_OCCUPANCY,
        [OM_QUANTITY],
        "interaction length occupancy",
        "Fraction of a characteristic length presented by matter in the beam.",
    ),
    (ELEMENT, [EXPO_OBJECT], "element", "Periodic-table entry."),
    (COMPOUND, [EXPO_OBJECT], "compound", "Mixture of elements."),
    (
        LAYER,
        [EXPO_OBJECT],
        "layer",
        "Slice of the 1D device structure along the beam axis.",
    ),
    (
        TIME_POSITION,
        [OWL_THING],
        "time position",
        "Calendar instant; anchor unstated upstream, kept at the root.",
    ),
    (
        USER,
        [EXPO_SENTIENT_AGENT, FOAF_AGENT],
        "user",
        "Combines the sentient-agent and agent notions via multiple inheritance.",
    ),
    (
        FACILITY_COORDINATOR,
        [USER, EXPO_USER],
        "irradiation facility coordinator",
        "",
    ),
    (FACILITY_MANAGER, [USER, EXPO_USER], "irradiation facility manager", ""),
    (FACILITY_USER, [USER, EXPO_USER], "irradiation facility user", ""),
    (OPERATOR, [FACILITY_USER], "operator", "Performs the irradiation experiment."),
    (
        RESPONSIBLE_PERSON,
        [FACILITY_USER],
        "responsible person",
        "In charge of the irradiation experiment.",
    ),
    (
        PASSIVE_STANDARD_IRRADIATION,
        [EXPO_PROCEDURE_EXECUTE_EXPERIMENT],
        "passive standard irradiation",
        "Device simply put into the field.",
    ),
    (
        PASSIVE_CUSTOM_IRRADIATION,
        [EXPO_PROCEDURE_EXECUTE_EXPERIMENT],
        "passive custom irradiation",
        "Needs specific technical requirements.",
    ),
    (
        ACTIVE_IRRADIATION,
        [EXPO_PROCEDURE_EXECUTE_EXPERIMENT],
        "active irradiation",
        "Uses a DAQ device and readout during execution.",
    ),
    (
        ADMIN_INFO,
        [EXPO_ADMIN_INFO_EXPERIMENT],
        "administrative information",
        "",
    ),
    (
        TECHNICAL_REQUIREMENTS,
        [OWL_THING],
        "technical requirements",
        "Free-form requirement statement; anchor unstated upstream.",
    ),
    (
        IRRADIATION_FACILITY,
        [OWL_THING],
        "irradiation facility",
        "Infrastructure hosting irradiation experiments; class introduced "
        "here so facility instances have a type.",
    ),
]

_OBJECT_PROPERTIES: list[tuple[Iri, str, str]] = [
    (HAS_IRRADIATION_CATEGORY, "irradiation category", ""),
    (HAS_RESULT, "result", "Links to a cumulated dosimetric quantity."),
    (HAS_PART, "has part", "Part-of link for device-level irradiations."),
    (EXPO_HAS_PART, "has part", "Reused part-of link (administrative parts)."),
    (HAS_DUT, "device under test", ""),
    (HAS_START_TIME, "start time", ""),
    (HAS_END_TIME, "end time", ""),
    (HAS_RADIATION_FIELD, "radiation field", ""),
    (HAS_PARTICLE, "particle", ""),
    (PERFORMED_AT, "performed at", ""),
    (HAS_ROLE, "participant", "Links administrative info to role holders."),
    (HAS_UNIT, "unit", ""),
    (HAS_MEASUREMENT_ERROR, "measurement error", ""),
    (HAS_TECHNICAL_REQUIREMENTS, "technical requirements", ""),
    (INSTALLED_OBJECT, "installed object", "Object installed by an operator."),
    (HAS_BEAM_MOMENTUM, "beam momentum", ""),
]

_RESTRICTIONS: list[tuple[Iri, Restriction]] = [
    (
        IRRADIATION_EXPERIMENT,
        Restriction(
            HAS_IRRADIATION_CATEGORY,
            "exactly",
            1,
            EXPO_PROCEDURE_EXECUTE_EXPERIMENT,
            note="every experiment belongs to exactly one execution category",
        ),
    ),
    (
        IRRADIATION_EXPERIMENT,
        Restriction.some(
            HAS_RESULT,
            CUMULATED_QUANTITY,
            note="an experiment accumulates at least one dosimetric result",
        ),
    ),
    (
        IRRADIATION_EXPERIMENT,
        Restriction(
            EXPO_HAS_PART,
            "exactly",
            1,
            ADMIN_INFO,
            note="exactly one administrative-information part",
        ),
    ),
    (
        IRRADIATION_EXPERIMENT,
        Restriction.some(
            HAS_PART,
            DUT_IRRADIATION,
            note="an experiment covers at least one device-level irradiation",
        ),
    ),
    (
        IRRADIATION_EXPERIMENT,
        Restriction(
            PERFORMED_AT,
            "exactly",
            1,
            IRRADIATION_FACILITY,
            note="an experiment runs at exactly one facility",
        ),
    ),
    (
        DUT_IRRADIATION,
        Restriction(
            HAS_DUT, "exactly", 1, DUT, note="depends on one and only one device"
        ),
    ),
    (
        DUT_IRRADIATION,
        Restriction(
            HAS_START_TIME,
            "exactly",
            1,
            TIME_POSITION,
            note="exposure has a single start instant",
        ),
    ),
    (
        DUT_IRRADIATION,
        Restriction(
            HAS_END_TIME,
            "exactly",
            1,
            TIME_POSITION,
            note="exposure has a single completion instant",
        ),
    ),
    (
        DUT_IRRADIATION,
        Restriction(
            HAS_RADIATION_FIELD,
            "exactly",
            1,
            RADIATION_FIELD,
            note="a device is exposed in exactly one field",
        ),
    ),
    (
        RADIATION_FIELD,
        Restriction.some(
            HAS_PARTICLE, PARTICLE, note="a field is composed of particles"
        ),
    ),
    (
        ADMIN_INFO,
        Restriction.some(
            HAS_ROLE, USER, note="administrative info names at least one participant"
        ),
    ),
    (
        PASSIVE_CUSTOM_IRRADIATION,
        Restriction.some(
            HAS_TECHNICAL_REQUIREMENTS,
            TECHNICAL_REQUIREMENTS,
            note="custom irradiations state their technical requirements",
        ),
    ),
    (
        DOSIMETRIC_QUANTITY,
        Restriction(
            HAS_UNIT, "exactly", 1, OM_UNIT, note="a quantity carries exactly one unit"
        ),
    ),
    (
        RELATIVISTIC_MOMENTUM,
        Restriction(
            HAS_UNIT, "exactly", 1, OM_UNIT, note="a quantity carries exactly one unit"
        ),
    ),
]

# Form-widget hints: classes whose instances are picked from a registry
# rather than created inline, plus free-text carriers.
_WIDGET_HINTS: dict[Iri, str] = {
    DUT: "reference",
    RADIATION_FIELD: "reference",
    IRRADIATION_FACILITY: "reference",
    PARTICLE: "reference",
    OM_UNIT: "reference",
    TECHNICAL_REQUIREMENTS: "text",
}


def build_ontology() -> Ontology:
    """Assemble the built-in terminology and freeze the foreign anchors."""
    onto = Ontology()
    onto.add_class(ClassDef(OWL_THING, set(), [], "thing", "Universal root class."))
    for iri, supers, label in _ANCHORS:
        onto.add_class(ClassDef(iri, set(supers), [], label, ANCHOR_NOTE))
    for iri, supers, label, comment in _IEDM_CLASSES:
        onto.add_class(ClassDef(iri, set(supers), [], label, comment))
    for iri, label, comment in _OBJECT_PROPERTIES:
        onto.add_property(PropertyDef(iri, "object", label, comment))
    onto.add_property(
        PropertyDef(
            iedm("hasValue"),
            "data",
            "value",
            "The single data property; carries all literal values.",
        )
    )
    for class_iri, restriction in _RESTRICTIONS:
        onto.add_restriction(class_iri, restriction)
    # Both spellings seen in the wild resolve to the canonical class.
    onto.add_alias(iedm("DUTirradiation"), DUT_IRRADIATION)
    onto.add_alias(iedm("DUTirradiationExperiment"), DUT_IRRADIATION)
    onto.widget_hints.update(_WIDGET_HINTS)
    onto.freeze_foreign()
    return onto
