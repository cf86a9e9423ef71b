"""Data management toolkit for irradiation experiments."""

from .errors import IrradkitError
from .formgen import FieldSpec, FormSchema, form_schema, materialize_submission
from .materials import (
    Layer,
    LayerStack,
    Material,
    MaterialTable,
    default_table,
    format_occupancy,
    mix_mass_properties,
    occupancy,
    occupancy_report,
    occupancy_triple,
)
from .ontology import (
    Dataset,
    Individual,
    Iri,
    Literal,
    Ontology,
    QuantityValue,
    RadiationFieldSpec,
    Restriction,
    TimePosition,
    effective_restrictions,
    is_subclass_of,
    load_builtin_ontology,
)
from .records import AdminBlock, DutIrradiationRecord, ExperimentRecord, SampleRecord
from .store import DataManager, seed_demo
from .turtle_io import (
    Graph,
    Triple,
    dataset_from_graph,
    graph_from_dataset,
    parse_turtle,
    serialize_turtle,
)
from .validation import Report, Violation, validate_dataset, validate_individual

__version__ = "0.1.0"
