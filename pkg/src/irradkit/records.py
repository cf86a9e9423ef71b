"""Record types persisted by the data manager."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any

from . import builtin
from .errors import ValidationError
from .ontology import Iri, QuantityValue, TimePosition

IRRADIATION_CATEGORIES = (
    "PassiveStandardIrradiation",
    "PassiveCustomIrradiation",
    "ActiveIrradiation",
)


def quantity_to_dict(q: QuantityValue | None) -> dict | None:
    if q is None:
        return None
    return {
        "value": q.value,
        "kind": str(q.kind),
        "unit": str(q.unit),
        "relativeError": q.relative_error,
    }


def quantity_from_dict(data: dict | None) -> QuantityValue | None:
    if data is None:
        return None
    kind = Iri.parse(data.get("kind", "iedm:Fluence"))
    unit_text = data.get("unit")
    unit = Iri.parse(unit_text) if unit_text else builtin.UNIT_FOR_KIND[kind]
    return QuantityValue(
        value=float(data["value"]),
        kind=kind,
        unit=unit,
        relative_error=data.get("relativeError"),
    )


def fluence_quantity(value: float, relative_error: float | None = None) -> QuantityValue:
    return QuantityValue(
        value=value,
        kind=builtin.FLUENCE,
        unit=builtin.UNIT_PER_SQUARE_CENTIMETRE,
        relative_error=relative_error,
    )


def normalize_category(value: str) -> str:
    """Accept either the bare class name or its prefixed form."""
    name = value.split(":", 1)[1] if value.startswith("iedm:") else value
    if name not in IRRADIATION_CATEGORIES:
        raise ValidationError(
            f"unknown irradiation category: {value!r}; "
            f"expected one of {', '.join(IRRADIATION_CATEGORIES)}"
        )
    return name


@dataclass
class AdminBlock:
    """Administrative contacts; responsible and operator are mandatory."""

    responsible: str
    operator: str
    coordinator: str = ""
    manager: str = ""

    def __post_init__(self):
        if not self.responsible or not self.operator:
            raise ValidationError("responsible and operator emails are required")

    def emails(self) -> list[str]:
        return [e for e in (self.responsible, self.operator, self.coordinator, self.manager) if e]

    def to_dict(self) -> dict:
        return {
            "responsible": self.responsible,
            "operator": self.operator,
            "coordinator": self.coordinator,
            "manager": self.manager,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AdminBlock":
        return cls(
            responsible=data.get("responsible", ""),
            operator=data.get("operator", ""),
            coordinator=data.get("coordinator", ""),
            manager=data.get("manager", ""),
        )


@dataclass
class DutIrradiationRecord:
    rid: str
    dut_id: str
    radiation_field: str
    start: str
    end: str | None = None
    cumulated: QuantityValue | None = None

    def __post_init__(self):
        TimePosition(self.start)
        if self.end is not None:
            TimePosition(self.end)

    def to_dict(self) -> dict:
        return {
            "rid": self.rid,
            "dutId": self.dut_id,
            "radiationField": self.radiation_field,
            "start": self.start,
            "end": self.end,
            "cumulated": quantity_to_dict(self.cumulated),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DutIrradiationRecord":
        return cls(
            rid=data["rid"],
            dut_id=data["dutId"],
            radiation_field=data["radiationField"],
            start=data["start"],
            end=data.get("end"),
            cumulated=quantity_from_dict(data.get("cumulated")),
        )


@dataclass
class ExperimentRecord:
    id: str
    title: str
    facility: str
    irradiation_category: str
    technical_requirements: str
    admin: AdminBlock
    dut_irradiations: list[DutIrradiationRecord] = field(default_factory=list)
    visible: bool = False
    version: int = 1

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "title": self.title,
            "facility": self.facility,
            "irradiationCategory": self.irradiation_category,
            "technicalRequirements": self.technical_requirements,
            "admin": self.admin.to_dict(),
            "dutIrradiations": [r.to_dict() for r in self.dut_irradiations],
            "visible": self.visible,
            "version": self.version,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentRecord":
        return cls(
            id=data["id"],
            title=data["title"],
            facility=data["facility"],
            irradiation_category=data["irradiationCategory"],
            technical_requirements=data.get("technicalRequirements", ""),
            admin=AdminBlock.from_dict(data["admin"]),
            dut_irradiations=[
                DutIrradiationRecord.from_dict(d) for d in data.get("dutIrradiations", [])
            ],
            visible=data.get("visible", False),
            version=data.get("version", 1),
        )


@dataclass
class SampleRecord:
    id: str
    name: str
    category_note: str
    requested_fluence: QuantityValue
    occupancy: tuple[float, float, float]
    last_update: str
    last_updated_by: str
    experiment_id: str
    visible: bool = False
    version: int = 1

    def __post_init__(self):
        TimePosition(self.last_update)
        if len(self.occupancy) != 3 or any(v < 0 for v in self.occupancy):
            raise ValidationError("occupancy must be three non-negative percentages")

    def with_patch(self, **changes: Any) -> "SampleRecord":
        return replace(self, **changes)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "name": self.name,
            "categoryNote": self.category_note,
            "requestedFluence": quantity_to_dict(self.requested_fluence),
            "occupancy": list(self.occupancy),
            "lastUpdate": self.last_update,
            "lastUpdatedBy": self.last_updated_by,
            "experimentId": self.experiment_id,
            "visible": self.visible,
            "version": self.version,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SampleRecord":
        fluence = quantity_from_dict(data["requestedFluence"])
        assert fluence is not None
        return cls(
            id=data["id"],
            name=data["name"],
            category_note=data.get("categoryNote", ""),
            requested_fluence=fluence,
            occupancy=tuple(data.get("occupancy", (0.0, 0.0, 0.0))),
            last_update=data["lastUpdate"],
            last_updated_by=data.get("lastUpdatedBy", ""),
            experiment_id=data["experimentId"],
            visible=data.get("visible", False),
            version=data.get("version", 1),
        )


__all__ = [
    "AdminBlock",
    "DutIrradiationRecord",
    "ExperimentRecord",
    "IRRADIATION_CATEGORIES",
    "SampleRecord",
    "fluence_quantity",
    "normalize_category",
    "quantity_from_dict",
    "quantity_to_dict",
]
