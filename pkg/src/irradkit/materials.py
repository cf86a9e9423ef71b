"""Element/compound model and beam-occupancy accounting for device stacks.

Characteristic lengths (radiation length X0, nuclear collision length and
nuclear interaction length) are tabulated per element in mass-normalized
units (g/cm2).  Compounds combine them by Bragg additivity, the harmonic
mass-fraction-weighted mean: 1/L_mix = sum_j w_j / L_j.  The occupancy of a
layer stack for a given length kind is 100 * sum_i t_i * rho_i / L_i.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, ROUND_HALF_UP
from functools import lru_cache
from importlib import resources

from .errors import UnknownElement, ValidationError
from .ontology import Iri

OCCUPANCY_KINDS = ("radiation", "collision", "interaction")

_FRACTION_TOLERANCE = 1e-9


@dataclass(frozen=True)
class ElementProps:
    """Tabulated per-element properties; lengths in g/cm2, density in g/cm3."""

    symbol: str
    z: int
    a: float
    density: float
    x0: float
    lambda_t: float
    lambda_i: float

    def __post_init__(self):
        if self.z < 1:
            raise ValidationError(f"{self.symbol}: atomic number must be >= 1")
        for name in ("a", "density", "x0", "lambda_t", "lambda_i"):
            if getattr(self, name) <= 0:
                raise ValidationError(f"{self.symbol}: {name} must be positive")
        ratio = self.lambda_i / self.lambda_t
        if not 0.1 <= ratio <= 10.0:
            raise ValidationError(
                f"{self.symbol}: collision/interaction lengths differ by more "
                f"than a factor 10 (ratio {ratio:.3g})"
            )


@dataclass(frozen=True)
class Material:
    """Either a pure element or a compound of (material, mass fraction) parts."""

    name: str
    element: str | None = None
    components: tuple[tuple["Material", float], ...] = ()
    compound_density: float | None = None

    def __post_init__(self):
        if (self.element is None) == (not self.components):
            raise ValidationError(
                f"{self.name}: a material is either an element or a compound"
            )
        if self.components:
            total = sum(w for _, w in self.components)
            if abs(total - 1.0) > _FRACTION_TOLERANCE:
                raise ValidationError(
                    f"{self.name}: mass fractions sum to {total!r}, expected 1"
                )
            if any(w <= 0 for _, w in self.components):
                raise ValidationError(f"{self.name}: mass fractions must be positive")
            if self.compound_density is None or self.compound_density <= 0:
                raise ValidationError(
                    f"{self.name}: a compound needs an explicit positive density"
                )

    @classmethod
    def of_element(cls, symbol: str) -> "Material":
        return cls(name=symbol, element=symbol)

    @classmethod
    def compound(
        cls,
        name: str,
        components: list[tuple["Material", float]],
        density: float,
    ) -> "Material":
        return cls(name=name, components=tuple(components), compound_density=density)


@dataclass(frozen=True)
class MixedLengths:
    """Mass-normalized characteristic lengths of a (possibly mixed) material."""

    x0: float
    lambda_t: float
    lambda_i: float

    def for_kind(self, kind: str) -> float:
        if kind == "radiation":
            return self.x0
        if kind == "collision":
            return self.lambda_t
        if kind == "interaction":
            return self.lambda_i
        raise ValueError(f"unknown occupancy kind: {kind!r}")


class MaterialTable:
    """Element properties plus named compounds, loaded from data files."""

    def __init__(self, elements: dict[str, ElementProps], compounds: dict[str, Material]):
        self.elements = elements
        self.compounds = compounds

    def element(self, symbol: str) -> ElementProps:
        try:
            return self.elements[symbol]
        except KeyError:
            raise UnknownElement(f"no such element in the table: {symbol!r}") from None

    def material(self, name: str) -> Material:
        if name in self.elements:
            return Material.of_element(name)
        lowered = name.lower()
        if lowered in self.compounds:
            return self.compounds[lowered]
        raise UnknownElement(f"no such material in the table: {name!r}")

    @classmethod
    def from_text(cls, element_text: str, compound_text: str = "") -> "MaterialTable":
        elements: dict[str, ElementProps] = {}
        for row in _data_rows(element_text):
            symbol, z, a, density, x0, lambda_t, lambda_i = row.split()
            elements[symbol] = ElementProps(
                symbol, int(z), float(a), float(density),
                float(x0), float(lambda_t), float(lambda_i),
            )
        table = cls(elements, {})
        for row in _data_rows(compound_text):
            name, density, parts = row.split()
            components = []
            for part in parts.split(","):
                symbol, fraction = part.split(":")
                table.element(symbol)
                components.append((Material.of_element(symbol), float(fraction)))
            table.compounds[name.lower()] = Material.compound(
                name.lower(), components, float(density)
            )
        return table


def _data_rows(text: str):
    for line in text.splitlines():
        row = line.split("#", 1)[0].strip()
        if row:
            yield row


@lru_cache(maxsize=1)
def default_table() -> MaterialTable:
    data = resources.files("irradkit") / "data"
    return MaterialTable.from_text(
        (data / "element_table.dat").read_text(),
        (data / "compound_table.dat").read_text(),
    )


def mix_mass_properties(material: Material, table: MaterialTable | None = None) -> MixedLengths:
    """Characteristic lengths of a material, Bragg additivity for compounds."""
    table = table or default_table()
    if material.element is not None:
        props = table.element(material.element)
        return MixedLengths(props.x0, props.lambda_t, props.lambda_i)
    inverses = [0.0, 0.0, 0.0]
    for child, weight in material.components:
        mixed = mix_mass_properties(child, table)
        inverses[0] += weight / mixed.x0
        inverses[1] += weight / mixed.lambda_t
        inverses[2] += weight / mixed.lambda_i
    return MixedLengths(*(1.0 / inv for inv in inverses))


def density_of(material: Material, table: MaterialTable | None = None) -> float:
    table = table or default_table()
    if material.element is not None:
        return table.element(material.element).density
    assert material.compound_density is not None
    return material.compound_density


@dataclass(frozen=True)
class Layer:
    material: Material
    thickness_cm: float

    def __post_init__(self):
        if self.thickness_cm < 0:
            raise ValidationError("layer thickness must be non-negative")


@dataclass(frozen=True)
class LayerStack:
    """Ordered layers along the main propagation axis of the radiation field.

    The total occupancy is a sum over layers, so it does not depend on the
    order; the order still records the physical structure.
    """

    layers: tuple[Layer, ...]
    dut: Iri | None = None

    def __add__(self, other: "LayerStack") -> "LayerStack":
        return LayerStack(self.layers + other.layers, self.dut)


def occupancy(stack: LayerStack, kind: str, table: MaterialTable | None = None) -> float:
    """Percentage of the characteristic length presented by the stack."""
    if kind not in OCCUPANCY_KINDS:
        raise ValueError(f"unknown occupancy kind: {kind!r}")
    table = table or default_table()
    total = 0.0
    for layer in stack.layers:
        length = mix_mass_properties(layer.material, table).for_kind(kind)
        total += layer.thickness_cm * density_of(layer.material, table) / length
    return 100.0 * total


def occupancy_triple(
    stack: LayerStack, table: MaterialTable | None = None
) -> tuple[float, float, float]:
    return tuple(occupancy(stack, kind, table) for kind in OCCUPANCY_KINDS)


def aggregate_occupancy(
    stacks: list[LayerStack], kind: str, table: MaterialTable | None = None
) -> float:
    """Combined occupancy of all stacks installed in the field at once."""
    return math.fsum(occupancy(stack, kind, table) for stack in stacks)


def format_percent(value: float) -> str:
    """Round half-up to at most three decimals and trim trailing zeros."""
    quantized = Decimal(repr(float(value))).quantize(
        Decimal("0.001"), rounding=ROUND_HALF_UP
    )
    text = format(quantized, "f")
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return text or "0"


def format_occupancy(radiation: float, collision: float, interaction: float) -> str:
    """Render the three percentages as 'R / C / I'."""
    return " / ".join(format_percent(v) for v in (radiation, collision, interaction))


def occupancy_report(stack: LayerStack, table: MaterialTable | None = None) -> str:
    return format_occupancy(*occupancy_triple(stack, table))


def parse_stack_file(text: str, table: MaterialTable | None = None) -> LayerStack:
    """Read layers from delimited text: material name, thickness in cm."""
    table = table or default_table()
    layers = []
    for row in _data_rows(text):
        fields = [f for f in row.replace(",", " ").split() if f]
        if len(fields) != 2:
            raise ValidationError(f"expected 'material thickness_cm', got {row!r}")
        name, thickness = fields
        layers.append(Layer(table.material(name), float(thickness)))
    return LayerStack(tuple(layers))


__all__ = [
    "ElementProps",
    "Layer",
    "LayerStack",
    "Material",
    "MaterialTable",
    "MixedLengths",
    "OCCUPANCY_KINDS",
    "aggregate_occupancy",
    "default_table",
    "density_of",
    "format_occupancy",
    "format_percent",
    "mix_mass_properties",
    "occupancy",
    "occupancy_report",
    "occupancy_triple",
    "parse_stack_file",
]
