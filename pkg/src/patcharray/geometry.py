"""Array geometry record and its strict JSON file format (mm / GHz units)."""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import asdict, dataclass, fields
from importlib import resources
from pathlib import Path

from .fileio import atomic_write_text
from .media import GHZ, MM, InvalidInputError, Substrate, ValidationError


class GeometryParseError(InvalidInputError):
    def __init__(self, message: str, lineno: int | None = None):
        where = f"line {lineno}: " if lineno is not None else ""
        super().__init__(f"{where}{message}")
        self.lineno = lineno


@dataclass(frozen=True)
class ArrayGeometry:
    patch_length_mm: float
    patch_width_mm: float
    ground_length_mm: float
    ground_width_mm: float
    ground_thickness_mm: float
    feed_length_mm: float
    feed_width_mm: float
    substrate_height_mm: float
    rel_permittivity: float
    loss_tangent: float
    element_count: int
    design_frequency_ghz: float

    @property
    def span_mm(self) -> float:
        n = self.element_count
        return n * self.patch_length_mm + (n - 1) * self.feed_length_mm

    @property
    def spacing(self) -> float:
        """Centre-to-centre element pitch in metres."""
        return (self.patch_length_mm + self.feed_length_mm) * MM

    @property
    def design_frequency(self) -> float:
        return self.design_frequency_ghz * GHZ

    def substrate(self) -> Substrate:
        return Substrate(
            rel_permittivity=self.rel_permittivity,
            loss_tangent=self.loss_tangent,
            height=self.substrate_height_mm * MM,
            conductor_thickness=self.ground_thickness_mm * MM,
        )

    def digest(self) -> str:
        canon = json.dumps(asdict(self), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canon.encode()).hexdigest()[:16]


FIELD_NAMES = tuple(f.name for f in fields(ArrayGeometry))

_POSITIVE = (
    "patch_length_mm",
    "patch_width_mm",
    "ground_length_mm",
    "ground_width_mm",
    "feed_length_mm",
    "feed_width_mm",
    "substrate_height_mm",
    "design_frequency_ghz",
)


def validate_geometry(g: ArrayGeometry) -> ArrayGeometry:
    for name in FIELD_NAMES:
        value = getattr(g, name)
        if name == "element_count":
            if isinstance(value, bool) or not isinstance(value, int):
                raise ValidationError(name, f"must be an integer, got {value!r}")
        elif isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
            raise ValidationError(name, f"must be a finite number, got {value!r}")
    for name in _POSITIVE:
        if not getattr(g, name) > 0:
            raise ValidationError(name, f"must be > 0, got {getattr(g, name)!r}")
    if g.ground_thickness_mm < 0:
        raise ValidationError("ground_thickness_mm", "must be >= 0")
    if g.rel_permittivity < 1:
        raise ValidationError("rel_permittivity", "must be >= 1")
    if g.loss_tangent < 0:
        raise ValidationError("loss_tangent", "must be >= 0")
    if g.element_count < 1:
        raise ValidationError("element_count", "must be >= 1")
    if g.span_mm > g.ground_length_mm + 1e-9:
        raise ValidationError(
            "ground_length_mm",
            f"array span N*L + (N-1)*FL = {g.span_mm:.4g} mm exceeds ground length",
        )
    if g.patch_width_mm > g.ground_width_mm:
        raise ValidationError("ground_width_mm", "patch width exceeds ground width")
    return g


def geometry_from_dict(data: object) -> ArrayGeometry:
    if not isinstance(data, dict):
        raise GeometryParseError("geometry document must be a single JSON object")
    unknown = sorted(set(data) - set(FIELD_NAMES))
    if unknown:
        raise ValidationError(unknown[0], f"unknown field {unknown[0]}")
    for name in FIELD_NAMES:
        if name not in data:
            raise ValidationError(name, f"missing field {name}")
    return validate_geometry(ArrayGeometry(**data))


def parse_geometry(text: str) -> ArrayGeometry:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GeometryParseError(exc.msg, exc.lineno) from exc
    return geometry_from_dict(data)


def load_geometry(path: str | Path) -> ArrayGeometry:
    return parse_geometry(Path(path).read_text(encoding="utf-8"))


def dump_geometry(g: ArrayGeometry) -> str:
    return json.dumps(asdict(validate_geometry(g)), indent=2) + "\n"


def write_geometry(g: ArrayGeometry, path: str | Path) -> Path:
    return atomic_write_text(path, dump_geometry(g))


def paper_geometry_path() -> Path:
    return Path(str(resources.files("patcharray") / "data" / "paper.json"))


def paper_geometry() -> ArrayGeometry:
    """The bundled six-element 18 GHz reference layout."""
    return load_geometry(paper_geometry_path())
