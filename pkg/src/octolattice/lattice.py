"""Finite pieces of the lattice hZ^8 and octonion-valued fields on them.

Field values are stored component-major: ``values[c]`` is the scalar array of
coefficient c, with array axis a (0..7) holding lattice coordinate m_a and
array index ``m_a - offset[a]``.  Reads outside a Cuboid or slab grid return
zero; a Torus wraps.
"""

from __future__ import annotations

import enum
import io
import os
import struct
from dataclasses import dataclass
from typing import BinaryIO, Sequence

import numpy as np

from .algebra import AlgebraKind, DomainError, OctonionValue

DIM = 8


class Topology(enum.Enum):
    CUBOID = "cuboid"
    TORUS = "torus"
    UPPER_HALF_SLAB = "upper-half-slab"
    LOWER_HALF_SLAB = "lower-half-slab"


class Direction(enum.Enum):
    FORWARD = 1
    BACKWARD = -1

    @classmethod
    def parse(cls, value) -> "Direction":
        if isinstance(value, cls):
            return value
        table = {"+": cls.FORWARD, "forward": cls.FORWARD, 1: cls.FORWARD,
                 "-": cls.BACKWARD, "backward": cls.BACKWARD, -1: cls.BACKWARD}
        try:
            return table[value]
        except (KeyError, TypeError):
            raise DomainError(f"unknown difference direction {value!r}") from None

    @property
    def symbol(self) -> str:
        return "+" if self is Direction.FORWARD else "-"


FORWARD = Direction.FORWARD
BACKWARD = Direction.BACKWARD


def _eight(values, name: str) -> tuple[int, ...]:
    if np.isscalar(values):
        values = (values,) * DIM
    out = tuple(int(v) for v in values)
    if len(out) != DIM:
        raise DomainError(f"{name} needs {DIM} entries, got {len(out)}")
    return out


@dataclass(frozen=True)
class Box:
    """Sub-cuboid of Z^8: multi-indices m with offset <= m < offset + shape."""

    offset: tuple[int, ...]
    shape: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "offset", _eight(self.offset, "offset"))
        object.__setattr__(self, "shape", _eight(self.shape, "shape"))
        if any(s < 0 for s in self.shape):
            raise DomainError("box extents must be non-negative")

    @classmethod
    def cube(cls, n: int, start: int = 0) -> "Box":
        return cls((start,) * DIM, (n,) * DIM)

    @classmethod
    def centered(cls, n: int) -> "Box":
        return cls((-(n // 2),) * DIM, (n,) * DIM)

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))

    @property
    def stop(self) -> tuple[int, ...]:
        return tuple(o + s for o, s in zip(self.offset, self.shape))

    def contains_box(self, other: "Box") -> bool:
        return all(
            so <= oo and oo + os_ <= so + ss
            for so, ss, oo, os_ in zip(self.offset, self.shape, other.offset, other.shape)
        ) or other.size == 0


@dataclass(frozen=True)
class GridSpec:
    h: float
    shape: tuple[int, ...]
    offset: tuple[int, ...] = (0,) * DIM
    topology: Topology = Topology.CUBOID

    def __post_init__(self) -> None:
        object.__setattr__(self, "shape", _eight(self.shape, "shape"))
        object.__setattr__(self, "offset", _eight(self.offset, "offset"))
        object.__setattr__(self, "topology", Topology(self.topology))
        object.__setattr__(self, "h", float(self.h))
        if not self.h > 0:
            raise DomainError("lattice spacing h must be positive")
        if any(s <= 0 for s in self.shape):
            raise DomainError("grid extents must be positive")
        if self.topology is Topology.TORUS and any(self.offset):
            raise DomainError("a torus grid must have offset 0")
        if self.topology is Topology.UPPER_HALF_SLAB and self.offset[7] < 0:
            raise DomainError("upper half slab needs offset[7] >= 0")
        if self.topology is Topology.LOWER_HALF_SLAB and self.offset[7] + self.shape[7] - 1 > 0:
            raise DomainError("lower half slab needs its top layer at m7 <= 0")

    @classmethod
    def torus(cls, n: int, h: float = 1.0) -> "GridSpec":
        return cls(h, (n,) * DIM, (0,) * DIM, Topology.TORUS)

    @classmethod
    def cube(cls, n: int, h: float = 1.0, start: int | None = None) -> "GridSpec":
        start = -(n // 2) if start is None else start
        return cls(h, (n,) * DIM, (start,) * DIM, Topology.CUBOID)

    @property
    def periodic(self) -> bool:
        return self.topology is Topology.TORUS

    @property
    def box(self) -> Box:
        return Box(self.offset, self.shape)

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))

    def array_index(self, m: Sequence[int]) -> tuple[int, ...] | None:
        """Array position of multi-index ``m`` or None when it is off the grid."""
        m = _eight(m, "multi-index")
        if self.periodic:
            return tuple((mi - o) % s for mi, o, s in zip(m, self.offset, self.shape))
        idx = tuple(mi - o for mi, o in zip(m, self.offset))
        if all(0 <= i < s for i, s in zip(idx, self.shape)):
            return idx
        return None

    def layer_index(self, m7: int) -> int | None:
        if self.periodic:
            return (m7 - self.offset[7]) % self.shape[7]
        i = m7 - self.offset[7]
        return i if 0 <= i < self.shape[7] else None

    def coordinates(self, axis: int) -> np.ndarray:
        """Lattice indices m_axis along one array axis."""
        return np.arange(self.shape[axis]) + self.offset[axis]

    def memory_bytes(self, components: int = 8) -> int:
        return self.size * components * 8


def shift_array(arr: np.ndarray, grid: GridSpec, axis: int, step: int) -> np.ndarray:
    """Return the array of values at m + step*e_axis (last 8 axes are spatial)."""
    ax = arr.ndim - DIM + axis
    if step == 0:
        return arr
    if grid.periodic:
        return np.roll(arr, -step, axis=ax)
    out = np.zeros_like(arr)
    n = arr.shape[ax]
    if abs(step) >= n:
        return out
    src = [slice(None)] * arr.ndim
    dst = [slice(None)] * arr.ndim
    if step > 0:
        src[ax], dst[ax] = slice(step, None), slice(None, n - step)
    else:
        src[ax], dst[ax] = slice(None, n + step), slice(-step, None)
    out[tuple(dst)] = arr[tuple(src)]
    return out


def difference_array(arr: np.ndarray, grid: GridSpec, j: int, direction) -> np.ndarray:
    direction = Direction.parse(direction)
    if direction is FORWARD:
        return (shift_array(arr, grid, j, 1) - arr) / grid.h
    return (arr - shift_array(arr, grid, j, -1)) / grid.h


class LatticeField:
    """Octonion-valued function on a grid, implicitly zero off a non-periodic grid."""

    __slots__ = ("grid", "kind", "values")

    def __init__(self, grid: GridSpec, kind: AlgebraKind | str, values: np.ndarray, copy: bool = False):
        values = np.array(values, dtype=float) if copy else np.asarray(values, dtype=float)
        if values.shape != (8,) + grid.shape:
            raise DomainError(f"values must have shape {(8,) + grid.shape}, got {values.shape}")
        # read-only view; the caller's array keeps its own flags
        values = values.view()
        values.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "kind", AlgebraKind.parse(kind))
        object.__setattr__(self, "values", values)

    def __setattr__(self, name, value):
        raise AttributeError("LatticeField is immutable")

    # constructors -----------------------------------------------------
    @classmethod
    def zeros(cls, grid: GridSpec, kind) -> "LatticeField":
        return cls(grid, kind, np.zeros((8,) + grid.shape))

    @classmethod
    def constant(cls, grid: GridSpec, value: OctonionValue) -> "LatticeField":
        vals = np.broadcast_to(value.coeff.reshape((8,) + (1,) * DIM), (8,) + grid.shape).copy()
        return cls(grid, value.kind, vals)

    @classmethod
    def from_scalar(cls, grid: GridSpec, kind, scalar: np.ndarray, component: int = 0) -> "LatticeField":
        vals = np.zeros((8,) + grid.shape)
        vals[component] = scalar
        return cls(grid, kind, vals)

    @classmethod
    def impulse(cls, grid: GridSpec, kind, at: Sequence[int] = (0,) * DIM,
                value: OctonionValue | None = None) -> "LatticeField":
        idx = grid.array_index(at)
        if idx is None:
            raise DomainError(f"impulse location {tuple(at)} is off the grid")
        vals = np.zeros((8,) + grid.shape)
        coeff = value.coeff if value is not None else np.eye(8)[0]
        vals[(slice(None),) + idx] = coeff
        return cls(grid, kind, vals)

    # access -----------------------------------------------------------
    def at(self, m: Sequence[int]) -> OctonionValue:
        idx = self.grid.array_index(m)
        if idx is None:
            return OctonionValue.zero(self.kind)
        return OctonionValue(self.kind, self.values[(slice(None),) + idx])

    def layer(self, m7: int) -> np.ndarray:
        """Values on the hyperplane m_7 = m7, shape (8, n0..n6); zero off-grid."""
        i = self.grid.layer_index(m7)
        if i is None:
            return np.zeros((8,) + self.grid.shape[:7])
        return self.values[..., i]

    def component(self, c: int) -> np.ndarray:
        return self.values[c]

    def with_values(self, values: np.ndarray) -> "LatticeField":
        return LatticeField(self.grid, self.kind, values)

    def _check(self, other: "LatticeField") -> None:
        if other.grid != self.grid:
            raise DomainError("fields live on different grids")
        if other.kind is not self.kind:
            raise DomainError("fields carry different algebra kinds")

    def __add__(self, other: "LatticeField") -> "LatticeField":
        self._check(other)
        return self.with_values(self.values + other.values)

    def __sub__(self, other: "LatticeField") -> "LatticeField":
        self._check(other)
        return self.with_values(self.values - other.values)

    def __neg__(self) -> "LatticeField":
        return self.with_values(-self.values)

    def __mul__(self, alpha: float) -> "LatticeField":
        if not np.isscalar(alpha):
            return NotImplemented
        return self.with_values(self.values * float(alpha))

    __rmul__ = __mul__

    def shifted(self, m: Sequence[int]) -> "LatticeField":
        """Field n -> self(n - m) on a torus (translation by m)."""
        if not self.grid.periodic:
            raise DomainError("translation is only defined on a torus grid")
        m = _eight(m, "shift")
        return self.with_values(np.roll(self.values, m, axis=tuple(range(1, DIM + 1))))

    def sup_norm(self) -> float:
        return float(np.sqrt((self.values ** 2).sum(axis=0)).max())

    def __repr__(self) -> str:
        return f"LatticeField({self.kind.value}, {self.grid.topology.value}, shape={self.grid.shape}, h={self.grid.h})"


def finite_difference(f: LatticeField, j: int, direction) -> LatticeField:
    """Forward (h^-1(f(m+e_j) - f(m))) or backward (h^-1(f(m) - f(m-e_j))) difference."""
    if not 0 <= j < DIM:
        raise DomainError(f"direction index must be in 0..7, got {j}")
    return f.with_values(difference_array(f.values, f.grid, j, direction))


def laplacian_array(arr: np.ndarray, grid: GridSpec) -> np.ndarray:
    out = np.zeros_like(arr)
    for j in range(DIM):
        out += shift_array(arr, grid, j, 1) + shift_array(arr, grid, j, -1) - 2 * arr
    return out / grid.h ** 2


def star_laplacian(f: LatticeField) -> LatticeField:
    return f.with_values(laplacian_array(f.values, f.grid))


def random_field(grid: GridSpec, support: Box, seed: int, kind, scalar: bool = False) -> LatticeField:
    """Uniform [-1, 1] coefficients on ``support``, zero elsewhere."""
    if not grid.box.contains_box(support):
        raise DomainError(f"support {support} does not fit in grid {grid.box}")
    vals = np.zeros((8,) + grid.shape)
    if support.size:
        rng = np.random.default_rng(seed)
        ncomp = 1 if scalar else 8
        block = rng.uniform(-1.0, 1.0, size=(ncomp,) + support.shape)
        sl = tuple(slice(o - go, o - go + s) for o, go, s in zip(support.offset, grid.offset, support.shape))
        vals[(slice(0, ncomp),) + sl] = block
    return LatticeField(grid, kind, vals)


def lp_norm(f: LatticeField, p: float) -> float:
    """(sum_m |f(mh)|^p h^8)^(1/p) with |.| the Euclidean coefficient norm."""
    if not p >= 1:
        raise DomainError(f"lp_norm needs p >= 1, got {p}")
    pointwise = np.sqrt((f.values ** 2).sum(axis=0))
    if np.isinf(p):
        return float(pointwise.max())
    return float(((pointwise ** p).sum() * f.grid.h ** DIM) ** (1.0 / p))


# -- field files ------------------------------------------------------------

FIELD_MAGIC = b"OCTF1"
_KIND_CODES = {AlgebraKind.CLASSICAL: 0, AlgebraKind.SPLIT: 1}
_TOPO_CODES = {Topology.CUBOID: 0, Topology.TORUS: 1, Topology.UPPER_HALF_SLAB: 2, Topology.LOWER_HALF_SLAB: 3}
_HEADER = struct.Struct("<5sBBd8q8q")


def write_field_stream(stream: BinaryIO, f: LatticeField) -> None:
    g = f.grid
    stream.write(_HEADER.pack(FIELD_MAGIC, _KIND_CODES[f.kind], _TOPO_CODES[g.topology], g.h, *g.shape, *g.offset))
    for c in range(8):
        # dimension 0 varies fastest
        stream.write(np.asarray(f.values[c], dtype="<f8").ravel(order="F").tobytes())


def read_field_stream(stream: BinaryIO) -> LatticeField:
    head = stream.read(_HEADER.size)
    if len(head) != _HEADER.size:
        raise DomainError("truncated field header")
    magic, kind, topo, h, *rest = _HEADER.unpack(head)
    if magic != FIELD_MAGIC:
        raise DomainError(f"bad field magic {magic!r}")
    shape, offset = tuple(rest[:8]), tuple(rest[8:])
    kinds = {v: k for k, v in _KIND_CODES.items()}
    topos = {v: k for k, v in _TOPO_CODES.items()}
    if kind not in kinds or topo not in topos:
        raise DomainError("bad field header codes")
    grid = GridSpec(h, shape, offset, topos[topo])
    n = grid.size
    vals = np.empty((8,) + shape)
    for c in range(8):
        raw = stream.read(8 * n)
        if len(raw) != 8 * n:
            raise DomainError("truncated field payload")
        vals[c] = np.frombuffer(raw, dtype="<f8").reshape(shape, order="F")
    return LatticeField(grid, kinds[kind], vals)


def write_field(path: str | os.PathLike, f: LatticeField) -> None:
    with open(path, "wb") as fh:
        write_field_stream(fh, f)


def read_field(path: str | os.PathLike) -> LatticeField:
    with open(path, "rb") as fh:
        return read_field_stream(fh)


def field_to_bytes(f: LatticeField) -> bytes:
    buf = io.BytesIO()
    write_field_stream(buf, f)
    return buf.getvalue()


__all__ = [
    "BACKWARD", "Box", "DIM", "Direction", "FORWARD", "GridSpec", "LatticeField", "Topology",
    "difference_array", "field_to_bytes", "finite_difference", "laplacian_array", "lp_norm",
    "random_field", "read_field", "read_field_stream", "shift_array", "star_laplacian",
    "write_field", "write_field_stream",
]
