"""Discrete Cauchy-Riemann operators acting from the left and from the right."""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .algebra import AlgebraKind, DomainError, MultiplicationTable, multiplication_table, product_coefficients
from .lattice import BACKWARD, DIM, FORWARD, Direction, GridSpec, LatticeField, difference_array
from .witt import FormalElement, Word, minus, plain, plus, product_word, weyl_terms, word_key, word_text


class CrVariant(enum.Enum):
    FORWARD = "+"
    BACKWARD = "-"
    WEYL_PM = "+-"
    WEYL_MP = "-+"

    @classmethod
    def parse(cls, value) -> "CrVariant":
        if isinstance(value, cls):
            return value
        if isinstance(value, Direction):
            return cls.FORWARD if value is FORWARD else cls.BACKWARD
        aliases = {"forward": "+", "backward": "-", "weyl-pm": "+-", "weyl-mp": "-+"}
        try:
            return cls(aliases.get(str(value).lower(), str(value)))
        except ValueError:
            raise DomainError(f"unknown Cauchy-Riemann variant {value!r}") from None

    @property
    def is_weyl(self) -> bool:
        return self in (CrVariant.WEYL_PM, CrVariant.WEYL_MP)

    @property
    def direction(self) -> Direction:
        if self.is_weyl:
            raise DomainError("Weyl variants mix both difference directions")
        return FORWARD if self is CrVariant.FORWARD else BACKWARD


# -- pointwise products ---------------------------------------------------------

def left_basis_mul(table: MultiplicationTable, j: int, arr: np.ndarray) -> np.ndarray:
    """Coefficients of e_j * x for x with leading axis of length 8."""
    out = np.zeros_like(arr)
    for k in range(8):
        out[table.index[j, k]] += table.sign[j, k] * arr[k]
    return out


def right_basis_mul(arr: np.ndarray, j: int, table: MultiplicationTable) -> np.ndarray:
    """Coefficients of x * e_j."""
    out = np.zeros_like(arr)
    for i in range(8):
        out[table.index[i, j]] += table.sign[i, j] * arr[i]
    return out


def field_product(f: LatticeField, g: LatticeField) -> LatticeField:
    """Pointwise octonion product f(m) g(m)."""
    f._check(g)
    return f.with_values(product_coefficients(multiplication_table(f.kind), f.values, g.values))


# -- formal-valued fields ------------------------------------------------------

@dataclass
class FormalField:
    """Lattice field with values in formal words: word -> real array over the grid."""

    grid: GridSpec
    kind: AlgebraKind
    terms: dict[Word, np.ndarray] = field(default_factory=dict)

    def add_term(self, w: Word, arr: np.ndarray, coef: float = 1.0) -> None:
        if w in self.terms:
            self.terms[w] = self.terms[w] + coef * arr
        else:
            self.terms[w] = coef * np.asarray(arr, dtype=float)

    def at(self, m: Sequence[int]) -> FormalElement:
        idx = self.grid.array_index(m)
        if idx is None:
            return FormalElement({}, self.kind)
        return FormalElement({w: float(a[idx]) for w, a in self.terms.items()}, self.kind)

    def total(self, weight: float = 1.0) -> FormalElement:
        """Sum over all lattice points, times ``weight``."""
        return FormalElement({w: weight * float(a.sum()) for w, a in self.terms.items()}, self.kind)

    def sup_by_word(self) -> dict[str, float]:
        return {word_text(w): float(np.abs(self.terms[w]).max()) for w in sorted(self.terms, key=word_key)}

    def sup_norm(self) -> float:
        return max((float(np.abs(a).max()) for a in self.terms.values()), default=0.0)


def _split_leaf(gen) -> tuple:
    pol, j = gen
    return plus(j) if pol == "+" else minus(j)


def _weyl_left(f: LatticeField, variant: CrVariant) -> FormalField:
    out = FormalField(f.grid, f.kind)
    for gen, (axis, d) in weyl_terms(variant.value):
        diff = difference_array(f.values, f.grid, axis, d)
        for k in range(8):
            if np.any(diff[k]):
                out.add_term(product_word((_split_leaf(gen),), (plain(k),)), diff[k])
    return out


def _weyl_right(g: LatticeField, variant: CrVariant) -> FormalField:
    out = FormalField(g.grid, g.kind)
    for gen, (axis, d) in weyl_terms(variant.value):
        diff = difference_array(g.values, g.grid, axis, d)
        for i in range(8):
            if np.any(diff[i]):
                out.add_term(product_word((plain(i),), (_split_leaf(gen),)), diff[i])
    return out


# -- Cauchy-Riemann operators --------------------------------------------------------

def apply_cr_left(f: LatticeField, variant=CrVariant.FORWARD) -> LatticeField | FormalField:
    """Return sum_j e_j (d_j f) with forward or backward differences."""
    variant = CrVariant.parse(variant)
    if variant.is_weyl:
        return _weyl_left(f, variant)
    table = multiplication_table(f.kind)
    out = np.zeros_like(f.values)
    for j in range(DIM):
        out += left_basis_mul(table, j, difference_array(f.values, f.grid, j, variant.direction))
    return f.with_values(out)


def apply_cr_right(g: LatticeField, variant=CrVariant.FORWARD) -> LatticeField | FormalField:
    """Return sum_j (d_j g) e_j, the basis unit multiplied on the right."""
    variant = CrVariant.parse(variant)
    if variant.is_weyl:
        return _weyl_right(g, variant)
    table = multiplication_table(g.kind)
    out = np.zeros_like(g.values)
    for j in range(DIM):
        out += right_basis_mul(difference_array(g.values, g.grid, j, variant.direction), j, table)
    return g.with_values(out)


def interior_mask(grid: GridSpec, direction: Direction) -> np.ndarray:
    """Points whose difference stencil stays on the grid (everything on a torus)."""
    mask = np.ones(grid.shape, dtype=bool)
    if grid.periodic:
        return mask
    for axis in range(DIM):
        sl = [slice(None)] * DIM
        sl[axis] = -1 if direction is FORWARD else 0
        mask[tuple(sl)] = False
    return mask


@dataclass
class MonogenicReport:
    monogenic: bool
    residual: float
    worst_point: tuple[int, ...] | None
    tol: float
    variant: str
    tested_points: int

    def as_dict(self) -> dict:
        return {
            "monogenic": self.monogenic,
            "residual": self.residual,
            "worst_point": list(self.worst_point) if self.worst_point is not None else None,
            "tol": self.tol,
            "variant": self.variant,
            "tested_points": self.tested_points,
        }


def is_monogenic(f: LatticeField, variant=CrVariant.FORWARD, tol: float = 1e-10,
                 exclude: Iterable[Sequence[int]] = (), source: LatticeField | None = None,
                 interior_only: bool = True) -> MonogenicReport:
    """Test D f = 0 (or D f = source) by the pointwise octonion norm.

    ``exclude`` removes lattice points (e.g. a pole) from the tested domain.  On
    non-periodic grids only points whose stencil stays on the grid are tested
    unless ``interior_only`` is False, since the field is zero beyond the box.
    """
    variant = CrVariant.parse(variant)
    if variant.is_weyl:
        raise DomainError("monogenicity is only tested for the forward and backward operators")
    df = apply_cr_left(f, variant)
    vals = df.values if source is None else df.values - source.values
    norm = np.sqrt((vals ** 2).sum(axis=0))
    mask = interior_mask(f.grid, variant.direction) if interior_only else np.ones(f.grid.shape, dtype=bool)
    for m in exclude:
        idx = f.grid.array_index(m)
        if idx is not None:
            mask[idx] = False
    tested = int(mask.sum())
    if tested == 0:
        return MonogenicReport(True, 0.0, None, tol, variant.value, 0)
    masked = np.where(mask, norm, -np.inf)
    flat = int(np.argmax(masked))
    idx = np.unravel_index(flat, f.grid.shape)
    worst = tuple(int(i) + o for i, o in zip(idx, f.grid.offset))
    if f.grid.periodic:
        # report the representative closest to the origin
        worst = tuple(w - n if w >= n // 2 else w for w, n in zip(worst, f.grid.shape))
    resid = float(masked[idx])
    return MonogenicReport(resid <= tol, resid, worst, tol, variant.value, tested)


__all__ = [
    "CrVariant", "FormalField", "MonogenicReport", "apply_cr_left", "apply_cr_right",
    "field_product", "interior_mask", "is_monogenic", "left_basis_mul", "right_basis_mul",
]
