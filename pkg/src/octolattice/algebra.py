"""Classical octonions and split-octonions with explicit multiplication tables.

Both algebras share the basis e_0, ..., e_7 with e_0 the identity.  The
products of imaginary units are kept as data (the two 7x7 tables below) and
turned into an 8x8x8 structure tensor for fast evaluation.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

import numpy as np


class DomainError(ValueError):
    """Raised when an argument is outside the domain of an operation."""


class AlgebraKind(enum.Enum):
    CLASSICAL = "classical"
    SPLIT = "split"

    @classmethod
    def parse(cls, value: "AlgebraKind | str") -> "AlgebraKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise DomainError(f"unknown algebra kind {value!r}") from None


CLASSICAL = AlgebraKind.CLASSICAL
SPLIT = AlgebraKind.SPLIT


# Rows e_1..e_7 times columns e_1..e_7, transcribed verbatim.
PRINTED_ROWS = {
    CLASSICAL: (
        "-1  e4  e5 -e2 -e3 -e7  e6",
        "-e4 -1  e6  e1  e7 -e3 -e5",
        "-e5 -e6 -1 -e7  e1  e2  e4",
        " e2 -e1  e7 -1 -e6  e5 -e3",
        " e3 -e7 -e1  e6 -1 -e4  e2",
        " e7  e3 -e2 -e5  e4 -1 -e1",
        "-e6  e5 -e4  e3 -e2  e1 -1",
    ),
    SPLIT: (
        "-1  e3  e2 -e5  e4 -e7  e6",
        "-e3 -1  e1 -e6  e7  e4 -e5",
        " e2 -e1 -1 -e7  e6  e5  e4",
        " e5  e6  e7  1   e1  e2 -e3",
        "-e4 -e7  e6 -e1  1   e3 -e2",
        " e7 -e4 -e5 -e2 -e3  1   e1",
        "-e6  e5 -e4 -e3  e2 -e1  1",
    ),
}

# The printed split rows give e1e3 = e3e1, e3e5 = e5e3 and e4e7 = e7e4.  Flipping
# the upper-triangle entry of each pair is the only single-sign repair that
# yields an alternative algebra, so those three entries are overridden.
SPLIT_CORRECTIONS = {(1, 3): (-1, 2), (3, 5): (-1, 6), (4, 7): (1, 3)}

# Index sets I and J as printed (J_7 included verbatim).
PRINTED_INDEX_SETS = {
    CLASSICAL: ((1, 2, 4), (1, 3, 5), (1, 6, 7), (2, 3, 6), (2, 5, 7), (3, 4, 7), (4, 5, 6)),
    SPLIT: ((1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (4, 5, 6)),
}


class SignedBasis(NamedTuple):
    sign: int
    index: int

    def __neg__(self) -> "SignedBasis":
        return SignedBasis(-self.sign, self.index)

    def __str__(self) -> str:
        name = "1" if self.index == 0 else f"e{self.index}"
        return ("-" if self.sign < 0 else "") + name


def _parse_entry(token: str) -> SignedBasis:
    sign = -1 if token.startswith("-") else 1
    token = token.lstrip("-")
    return SignedBasis(sign, 0 if token == "1" else int(token[1:]))


def _check_index(i: int) -> int:
    if not (isinstance(i, (int, np.integer)) and 0 <= i <= 7):
        raise DomainError(f"basis index must be in 0..7, got {i!r}")
    return int(i)


@dataclass(frozen=True, eq=False)
class MultiplicationTable:
    """Signed basis products e_i e_j for one algebra kind.

    ``sign`` and ``index`` are 8x8 integer arrays including the identity
    row and column; ``tensor[i, j, k]`` is the coefficient of e_k in e_i e_j.
    """

    kind: AlgebraKind
    sign: np.ndarray
    index: np.ndarray
    source: str = "corrected"
    tensor: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        tensor = np.zeros((8, 8, 8))
        for i in range(8):
            for j in range(8):
                tensor[i, j, self.index[i, j]] = self.sign[i, j]
        for arr in (self.sign, self.index, tensor):
            arr.setflags(write=False)
        object.__setattr__(self, "tensor", tensor)

    def __getitem__(self, ij: tuple[int, int]) -> SignedBasis:
        i, j = ij
        return SignedBasis(int(self.sign[i, j]), int(self.index[i, j]))

    @property
    def entries(self) -> tuple[tuple[SignedBasis, ...], ...]:
        return tuple(tuple(self[i, j] for j in range(8)) for i in range(8))

    def square_signs(self) -> np.ndarray:
        """Return e_j e_j as a multiple of e_0 for j = 0..7."""
        return np.array([self.sign[j, j] for j in range(8)])

    def invariant_violations(self) -> list[str]:
        problems = []
        for j in range(8):
            if self[0, j] != (1, j) or self[j, 0] != (1, j):
                problems.append(f"identity row/column broken at {j}")
        expected_sq = {CLASSICAL: [-1] * 7, SPLIT: [-1, -1, -1, 1, 1, 1, 1]}[self.kind]
        for j in range(1, 8):
            if self[j, j] != (expected_sq[j - 1], 0):
                problems.append(f"e{j}e{j} = {self[j, j]}")
        for j, k in itertools.combinations(range(1, 8), 2):
            if self[j, k] != -self[k, j]:
                problems.append(f"e{j}e{k} = {self[j, k]} but e{k}e{j} = {self[k, j]}")
        return problems


def _build_table(kind: AlgebraKind, source: str) -> MultiplicationTable:
    sign = np.ones((8, 8), dtype=int)
    index = np.zeros((8, 8), dtype=int)
    index[0, :] = np.arange(8)
    index[:, 0] = np.arange(8)
    for i, row in enumerate(PRINTED_ROWS[kind], start=1):
        tokens = row.split()
        assert len(tokens) == 7
        for j, tok in enumerate(tokens, start=1):
            sign[i, j], index[i, j] = _parse_entry(tok)
    if kind is SPLIT and source == "corrected":
        for (i, j), (s, k) in SPLIT_CORRECTIONS.items():
            sign[i, j], index[i, j] = s, k
    return MultiplicationTable(kind, sign, index, source)


@lru_cache(maxsize=None)
def multiplication_table(kind: AlgebraKind | str, source: str = "corrected") -> MultiplicationTable:
    """Return the table for ``kind``.

    ``source="printed"`` gives the verbatim transcription, ``"corrected"``
    (default) the one used for all computation.  The two only differ for the
    split algebra, in the three entries listed in ``SPLIT_CORRECTIONS``.
    """
    if source not in ("corrected", "printed"):
        raise DomainError(f"unknown table source {source!r}")
    return _build_table(AlgebraKind.parse(kind), source)


def basis_product(kind: AlgebraKind | str, i: int, j: int) -> SignedBasis:
    return multiplication_table(kind)[_check_index(i), _check_index(j)]


class OctonionValue:
    """An element sum_j x_j e_j of one of the two algebras.

    Instances are immutable; arithmetic returns new values.  ``*`` is the
    algebra product between two values and scaling with a real number.
    """

    __slots__ = ("kind", "coeff")

    def __init__(self, kind: AlgebraKind | str, coeff: Iterable[float]):
        arr = np.array(coeff, dtype=float).reshape(-1)
        if arr.shape != (8,):
            raise DomainError(f"expected 8 coefficients, got {arr.shape[0]}")
        arr.setflags(write=False)
        object.__setattr__(self, "kind", AlgebraKind.parse(kind))
        object.__setattr__(self, "coeff", arr)

    def __setattr__(self, name, value):
        raise AttributeError("OctonionValue is immutable")

    @classmethod
    def basis(cls, kind: AlgebraKind | str, i: int, scale: float = 1.0) -> "OctonionValue":
        c = np.zeros(8)
        c[_check_index(i)] = scale
        return cls(kind, c)

    @classmethod
    def zero(cls, kind: AlgebraKind | str) -> "OctonionValue":
        return cls(kind, np.zeros(8))

    @classmethod
    def scalar(cls, kind: AlgebraKind | str, x: float) -> "OctonionValue":
        return cls.basis(kind, 0, x)

    def _same(self, other: "OctonionValue") -> None:
        if not isinstance(other, OctonionValue):
            raise TypeError(f"cannot combine OctonionValue with {type(other).__name__}")
        if other.kind is not self.kind:
            raise DomainError(f"mixed algebra kinds {self.kind.value} and {other.kind.value}")

    def __add__(self, other: "OctonionValue") -> "OctonionValue":
        self._same(other)
        return OctonionValue(self.kind, self.coeff + other.coeff)

    def __sub__(self, other: "OctonionValue") -> "OctonionValue":
        self._same(other)
        return OctonionValue(self.kind, self.coeff - other.coeff)

    def __neg__(self) -> "OctonionValue":
        return OctonionValue(self.kind, -self.coeff)

    def __mul__(self, other):
        if isinstance(other, OctonionValue):
            return multiply(self, other)
        if np.isscalar(other):
            return OctonionValue(self.kind, self.coeff * float(other))
        return NotImplemented

    def __rmul__(self, other):
        if np.isscalar(other):
            return OctonionValue(self.kind, self.coeff * float(other))
        return NotImplemented

    def __truediv__(self, other: float) -> "OctonionValue":
        return OctonionValue(self.kind, self.coeff / float(other))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, OctonionValue)
            and other.kind is self.kind
            and bool(np.array_equal(self.coeff, other.coeff))
        )

    def __hash__(self) -> int:
        return hash((self.kind, self.coeff.tobytes()))

    def __getitem__(self, j: int) -> float:
        return float(self.coeff[j])

    def conj(self) -> "OctonionValue":
        c = -self.coeff.copy()
        c[0] = self.coeff[0]
        return OctonionValue(self.kind, c)

    def norm(self) -> float:
        """Euclidean norm of the coefficient vector."""
        return float(np.linalg.norm(self.coeff))

    def isclose(self, other: "OctonionValue", atol: float = 1e-12, rtol: float = 0.0) -> bool:
        self._same(other)
        return bool(np.allclose(self.coeff, other.coeff, atol=atol, rtol=rtol))

    def __repr__(self) -> str:
        terms = [f"{c:+.6g}{'' if j == 0 else f'*e{j}'}" for j, c in enumerate(self.coeff) if c]
        return f"OctonionValue({self.kind.value}: {' '.join(terms) or '0'})"


def product_coefficients(table: MultiplicationTable, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Bilinear product of coefficient arrays with leading axis of length 8."""
    out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=np.result_type(a, b))
    for i in range(8):
        for j in range(8):
            out[table.index[i, j]] += table.sign[i, j] * (a[i] * b[j])
    return out


def multiply(a: OctonionValue, b: OctonionValue, table: MultiplicationTable | None = None) -> OctonionValue:
    a._same(b)
    table = table or multiplication_table(a.kind)
    return OctonionValue(a.kind, np.einsum("ijk,i,j->k", table.tensor, a.coeff, b.coeff))


def associator(a: OctonionValue, b: OctonionValue, c: OctonionValue,
               table: MultiplicationTable | None = None) -> OctonionValue:
    """Return (ab)c - a(bc)."""
    a._same(b)
    a._same(c)
    return multiply(multiply(a, b, table), c, table) - multiply(a, multiply(b, c, table), table)


@dataclass(frozen=True)
class TripleSystem:
    kind: AlgebraKind
    triples: tuple[tuple[int, int, int], ...]
    source: str = "derived"

    def __post_init__(self) -> None:
        if len(self.triples) != 7:
            raise DomainError(f"a triple system has 7 triples, got {len(self.triples)}")

    def __iter__(self):
        return iter(self.triples)

    def __len__(self) -> int:
        return 7

    def line_of(self, j: int, k: int) -> tuple[int, int, int]:
        for t in self.triples:
            if j in t and k in t:
                return t
        raise KeyError((j, k))

    def pair_coverage(self) -> dict[tuple[int, int], int]:
        """Number of triples containing each pair j < k (1 everywhere for a Fano plane)."""
        cover = {p: 0 for p in itertools.combinations(range(1, 8), 2)}
        for t in self.triples:
            for p in itertools.combinations(sorted(t), 2):
                cover[p] += 1
        return cover


def derive_triples(kind: AlgebraKind | str, table: MultiplicationTable | None = None) -> TripleSystem:
    """Scan all pairs j < k of imaginary units and collect {j, k, index(e_j e_k)}."""
    kind = AlgebraKind.parse(kind)
    table = table or multiplication_table(kind)
    found = {
        tuple(sorted((j, k, int(table.index[j, k]))))
        for j, k in itertools.combinations(range(1, 8), 2)
    }
    return TripleSystem(kind, tuple(sorted(found)))


def printed_triples(kind: AlgebraKind | str) -> TripleSystem:
    kind = AlgebraKind.parse(kind)
    return TripleSystem(kind, PRINTED_INDEX_SETS[kind], source="printed")


def index_sets(kind: AlgebraKind | str, source: str = "derived") -> TripleSystem:
    if source == "derived":
        return derive_triples(kind)
    if source == "printed":
        return printed_triples(kind)
    raise DomainError(f"unknown index-set source {source!r}")


def compare_triples(kind: AlgebraKind | str) -> dict:
    """Compare the derived triple system against the printed one."""
    kind = AlgebraKind.parse(kind)
    table = multiplication_table(kind)
    derived = set(derive_triples(kind).triples)
    printed = PRINTED_INDEX_SETS[kind]
    unclosed = []
    for t in printed:
        for j, k in itertools.combinations(t, 2):
            product = int(table.index[j, k])
            if product not in t:
                unclosed.append({"triple": list(t), "pair": [j, k], "product_index": product})
    return {
        "kind": kind.value,
        "derived": [list(t) for t in sorted(derived)],
        "printed": [list(t) for t in printed],
        "matching": sum(tuple(sorted(t)) in derived for t in printed),
        "printed_only": [list(t) for t in printed if tuple(sorted(t)) not in derived],
        "derived_only": [list(t) for t in sorted(derived) if t not in {tuple(sorted(p)) for p in printed}],
        "printed_not_closed": unclosed,
    }


@dataclass
class ValidationReport:
    kind: AlgebraKind
    table_source: str
    table_problems: list[str]
    anticommutativity_violations: list[tuple[int, int]]
    sign_law_violations: list[tuple[int, int, int]]
    alternativity_max: float
    alternativity_tol: float
    zero_divisors: list[tuple[OctonionValue, OctonionValue]]

    @property
    def passed(self) -> bool:
        zd_ok = bool(self.zero_divisors) if self.kind is SPLIT else not self.zero_divisors
        return (
            not self.table_problems
            and not self.anticommutativity_violations
            and not self.sign_law_violations
            and self.alternativity_max <= self.alternativity_tol
            and zd_ok
        )

    def as_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "table_source": self.table_source,
            "table_problems": self.table_problems,
            "anticommutativity_violations": [list(p) for p in self.anticommutativity_violations],
            "sign_law_violations": [list(t) for t in self.sign_law_violations],
            "alternativity_max_relative": self.alternativity_max,
            "alternativity_tol": self.alternativity_tol,
            "zero_divisors": [[[float(x) for x in a.coeff], [float(x) for x in b.coeff]] for a, b in self.zero_divisors],
            "passed": self.passed,
        }


def sign_law_violations(table: MultiplicationTable) -> list[tuple[int, int, int]]:
    """Check (e_i e_j)e_k = -e_i(e_j e_k) off associative triples, equality otherwise."""
    bad = []
    for i, j, k in itertools.product(range(1, 8), repeat=3):
        ij = table[i, j]
        left = SignedBasis(ij.sign * table.sign[ij.index, k], int(table.index[ij.index, k]))
        jk = table[j, k]
        right = SignedBasis(jk.sign * table.sign[i, jk.index], int(table.index[i, jk.index]))
        anti = len({i, j, k}) == 3 and ij.index != k
        expected = -right if anti else right
        if left != expected:
            bad.append((i, j, k))
    return bad


def _pm_basis_sums(kind: AlgebraKind) -> list[OctonionValue]:
    out = []
    for a, b in itertools.combinations(range(8), 2):
        for s in (1, -1):
            c = np.zeros(8)
            c[a], c[b] = 1, s
            out.append(OctonionValue(kind, c))
    return out


def find_zero_divisors(kind: AlgebraKind | str, table: MultiplicationTable | None = None,
                       limit: int | None = None) -> list[tuple[OctonionValue, OctonionValue]]:
    """Exhaustive search over pairs of elements e_a +- e_b with a zero product."""
    kind = AlgebraKind.parse(kind)
    table = table or multiplication_table(kind)
    family = _pm_basis_sums(kind)
    coeffs = np.array([x.coeff for x in family])
    # products[p, q] = family[p] * family[q]
    products = np.einsum("ijk,pi,qj->pqk", table.tensor, coeffs, coeffs)
    hits = np.argwhere(np.all(products == 0, axis=-1))
    pairs = [(family[p], family[q]) for p, q in hits]
    return pairs if limit is None else pairs[:limit]


def validate_algebra(kind: AlgebraKind | str, samples: int = 1000, seed: int = 0,
                     table_source: str = "corrected", tol: float = 1e-12) -> ValidationReport:
    kind = AlgebraKind.parse(kind)
    table = multiplication_table(kind, table_source)
    anti = [
        (j, k) for j, k in itertools.combinations(range(1, 8), 2) if table[j, k] != -table[k, j]
    ]
    rng = np.random.default_rng(seed)
    a, b = rng.uniform(-1, 1, size=(2, 8, samples))
    prod = lambda x, y: product_coefficients(table, x, y)  # noqa: E731
    left_alt = prod(prod(a, a), b) - prod(a, prod(a, b))
    right_alt = prod(prod(a, b), b) - prod(a, prod(b, b))
    scale = (np.linalg.norm(a, axis=0) ** 2) * np.linalg.norm(b, axis=0) + (
        np.linalg.norm(a, axis=0) * np.linalg.norm(b, axis=0) ** 2
    )
    alt = float(max(
        np.max(np.linalg.norm(left_alt, axis=0) / scale),
        np.max(np.linalg.norm(right_alt, axis=0) / scale),
    ))
    zd = find_zero_divisors(kind, table)
    witness = OctonionValue(kind, [1, 0, 0, 0, 1, 0, 0, 0]), OctonionValue(kind, [1, 0, 0, 0, -1, 0, 0, 0])
    if kind is SPLIT and any(p == witness for p in zd):
        zd.remove(witness)
        zd.insert(0, witness)
    return ValidationReport(
        kind=kind,
        table_source=table_source,
        table_problems=table.invariant_violations(),
        anticommutativity_violations=anti,
        sign_law_violations=sign_law_violations(table),
        alternativity_max=alt,
        alternativity_tol=tol,
        zero_divisors=zd,
    )


def e(kind: AlgebraKind | str, i: int) -> OctonionValue:
    """Shorthand for the basis element e_i."""
    return OctonionValue.basis(kind, i)


def from_terms(kind: AlgebraKind | str, terms: Sequence[tuple[float, int]]) -> OctonionValue:
    c = np.zeros(8)
    for coef, j in terms:
        c[_check_index(j)] += coef
    return OctonionValue(kind, c)
