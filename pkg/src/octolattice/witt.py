"""Formal words over plain basis units e_k and split generators e_k^+, e_k^-.

A leaf is ``("e", k)``, ``("+", k)`` or ``("-", k)``.  A bracket is a tuple of
at least two factors, each a leaf or a nested bracket; a *word* is the
top-level bracket (the empty word is the unit 1).  Brackets record the
parenthesization of the source expression and rewriting never crosses them.

Inside one bracket adjacent split generators are reordered with

    e_j^- e_k^- = -e_k^- e_j^-,   e_j^+ e_k^+ = -e_k^+ e_j^+,
    e_k^- e_j^+ = -delta_jk - e_j^+ e_k^-,

towards the normal order (all + generators left of all - generators, indices
ascending).  Two plain units forming a whole 2-factor bracket are multiplied
with the algebra table; plain e_0 is the identity and disappears.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

import numpy as np

from .algebra import AlgebraKind, DomainError, multiplication_table
from .lattice import BACKWARD, FORWARD, DIM, Direction, LatticeField, difference_array, laplacian_array

Leaf = tuple  # (str, int)
Word = tuple

_POL_ORDER = {"e": 0, "+": 1, "-": 2}


def plain(k: int) -> Leaf:
    return ("e", int(k))


def plus(k: int) -> Leaf:
    return ("+", int(k))


def minus(k: int) -> Leaf:
    return ("-", int(k))


def is_leaf(x) -> bool:
    return len(x) == 2 and isinstance(x[0], str)


def is_split(x) -> bool:
    return is_leaf(x) and x[0] in "+-"


def word(*factors) -> Word:
    """Build a simplified word from factors (leaves, brackets or words)."""
    return _simplify(tuple(factors))


def _as_factor(w: Word):
    """A word placed inside a larger product."""
    return w[0] if len(w) == 1 else w


def product_word(left: Word, right: Word) -> Word:
    return _simplify(tuple(_as_factor(w) for w in (left, right) if w))


def _simplify_bracket(br: tuple) -> tuple:
    out = []
    for x in br:
        if is_leaf(x):
            if x == ("e", 0):
                continue
            out.append(x)
            continue
        inner = _simplify_bracket(x)
        if len(inner) == 0:
            continue
        out.append(inner[0] if len(inner) == 1 else inner)
    return tuple(out)


def _simplify(w: Word) -> Word:
    w = _simplify_bracket(w)
    while len(w) == 1 and not is_leaf(w[0]):
        w = w[0]
    return w


def leaf_text(x: Leaf) -> str:
    pol, k = x
    return f"e{k}" if pol == "e" else f"e{k}{pol}"


def word_text(w: Word, top: bool = True) -> str:
    if not w:
        return "1"
    parts = [leaf_text(x) if is_leaf(x) else word_text(x, top=False) for x in w]
    body = " ".join(parts)
    return body if top else f"({body})"


def word_key(w) -> tuple:
    if is_leaf(w):
        return (0, _POL_ORDER[w[0]], w[1])
    return (1, tuple(word_key(x) for x in w))


def degree(w: Word) -> int:
    return sum(1 if is_leaf(x) else degree(x) for x in w)


# -- rewriting ---------------------------------------------------------------

def _pair_rule(x: Leaf, y: Leaf, bracket_len: int, kind: AlgebraKind | None):
    """Replacement list [(coef, factors)] for adjacent leaves x y, or None."""
    (px, jx), (py, jy) = x, y
    if px in "+-" and py in "+-":
        if px == py:
            if jx == jy:
                return []
            if jx > jy:
                return [(-1.0, (y, x))]
            return None
        if px == "-" and py == "+":
            out = [(-1.0, (y, x))]
            if jx == jy:
                out.insert(0, (-1.0, ()))
            return out
        return None
    if px == "e" and py == "e" and bracket_len == 2 and kind is not None:
        table = multiplication_table(kind)
        s, k = int(table.sign[jx, jy]), int(table.index[jx, jy])
        return [(float(s), () if k == 0 else (plain(k),))]
    return None


def _steps_in(br: tuple, kind) -> Iterator[list[tuple[float, tuple]]]:
    """All single rewrites inside bracket ``br`` (innermost sites first)."""
    for pos, x in enumerate(br):
        if not is_leaf(x):
            for alt in _steps_in(x, kind):
                yield [(c, br[:pos] + (sub,) + br[pos + 1:]) for c, sub in alt]
    for t in range(len(br) - 1):
        x, y = br[t], br[t + 1]
        if is_leaf(x) and is_leaf(y):
            rule = _pair_rule(x, y, len(br), kind)
            if rule is not None:
                yield [(c, br[:t] + rep + br[t + 2:]) for c, rep in rule]


def rewrite_steps(w: Word, kind: AlgebraKind | None = None) -> list[list[tuple[float, Word]]]:
    """Every way to apply one rewrite to ``w``; each result is a linear combination."""
    return [[(c, _simplify(nw)) for c, nw in alt] for alt in _steps_in(w, kind)]


def _normalize_word(w: Word, kind) -> dict[Word, float]:
    out: dict[Word, float] = defaultdict(float)
    stack = [(1.0, _simplify(w))]
    while stack:
        coef, cur = stack.pop()
        step = next(iter(_steps_in(cur, kind)), None)
        if step is None:
            out[cur] += coef
            continue
        for c, nw in step:
            stack.append((coef * c, _simplify(nw)))
    return out


class FormalElement:
    """Finite real linear combination of canonical words."""

    __slots__ = ("terms", "kind")

    def __init__(self, terms: Mapping[Word, float] | None = None, kind: AlgebraKind | str | None = None):
        clean = {}
        for w, c in (terms or {}).items():
            c = float(c)
            if c != 0.0:
                w = _simplify(tuple(w))
                clean[w] = clean.get(w, 0.0) + c
        object.__setattr__(self, "terms", {w: c for w, c in clean.items() if c != 0.0})
        object.__setattr__(self, "kind", None if kind is None else AlgebraKind.parse(kind))

    def __setattr__(self, name, value):
        raise AttributeError("FormalElement is immutable")

    @classmethod
    def of(cls, w: Word | Leaf, coef: float = 1.0, kind=None) -> "FormalElement":
        if is_leaf(w):
            w = (w,)
        return cls({w: coef}, kind)

    @classmethod
    def unit(cls, coef: float = 1.0, kind=None) -> "FormalElement":
        return cls({(): coef}, kind)

    def _kind_with(self, other: "FormalElement"):
        if self.kind and other.kind and self.kind is not other.kind:
            raise DomainError("mixed algebra kinds in formal arithmetic")
        return self.kind or other.kind

    def __add__(self, other: "FormalElement") -> "FormalElement":
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, 0.0) + c
        return FormalElement(terms, self._kind_with(other))

    def __neg__(self) -> "FormalElement":
        return FormalElement({w: -c for w, c in self.terms.items()}, self.kind)

    def __sub__(self, other: "FormalElement") -> "FormalElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, FormalElement):
            terms: dict[Word, float] = defaultdict(float)
            for (w1, c1), (w2, c2) in itertools.product(self.terms.items(), other.terms.items()):
                terms[product_word(w1, w2)] += c1 * c2
            return FormalElement(terms, self._kind_with(other))
        if np.isscalar(other):
            return FormalElement({w: c * float(other) for w, c in self.terms.items()}, self.kind)
        return NotImplemented

    def __rmul__(self, other):
        if np.isscalar(other):
            return self * other
        return NotImplemented

    def __eq__(self, other) -> bool:
        return isinstance(other, FormalElement) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def isclose(self, other: "FormalElement", atol: float = 1e-12) -> bool:
        keys = set(self.terms) | set(other.terms)
        return all(abs(self.terms.get(w, 0.0) - other.terms.get(w, 0.0)) <= atol for w in keys)

    def chop(self, atol: float) -> "FormalElement":
        return FormalElement({w: c for w, c in self.terms.items() if abs(c) > atol}, self.kind)

    def is_scalar(self) -> bool:
        return set(self.terms) <= {()}

    def scalar_part(self) -> float:
        return self.terms.get((), 0.0)

    def words(self) -> list[Word]:
        return sorted(self.terms, key=word_key)

    def dump(self) -> str:
        """Deterministic text form, one ``coefficient word`` line per term."""
        if not self.terms:
            return "0\n"
        return "".join(f"{self.terms[w]:+.17g} {word_text(w)}\n" for w in self.words())

    def __repr__(self) -> str:
        body = " ".join(f"{self.terms[w]:+g}*[{word_text(w)}]" for w in self.words()) or "0"
        return f"FormalElement({body})"


def formal_normalize(x: FormalElement) -> FormalElement:
    terms: dict[Word, float] = defaultdict(float)
    for w, c in x.terms.items():
        for nw, nc in _normalize_word(w, x.kind).items():
            terms[nw] += c * nc
    return FormalElement(terms, x.kind)


def is_normal(x: FormalElement) -> bool:
    return all(not rewrite_steps(w, x.kind) for w in x.terms)


def _substitute_bracket(br: tuple) -> list[tuple]:
    options = []
    for f in br:
        if is_leaf(f):
            options.append([plus(f[1]), minus(f[1])] if f[0] == "e" else [f])
        else:
            options.append(_substitute_bracket(f))
    return [tuple(choice) for choice in itertools.product(*options)]


def substitute_split(x: FormalElement) -> FormalElement:
    """Replace every plain factor e_k by e_k^+ + e_k^- and normalize."""
    terms: dict[Word, float] = defaultdict(float)
    for w, c in x.terms.items():
        if not w:
            terms[w] += c
            continue
        for nw in _substitute_bracket(w):
            terms[nw] += c
    # expanded words still contain e_0^+-, which must not be dropped as identity
    return formal_normalize(FormalElement(terms, x.kind))


def collapse_split(x: FormalElement) -> FormalElement:
    """Inverse bookkeeping of substitute_split on words of degree one in split units.

    Terms c*w(e_j^+) and c*w(e_j^-) sharing everything except the polarity of
    one generator combine to c*w(e_j).  Raises when a partner is missing or
    carries a different coefficient.
    """
    groups: dict[Word, dict[str, float]] = defaultdict(dict)

    def strip(br):
        out, pols = [], []
        for f in br:
            if is_leaf(f):
                if f[0] in "+-":
                    pols.append(f[0])
                    out.append(plain(f[1]))
                else:
                    out.append(f)
            else:
                inner, p = strip(f)
                out.append(inner)
                pols.extend(p)
        return tuple(out), pols

    for w, c in x.terms.items():
        base, pols = strip(w)
        if len(pols) != 1:
            raise DomainError(f"word {word_text(w)} does not carry exactly one split generator")
        groups[base][pols[0]] = c
    terms = {}
    for base, by_pol in groups.items():
        if set(by_pol) != {"+", "-"} or by_pol["+"] != by_pol["-"]:
            raise DomainError(f"unpaired split terms for {word_text(base)}: {by_pol}")
        terms[base] = by_pol["+"]
    return FormalElement(terms, x.kind)


def all_normal_forms(x: FormalElement, max_states: int = 100_000) -> set[FormalElement]:
    """Terminal elements reachable by applying rewrites in every possible order."""
    seen = {x}
    frontier = [x]
    terminal = set()
    while frontier:
        cur = frontier.pop()
        moved = False
        for w, c in cur.terms.items():
            for alt in rewrite_steps(w, cur.kind):
                moved = True
                rest = dict(cur.terms)
                del rest[w]
                nxt = FormalElement(rest, cur.kind) + FormalElement(
                    {nw: c * nc for nw, nc in _merge(alt).items()}, cur.kind)
                if nxt not in seen:
                    seen.add(nxt)
                    if len(seen) > max_states:
                        raise RuntimeError("rewrite exploration exceeded max_states")
                    frontier.append(nxt)
        if not moved:
            terminal.add(cur)
    return terminal


def _merge(alt: Iterable[tuple[float, Word]]) -> dict[Word, float]:
    out: dict[Word, float] = defaultdict(float)
    for c, w in alt:
        out[w] += c
    return out


def split_generators() -> list[Leaf]:
    return [plus(k) for k in range(8)] + [minus(k) for k in range(8)]


# -- Weyl-calculus operators ---------------------------------------------------

WEYL_DIRECTIONS = ("+-", "-+")


def weyl_terms(direction: str) -> list[tuple[Leaf, tuple[int, Direction]]]:
    """Generator/difference pairs of D^{+-} or D^{-+}."""
    if direction == "+-":
        pol_dir = {"+": FORWARD, "-": BACKWARD}
    elif direction == "-+":
        pol_dir = {"+": BACKWARD, "-": FORWARD}
    else:
        raise DomainError(f"unknown Weyl direction {direction!r}")
    return [((pol, j), (j, pol_dir[pol])) for j in range(DIM) for pol in "+-"]


Op = tuple  # (axis, Direction)
OpProduct = tuple  # sorted tuple of Ops; differences commute


def _op_key(op: Op):
    return (op[0], op[1].value)


def compose_symbolic(outer: str, inner: str) -> dict[Word, dict[OpProduct, float]]:
    """Expand D_outer(D_inner f) for scalar f and normalize each generator word.

    Returns canonical word -> {difference product: coefficient}, dropping
    entries that cancel.
    """
    acc: dict[Word, dict[OpProduct, float]] = defaultdict(lambda: defaultdict(float))
    for gx, opx in weyl_terms(outer):
        for gy, opy in weyl_terms(inner):
            ops = tuple(sorted((opx, opy), key=_op_key))
            for w, c in _normalize_word((gx, gy), None).items():
                acc[w][ops] += c
    out = {}
    for w, ops in acc.items():
        kept = {o: c for o, c in ops.items() if c != 0.0}
        if kept:
            out[w] = kept
    return out


class StructuralFailure(RuntimeError):
    def __init__(self, words: list[Word]):
        self.words = words
        super().__init__("non-scalar words survive normalization: " + ", ".join(word_text(w) for w in words))


def _require_scalar(f: LatticeField) -> np.ndarray:
    if np.any(f.values[1:]):
        raise DomainError("expected a scalar-valued field (only component 0 nonzero)")
    return f.values[0]


def _apply_ops(arr: np.ndarray, grid, ops: OpProduct) -> np.ndarray:
    for axis, d in ops:
        arr = difference_array(arr, grid, axis, d)
    return arr


@dataclass
class WeylCompositionReport:
    outer: str
    inner: str
    symbolic: dict[Word, dict[OpProduct, float]]
    scalar_residual: float
    surviving_words: dict[str, float]

    @property
    def scalar_only(self) -> bool:
        return set(self.symbolic) <= {()}


def weyl_composition(outer: str, inner: str, f: LatticeField) -> WeylCompositionReport:
    """Evaluate D_outer D_inner f word by word; compare the unit word with -Delta f."""
    scalar = _require_scalar(f)
    sym = compose_symbolic(outer, inner)
    unit = np.zeros_like(scalar)
    surviving = {}
    for w, ops in sym.items():
        field = np.zeros_like(scalar)
        for op, c in ops.items():
            field += c * _apply_ops(scalar, f.grid, op)
        if w == ():
            unit = field
        else:
            surviving[word_text(w)] = float(np.abs(field).max())
    resid = unit + laplacian_array(scalar, f.grid)
    return WeylCompositionReport(outer, inner, sym, float(np.abs(resid).max()), surviving)


def weyl_square_residual(direction: str, f: LatticeField) -> LatticeField:
    """Return (D o D) f + Delta_h f for D = D^{+-} or D^{-+} and scalar f.

    The composition is expanded over generator words and normalized with the
    three splitting relations only; any non-unit word left over raises
    StructuralFailure.
    """
    scalar = _require_scalar(f)
    sym = compose_symbolic(direction, direction)
    leftover = [w for w in sym if w != ()]
    if leftover:
        raise StructuralFailure(sorted(leftover, key=word_key))
    unit = np.zeros_like(scalar)
    for op, c in sym.get((), {}).items():
        unit += c * _apply_ops(scalar, f.grid, op)
    return LatticeField.from_scalar(f.grid, f.kind, unit + laplacian_array(scalar, f.grid))


def formal_dump_ops(sym: dict[Word, dict[OpProduct, float]]) -> dict[str, dict[str, float]]:
    """Text form of compose_symbolic output: word -> {difference product: coefficient}."""
    out = {}
    for w in sorted(sym, key=word_key):
        ops = {}
        for op, c in sorted(sym[w].items(), key=lambda kv: [_op_key(o) for o in kv[0]]):
            ops[" ".join(f"d{d.symbol}{axis}" for axis, d in op)] = c
        out[word_text(w)] = ops
    return out
