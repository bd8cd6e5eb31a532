"""Fourier symbols and torus fundamental solutions of the discrete Cauchy-Riemann operators.

Array convention: on an N^8 torus the transform is numpy's
f^(theta) = sum_m f(m) exp(-i theta.m), theta_j = 2 pi k_j / N, so the forward
difference has symbol sigma_j = (exp(i theta_j) - 1)/h and the backward one
(1 - exp(-i theta_j))/h.  The symbol xi_h^{+j} evaluated at frequency xi = theta/h
equals sigma_j at -xi; both conventions describe the same operator.
"""

from __future__ import annotations

import io
import logging
import math
import os
import struct
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np
import scipy.fft

from .algebra import AlgebraKind, DomainError, multiplication_table
from .lattice import (
    BACKWARD,
    DIM,
    FORWARD,
    Direction,
    GridSpec,
    LatticeField,
    read_field_stream,
    write_field_stream,
)
from .operators import apply_cr_left, apply_cr_right

log = logging.getLogger(__name__)

CACHE_ENV = "OCTOLATTICE_CACHE"
CACHE_MAGIC = b"OCTE1"
_CACHE_HEADER = struct.Struct("<5sBBqdBBq")
_KIND_CODES = {AlgebraKind.CLASSICAL: 0, AlgebraKind.SPLIT: 1}
_METHODS = {"inverse": 0, "symbol": 1}
SINGULAR_RTOL = 1e-9
_CONVENTIONS = {
    "inverse": "exact inverse h^-8 abar/n(a); singular modes zeroed; numpy transform sign",
    "symbol": "sum_j e_j IDFT(xi^{+-j}/d^2); zero mode zeroed",
}


@dataclass(frozen=True)
class SymbolPoint:
    xi: tuple[float, ...]
    h: float

    def __post_init__(self):
        xi = tuple(float(x) for x in self.xi)
        if len(xi) != DIM:
            raise DomainError("a symbol point needs 8 frequencies")
        if self.h <= 0:
            raise DomainError("h must be positive")
        bound = math.pi / self.h * (1 + 1e-12)
        if any(abs(x) > bound for x in xi):
            raise DomainError("frequencies must satisfy |xi_j| <= pi/h")
        object.__setattr__(self, "xi", xi)


def symbol_xi(j: int, direction, p: SymbolPoint) -> complex:
    """xi_h^{+-j} = -+ h^-1 (1 - exp(-+ i h xi_j))."""
    direction = Direction.parse(direction)
    s = 1.0 if direction is FORWARD else -1.0
    return complex(-s / p.h * (1 - np.exp(-s * 1j * p.h * p.xi[j])))


def symbol_d2(p: SymbolPoint) -> float:
    """Symbol of the star-Laplacian, (4/h^2) sum_j sin^2(xi_j h/2)."""
    return float(4.0 / p.h ** 2 * sum(math.sin(x * p.h / 2) ** 2 for x in p.xi))


# -- torus symbols -----------------------------------------------------------

def torus_angles(n: int) -> np.ndarray:
    """theta = h*xi on the torus frequency grid, in FFT storage order."""
    return 2 * np.pi * np.fft.fftfreq(n)


def difference_symbol(n: int, h: float, direction) -> np.ndarray:
    """1-D symbol of the forward/backward difference in the array convention."""
    th = torus_angles(n)
    if Direction.parse(direction) is FORWARD:
        return (np.exp(1j * th) - 1) / h
    return (1 - np.exp(-1j * th)) / h


def _axis(vec: np.ndarray, j: int) -> np.ndarray:
    shape = [1] * DIM
    shape[j] = vec.size
    return vec.reshape(shape)


def symbol_norm(kind, n: int, h: float, direction) -> np.ndarray:
    """n(a) = a abar for the operator symbol a = sum_j sigma_j e_j, over the full grid."""
    signs = multiplication_table(kind).square_signs()
    sig = difference_symbol(n, h, direction)
    total = np.zeros((n,) * DIM, dtype=complex)
    for j in range(DIM):
        c = 1.0 if j == 0 else -float(signs[j])
        total = total + c * _axis(sig ** 2, j)
    return total


def singular_mask(kind, n: int, h: float, direction) -> np.ndarray:
    """Frequencies where the operator symbol has no inverse (zero mode included)."""
    return np.abs(symbol_norm(kind, n, h, direction)) <= SINGULAR_RTOL / h ** 2


def memory_estimate(n: int) -> int:
    """Rough peak bytes for one fundamental-solution computation."""
    return n ** DIM * (8 * 8 + 4 * 16)


def _available_memory() -> int | None:
    try:
        return os.sysconf("SC_AVPHYS_PAGES") * os.sysconf("SC_PAGE_SIZE")
    except (ValueError, OSError, AttributeError):
        return None


@dataclass
class FundamentalSolution:
    field: LatticeField
    direction: Direction
    kind: AlgebraKind
    meta: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.field.grid.shape[0]

    @property
    def h(self) -> float:
        return self.field.grid.h


def _compute(kind: AlgebraKind, direction: Direction, n: int, h: float, method: str,
             threads: int) -> tuple[np.ndarray, dict]:
    sig = difference_symbol(n, h, direction)
    hat = np.empty((n,) * DIM, dtype=complex)
    values = np.empty((8,) + (n,) * DIM)
    imag = 0.0
    if method == "inverse":
        norm = symbol_norm(kind, n, h, direction)
        sing = np.abs(norm) <= SINGULAR_RTOL / h ** 2
        inv = np.where(sing, 0.0, 1.0 / np.where(sing, 1.0, norm))
        inv *= h ** -DIM
        for j in range(DIM):
            # abar / n(a): the octonion conjugate flips the imaginary units
            coef = 1.0 if j == 0 else -1.0
            np.multiply(inv, coef * _axis(sig, j), out=hat)
            comp = scipy.fft.ifftn(hat, workers=threads)
            imag = max(imag, float(np.abs(comp.imag).max()))
            values[j] = comp.real
        singular = int(sing.sum())
        convention = _CONVENTIONS["inverse"]
    else:
        th = torus_angles(n)
        d2 = np.zeros((n,) * DIM)
        for j in range(DIM):
            d2 = d2 + _axis(4 / h ** 2 * np.sin(th / 2) ** 2, j)
        zero = d2 == 0
        inv = np.where(zero, 0.0, 1.0 / np.where(zero, 1.0, d2)) * h ** -DIM
        # xi_h^{+-j} on the array grid is sigma_j at -theta, i.e. its complex conjugate
        for j in range(DIM):
            np.multiply(inv, _axis(np.conj(sig), j), out=hat)
            comp = scipy.fft.ifftn(hat, workers=threads)
            imag = max(imag, float(np.abs(comp.imag).max()))
            values[j] = comp.real
        singular = int(zero.sum())
        convention = _CONVENTIONS["symbol"]
    meta = {"N": n, "h": h, "method": method, "singular_modes": singular,
            "zero_mode_removed": True, "convention": convention, "imag_max": imag}
    return values, meta


def fundamental_solution(kind, direction, n: int, h: float = 1.0, method: str = "inverse",
                         cache_dir: str | os.PathLike | None = None, use_cache: bool = True,
                         threads: int = 1, max_bytes: int | None = None) -> FundamentalSolution:
    """Discrete fundamental solution of D_h^+ or D_h^- on the N^8 torus.

    ``method="inverse"`` inverts the operator symbol exactly wherever it is
    invertible; ``method="symbol"`` assembles sum_j e_j IDFT(xi^{+-j}/d^2).
    """
    kind = AlgebraKind.parse(kind)
    direction = Direction.parse(direction)
    if n < 4 or n % 2:
        raise DomainError("torus size N must be an even integer >= 4")
    if h <= 0:
        raise DomainError("h must be positive")
    if method not in _METHODS:
        raise DomainError(f"unknown method {method!r}")
    need = memory_estimate(n)
    limit = max_bytes if max_bytes is not None else _available_memory()
    if limit is not None and need > limit:
        raise MemoryError(
            f"N={n} needs about {need / 2**30:.1f} GiB for N^8 = {n**DIM} points "
            f"(limit {limit / 2**30:.1f} GiB); use a smaller torus size")
    path = cache_path(kind, direction, n, h, method, cache_dir) if use_cache else None
    if path is not None and path.exists():
        try:
            return read_cache(path)
        except (OSError, ValueError, struct.error, DomainError) as exc:
            log.warning("cache file %s unreadable (%s); recomputing", path, exc)
    values, meta = _compute(kind, direction, n, h, method, threads)
    grid = GridSpec.torus(n, h)
    sol = FundamentalSolution(LatticeField(grid, kind, values), direction, kind, meta)
    if path is not None:
        try:
            write_cache(path, sol)
        except OSError as exc:
            log.warning("could not write cache file %s: %s", path, exc)
    return sol


def singular_correction(kind, direction, n: int, h: float = 1.0) -> LatticeField:
    """kappa(m) = h^-8 N^-8 sum over singular frequencies of exp(i theta.m), as a scalar field."""
    mask = singular_mask(kind, n, h, direction)
    kappa = scipy.fft.ifftn(mask.astype(complex)).real * h ** -DIM
    return LatticeField.from_scalar(GridSpec.torus(n, h), kind, kappa)


def delta_field(grid: GridSpec, kind) -> LatticeField:
    """Discrete delta: h^-8 at the origin."""
    vals = np.zeros((8,) + grid.shape)
    vals[(0,) + grid.array_index((0,) * DIM)] = grid.h ** -DIM
    return LatticeField(grid, kind, vals)


@dataclass
class DeltaReport:
    kind: str
    direction: str
    n: int
    h: float
    method: str
    residual_zero_mode: float
    residual_singular: float
    residual_right: float
    residual_mismatched: float
    singular_modes: int
    origin_value: list[float]
    imag_max: float

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def delta_residual(sol: FundamentalSolution) -> DeltaReport:
    """Residuals of D E against delta minus the zero-mode and the singular-mode constants.

    ``residual_mismatched`` applies the operator of the opposite direction and is
    expected to be large.
    """
    grid, kind = sol.field.grid, sol.kind
    n, h = sol.n, sol.h
    delta = delta_field(grid, kind)
    de = apply_cr_left(sol.field, sol.direction)
    zero_mode = delta.values.copy()
    zero_mode[0] -= h ** -DIM * float(n) ** -DIM
    kappa = singular_correction(kind, sol.direction, n, h)
    target = delta - kappa
    ed = apply_cr_right(sol.field, sol.direction)
    other = BACKWARD if sol.direction is FORWARD else FORWARD
    mism = apply_cr_left(sol.field, other)
    origin = de.values[(slice(None),) + grid.array_index((0,) * DIM)]
    return DeltaReport(
        kind=kind.value,
        direction=sol.direction.symbol,
        n=n,
        h=h,
        method=sol.meta.get("method", "inverse"),
        residual_zero_mode=float(np.abs(de.values - zero_mode).max()),
        residual_singular=float(np.abs((de - target).values).max()),
        residual_right=float(np.abs((ed - target).values).max()),
        residual_mismatched=float(np.abs((mism - target).values).max()),
        singular_modes=int(sol.meta.get("singular_modes", 0)),
        origin_value=[float(x) for x in origin],
        imag_max=float(sol.meta.get("imag_max", 0.0)),
    )


# -- disk cache ------------------------------------------------------------------

def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "octolattice"


def cache_path(kind, direction, n: int, h: float, method: str = "inverse",
               cache_dir: str | os.PathLike | None = None) -> Path:
    kind = AlgebraKind.parse(kind)
    d = "plus" if Direction.parse(direction) is FORWARD else "minus"
    root = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    return root / f"E_{kind.value}_{d}_N{n}_h{h!r}_{method}.octe"


def write_cache(path: str | os.PathLike, sol: FundamentalSolution) -> None:
    """Write atomically: temp file in the same directory, then rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    buf = io.BytesIO()
    buf.write(_CACHE_HEADER.pack(
        CACHE_MAGIC, _KIND_CODES[sol.kind], 0 if sol.direction is FORWARD else 1, sol.n, sol.h,
        1 if sol.meta.get("zero_mode_removed", True) else 0,
        _METHODS[sol.meta.get("method", "inverse")], int(sol.meta.get("singular_modes", 0))))
    write_field_stream(buf, sol.field)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(buf.getvalue())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_cache_header(stream) -> dict:
    raw = stream.read(_CACHE_HEADER.size)
    if len(raw) != _CACHE_HEADER.size:
        raise ValueError("truncated cache header")
    magic, kind, d, n, h, zero, method, singular = _CACHE_HEADER.unpack(raw)
    if magic != CACHE_MAGIC:
        raise ValueError("not a fundamental-solution cache file")
    kinds = {v: k for k, v in _KIND_CODES.items()}
    methods = {v: k for k, v in _METHODS.items()}
    if kind not in kinds or method not in methods or d not in (0, 1):
        raise ValueError("corrupt cache header")
    return {"kind": kinds[kind], "direction": FORWARD if d == 0 else BACKWARD, "N": n, "h": h,
            "zero_mode_removed": bool(zero), "method": methods[method], "singular_modes": singular}


def read_cache(path: str | os.PathLike) -> FundamentalSolution:
    with open(path, "rb") as fh:
        head = read_cache_header(fh)
        f = read_field_stream(fh)
        if fh.read(1):
            raise ValueError("trailing bytes in cache file")
    if f.kind is not head["kind"] or f.grid.shape != (head["N"],) * DIM or not f.grid.periodic:
        raise ValueError("cache payload does not match its header")
    meta = {k: head[k] for k in ("N", "h", "method", "singular_modes", "zero_mode_removed")}
    meta["cached"] = True
    meta["convention"] = _CONVENTIONS[head["method"]]
    return FundamentalSolution(f, head["direction"], head["kind"], meta)


def cache_list(cache_dir: str | os.PathLike | None = None) -> list[dict]:
    root = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    out = []
    for p in sorted(root.glob("*.octe")) if root.is_dir() else []:
        entry = {"path": str(p), "bytes": p.stat().st_size}
        try:
            with open(p, "rb") as fh:
                head = read_cache_header(fh)
            entry.update(kind=head["kind"].value, direction=head["direction"].symbol, N=head["N"],
                         h=head["h"], method=head["method"])
        except (OSError, ValueError, struct.error) as exc:
            entry["error"] = str(exc)
        out.append(entry)
    return out


def cache_clear(cache_dir: str | os.PathLike | None = None) -> int:
    removed = 0
    for entry in cache_list(cache_dir):
        os.unlink(entry["path"])
        removed += 1
    return removed


__all__ = [
    "DeltaReport", "FundamentalSolution", "SymbolPoint", "cache_clear", "cache_list", "cache_path",
    "default_cache_dir", "delta_field", "delta_residual", "difference_symbol", "fundamental_solution",
    "read_cache", "singular_correction", "singular_mask", "symbol_d2", "symbol_norm", "symbol_xi",
    "torus_angles", "write_cache",
]
