"""Named verification experiments; each returns a structured, JSON-ready report."""

from __future__ import annotations

import itertools
import logging
import os
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import algebra, calculus, fundsol, witt
from .algebra import AlgebraKind, DomainError
from .lattice import Box, GridSpec, random_field

log = logging.getLogger(__name__)

EXPERIMENTS = ("algebra-check", "triples", "weyl-square", "fundsol-check", "stokes", "borel-pompeiu", "cauchy")

DEFAULT_TOLERANCES = {
    "algebra-check": 1e-12,
    "triples": 0.0,
    "weyl-square": 1e-12,
    "fundsol-check": 1e-10,
    "stokes": 1e-9,
    "borel-pompeiu": 1e-8,
    "cauchy": 1e-10,
}


@dataclass
class ExperimentConfig:
    experiment: str
    kind: str = "classical"
    h: float = 1.0
    torus_size: list[int] = field(default_factory=lambda: [4])
    support: int = 3
    seed: int = 1
    seeds: int = 1
    index_sets: str = "derived"
    table: str = "corrected"
    tolerance: float | None = None
    threads: int = field(default_factory=lambda: os.cpu_count() or 1)
    output_dir: str = "reports"
    cache_dir: str | None = None

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise DomainError(f"unknown experiment {self.experiment!r}; choose from {', '.join(EXPERIMENTS)}")
        self.kind = AlgebraKind.parse(self.kind).value
        self.h = float(self.h)
        if not self.h > 0:
            raise DomainError("--h must be positive")
        if isinstance(self.torus_size, (int, str)):
            self.torus_size = parse_int_list(self.torus_size)
        self.torus_size = [int(n) for n in self.torus_size]
        if not self.torus_size or any(n < 4 or n % 2 for n in self.torus_size):
            raise DomainError("torus sizes must be even integers >= 4")
        self.support = int(self.support)
        if self.support < 1:
            raise DomainError("--support must be at least 1")
        self.seed, self.seeds, self.threads = int(self.seed), int(self.seeds), int(self.threads)
        if self.seeds < 1 or self.threads < 1:
            raise DomainError("--seeds and --threads must be positive")
        if self.index_sets not in ("derived", "printed"):
            raise DomainError("--index-sets must be 'derived' or 'printed'")
        if self.table not in ("corrected", "printed"):
            raise DomainError("--table must be 'corrected' or 'printed'")
        if self.tolerance is not None:
            self.tolerance = float(self.tolerance)
            if self.tolerance < 0:
                raise DomainError("--tolerance must be non-negative")

    @property
    def tol(self) -> float:
        return DEFAULT_TOLERANCES[self.experiment] if self.tolerance is None else self.tolerance

    @property
    def seed_list(self) -> list[int]:
        return list(range(self.seed, self.seed + self.seeds))


def parse_int_list(value) -> list[int]:
    if isinstance(value, int):
        return [value]
    try:
        return [int(v) for v in str(value).split(",") if v.strip()]
    except ValueError:
        raise DomainError(f"expected comma-separated integers, got {value!r}") from None


@dataclass
class ExperimentResult:
    experiment: str
    passed: bool
    report: dict
    rows: list[dict]
    seconds: float = 0.0


def _row(check: str, value, tol, passed: bool, note: str = "") -> dict:
    return {"check": check, "value": value, "tolerance": tol, "passed": bool(passed), "note": note}


# -- experiments --------------------------------------------------------------------

def run_algebra_check(cfg: ExperimentConfig) -> tuple[dict, list[dict]]:
    table = algebra.multiplication_table(cfg.kind, cfg.table)
    rep = algebra.validate_algebra(cfg.kind, samples=1000, seed=cfg.seed, table_source=cfg.table, tol=cfg.tol)
    printed = algebra.multiplication_table(cfg.kind, "printed")
    matches = sum(table[i, j] == printed[i, j] for i in range(1, 8) for j in range(1, 8))
    e0, e4 = algebra.e(cfg.kind, 0), algebra.e(cfg.kind, 4)
    witness = algebra.multiply(e0 + e4, e0 - e4, table)
    rows = [
        _row("printed_entries_matched", matches, 49, True,
             "informational" if matches == 49 else "informational: printed entries repaired for anticommutativity"),
        _row("anticommutativity_violations", len(rep.anticommutativity_violations), 0, not rep.anticommutativity_violations),
        _row("sign_law_violations", len(rep.sign_law_violations), 0, not rep.sign_law_violations),
        _row("alternativity_max_relative", rep.alternativity_max, cfg.tol, rep.alternativity_max <= cfg.tol),
        _row("zero_divisor_pairs", len(rep.zero_divisors), "", bool(rep.zero_divisors) == (cfg.kind == "split")),
    ]
    report = rep.as_dict()
    report["printed_entries_matched"] = matches
    report["witness_product_(e0+e4)(e0-e4)"] = [float(x) for x in witness.coeff]
    if rep.zero_divisors:
        a, b = rep.zero_divisors[0]
        report["zero_divisor_witness"] = [[float(x) for x in a.coeff], [float(x) for x in b.coeff]]
    report["passed"] = rep.passed
    return report, rows


def _fano_ok(ts: algebra.TripleSystem) -> bool:
    cover = ts.pair_coverage()
    return all(v == 1 for v in cover.values()) and len(cover) == 21


def run_triples(cfg: ExperimentConfig) -> tuple[dict, list[dict]]:
    cmp = algebra.compare_triples(cfg.kind)
    chosen = algebra.index_sets(cfg.kind, cfg.index_sets)
    derived = algebra.derive_triples(cfg.kind)
    rows = [_row("derived_is_fano_plane", _fano_ok(derived), True, _fano_ok(derived))]
    if cfg.index_sets == "printed":
        ok = not cmp["printed_only"] and not cmp["derived_only"]
        rows.append(_row("printed_matches_derived", cmp["matching"], 7, ok,
                         "; ".join(f"printed {p} vs derived {d}" for p, d in zip(cmp["printed_only"], cmp["derived_only"]))))
    report = dict(cmp)
    report["index_sets"] = cfg.index_sets
    report["selected"] = [list(t) for t in chosen.triples]
    return report, rows


def run_weyl_square(cfg: ExperimentConfig) -> tuple[dict, list[dict]]:
    t0 = time.perf_counter()
    gens = witt.split_generators()
    nonconfluent = []
    for a, b in itertools.product(gens, gens):
        x = witt.FormalElement.of((a, b))
        if len(witt.all_normal_forms(x)) != 1:
            nonconfluent.append(witt.word_text((a, b)))
    rows = [_row("confluence_degree2_words", 256 - len(nonconfluent), 256, not nonconfluent)]
    grid = GridSpec.cube(cfg.support + 2, cfg.h)
    box = Box.centered(cfg.support)
    residuals = {}
    for direction in witt.WEYL_DIRECTIONS:
        worst = 0.0
        for s in cfg.seed_list:
            f = random_field(grid, box, s, cfg.kind, scalar=True)
            worst = max(worst, witt.weyl_square_residual(direction, f).sup_norm())
        residuals[direction] = worst
        rows.append(_row(f"square_{direction}_residual", worst, cfg.tol, worst <= cfg.tol))
    f = random_field(grid, box, cfg.seed, cfg.kind, scalar=True)
    mixed = witt.weyl_composition("-+", "+-", f)
    report = {
        "nonconfluent_words": nonconfluent,
        "square_residuals": residuals,
        "symbolic_squares": {d: witt.formal_dump_ops(witt.compose_symbolic(d, d)) for d in witt.WEYL_DIRECTIONS},
        "mixed_composition": {
            "order": "D^{-+} D^{+-}",
            "scalar_only": mixed.scalar_only,
            "unit_word_vs_minus_laplacian": mixed.scalar_residual,
            "surviving_words": len(mixed.surviving_words),
            "surviving_word_sup": mixed.surviving_words,
        },
        "confluence_seconds": time.perf_counter() - t0,
    }
    return report, rows


def run_fundsol_check(cfg: ExperimentConfig) -> tuple[dict, list[dict]]:
    rows, reps = [], []
    for n in cfg.torus_size:
        log.info("torus N=%d: about %.1f MiB per fundamental solution", n, fundsol.memory_estimate(n) / 2**20)
        for direction in ("+", "-"):
            sol = fundsol.fundamental_solution(cfg.kind, direction, n, cfg.h, cache_dir=cfg.cache_dir,
                                               threads=cfg.threads)
            r = fundsol.delta_residual(sol)
            scale = cfg.h ** -8
            reps.append(r.as_dict())
            rows.append(_row(f"N{n}_{direction}_residual_vs_delta_minus_kappa", r.residual_singular,
                             cfg.tol * scale, r.residual_singular <= cfg.tol * scale))
            rows.append(_row(f"N{n}_{direction}_right_residual", r.residual_right,
                             cfg.tol * scale, r.residual_right <= cfg.tol * scale))
            rows.append(_row(f"N{n}_{direction}_residual_vs_delta_minus_zero_mode", r.residual_zero_mode,
                             cfg.tol * scale, True, "informational: symbol is singular at nonzero frequencies"))
    return {"results": reps}, rows


def run_stokes(cfg: ExperimentConfig) -> tuple[dict, list[dict]]:
    K = algebra.index_sets(cfg.kind, cfg.index_sets)
    rows, results = [], []
    for s in cfg.seed_list:
        whole = calculus.stokes_identity_residual(cfg.kind, s, cfg.support, "all", cfg.h, K)
        results.append(whole)
        rows.append(_row(f"seed{s}_whole_relative", whole["relative_residual"], cfg.tol,
                         whole["relative_residual"] <= cfg.tol))
        for dom in ("upper", "lower"):
            half = calculus.stokes_identity_residual(cfg.kind, s, cfg.support, dom, cfg.h, K)
            results.append(half)
            scale = 1 + half["S_norm"]
            ok_closed = half["closed_form_residual"] <= cfg.tol * scale
            ok_local = half["locality_relative_change_off_layers"] <= cfg.tol
            rows.append(_row(f"seed{s}_{dom}_closed_form", half["closed_form_residual"], cfg.tol * scale, ok_closed))
            rows.append(_row(f"seed{s}_{dom}_locality", half["locality_relative_change_off_layers"], cfg.tol, ok_local))
            rows.append(_row(f"seed{s}_{dom}_printed_vs_derived", half["printed_vs_derived"], "", True,
                             "informational"))
    return {"index_sets": cfg.index_sets, "results": results}, rows


def _sample_points(rng: np.random.Generator, n: int, count: int) -> list[tuple[int, ...]]:
    return [tuple(int(x) for x in rng.integers(0, n, size=8)) for _ in range(count)]


def run_borel_pompeiu(cfg: ExperimentConfig) -> tuple[dict, list[dict]]:
    rows, results = [], []
    n = cfg.torus_size[0]
    log.info("torus N=%d: about %.1f MiB per fundamental solution", n, fundsol.memory_estimate(n) / 2**20)
    sol = fundsol.fundamental_solution(cfg.kind, "+", n, cfg.h, cache_dir=cfg.cache_dir, threads=cfg.threads)
    grid = sol.field.grid
    K = algebra.index_sets(cfg.kind, cfg.index_sets)
    for s in cfg.seed_list:
        f = random_field(grid, grid.box, s, cfg.kind)
        rng = np.random.default_rng(s)
        for dom in ("all", "upper"):
            sel = calculus.DomainSelector(grid, dom)
            worst = {"raw": 0.0, "zero_mode": 0.0, "singular": 0.0}
            for pt in _sample_points(rng, n, 10):
                r = calculus.borel_pompeiu_reconstruct(f, sol, pt, sel, K)
                d = r.as_dict()
                d.update(seed=s, domain=dom)
                results.append(d)
                worst["raw"] = max(worst["raw"], r.error)
                worst["zero_mode"] = max(worst["zero_mode"], r.error_zero_mode)
                worst["singular"] = max(worst["singular"], r.error_singular)
            rows.append(_row(f"seed{s}_{dom}_singular_corrected", worst["singular"], cfg.tol,
                             worst["singular"] <= cfg.tol))
            rows.append(_row(f"seed{s}_{dom}_zero_mode_corrected", worst["zero_mode"], cfg.tol, True,
                             "informational"))
    return {"N": n, "results": results}, rows


def run_cauchy(cfg: ExperimentConfig) -> tuple[dict, list[dict]]:
    rows, results = [], []
    K = algebra.index_sets(cfg.kind, cfg.index_sets)
    errors = []
    for n in cfg.torus_size:
        log.info("torus N=%d: about %.1f MiB per fundamental solution", n, fundsol.memory_estimate(n) / 2**20)
        ep = fundsol.fundamental_solution(cfg.kind, "+", n, cfg.h, cache_dir=cfg.cache_dir, threads=cfg.threads)
        em = fundsol.fundamental_solution(cfg.kind, "-", n, cfg.h, cache_dir=cfg.cache_dir, threads=cfg.threads)
        pole = (0,) * 7 + (-1,)
        f = em.field.shifted(pole)
        sel = calculus.DomainSelector(ep.field.grid, "upper")
        for label, pt in (("interior", (0,) * 7 + (1,)), ("exterior", (0,) * 8)):
            r = calculus.cauchy_reconstruct(f, ep, pt, sel, K)
            d = r.as_dict()
            d.update(N=n, role=label, pole=list(pole))
            results.append(d)
            rows.append(_row(f"N{n}_{label}_exact_torus_prediction", r.error_singular, cfg.tol,
                             r.error_singular <= cfg.tol))
            rows.append(_row(f"N{n}_{label}_error_vs_expected", r.error, "", True, "periodization error"))
            if label == "interior":
                errors.append(r.error)
    mono = all(b < a for a, b in zip(errors, errors[1:]))
    if len(errors) > 1:
        rows.append(_row("interior_error_decreasing_in_N", errors, "", mono))
    return {"torus_sizes": cfg.torus_size, "interior_errors": errors, "results": results}, rows


RUNNERS = {
    "algebra-check": run_algebra_check,
    "triples": run_triples,
    "weyl-square": run_weyl_square,
    "fundsol-check": run_fundsol_check,
    "stokes": run_stokes,
    "borel-pompeiu": run_borel_pompeiu,
    "cauchy": run_cauchy,
}


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    t0 = time.perf_counter()
    body, rows = RUNNERS[cfg.experiment](cfg)
    seconds = time.perf_counter() - t0
    passed = all(r["passed"] for r in rows)
    config = asdict(cfg)
    config.pop("output_dir")
    config.pop("cache_dir")
    config.pop("threads")
    report = {
        "experiment": cfg.experiment,
        "kind": cfg.kind,
        "seeds": cfg.seed_list,
        "grid": {"h": cfg.h, "torus_size": cfg.torus_size, "support": cfg.support},
        "config": config,
        "tolerance": cfg.tol,
        "checks": rows,
        "details": body,
        "passed": passed,
        "timings": {"seconds": seconds},
    }
    return ExperimentResult(cfg.experiment, passed, report, rows, seconds)
