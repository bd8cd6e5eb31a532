import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from octolattice import algebra
from octolattice.algebra import CLASSICAL, SPLIT, AlgebraKind, DomainError, OctonionValue

coeffs = st.lists(st.floats(-10, 10, allow_nan=False), min_size=8, max_size=8)


def quad_form(kind, x: OctonionValue) -> float:
    """a abar as a real number, from the squares of the basis units."""
    signs = algebra.multiplication_table(kind).square_signs()
    return float(x.coeff[0] ** 2 - sum(signs[j] * x.coeff[j] ** 2 for j in range(1, 8)))


def test_kind_parsing():
    assert AlgebraKind.parse("split") is SPLIT
    assert AlgebraKind.parse(CLASSICAL) is CLASSICAL
    with pytest.raises(DomainError):
        AlgebraKind.parse("quaternion")


@pytest.mark.parametrize("kind", [CLASSICAL, SPLIT])
def test_identity_row_and_column(kind):
    t = algebra.multiplication_table(kind)
    for j in range(8):
        assert tuple(t[0, j]) == (1, j)
        assert tuple(t[j, 0]) == (1, j)


def test_square_signs():
    assert algebra.multiplication_table(CLASSICAL).square_signs().tolist() == [1] + [-1] * 7
    # e1..e3 square to -1 and e4..e7 to +1 in the split table
    assert algebra.multiplication_table(SPLIT).square_signs().tolist() == [1, -1, -1, -1, 1, 1, 1, 1]


@pytest.mark.parametrize("kind", [CLASSICAL, SPLIT])
def test_anticommuting_units(kind):
    t = algebra.multiplication_table(kind)
    for i, j in itertools.permutations(range(1, 8), 2):
        assert t[i, j] == -t[j, i]
    assert t.invariant_violations() == []


def test_printed_split_table_is_inconsistent():
    printed = algebra.multiplication_table(SPLIT, "printed")
    bad = [(i, j) for i, j in itertools.combinations(range(1, 8), 2) if printed[i, j] != -printed[j, i]]
    assert bad == [(1, 3), (3, 5), (4, 7)]
    assert algebra.sign_law_violations(printed)


def test_printed_classical_equals_corrected():
    a = algebra.multiplication_table(CLASSICAL, "printed")
    b = algebra.multiplication_table(CLASSICAL)
    assert np.array_equal(a.tensor, b.tensor)


def test_basis_product_examples():
    assert algebra.basis_product(CLASSICAL, 1, 2) == (1, 4)
    assert algebra.basis_product(CLASSICAL, 2, 1) == (-1, 4)
    assert algebra.basis_product(SPLIT, 4, 4) == (1, 0)
    with pytest.raises(DomainError):
        algebra.basis_product(CLASSICAL, 8, 1)


@pytest.mark.parametrize("kind", [CLASSICAL, SPLIT])
@settings(max_examples=60, deadline=None)
@given(a=coeffs, b=coeffs)
def test_composition_property(kind, a, b):
    x, y = OctonionValue(kind, a), OctonionValue(kind, b)
    lhs = quad_form(kind, x * y)
    rhs = quad_form(kind, x) * quad_form(kind, y)
    assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-6)


@pytest.mark.parametrize("kind", [CLASSICAL, SPLIT])
@settings(max_examples=60, deadline=None)
@given(a=coeffs, b=coeffs)
def test_alternative_laws(kind, a, b):
    x, y = OctonionValue(kind, a), OctonionValue(kind, b)
    scale = 1 + x.norm() ** 2 * y.norm()
    assert (algebra.associator(x, x, y).norm()) <= 1e-12 * scale
    assert (algebra.associator(y, x, x).norm()) <= 1e-12 * scale


@pytest.mark.parametrize("kind", [CLASSICAL, SPLIT])
def test_conjugate_gives_quadratic_form(kind):
    rng = np.random.default_rng(3)
    x = OctonionValue(kind, rng.normal(size=8))
    prod = x * x.conj()
    assert np.allclose(prod.coeff[1:], 0, atol=1e-12)
    assert prod.coeff[0] == pytest.approx(quad_form(kind, x))


def test_associator_of_line_vanishes():
    for kind in (CLASSICAL, SPLIT):
        for t in algebra.derive_triples(kind):
            a, b, c = (algebra.e(kind, i) for i in t)
            assert algebra.associator(a, b, c) == OctonionValue.zero(kind)


def test_value_arithmetic():
    a = algebra.from_terms(CLASSICAL, [(2.0, 0), (1.0, 3)])
    assert (a - a) == OctonionValue.zero(CLASSICAL)
    assert (2 * a).coeff[3] == 2.0
    assert (a / 2).coeff[0] == 1.0
    assert a[3] == 1.0
    with pytest.raises(DomainError):
        a + OctonionValue.zero(SPLIT)


def test_zero_divisors():
    assert algebra.find_zero_divisors(CLASSICAL) == []
    pairs = algebra.find_zero_divisors(SPLIT)
    assert pairs
    for a, b in pairs:
        assert algebra.multiply(a, b) == OctonionValue.zero(SPLIT)
    rep = algebra.validate_algebra(SPLIT, samples=50)
    first = rep.zero_divisors[0]
    assert first[0] == algebra.e(SPLIT, 0) + algebra.e(SPLIT, 4)
    assert first[1] == algebra.e(SPLIT, 0) - algebra.e(SPLIT, 4)


def test_validate_reports():
    for kind in (CLASSICAL, SPLIT):
        assert algebra.validate_algebra(kind, samples=100).passed
    bad = algebra.validate_algebra(SPLIT, samples=100, table_source="printed")
    assert not bad.passed
    assert bad.as_dict()["anticommutativity_violations"] == [[1, 3], [3, 5], [4, 7]]


def test_triples_are_fano_planes():
    for kind in (CLASSICAL, SPLIT):
        ts = algebra.derive_triples(kind)
        assert len(ts) == 7
        assert set(ts.pair_coverage().values()) == {1}


def test_triple_comparison():
    c = algebra.compare_triples(CLASSICAL)
    assert c["matching"] == 7 and not c["printed_only"]
    s = algebra.compare_triples(SPLIT)
    assert s["printed_only"] == [[4, 5, 6]]
    assert s["derived_only"] == [[3, 5, 6]]
    assert {d["pair"][0] for d in s["printed_not_closed"]} <= {4, 5}
    assert algebra.index_sets(SPLIT, "printed").source == "printed"
    with pytest.raises(DomainError):
        algebra.index_sets(SPLIT, "guessed")
