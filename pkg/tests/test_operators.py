import numpy as np
import pytest

from octolattice import fundsol
from octolattice.algebra import DomainError, OctonionValue, multiplication_table
from octolattice.lattice import BACKWARD, FORWARD, Box, GridSpec, LatticeField, random_field
from octolattice.operators import (
    CrVariant,
    FormalField,
    apply_cr_left,
    apply_cr_right,
    field_product,
    interior_mask,
    is_monogenic,
    left_basis_mul,
    right_basis_mul,
)
from octolattice.witt import FormalElement, minus, plain, plus


@pytest.mark.parametrize("kind", ["classical", "split"])
@pytest.mark.parametrize("variant", ["+", "-"])
def test_constant_is_monogenic_on_torus(kind, variant):
    g = GridSpec.torus(4)
    f = LatticeField.constant(g, OctonionValue(kind, np.arange(8.0)))
    assert apply_cr_left(f, variant).sup_norm() == 0.0
    assert apply_cr_right(f, variant).sup_norm() == 0.0
    assert is_monogenic(f, variant).monogenic


def test_impulse_response():
    g = GridSpec.torus(4, 0.5)
    f = LatticeField.impulse(g, "classical", (0,) * 8)
    df = apply_cr_left(f, "+")
    # D+ delta at the origin is -(1/h) sum_j e_j
    assert df.at((0,) * 8) == OctonionValue("classical", np.full(8, -2.0))
    assert df.sup_norm() == pytest.approx(2.0 * np.sqrt(8))
    rep = is_monogenic(f, "+", tol=1e-10)
    assert not rep.monogenic
    assert rep.residual == pytest.approx(2.0 * np.sqrt(8))


def test_monogenic_exclude_pole():
    g = GridSpec.torus(4)
    f = LatticeField.impulse(g, "classical", (0,) * 8)
    # D+ delta is nonzero at the origin and at the eight backward neighbours
    pts = [(0,) * 8] + [tuple(-1 if a == j else 0 for a in range(8)) for j in range(8)]
    assert is_monogenic(f, "+", exclude=pts).monogenic


@pytest.mark.parametrize("kind", ["classical", "split"])
def test_linearity(kind):
    g = GridSpec.cube(4)
    a = random_field(g, Box.centered(2), 1, kind)
    b = random_field(g, Box.centered(2), 2, kind)
    for v in ("+", "-"):
        lhs = apply_cr_left(2.0 * a - b, v)
        rhs = 2.0 * apply_cr_left(a, v) - apply_cr_left(b, v)
        assert (lhs - rhs).sup_norm() <= 1e-13


def test_scalar_field_left_equals_right():
    g = GridSpec.torus(4)
    f = random_field(g, g.box, 5, "split", scalar=True)
    assert (apply_cr_left(f, "-") - apply_cr_right(f, "-")).sup_norm() <= 1e-14


def test_left_and_right_differ_for_e1_valued_field():
    g = GridSpec.torus(4)
    s = random_field(g, g.box, 6, "classical", scalar=True).values[0]
    vals = np.zeros((8,) + g.shape)
    vals[1] = s
    f = LatticeField(g, "classical", vals)
    left, right = apply_cr_left(f), apply_cr_right(f)
    t = multiplication_table("classical")
    # e_j e_1 = -e_1 e_j for j >= 2, so the components agree only on e0 and e1
    for k in range(8):
        same = np.allclose(left.values[k], right.values[k])
        assert same == (k in (0, 1) or not np.any(left.values[k]))
    assert int(t.sign[2, 1]) == -int(t.sign[1, 2])


def test_basis_multiplication_helpers():
    t = multiplication_table("split")
    arr = np.eye(8)[:, :, None]
    for j in range(8):
        for i in range(8):
            s, k = int(t.sign[j, i]), int(t.index[j, i])
            assert left_basis_mul(t, j, arr[:, i])[k, 0] == s
            s2, k2 = int(t.sign[i, j]), int(t.index[i, j])
            assert right_basis_mul(arr[:, i], j, t)[k2, 0] == s2


def test_field_product_pointwise():
    g = GridSpec.cube(2)
    a = random_field(g, g.box, 1, "classical")
    b = random_field(g, g.box, 2, "classical")
    p = field_product(a, b)
    m = (0,) * 7 + (-1,)
    assert np.allclose((p.at(m) - a.at(m) * b.at(m)).coeff, 0, atol=1e-14)


@pytest.mark.parametrize("kind", ["classical", "split"])
def test_fundamental_solution_is_monogenic_away_from_source(kind):
    n = 4
    for direction in ("+", "-"):
        sol = fundsol.fundamental_solution(kind, direction, n)
        g = sol.field.grid
        src = fundsol.delta_field(g, kind) - fundsol.singular_correction(kind, direction, n)
        rep = is_monogenic(sol.field, direction, tol=1e-10, source=src)
        assert rep.monogenic, rep.as_dict()


def test_weyl_variants():
    assert CrVariant.parse("+-") is CrVariant.WEYL_PM and CrVariant.WEYL_PM.is_weyl
    with pytest.raises(DomainError):
        CrVariant.parse("*")
    g = GridSpec.torus(4)
    f = random_field(g, g.box, 3, "classical", scalar=True)
    ff = apply_cr_left(f, "+-")
    assert isinstance(ff, FormalField)
    m = (1,) + (0,) * 7
    val = ff.at(m)
    assert isinstance(val, FormalElement)
    words = set(val.terms)
    assert words <= {(plus(j),) for j in range(8)} | {(minus(j),) for j in range(8)}
    assert ff.sup_norm() > 0
    right = apply_cr_right(f, "-+")
    assert set(right.at(m).terms) <= {(plus(j),) for j in range(8)} | {(minus(j),) for j in range(8)}
    with pytest.raises(DomainError):
        is_monogenic(f, "+-")


def test_weyl_word_order_left_vs_right():
    g = GridSpec.torus(4)
    vals = np.zeros((8,) + g.shape)
    vals[3] = random_field(g, g.box, 9, "classical", scalar=True).values[0]
    f = LatticeField(g, "classical", vals)
    left = apply_cr_left(f, "+-")
    right = apply_cr_right(f, "+-")
    assert all(w[1] == plain(3) for w in left.terms)
    assert all(w[0] == plain(3) for w in right.terms)


def test_interior_mask():
    g = GridSpec.cube(3)
    assert interior_mask(g, FORWARD).sum() == 2 ** 8
    assert not interior_mask(g, BACKWARD)[(0,) * 8]
    assert interior_mask(GridSpec.torus(4), FORWARD).all()
