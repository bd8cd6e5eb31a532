import io

import numpy as np
import pytest

from octolattice.algebra import DomainError, OctonionValue
from octolattice.lattice import (
    BACKWARD,
    FORWARD,
    Box,
    GridSpec,
    LatticeField,
    Topology,
    field_to_bytes,
    finite_difference,
    lp_norm,
    random_field,
    read_field,
    read_field_stream,
    star_laplacian,
    write_field,
    write_field_stream,
)


def coordinate_field(grid, fn, kind="classical"):
    mesh = np.meshgrid(*[grid.coordinates(a) * grid.h for a in range(8)], indexing="ij", sparse=True)
    return LatticeField.from_scalar(grid, kind, np.broadcast_to(fn(mesh), grid.shape))


def test_grid_validation():
    with pytest.raises(DomainError):
        GridSpec(1.0, (4,) * 8, (1,) * 8, Topology.TORUS)
    with pytest.raises(DomainError):
        GridSpec(0.0, (4,) * 8)
    with pytest.raises(DomainError):
        GridSpec(1.0, (4,) * 8, (0,) * 7 + (-1,), Topology.UPPER_HALF_SLAB)
    with pytest.raises(DomainError):
        GridSpec(1.0, (3,) * 8, (0,) * 8, Topology.LOWER_HALF_SLAB)
    GridSpec(1.0, (3,) * 8, (0,) * 7 + (-2,), Topology.LOWER_HALF_SLAB)


def test_indexing():
    g = GridSpec.cube(3, 0.5)
    assert g.offset == (-1,) * 8
    assert g.array_index((0,) * 8) == (1,) * 8
    assert g.array_index((2,) + (0,) * 7) is None
    t = GridSpec.torus(4)
    assert t.array_index((-1,) * 8) == (3,) * 8
    assert t.layer_index(-1) == 3
    assert g.memory_bytes() == 3 ** 8 * 64


def test_forward_backward_on_quadratic():
    g = GridSpec.cube(5, 0.5)
    f = coordinate_field(g, lambda x: x[2] ** 2)
    inner = (slice(1, -1),) * 8
    x2 = np.broadcast_to(g.coordinates(2).reshape([1, 1, -1] + [1] * 5) * 0.5, g.shape)
    fwd = finite_difference(f, 2, FORWARD).values[0]
    bwd = finite_difference(f, 2, "-").values[0]
    assert np.allclose(fwd[inner], (2 * x2 + 0.5)[inner])
    assert np.allclose(bwd[inner], (2 * x2 - 0.5)[inner])


def test_star_laplacian_of_quadratic():
    g = GridSpec.cube(5, 0.5)
    f = coordinate_field(g, lambda x: sum(xi ** 2 for xi in x))
    lap = star_laplacian(f).values[0]
    assert np.allclose(lap[(slice(1, -1),) * 8], 16.0)


def test_differences_commute_on_torus():
    g = GridSpec.torus(4)
    f = random_field(g, g.box, 2, "split")
    a = finite_difference(finite_difference(f, 1, FORWARD), 5, BACKWARD)
    b = finite_difference(finite_difference(f, 5, BACKWARD), 1, FORWARD)
    assert np.allclose(a.values, b.values, atol=1e-14)


def test_zero_extension_off_cuboid():
    g = GridSpec.cube(3)
    f = LatticeField.constant(g, OctonionValue.scalar("classical", 1.0))
    d = finite_difference(f, 0, FORWARD).values[0]
    assert np.all(d[-1] == -1) and np.all(d[:-1] == 0)


def test_field_immutable_and_validated():
    g = GridSpec.cube(3)
    f = LatticeField.zeros(g, "classical")
    with pytest.raises(AttributeError):
        f.kind = "split"
    with pytest.raises(ValueError):
        f.values[0, 0, 0, 0, 0, 0, 0, 0, 0] = 1.0
    with pytest.raises(DomainError):
        LatticeField(g, "classical", np.zeros((8, 3)))
    with pytest.raises(DomainError):
        f + LatticeField.zeros(g, "split")


def test_impulse_layer_and_shift():
    g = GridSpec.torus(4)
    f = LatticeField.impulse(g, "classical", (0,) * 7 + (1,))
    assert f.layer(1)[0].sum() == 1.0 and f.layer(0).sum() == 0.0
    s = f.shifted((0,) * 7 + (2,))
    assert s.at((0,) * 7 + (3,)) == OctonionValue.scalar("classical", 1.0)
    with pytest.raises(DomainError):
        LatticeField.zeros(GridSpec.cube(3), "classical").shifted((1,) * 8)
    with pytest.raises(DomainError):
        LatticeField.impulse(GridSpec.cube(3), "classical", (5,) * 8)


def test_random_field_support_and_seed():
    g = GridSpec.cube(5)
    a = random_field(g, Box.centered(3), 7, "classical")
    b = random_field(g, Box.centered(3), 7, "classical")
    assert np.array_equal(a.values, b.values)
    assert np.all(a.values[:, 0] == 0) and np.all(a.values[:, 4] == 0)
    assert np.abs(a.values).max() <= 1
    s = random_field(g, Box.centered(3), 7, "classical", scalar=True)
    assert np.all(s.values[1:] == 0)
    with pytest.raises(DomainError):
        random_field(g, Box.centered(7), 1, "classical")


def test_lp_norm():
    g = GridSpec.cube(2, 0.5)
    f = LatticeField.constant(g, OctonionValue.basis("classical", 3, 2.0))
    assert lp_norm(f, np.inf) == 2.0
    assert lp_norm(f, 2) == pytest.approx(np.sqrt(4 * 2 ** 8 * 0.5 ** 8))
    with pytest.raises(DomainError):
        lp_norm(f, 0.5)


def test_field_file_roundtrip(tmp_path):
    g = GridSpec(0.25, (2, 3, 2, 2, 2, 2, 2, 3), (0, -1, 0, 0, 0, 0, 0, -2), Topology.CUBOID)
    f = random_field(g, g.box, 4, "split")
    write_field(tmp_path / "f.octf", f)
    back = read_field(tmp_path / "f.octf")
    assert back.grid == g and back.kind is f.kind
    assert np.array_equal(back.values, f.values)
    raw = field_to_bytes(f)
    assert raw[:5] == b"OCTF1"
    buf = io.BytesIO()
    write_field_stream(buf, f)
    assert buf.getvalue() == raw
    with pytest.raises(ValueError):
        read_field_stream(io.BytesIO(b"XXXXX" + raw[5:]))
