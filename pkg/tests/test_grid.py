import numpy as np
import pytest

from moyalbench import grid as mg


def random_field(grid, rng):
    v = rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)
    return mg.SymbolField(grid, v)


def naive_symplectic_fourier(f):
    """Literal double sum over grid points; oracle for the fast transform."""
    g = f.grid
    pts = [g.point(idx) for idx in np.ndindex(g.shape)]
    coords = np.array([p.coords for p in pts])
    n = g.n
    vals = f.values.ravel()
    out = np.zeros(len(pts), dtype=np.complex128)
    for i, Y in enumerate(coords):
        sigma = coords[:, :n] @ Y[n:] - Y[:n] @ coords[:, n:].T
        out[i] = g.pairing_weight * np.sum(np.exp(-1j * sigma) * vals)
    return out.reshape(g.shape)


def test_make_grid_examples():
    g = mg.make_grid(1, 16)
    assert g.delta == pytest.approx(np.sqrt(np.pi / 8.0), rel=1e-15)
    assert g.num_points == 256
    assert mg.make_grid(2, 8).num_points == 4096
    assert g.pairing_weight * g.N ** (2 * g.n) == pytest.approx(g.N**g.n)


def test_make_grid_rejects_bad_input():
    with pytest.raises(ValueError):
        mg.make_grid(1, 3)
    with pytest.raises(ValueError):
        mg.make_grid(1, 2)
    with pytest.raises(ValueError):
        mg.make_grid(4, 8)
    with pytest.raises(ValueError):
        mg.make_grid(0, 8)


def test_symplectic_form():
    assert mg.symplectic_form((1.0, 0.0), (1.0, 0.0)) == 0.0
    assert mg.symplectic_form((1.0, 0.0), (0.0, 1.0)) == pytest.approx(-1.0)
    rng = np.random.default_rng(3)
    for _ in range(100):
        X = rng.standard_normal(4)
        Y = rng.standard_normal(4)
        assert mg.symplectic_form(X, Y) + mg.symplectic_form(Y, X) == pytest.approx(
            0.0, abs=1e-12
        )


def test_symplectic_form_dimension_mismatch():
    with pytest.raises(ValueError):
        mg.symplectic_form((1.0, 0.0), (1.0, 0.0, 0.0, 0.0))


def test_grid_point_wrapping_and_origin():
    g = mg.make_grid(1, 8)
    p = g.point((9, -1))
    assert p.grid_index == (1, 7)
    assert g.origin.coords == (0.0, 0.0)
    assert g.neg_index((0, 3)) == (0, 5)
    assert g.sub_index((1, 2), (3, 4)) == ((1 - 3 + 4) % 8, (2 - 4 + 4) % 8)
    assert g.add_index(g.sub_index((1, 2), (3, 4)), (3, 4)) == (1, 2)


def test_pair_basics():
    g = mg.make_grid(1, 16)
    rng = np.random.default_rng(5)
    f = random_field(g, rng)
    assert mg.pair(f, mg.zero_field(g)) == 0.0
    X = g.point((11, 6))
    eX = mg.plane_wave(g, X)
    eXm = mg.plane_wave(g, g.point(g.neg_index(X.grid_index)))
    assert mg.pair(eX, eXm) == pytest.approx(g.N**g.n, rel=1e-12)
    a, b = 1.3 - 0.2j, -0.7j
    f2 = random_field(g, rng)
    lhs = mg.pair(mg.SymbolField(g, a * f.values + b * f2.values), f2)
    assert lhs == pytest.approx(a * mg.pair(f, f2) + b * mg.pair(f2, f2), rel=1e-12)


def test_pair_grid_mismatch():
    f = mg.zero_field(mg.make_grid(1, 8))
    g = mg.zero_field(mg.make_grid(1, 16))
    with pytest.raises(mg.GridMismatch):
        mg.pair(f, g)


def test_pair_gauss0_matches_gaussian_integral():
    g = mg.make_grid(1, 32)
    f = mg.gaussian(g)
    assert mg.pair(f, f) == pytest.approx(0.5, abs=1e-8)


def test_hermitian_pair():
    g = mg.make_grid(1, 16)
    rng = np.random.default_rng(7)
    f = random_field(g, rng)
    h = random_field(g, rng)
    p = mg.hermitian_pair(f, f)
    assert p.imag == pytest.approx(0.0, abs=1e-12)
    assert p.real > 0
    X = g.point((3, 12))
    eX = mg.plane_wave(g, X)
    assert mg.hermitian_pair(eX, eX) == pytest.approx(g.N**g.n, rel=1e-12)
    assert mg.hermitian_pair(f, h) == pytest.approx(
        np.conj(mg.hermitian_pair(h, f)), rel=1e-12
    )


def test_plane_wave_origin_is_constant_one():
    g = mg.make_grid(2, 6)
    e0 = mg.plane_wave(g, g.origin)
    np.testing.assert_allclose(e0.values, 1.0, rtol=0, atol=1e-14)


def test_plane_wave_conjugate_is_negated_point():
    g = mg.make_grid(1, 16)
    X = g.point((2, 13))
    eX = mg.plane_wave(g, X)
    eXm = mg.plane_wave(g, g.point(g.neg_index(X.grid_index)))
    np.testing.assert_allclose(np.conj(eX.values), eXm.values, atol=1e-13)


def test_plane_wave_rejects_off_grid():
    g = mg.make_grid(1, 8)
    with pytest.raises(mg.NonGridPoint):
        mg.plane_wave(g, mg.PhasePoint((0.1, 0.0)))
    other = mg.make_grid(1, 16).point((5, 5))
    with pytest.raises(mg.NonGridPoint):
        mg.plane_wave(g, other)


def test_plane_wave_fourier_is_dirac():
    g = mg.make_grid(1, 16)
    X = g.point((5, 9))
    got = mg.symplectic_fourier(mg.plane_wave(g, X))
    assert mg.relative_defect(got, mg.dirac(g, X)) <= 1e-12


def test_symplectic_fourier_matches_naive_sum():
    for n, N in ((1, 8), (2, 4)):
        g = mg.make_grid(n, N)
        rng = np.random.default_rng(11 + n)
        f = random_field(g, rng)
        oracle = naive_symplectic_fourier(f)
        got = mg.symplectic_fourier(f)
        assert mg.relative_defect(got, oracle) <= 1e-12


def test_symplectic_fourier_constant_is_dirac():
    g = mg.make_grid(1, 8)
    one = mg.constant_field(g)
    oracle = naive_symplectic_fourier(one)
    got = mg.symplectic_fourier(one)
    assert mg.relative_defect(got, oracle) <= 1e-12
    assert mg.relative_defect(got, mg.dirac(g, g.origin)) <= 1e-12


@pytest.mark.parametrize("N", [16, 32])
def test_symplectic_fourier_involution_and_unitarity(N):
    g = mg.make_grid(1, N)
    rng = np.random.default_rng(N)
    f = random_field(g, rng)
    h = random_field(g, rng)
    assert mg.relative_defect(mg.symplectic_fourier(mg.symplectic_fourier(f)), f) <= 1e-12
    lhs = mg.hermitian_pair(mg.symplectic_fourier(f), mg.symplectic_fourier(h))
    rhs = mg.hermitian_pair(f, h)
    assert abs(lhs - rhs) / abs(rhs) <= 1e-12


def test_translate_group_action():
    g = mg.make_grid(1, 16)
    rng = np.random.default_rng(13)
    f = random_field(g, rng)
    Z1 = g.point((3, 14))
    Z2 = g.point((9, 1))
    np.testing.assert_array_equal(mg.translate(f, g.origin).values, f.values)
    back = mg.translate(mg.translate(f, Z1), g.point(g.neg_index(Z1.grid_index)))
    np.testing.assert_array_equal(back.values, f.values)
    once = mg.translate(f, g.point(g.add_index(Z1.grid_index, Z2.grid_index)))
    twice = mg.translate(mg.translate(f, Z1), Z2)
    np.testing.assert_array_equal(once.values, twice.values)


def test_translate_preserves_pair():
    g = mg.make_grid(1, 16)
    rng = np.random.default_rng(17)
    f = random_field(g, rng)
    h = random_field(g, rng)
    Z = g.point((12, 5))
    assert mg.pair(mg.translate(f, Z), mg.translate(h, Z)) == pytest.approx(
        mg.pair(f, h), rel=1e-13
    )


def test_translate_moves_dirac():
    g = mg.make_grid(1, 8)
    Z = g.point((6, 3))
    moved = mg.translate(mg.dirac(g, g.origin), Z)
    np.testing.assert_array_equal(moved.values, mg.dirac(g, Z).values)


def test_reflect():
    g = mg.make_grid(1, 16)
    rng = np.random.default_rng(19)
    f = random_field(g, rng)
    np.testing.assert_array_equal(mg.reflect(mg.reflect(f)).values, f.values)
    X = g.point((2, 11))
    np.testing.assert_allclose(
        mg.reflect(mg.plane_wave(g, X)).values,
        mg.plane_wave(g, g.point(g.neg_index(X.grid_index))).values,
        atol=1e-13,
    )


def test_half_shift_even_steps_are_rolls():
    g = mg.make_grid(1, 16)
    rng = np.random.default_rng(23)
    f = random_field(g, rng)
    shifted = mg.half_shift(f.values, 0, steps=2)
    np.testing.assert_allclose(shifted, np.roll(f.values, -1, axis=0), atol=1e-12)


def test_half_shift_inverts():
    g = mg.make_grid(1, 16)
    rng = np.random.default_rng(29)
    f = random_field(g, rng)
    back = mg.half_shift(mg.half_shift(f.values, 1, 1), 1, -1)
    np.testing.assert_allclose(back, f.values, atol=1e-12)


def test_midpoint_interpolate_plane_wave():
    g = mg.make_grid(1, 16)
    X = g.point((5, 11))
    eX = mg.plane_wave(g, X)
    got = mg.midpoint_interpolate(eX, [0])
    xi_X = X.coords[1]
    expect = eX.values * np.exp(1j * xi_X * g.delta / 2.0)
    np.testing.assert_allclose(got, expect, atol=1e-10)


def test_midpoint_interpolate_constant():
    g = mg.make_grid(1, 12)
    got = mg.midpoint_interpolate(mg.constant_field(g), [0, 1])
    np.testing.assert_allclose(got, 1.0, atol=1e-12)


def test_refine_half_keeps_samples():
    g = mg.make_grid(1, 8)
    rng = np.random.default_rng(31)
    f = random_field(g, rng)
    fine = mg.refine_half(f.values)
    np.testing.assert_array_equal(fine[::2, ::2], f.values)


def test_refine_half_plane_wave_closed_form():
    g = mg.make_grid(1, 8)
    X = g.point((5, 3))
    fine = mg.refine_half(mg.plane_wave(g, X).values)
    r = np.arange(2 * g.N)
    fine_coords = (r - g.N) * g.delta / 2.0
    z, zeta = np.meshgrid(fine_coords, fine_coords, indexing="ij")
    expect = np.exp(1j * (z * X.coords[1] - X.coords[0] * zeta))
    np.testing.assert_allclose(fine, expect, atol=1e-10)


def test_resolution_identity_against_plane_wave_loop():
    g = mg.make_grid(1, 8)
    rng = np.random.default_rng(37)
    f = mg.gaussian(g, center=(0.3, -0.2))
    h = mg.gaussian(g, center=(-0.4, 0.1), amplitude=1.0 + 0.5j)
    acc = 0.0 + 0.0j
    for idx in np.ndindex(g.shape):
        Z = g.point(idx)
        Zm = g.point(g.neg_index(idx))
        acc += mg.pair(f, mg.plane_wave(g, Zm)) * mg.pair(mg.plane_wave(g, Z), h)
    lhs = g.pairing_weight * acc
    rhs = mg.pair(f, h)
    assert abs(lhs - rhs) / abs(rhs) <= 1e-10
    assert mg.resolution_defect(f, h) <= 1e-10


def test_resolution_identity_default_grid():
    g = mg.make_grid(1, 32)
    f = mg.gaussian(g, center=(0.5, 0.0))
    h = mg.gaussian(g, center=(0.0, -0.5), amplitude=2.0 - 1.0j)
    assert mg.resolution_defect(f, h) <= 1e-10


def test_dirac_pairing_samples():
    g = mg.make_grid(1, 16)
    rng = np.random.default_rng(41)
    f = random_field(g, rng)
    X = g.point((4, 9))
    assert mg.pair(mg.dirac(g, X), f) == pytest.approx(f.values[4, 9], rel=1e-13)


def test_field_validation():
    g = mg.make_grid(1, 8)
    with pytest.raises(ValueError):
        mg.SymbolField(g, np.zeros((8, 7)))
    bad = np.zeros(g.shape, dtype=np.complex128)
    bad[0, 0] = np.inf
    with pytest.raises(ValueError):
        mg.SymbolField(g, bad)
    f = mg.zero_field(g)
    with pytest.raises(ValueError):
        f.values[0, 0] = 1.0


def test_gaussian_validation():
    g = mg.make_grid(1, 8)
    with pytest.raises(ValueError):
        mg.gaussian(g, center=(0.0,))
    with pytest.raises(ValueError):
        mg.gaussian(g, width=0.0)
