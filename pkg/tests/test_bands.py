import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import hypwave as hw
from hypwave.bands import _plateau_profile
from hypwave.errors import BandRangeError, ParameterError, TruncationWarning


def random_bandlimited_field(grid, cap, seed=0):
    return hw.random_bandlimited(grid, cap, None, hw.RngSpec(seed))


class TestUnivariateResolution:
    def test_generator_plateau_and_support(self):
        assert hw.theta0(0.0) == 1.0
        assert hw.theta0(1.0) == 1.0
        assert hw.theta0(-1.0) == 1.0
        assert hw.theta0(2.0) == 0.0
        assert hw.theta0(2.5) == 0.0
        assert 0.0 < hw.theta0(1.5) < 1.0

    def test_telescoping_at_two(self):
        res = hw.UnivariateResolution(4)
        assert res.band(1, np.array([2.0]))[0] == pytest.approx(1.0, abs=1e-15)
        assert res.band(0, np.array([2.0]))[0] == 0.0

    def test_partition_of_unity(self):
        res = hw.UnivariateResolution(9)
        m = np.arange(-(2 ** 9), 2 ** 9 + 1)
        total = sum(res.band(j, m) for j in range(10))
        assert np.max(np.abs(total - 1.0)) <= 1e-12

    def test_band_support(self):
        res = hw.UnivariateResolution(6)
        m = np.arange(-200, 201)
        for j in range(1, 7):
            vals = res.band(j, m)
            outside = (np.abs(m) < 2 ** (j - 1) - 1e-12) | (np.abs(m) > 2 ** (j + 1) + 1e-12)
            assert np.all(vals[outside] == 0.0)


class TestAnisotropy:
    def test_accessors(self):
        a = hw.Anisotropy((0.5, 1.5))
        assert a.alpha_min == 0.5 and a.alpha_max == 1.5 and a.d == 2

    def test_validation(self):
        with pytest.raises(ParameterError):
            hw.Anisotropy((0.5, 1.0))
        with pytest.raises(ParameterError):
            hw.Anisotropy((-1.0, 3.0))

    def test_sigma_accessors(self):
        pr = hw.NormParams(p=0.5, q=2.0, alpha=hw.isotropic(1))
        assert pr.sigma_p == pytest.approx(1.0)
        assert pr.sigma_pq == pytest.approx(1.0)
        pr2 = hw.NormParams(p=2.0, q=0.5, alpha=hw.isotropic(1))
        assert pr2.sigma_p == 0.0
        assert pr2.sigma_pq == pytest.approx(1.0)


class TestAnisotropicResolution:
    def test_partition_on_rectangle(self):
        alpha = hw.Anisotropy((0.5, 1.5))
        cap = 6
        res = hw.AnisotropicResolution(alpha, cap)
        rng = np.random.default_rng(0)
        m1 = rng.integers(-int(2 ** (0.5 * cap)), int(2 ** (0.5 * cap)) + 1, 64)
        m2 = rng.integers(-int(2 ** (1.5 * cap)), int(2 ** (1.5 * cap)) + 1, 64)
        total = sum(res.band(j, (m1, m2)).diagonal() for j in range(cap + 1))
        assert np.max(np.abs(total - 1.0)) <= 1e-12

    def test_support_in_annulus(self):
        alpha = hw.Anisotropy((1.0, 1.0))
        res = hw.AnisotropicResolution(alpha, 5)
        m = np.arange(-70, 71)
        vals = res.band(3, (m, np.zeros_like(m)))
        outside = np.abs(m) > 2 ** 4  # beyond R_{j+1}
        assert np.all(np.abs(vals.diagonal()[outside]) == 0.0)
        inside = np.abs(m) <= 2 ** 2  # within R_{j-1}
        assert np.all(np.abs(vals.diagonal()[inside]) == 0.0)

    def test_matches_univariate_when_isotropic_1d(self):
        res_a = hw.AnisotropicResolution(hw.Anisotropy((1.0,)), 6)
        res_u = hw.UnivariateResolution(6)
        m = np.linspace(-80, 80, 321)
        for j in range(7):
            assert np.allclose(res_a.band(j, (m,)), res_u.band(j, m), atol=1e-15)


class TestProjections:
    def test_eigenfunction(self):
        g = hw.make_grid(2, 5)
        f = hw.field_from_function(g, lambda x, y: np.exp(2j * np.pi * (0 * x + 0 * y)))
        proj = hw.hyperbolic_project(f, (0, 0))
        assert np.max(np.abs(proj.values - f.values)) < 1e-12

    def test_diagonal_multiplier(self):
        g = hw.make_grid(1, 6)
        m0 = 3
        f = hw.field_from_function(g, lambda x: np.exp(2j * np.pi * m0 * x))
        res = hw.UnivariateResolution(4)
        for j in range(4):
            proj = hw.hyperbolic_project(f, (j,))
            expected = res.band(j, np.array([float(m0)]))[0]
            assert np.max(np.abs(proj.values - expected * f.values)) < 1e-12

    def test_partition_reconstruction(self):
        g = hw.make_grid(2, 6)
        f = random_bandlimited_field(g, cap=8, seed=2)
        total = np.zeros(g.shape, dtype=np.complex128)
        for j1 in range(5):
            for j2 in range(5):
                total += hw.hyperbolic_project(f, (j1, j2)).values
        assert np.max(np.abs(total - f.values)) <= 1e-10 * np.max(np.abs(f.values))

    def test_band_cap_error(self):
        g = hw.make_grid(1, 5)
        f = hw.constant_field(g)
        with pytest.raises(BandRangeError):
            hw.hyperbolic_project(f, (4,))

    def test_anisotropic_constant(self):
        g = hw.make_grid(2, 5)
        alpha = hw.isotropic(2)
        res = hw.AnisotropicResolution(alpha, hw.anisotropic_level_cap(g, alpha))
        f = hw.constant_field(g, 3.0)
        p0 = hw.anisotropic_project(f, 0, res)
        assert np.max(np.abs(p0.values - f.values)) < 1e-12
        p2 = hw.anisotropic_project(f, 2, res)
        assert np.max(np.abs(p2.values)) < 1e-12

    def test_anisotropic_partition(self):
        g = hw.make_grid(2, 6)
        alpha = hw.Anisotropy((0.5, 1.5))
        cap = hw.anisotropic_level_cap(g, alpha)
        res = hw.AnisotropicResolution(alpha, cap)
        f = random_bandlimited_field(g, cap=2, seed=4)
        total = sum(hw.anisotropic_project(f, j, res).values for j in range(cap + 1))
        assert np.max(np.abs(total - f.values)) <= 1e-10 * np.max(np.abs(f.values))


class TestWeight:
    def test_zero_scale(self):
        pr = hw.NormParams(s=3.3, p=2, q=2, alpha=hw.Anisotropy((0.7, 1.3)))
        assert hw.weight((0, 0), pr) == 1.0

    def test_isotropic_example(self):
        pr = hw.NormParams(s=1.0, p=2, q=2, alpha=hw.isotropic(2))
        assert hw.weight((2, 3), pr) == 8.0

    def test_anisotropic_example(self):
        pr = hw.NormParams(s=2.0, p=2, q=2, alpha=hw.Anisotropy((0.5, 1.5)))
        assert hw.weight((2, 3), pr) == 256.0

    def test_mixed_mode(self):
        pr = hw.NormParams(p=2, q=2, weight_mode="mixed", r=0.5)
        assert hw.weight((2, 3), pr) == pytest.approx(2.0 ** 2.5)

    @settings(max_examples=50, deadline=None)
    @given(
        j=st.tuples(st.integers(0, 12), st.integers(0, 12)),
        l=st.tuples(st.integers(-6, 6), st.integers(-6, 6)),
        s=st.floats(-3, 3),
        a1=st.floats(0.2, 1.8),
    )
    def test_weight_shift_inequality(self, j, l, s, a1):
        alpha = hw.Anisotropy((a1, 2.0 - a1))
        if any(ji + li < 0 for ji, li in zip(j, l)):
            return
        pr = hw.NormParams(s=s, p=2, q=2, alpha=alpha)
        shifted = tuple(ji + li for ji, li in zip(j, l))
        lhs = hw.weight(j, pr) / hw.weight(shifted, pr)
        bound = 2.0 ** (max(abs(li) / ai for li, ai in zip(l, alpha.alphas)) * abs(s))
        assert lhs <= bound * (1 + 1e-12)


class TestBesovNorm:
    def test_tone_diagonal(self):
        g = hw.make_grid(2, 6)
        m0 = (3, 1)
        f = hw.field_from_function(g, lambda x, y: np.exp(2j * np.pi * (m0[0] * x + m0[1] * y)))
        pr = hw.NormParams(s=0.7, p=3.0, q=2.5, alpha=hw.Anisotropy((0.8, 1.2)))
        res = hw.UnivariateResolution(4)
        expected = 0.0
        for j1 in range(5):
            for j2 in range(5):
                th = res.band(j1, np.array([float(m0[0])]))[0] * res.band(j2, np.array([float(m0[1])]))[0]
                if th:
                    expected += (hw.weight((j1, j2), pr) * th) ** pr.q
        expected = expected ** (1 / pr.q)
        assert hw.besov_norm(f, pr, "hyperbolic") == pytest.approx(expected, rel=1e-10)

    def test_constant_is_one(self):
        g = hw.make_grid(2, 5)
        f = hw.constant_field(g, 1.0)
        for flavor in ("hyperbolic", "classical"):
            pr = hw.NormParams(s=1.3, p=2.5, q=1.5, alpha=hw.Anisotropy((0.5, 1.5)))
            assert hw.besov_norm(f, pr, flavor) == pytest.approx(1.0, abs=1e-12)

    def test_1d_flavors_agree(self):
        g = hw.make_grid(1, 9)
        f = random_bandlimited_field(g, cap=32, seed=9)
        pr = hw.NormParams(s=0.8, p=2.0, q=1.5, alpha=hw.isotropic(1))
        a = hw.besov_norm(f, pr, "hyperbolic")
        b = hw.besov_norm(f, pr, "classical")
        assert a == pytest.approx(b, rel=1e-10)

    def test_truncation_warns(self):
        g = hw.make_grid(1, 5)
        f = hw.field_from_function(g, lambda x: np.exp(2j * np.pi * 15 * x))
        pr = hw.NormParams(s=0.0, p=2.0, q=2.0, alpha=hw.isotropic(1))
        with pytest.warns(TruncationWarning):
            hw.besov_norm(f, pr, "hyperbolic")

    def test_monotone_in_s(self):
        g = hw.make_grid(2, 5)
        f = random_bandlimited_field(g, cap=4, seed=12)
        alpha = hw.Anisotropy((0.6, 1.4))
        vals = [
            hw.besov_norm(f, hw.NormParams(s=s, p=2.0, q=3.0, alpha=alpha), "hyperbolic")
            for s in (-1.0, 0.0, 0.5, 1.5)
        ]
        assert all(a <= b * (1 + 1e-12) for a, b in zip(vals, vals[1:]))

    def test_homogeneity(self):
        g = hw.make_grid(1, 7)
        f = random_bandlimited_field(g, cap=16, seed=1)
        pr = hw.NormParams(s=0.5, p=1.5, q=0.7, alpha=hw.isotropic(1))
        base = hw.besov_norm(f, pr)
        scaled = hw.besov_norm(hw.SampledField(g, 3.5 * f.values), pr)
        assert scaled == pytest.approx(3.5 * base, rel=1e-12)


def _literal_triebel_oracle(f, params, flavor):
    """Materialize every band with its own transform and loop over samples."""
    grid = f.grid
    F = np.fft.fftn(f.values) / grid.size
    m = np.fft.fftfreq(grid.n, 1.0 / grid.n)
    if flavor == "hyperbolic":
        res = hw.UnivariateResolution(max(grid.J - 2, 1))
        bands = []
        for j1 in range(grid.J - 1):
            for j2 in range(grid.J - 1):
                mask = np.multiply.outer(res.band(j1, m), res.band(j2, m))
                field = np.fft.ifftn(mask * F) * grid.size
                bands.append(((j1, j2), field))
        wfun = lambda jb: hw.weight(jb, params)
    else:
        cap = hw.anisotropic_level_cap(grid, params.alpha)
        res = hw.AnisotropicResolution(params.alpha, cap)
        bands = []
        for j in range(cap + 1):
            mask = res.band(j, (m, m))
            field = np.fft.ifftn(mask * F) * grid.size
            bands.append(((j,), field))
        wfun = lambda jb: 2.0 ** (params.s * jb[0])
    total = 0.0
    for c1 in range(grid.n):
        for c2 in range(grid.n):
            inner = sum(
                (wfun(jb) * abs(field[c1, c2])) ** params.q for jb, field in bands
            )
            total += inner ** (params.p / params.q)
    return (total / grid.size) ** (1.0 / params.p)


class TestTriebelNorm:
    def test_tone_formula(self):
        g = hw.make_grid(2, 6)
        m0 = (5, 2)
        f = hw.field_from_function(g, lambda x, y: np.exp(2j * np.pi * (m0[0] * x + m0[1] * y)))
        pr = hw.NormParams(s=0.4, p=1.7, q=3.0, alpha=hw.Anisotropy((1.2, 0.8)))
        res = hw.UnivariateResolution(4)
        expected = 0.0
        for j1 in range(5):
            for j2 in range(5):
                th = res.band(j1, np.array([float(m0[0])]))[0] * res.band(j2, np.array([float(m0[1])]))[0]
                if th:
                    expected += (hw.weight((j1, j2), pr) * th) ** pr.q
        expected = expected ** (1 / pr.q)
        assert hw.triebel_norm(f, pr, "hyperbolic") == pytest.approx(expected, rel=1e-10)

    def test_q2_s0_plateau_spectrum_equals_l2(self):
        # spectrum on plateau frequencies only: single-band coverage is exact
        g = hw.make_grid(2, 6)
        F = np.zeros(g.shape, dtype=np.complex128)
        for m0 in [(0, 0), (1, 0), (2, 1), (8, 4), (0, 2)]:
            F[m0] = np.random.default_rng(sum(m0)).standard_normal() + 0.5
        f = hw.idft(hw.SpectralField(g, F))
        pr = hw.NormParams(s=0.0, p=2.0, q=2.0, alpha=hw.isotropic(2))
        assert hw.triebel_norm(f, pr, "hyperbolic") == pytest.approx(hw.lp_norm(f, 2.0), rel=1e-10)

    def test_q2_s0_p2_within_factor_two(self):
        g = hw.make_grid(2, 6)
        f = random_bandlimited_field(g, cap=8, seed=3)
        pr = hw.NormParams(s=0.0, p=2.0, q=2.0, alpha=hw.isotropic(2))
        val = hw.triebel_norm(f, pr, "hyperbolic")
        l2 = hw.lp_norm(f, 2.0)
        assert l2 / 2.0 <= val <= 2.0 * l2

    @pytest.mark.parametrize("flavor", ["hyperbolic", "classical"])
    def test_literal_oracle(self, flavor):
        g = hw.make_grid(2, 4)
        f = random_bandlimited_field(g, cap=2, seed=8)
        pr = hw.NormParams(s=0.6, p=2.5, q=1.5, alpha=hw.isotropic(2))
        got = hw.triebel_norm(f, pr, flavor)
        want = _literal_triebel_oracle(f, pr, flavor)
        assert got == pytest.approx(want, rel=1e-12)

    def test_p_infinity_rejected(self):
        g = hw.make_grid(1, 4)
        pr = hw.NormParams(s=0.0, p=math.inf, q=2.0, alpha=hw.isotropic(1))
        with pytest.raises(ParameterError):
            hw.triebel_norm(hw.constant_field(g), pr)


class TestSobolevMultiplier:
    def test_tone_value(self):
        g = hw.make_grid(2, 5)
        f = hw.field_from_function(g, lambda x, y: np.exp(2j * np.pi * 3 * x))
        val = hw.sobolev_multiplier_norm(f, 1.0, hw.isotropic(2), 2.0)
        assert val == pytest.approx(math.sqrt(10.0) + 1.0, rel=1e-12)

    def test_s_zero_is_lp(self):
        g = hw.make_grid(2, 5)
        f = random_bandlimited_field(g, cap=4, seed=5)
        for p in (1.5, 2.0, 3.0):
            assert hw.sobolev_multiplier_norm(f, 0.0, hw.isotropic(2), p) == pytest.approx(
                hw.lp_norm(f, p), rel=1e-12
            )

    def test_inverse_pair(self):
        g = hw.make_grid(2, 6)
        alpha = hw.Anisotropy((0.5, 1.5))
        f = random_bandlimited_field(g, cap=8, seed=6)
        from hypwave.bands import _sobolev_multiplier
        from hypwave.field import SpectralField

        m_plus = _sobolev_multiplier(g, 1.0, alpha)
        m_minus = _sobolev_multiplier(g, -1.0, alpha)
        F = hw.dft(f)
        back = hw.idft(SpectralField(g, m_minus * m_plus * F.coefficients))
        assert np.max(np.abs(back.values - f.values)) <= 1e-9 * np.max(np.abs(f.values))

    @pytest.mark.parametrize("p", [1.0, math.inf, 0.5])
    def test_p_range(self, p):
        g = hw.make_grid(1, 4)
        with pytest.raises(ParameterError):
            hw.sobolev_multiplier_norm(hw.constant_field(g), 1.0, hw.isotropic(1), p)

    def test_mixed_multiplier_norm(self):
        g = hw.make_grid(2, 5)
        f = hw.field_from_function(g, lambda x, y: np.exp(2j * np.pi * 3 * x))
        val = hw.mixed_sobolev_norm(f, 1.0, 2.0)
        assert val == pytest.approx(math.sqrt(10.0) * 1.0, rel=1e-12)


class TestMixedWeightSpaces:
    def test_mixed_besov_constant(self):
        g = hw.make_grid(2, 5)
        pr = hw.NormParams(p=2.0, q=2.0, weight_mode="mixed", r=0.7)
        assert hw.besov_norm(hw.constant_field(g), pr, "hyperbolic") == pytest.approx(1.0, abs=1e-12)

    def test_classical_flavor_rejects_mixed(self):
        g = hw.make_grid(2, 5)
        pr = hw.NormParams(p=2.0, q=2.0, weight_mode="mixed", r=0.7)
        with pytest.raises(ParameterError):
            hw.besov_norm(hw.constant_field(g), pr, "classical")
