import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from etagoldbach.errors import DomainError
from etagoldbach.window import (
    Window,
    box_coeff,
    coeff_bound,
    container_coeff,
    container_eval,
    knots,
    make_container,
    psi0,
    triple_conv,
)

W = Window(Fraction(1, 5), Fraction(17, 20))
DELTA = Fraction(1, 100)


def psi1(window=W, delta=DELTA, r=3):
    return make_container(window.a + delta / 2, window.b - delta / 2, delta, r)


def psi2(window=W, delta=DELTA, r=3):
    return make_container(window.a - delta / 2, window.b + delta / 2, delta, r)


def simpson_coeff(c, m, panels_per_unit=1000):
    """Composite Simpson on each polynomial piece of the container."""
    pts = [0.0] + knots(c) + [1.0]
    total = 0j
    for lo, hi in zip(pts, pts[1:]):
        if hi <= lo:
            continue
        n = max(64, 2 * math.ceil((hi - lo) * (abs(m) + 1) * panels_per_unit / 2))
        x = np.linspace(lo, hi, n + 1)
        # evaluate at interior-nudged endpoints to stay on this piece
        xe = x.copy()
        xe[0] = lo + 1e-15
        xe[-1] = hi - 1e-15
        f = container_eval(c, xe) * np.exp(-2j * np.pi * m * x)
        h = (hi - lo) / n
        total += h / 3 * (f[0] + f[-1] + 4 * f[1:-1:2].sum() + 2 * f[2:-1:2].sum())
    return total


def grid_triple_conv(window, x, n=6000):
    """Numerical circular convolution of the indicator on an n-point grid."""
    grid = (np.arange(n) + 0.5) / n
    f = ((grid > window.a) & (grid < window.b)).astype(float)
    F = np.fft.fft(f) / n
    conv = np.real(np.fft.ifft(F**3)) * n
    # samples sit at k/n + 3/(2n) after three half-cell offsets
    k = round((x - 1.5 / n) * n) % n
    return conv[k]


class TestPsi0:
    def test_examples(self):
        assert psi0(W, 0.5) == 1
        assert psi0(W, 0.9) == 0
        assert psi0(W, 1.3) == 1

    def test_boundaries_excluded(self):
        assert psi0(W, Fraction(1, 5)) == 0
        assert psi0(W, Fraction(17, 20)) == 0
        assert psi0(W, 0) == 0


class TestBoxCoeff:
    def test_examples(self):
        w = Window(0, Fraction(1, 2))
        assert box_coeff(w, 0) == 0.5
        assert abs(box_coeff(w, 1) - (-1j / math.pi)) < 1e-15
        assert abs(box_coeff(w, 2)) < 1e-15

    def test_direct_integral(self):
        # int_0^{1/2} exp(-2 pi i x) dx = (1 - exp(-pi i)) / (2 pi i)
        direct = (1 - cmath.exp(-1j * math.pi)) / (2j * math.pi)
        assert abs(box_coeff(Window(0, Fraction(1, 2)), 1) - direct) < 1e-15

    @given(st.integers(-500, 500))
    def test_conjugate_symmetry(self, m):
        assert abs(box_coeff(W, -m) - box_coeff(W, m).conjugate()) < 1e-15


class TestContainer:
    def test_valid_examples(self):
        assert psi1().alpha == Fraction(41, 200)
        assert psi2().beta == Fraction(171, 200)

    def test_hypotheses(self):
        with pytest.raises(DomainError):
            make_container(Fraction(1, 2), Fraction(1, 2) + Fraction(1, 200), DELTA, 3)
        with pytest.raises(DomainError):
            make_container(0, Fraction(1, 2), Fraction(1, 2), 3)
        with pytest.raises(DomainError):
            make_container(0, 1, DELTA, 3)

    def test_eval_examples(self):
        c = psi1()
        assert container_eval(c, float(c.alpha + c.beta) / 2) == 1.0
        assert container_eval(c, 0.1) == 0.0
        assert container_eval(c, 0.95) == 0.0
        assert abs(container_eval(c, float(c.alpha)) - 0.5) < 1e-12
        assert abs(container_eval(c, float(c.beta)) - 0.5) < 1e-12

    @pytest.mark.parametrize("r", [1, 3, 5])
    def test_sandwich(self, r):
        xs = np.arange(10**5) / 10**5
        lo = container_eval(psi1(r=r), xs)
        hi = container_eval(psi2(r=r), xs)
        mid = ((xs > 0.2) & (xs < 0.85)).astype(float)
        assert np.all(lo <= mid) and np.all(mid <= hi)

    @pytest.mark.parametrize("r", [1, 2, 4, 7])
    def test_plateau_and_support(self, r):
        c = make_container(Fraction(3, 10), Fraction(6, 10), Fraction(1, 20), r)
        xs = np.linspace(0.3 + 0.025, 0.6 - 0.025, 1001)
        assert np.allclose(container_eval(c, xs), 1.0, atol=1e-12)
        outside = np.concatenate([np.linspace(0, 0.275, 500), np.linspace(0.625, 1, 500)])
        assert np.all(container_eval(c, outside) == 0.0)

    def test_wraparound(self):
        c = make_container(Fraction(-1, 10), Fraction(1, 10), Fraction(1, 20), 3)
        assert container_eval(c, 0.0) == 1.0
        assert container_eval(c, 0.99) == 1.0
        assert container_eval(c, 0.5) == 0.0


class TestContainerCoeff:
    def test_zero(self):
        c = psi1()
        assert container_coeff(c, 0) == float(c.beta - c.alpha)

    @pytest.mark.parametrize("c", [psi1(), psi2(), psi1(r=1), psi2(r=5)])
    def test_three_way_bound(self, c):
        for m in range(-1000, 1001):
            assert abs(container_coeff(c, m)) <= coeff_bound(c, m) * (1 + 1e-6)

    def test_m7_quadrature(self):
        c = psi1()
        assert abs(container_coeff(c, 7) - simpson_coeff(c, 7)) < 1e-10

    @settings(max_examples=100, deadline=None)
    @given(
        st.fractions(0, 1, max_denominator=200),
        st.fractions(Fraction(1, 10), Fraction(8, 10), max_denominator=200),
        st.sampled_from([Fraction(1, 100), Fraction(1, 50), Fraction(1, 20)]),
        st.integers(1, 6),
        st.integers(-60, 60),
    )
    def test_closed_form_matches_quadrature(self, alpha, width, delta, r, m):
        c = make_container(alpha, alpha + width, delta, r)
        assert abs(container_coeff(c, m) - simpson_coeff(c, m)) < 1e-9

    @pytest.mark.parametrize("r", [1, 3])
    def test_parseval(self, r):
        c = psi1(r=r)
        ms = np.arange(1, 10**4 + 1)
        coeffs = np.array([container_coeff(c, int(m)) for m in ms])
        total = float(c.beta - c.alpha) ** 2 + 2 * np.sum(np.abs(coeffs) ** 2)
        pts = [0.0] + knots(c) + [1.0]
        norm = 0.0
        for lo, hi in zip(pts, pts[1:]):
            x = np.linspace(lo + 1e-15, hi - 1e-15, 2001)
            y = container_eval(c, x) ** 2
            h = (hi - lo) / 2000
            norm += h / 3 * (y[0] + y[-1] + 4 * y[1:-1:2].sum() + 2 * y[2:-1:2].sum())
        assert abs(total - norm) < 1e-6


class TestTripleConv:
    def test_mean_is_width_cubed(self):
        n = 3000
        xs = [Fraction(k, n) for k in range(n)]
        # piecewise quadratic: midpoint averages converge, check to 1e-6
        mean = sum(float(triple_conv(W, x)) for x in xs) / n
        assert abs(mean - float(W.width) ** 3) < 1e-6

    def test_one_twelfth(self):
        w = Window(0, Fraction(1, 3))
        assert triple_conv(w, Fraction(1, 2)) == Fraction(1, 12)
        assert abs(grid_triple_conv(w, 0.5) - 1 / 12) < 1e-3

    def test_outside_support(self):
        w = Window(0, Fraction(1, 6))
        assert triple_conv(w, Fraction(3, 4)) == 0
        assert abs(grid_triple_conv(w, 0.75)) < 1e-9

    @pytest.mark.parametrize("x", [0.0, 0.13, 0.5, 0.77, 0.99])
    def test_against_grid_oracle(self, x):
        assert abs(triple_conv(W, x) - grid_triple_conv(W, x)) < 1e-3

    @settings(max_examples=100, deadline=None)
    @given(
        st.fractions(0, 1, max_denominator=100),
        st.fractions(0, 1, max_denominator=100),
        st.fractions(0, 1, max_denominator=1000),
    )
    def test_bounds(self, a, b, x):
        if a == b:
            return
        w = Window(min(a, b), max(a, b))
        v = triple_conv(w, x)
        assert 0 <= v <= min(1, w.width**2)

    def test_continuity(self):
        xs = np.linspace(0, 1, 20001)
        vals = np.array([triple_conv(W, float(x)) for x in xs])
        # Lipschitz constant of a box convolved with itself is at most 2 * width
        assert np.max(np.abs(np.diff(vals))) <= 2 * float(W.width) * (xs[1] - xs[0]) + 1e-15

    @pytest.mark.parametrize("M", [10, 20, 40, 80])
    def test_fourier_series_uniform_rate(self, M):
        xs = np.linspace(0, 1, 401)
        m = np.arange(-M, M + 1)
        c3 = np.array([box_coeff(W, int(k)) ** 3 for k in m])
        series = np.real(np.exp(2j * np.pi * np.outer(xs, m)) @ c3)
        exact = np.array([triple_conv(W, float(x)) for x in xs])
        assert np.max(np.abs(series - exact)) <= 1 / (math.pi**3 * M**2)
