import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from opuclab.coeffs import VerblunskySequence
from opuclab.errors import ValidationError
from opuclab.kernel import (Grid, RescaledPair, cd_kernel, default_grid,
                            finite_perturbation_gap, kernel_ratio, lebesgue_ratio, sine_error,
                            sine_error_grid, sine_kernel, sup_sine_error)

from conftest import circle_angles, disk_points, explicit_sequences
from oracles import brute_kernel

ZERO = VerblunskySequence.zero()
strip = st.builds(complex, st.floats(-3, 3), st.floats(-0.49, 0.49))


@given(explicit_sequences(max_len=30, max_radius=0.95), circle_angles())
def test_diagonal_at_least_one(seq, t):
    z = cmath.exp(1j * t)
    k = cd_kernel(seq, seq.length, z, z).value
    assert abs(k.imag) <= 1e-12 * abs(k)
    assert k.real >= 1.0


@given(explicit_sequences(max_len=30, max_radius=0.9), disk_points(1.2), disk_points(1.2))
def test_conjugate_symmetry(seq, z, w):
    n = seq.length
    k1 = cd_kernel(seq, n, z, w).value
    k2 = cd_kernel(seq, n, w, z).value
    assert abs(k1 - k2.conjugate()) <= 1e-10 * (1 + abs(k1))


@given(explicit_sequences(min_len=4, max_len=4, max_radius=0.9), disk_points(1.1), disk_points(1.1))
def test_brute_force_sum(seq, z, w):
    got = cd_kernel(seq, 5, z, w).value
    ref = brute_kernel(seq.prefix(4), 5, z, w)
    assert abs(got - ref) <= 1e-12 * (1 + abs(ref))


def test_kernel_validates_n():
    with pytest.raises(ValidationError):
        cd_kernel(ZERO, 0, 1, 1)


@given(st.integers(1, 10**4), st.floats(-3, 3))
def test_lebesgue_diagonal(n, a):
    assert lebesgue_ratio(n, a, a) == pytest.approx(1.0, abs=1e-14)


@given(st.integers(2, 10**4), strip)
def test_lebesgue_zero_at_integer_shift(n, a):
    b = (a - 1).conjugate()   # a - conj(b) = 1
    assert abs(lebesgue_ratio(n, a, b)) < 1e-12


@pytest.mark.parametrize("n", [10, 100, 1000, 10000])
def test_lebesgue_vs_direct_sum(n):
    a = np.array([-2, -0.5, 0.3, 1 + 0.25j, -0.25j, 1.7])
    b = np.array([1.5, -0.5, 0.3 + 1e-9, -0.25j, 0.25j, -1.2])
    k = np.arange(n)
    q = np.exp(2j * np.pi * (a - np.conj(b)) / n)
    direct = np.array([np.sum(qq ** k) / n for qq in q])
    assert np.allclose(lebesgue_ratio(n, a, b), direct, rtol=0, atol=1e-12)


@pytest.mark.parametrize("n", [10, 100, 1000])
def test_zero_sequence_ratio_is_lebesgue(n):
    g = default_grid()
    for th in g.thetas[::9]:
        for a, b in g.pairs:
            r = kernel_ratio(ZERO, n, RescaledPair(th, a, b, n))
            assert abs(r - lebesgue_ratio(n, a, b)) <= 1e-12


def test_sine_kernel_values():
    assert sine_kernel(0.7, 0.7) == pytest.approx(1.0)
    assert abs(sine_kernel(1.2, 0.2)) < 1e-15
    x = math.pi / 4
    expected = cmath.exp(1j * x) * math.sin(x) / x
    assert abs(sine_kernel(0.25, 0) - expected) < 1e-15
    # frozen digits of e^{i pi/4} sin(pi/4) / (pi/4)
    assert abs(sine_kernel(0.25, 0) - (0.6366197723675814 + 0.6366197723675814j)) < 1e-15


def test_sine_kernel_series_branch_continuous():
    eps = 1e-9
    assert abs(sine_kernel(0.3 + eps, 0.3) - sine_kernel(0.3 + 2e-8, 0.3)) < 1e-7


def test_sine_error_vanishes_at_integer_shift():
    for n in (10, 100):
        assert sine_error(ZERO, n, RescaledPair(0.4, 1.5, 0.5, n)) < 1e-12


def test_single_point_grid():
    seq = VerblunskySequence.sparse([0.5], [3])
    g = Grid((0.7,), ((0.5 + 0.1j, -1.0),))
    assert sup_sine_error(seq, 50, g) == pytest.approx(
        sine_error(seq, 50, RescaledPair(0.7, 0.5 + 0.1j, -1.0, 50)), rel=1e-14)


def test_swap_symmetry():
    seq = VerblunskySequence.sparse([0.5, -0.3j], [2, 9])
    g = default_grid()
    swapped = Grid(g.thetas, tuple((b, a) for a, b in g.pairs))
    assert sup_sine_error(seq, 200, g) == pytest.approx(sup_sine_error(seq, 200, swapped),
                                                        rel=1e-10)


def test_zero_sequence_error_decays():
    g = Grid(default_grid().thetas[::8], tuple(p for p in default_grid().pairs
                                               if p[0].imag == 0 and p[1].imag == 0))
    for n in (100, 1000, 10000):
        assert sup_sine_error(ZERO, n, g) <= 20.0 / n


def test_grid_shape_and_round_trip(tmp_path):
    g = default_grid()
    assert len(g.thetas) == 64 and len(g.pairs) == 29
    assert Grid.from_dict(g.to_dict()) == g
    p = tmp_path / "g.json"
    import json
    p.write_text(json.dumps(g.to_dict()))
    assert Grid.load(p) == g
    assert sine_error_grid(ZERO, 10, g).shape == (64, 29)


@pytest.mark.parametrize("pair", [(0.5j, 0), (0, -0.5j)])
def test_strip_enforced(pair):
    with pytest.raises(ValidationError):
        Grid((0.0,), (pair,))
    with pytest.raises(ValidationError):
        RescaledPair(0.0, pair[0], pair[1], 4)


def test_finite_perturbation_gap_decreases():
    seq = VerblunskySequence.sparse([0.5, 0.4], [3, 20])
    g = Grid(default_grid().thetas[::8], default_grid().pairs)
    errs = [finite_perturbation_gap(seq, 20, n, g).max() for n in (100, 1000, 10000)]
    assert errs[0] > errs[1] > errs[2]
