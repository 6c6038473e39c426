import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from opuclab.coeffs import VerblunskySequence
from opuclab.errors import OracleUnavailable, ValidationError
from opuclab.popuc import (BetaRule, ParaPolySpec, circular_distance, clock_statistic,
                           cmv_eigenvalues, cmv_matrix, cmv_zero_oracle,
                           crosscheck_factorization, find_zeros, label_zeros, local_zeros,
                           orthogonality_defect, para_eval)

from conftest import TWO_PI, circle_angles, explicit_sequences
from oracles import para_coefficients

ZERO = VerblunskySequence.zero()
betas = circle_angles().map(lambda t: cmath.exp(1j * t))


def root_angles(coeffs):
    r = np.roots(coeffs[::-1])
    return np.sort(np.mod(np.angle(r), TWO_PI))


@given(st.integers(1, 30), betas, circle_angles())
def test_para_eval_free(n, beta, t):
    z = cmath.exp(1j * t)
    h = para_eval(ParaPolySpec(ZERO, n, beta), z)
    assert abs(h - (z ** n - beta.conjugate())) < 1e-13


@given(explicit_sequences(max_len=6), betas, st.complex_numbers(max_magnitude=2))
def test_para_eval_degree_one(seq, beta, z):
    assert para_eval(ParaPolySpec(seq, 1, beta), z) == pytest.approx(z - beta.conjugate())


def test_spec_validation():
    with pytest.raises(ValidationError):
        ParaPolySpec(ZERO, 0)
    with pytest.raises(ValidationError):
        ParaPolySpec(ZERO, 3, 1.1)
    assert ParaPolySpec(ZERO, 3, 1 + 1e-12).beta == 1


def test_fourth_roots_of_unity():
    z = find_zeros(ParaPolySpec(ZERO, 4, 1))
    assert np.allclose(z, [0, math.pi / 2, math.pi, 3 * math.pi / 2], atol=1e-12)


def test_explicit_radical():
    beta = cmath.exp(1j * math.pi / 4)
    z = find_zeros(ParaPolySpec(ZERO, 2, beta))
    # z^2 = e^{-i pi/4}
    assert np.allclose(z, [7 * math.pi / 8, 15 * math.pi / 8], atol=1e-12)


def test_quadratic_companion():
    spec = ParaPolySpec(VerblunskySequence.sparse([0.5], [0]), 2, 1)
    coeffs = para_coefficients([0.5], 1)
    assert circular_distance(find_zeros(spec), root_angles(coeffs)) < 1e-12


@given(explicit_sequences(max_len=9, max_radius=0.9), betas)
def test_matches_monomial_roots(seq, beta):
    n = seq.length + 1
    spec = ParaPolySpec(seq, n, beta)
    zeros = find_zeros(spec)
    assert len(zeros) == n
    assert np.all((zeros >= 0) & (zeros < TWO_PI)) and np.all(np.diff(zeros) > 0)
    ref = root_angles(para_coefficients(seq.prefix(n - 1), beta))
    assert circular_distance(zeros, ref) < 1e-7


@given(st.integers(0, 2**20), st.integers(1, 64), betas)
def test_cmv_equivalence(seed, n, beta):
    spec = ParaPolySpec(VerblunskySequence.random(seed, 0.9), n, beta)
    assert circular_distance(find_zeros(spec), cmv_zero_oracle(spec)) <= 1e-8


def test_cmv_free_case():
    spec = ParaPolySpec(ZERO, 4, 1)
    assert circular_distance(cmv_zero_oracle(spec), find_zeros(spec)) < 1e-8


@given(st.integers(0, 2**20), st.integers(1, 40), betas)
def test_cmv_unitary(seed, n, beta):
    spec = ParaPolySpec(VerblunskySequence.random(seed, 0.9), n, beta)
    u = cmv_matrix(spec)
    assert np.abs(u.conj().T @ u - np.eye(n)).max() < 1e-12
    assert np.abs(np.abs(cmv_eigenvalues(spec)) - 1).max() < 1e-8


def test_cmv_cap():
    with pytest.raises(OracleUnavailable):
        cmv_eigenvalues(ParaPolySpec(ZERO, 20), cap=10)


@given(st.integers(0, 2**20), st.integers(2, 64), betas)
def test_residual_post_check(seed, n, beta):
    spec = ParaPolySpec(VerblunskySequence.random(seed, 0.5), n, beta)
    zeros = find_zeros(spec)
    hmax = np.abs(para_eval(spec, np.exp(1j * np.linspace(0, TWO_PI, 16 * n)))).max()
    assert np.abs(para_eval(spec, np.exp(1j * zeros))).max() <= 1e-9 * (1 + hmax)


def test_factorization_free_case():
    spec = ParaPolySpec(ZERO, 12, 1)
    assert crosscheck_factorization(spec, find_zeros(spec)) <= 1e-9


def test_factorization_degree_one():
    spec = ParaPolySpec(VerblunskySequence.random(0, 0.5), 1, 1j)
    assert crosscheck_factorization(spec, find_zeros(spec)) <= 1e-12


def test_factorization_negative_control():
    # the spread of a shifted zero grows like n * shift; n = 24 clears 1e-2
    spec = ParaPolySpec(VerblunskySequence.random(3, 0.3), 24, 1)
    fake = find_zeros(spec) + 1e-3
    assert crosscheck_factorization(spec, fake) >= 1e-2


@given(st.integers(0, 2**20), st.integers(1, 64), betas)
def test_factorization_random(seed, n, beta):
    # the spread carries rounding amplified by the growth of phi_k; at
    # radius 0.3 and n <= 64 it stays two orders below 1e-9
    spec = ParaPolySpec(VerblunskySequence.random(seed, 0.3), n, beta)
    assert crosscheck_factorization(spec, find_zeros(spec)) <= 1e-9


@given(st.integers(0, 2**20), st.integers(2, 64), betas)
def test_orthogonality(seed, n, beta):
    spec = ParaPolySpec(VerblunskySequence.random(seed, 0.6), n, beta)
    assert orthogonality_defect(spec, find_zeros(spec)) <= 1e-8


def test_labels_between_zeros():
    zs = [0, math.pi / 2, math.pi, 3 * math.pi / 2]
    lab = label_zeros(zs, 0.1)
    assert lab.theta(0) == pytest.approx(math.pi / 2) and lab.theta(-1) == 0


def test_labels_tie_goes_to_zero_index():
    zs = [0, math.pi / 2, math.pi, 3 * math.pi / 2]
    lab = label_zeros(zs, 0.0)
    assert lab.theta(0) == 0
    assert lab.theta(-1) == pytest.approx(3 * math.pi / 2 - TWO_PI)


@given(st.integers(-12, 12), st.floats(-20, 20))
def test_label_winding(j, Theta):
    lab = label_zeros([0.3, 1.0, 2.0, 5.0], Theta)
    assert lab.theta(j + 4) - lab.theta(j) == pytest.approx(TWO_PI, abs=1e-12)
    assert lab.theta(-1) < Theta <= lab.theta(0)


@given(st.integers(0, 2**20), st.integers(1, 48), betas, st.floats(-10, 10))
def test_local_matches_full(seed, n, beta, Theta):
    spec = ParaPolySpec(VerblunskySequence.random(seed, 0.5), n, beta)
    lab = label_zeros(find_zeros(spec), Theta)
    loc = local_zeros(spec, Theta, -n - 1, n + 1)
    assume(abs(lab.theta(0) - Theta) > 1e-9 and abs(lab.theta(-1) - Theta) > 1e-9)
    for j, th in loc.items():
        assert th == pytest.approx(lab.theta(j), abs=1e-9)
    assert loc[-1] < Theta <= loc[0]


def test_local_tie_on_zero():
    spec = ParaPolySpec(ZERO, 8, 1)
    th = local_zeros(spec, math.pi / 2, -1, 1)
    assert th[0] == math.pi / 2
    assert th[-1] == pytest.approx(math.pi / 4)


def test_local_label_range_checked():
    with pytest.raises(ValidationError):
        local_zeros(ParaPolySpec(ZERO, 4), 0.0, 1, 2)


@given(st.integers(1, 200), st.integers(-3, 3), circle_angles(), betas)
def test_free_clock(n, j, Theta, beta):
    r = clock_statistic(ZERO, BetaRule.constant(beta), Theta, j, [n])[0]
    assert r.normalized_gap == pytest.approx(TWO_PI, abs=1e-10)


def test_single_perturbation_clock():
    seq = VerblunskySequence.sparse([0.5], [5])
    devs = [r.deviation for r in clock_statistic(seq, BetaRule.constant(1), 0.0, 0,
                                                 [50, 500, 5000, 50000])]
    assert devs[-1] < 0.01 * TWO_PI
    assert devs[-1] < devs[0]


def test_beta_rules():
    assert BetaRule.constant(1j)(10) == 1j
    rule = BetaRule.per_n({3: -1, 4: 1j})
    assert rule(4) == 1j
    with pytest.raises(ValidationError):
        rule(5)
    r = BetaRule.random(7)
    assert r(11) == BetaRule.random(7)(11) != r(12)
    assert abs(abs(r(11)) - 1) < 1e-15
    assert r.describe() == "random(seed=7)"
    assert BetaRule.constant(-1).describe() == "constant(-1.0,0.0)"
    with pytest.raises(ValidationError):
        BetaRule.constant(0.5)


def test_circular_distance_seam():
    a = np.array([1e-12, 1.0, 3.0])
    b = np.array([TWO_PI - 1e-12, 1.0, 3.0])
    assert circular_distance(a, b) < 1e-11
    assert circular_distance([0.0], [0.0, 1.0]) == math.inf
