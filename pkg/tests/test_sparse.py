import dataclasses
import json
import math

import numpy as np
import pytest

from opuclab.coeffs import VerblunskySequence
from opuclab.errors import SparseBuildError, ValidationError
from opuclab.kernel import Grid, default_grid, sine_kernel, sup_sine_error
from opuclab.recurrence import values
from opuclab.sparse import (LIMITATION, SparseBuildConfig, SparseCertificate,
                            build_sparse_example, certify_level, choose_next_position,
                            config_with, continuity_ratio, replay_certificate)

ONE_LEVEL = SparseBuildConfig((0.5,))
SMALL_GRID = Grid(default_grid().thetas[::4], default_grid().pairs)


@pytest.fixture(scope="module")
def two_levels():
    return build_sparse_example(SparseBuildConfig((0.5, 0.4)), 2)


def direct_cond1(seq, n, grid):
    """Sup sine error from the dense trajectory, summing phi_k one by one."""
    worst = 0.0
    for th in grid.thetas:
        e = np.exp(1j * th)
        den = np.sum(np.abs(values(seq, n - 1, e)[0]) ** 2)
        for a, b in grid.pairs:
            z = np.exp(1j * (th + 2 * np.pi * a / n))
            w = np.exp(1j * (th + 2 * np.pi * b / n))
            num = np.sum(values(seq, n - 1, z)[0] * np.conj(values(seq, n - 1, w)[0]))
            worst = max(worst, abs(num / den - sine_kernel(a, b)))
    return worst


def test_empty_prefix_is_lebesgue():
    empty = VerblunskySequence.sparse([], [])
    c1, c2 = certify_level(empty, 0, 300, SMALL_GRID)
    assert c1 == sup_sine_error(VerblunskySequence.zero(), 300, SMALL_GRID)
    # phi_1(z) = z, so the largest ratio is |z_n| for the probe with Im a = -0.25
    assert c2 == pytest.approx(math.exp(2 * math.pi * 0.25 / 300), rel=1e-12)


def test_centre_point_ratio_is_one():
    seq = VerblunskySequence.sparse([0.5, -0.2j], [3, 17])
    g = Grid((0.0, 1.0, 4.0), ((0.0, 0.0),))
    # the dagger ratios compare |phi*| with |phi| on the circle: equal up to rounding
    assert abs(continuity_ratio(seq, 17, 400, g) - 1.0) <= 4 * np.finfo(float).eps


def test_cond1_decreases_on_doubling():
    seq = VerblunskySequence.sparse([0.5], [10])
    errs = [certify_level(seq, 10, n, SMALL_GRID)[0] for n in (1000, 2000, 4000, 8000)]
    assert all(b <= a * 1.05 for a, b in zip(errs, errs[1:]))


def test_first_level_scan():
    c = choose_next_position(ONE_LEVEL, [10])
    # first passing candidate of the 1.05 scan from N_0 + 2 = 12
    assert (c.n_hat, c.next_position) == (247, 494)
    assert c.tolerance == 1.0 and c.passed
    seq = VerblunskySequence.sparse([0.5], [10])
    assert direct_cond1(seq, 247, SMALL_GRID) <= 1.0
    # the previous candidate, 235, fails one of the two conditions
    assert max(certify_level(seq, 10, 235, default_grid())[0],
               certify_level(seq, 10, 470, default_grid())[0]) > 1.0


def test_cond1_agrees_with_direct_sum():
    seq = VerblunskySequence.sparse([0.5, 0.3j], [10, 60])
    g = Grid(default_grid().thetas[::16], default_grid().pairs)
    assert certify_level(seq, 60, 500, g)[0] == pytest.approx(direct_cond1(seq, 500, g),
                                                               abs=1e-10)


def test_margin_growth(two_levels):
    seq, certs = two_levels
    for c in certs:
        assert c.next_position >= 2 * c.n_hat
        assert c.next_position / c.position >= 2
        assert c.next_position > c.n_hat > c.position


def test_stricter_tolerance_needs_larger_n():
    loose = choose_next_position(ONE_LEVEL, [10]).n_hat
    strict = choose_next_position(config_with(ONE_LEVEL, tolerance_scale=0.5), [10]).n_hat
    assert strict >= loose


def test_one_level_shape():
    seq, certs = build_sparse_example(ONE_LEVEL, 1)
    assert seq.positions.tolist() == [10]
    assert seq.values.tolist() == [0.5]
    assert len(certs) == 1 and certs[0].next_position == 494


def test_chain_and_tolerances(two_levels):
    seq, certs = two_levels
    assert seq.positions.tolist() == [10, certs[0].next_position]
    assert [c.tolerance for c in certs] == [1.0, 1.0]
    assert all(c.cond1_max <= c.tolerance and c.cond2_max < 2 for c in certs)
    assert certs[1].position == certs[0].next_position


def test_replay_and_round_trip(two_levels, tmp_path):
    seq, certs = two_levels
    for c in certs:
        assert replay_certificate(seq, c)
        c.save(tmp_path / "c.json")
        back = SparseCertificate.load(tmp_path / "c.json")
        assert back.to_dict() == c.to_dict()
        assert replay_certificate(seq, back)
        assert json.loads(c.dumps())["limitation"] == LIMITATION
        assert "seconds" not in c.to_dict(timing=False)


def test_replay_rejects_tampering(two_levels):
    seq, certs = two_levels
    forged = dataclasses.replace(certs[1], cond1=(certs[1].cond1[0] * 0.5, certs[1].cond1[1]))
    assert not replay_certificate(seq, forged)


def test_malformed_certificate():
    with pytest.raises(ValidationError):
        SparseCertificate.from_dict({"level": 0})


def test_cap_reports_best():
    cfg = SparseBuildConfig((0.5,), tolerance_scale=1e-6, cap=400)
    with pytest.raises(SparseBuildError) as info:
        choose_next_position(cfg, [10])
    assert info.value.best is not None and info.value.best[0] > 1e-6


@pytest.mark.parametrize("kw", [dict(values=()), dict(values=(1.0,)), dict(values=(0.3, 0.5)),
                                dict(values=(0.5,), tolerance_scale=0.0),
                                dict(values=(0.5,), cond2_bound=1.0),
                                dict(values=(0.5,), stride=1.0),
                                dict(values=(0.5,), margin=0.5),
                                dict(values=(0.5,), first_position=-1)])
def test_config_validation(kw):
    with pytest.raises(ValidationError):
        SparseBuildConfig(**kw)


def test_levels_validated():
    with pytest.raises(ValidationError):
        build_sparse_example(ONE_LEVEL, 2)
    with pytest.raises(ValidationError):
        build_sparse_example(ONE_LEVEL, 0)


def test_tolerance_schedule():
    cfg = SparseBuildConfig((0.5, 0.4, 0.3), tolerance_scale=0.15)
    assert [cfg.tolerance(l) for l in range(3)] == [0.15, 0.15, 0.075]
    assert math.isclose(SparseBuildConfig((0.5,)).tolerance(4), 0.25)
