"""Backend parity: the compiled kernel and the pure-Python twin must
produce bit-identical results from the same seed."""

import numpy as np
import pytest

from driftlab._kernels import _ea_cy, _ea_py, active_backend, available_backends, get_backend
from driftlab.ea import flip_count_cdf, random_bitstring
from driftlab.linear import bin_val, one_max, random_linear, ramp_potential
from driftlab.seeding import make_rng

needs_compiled = pytest.mark.skipif(
    _ea_cy is None, reason="compiled kernel not built"
)


def _run_both(weights, n, seed, pot_w=None, stride=0, stats=False, max_iters=10**6,
              stop=True):
    out = []
    for mod in (_ea_py, _ea_cy):
        rng = make_rng(seed)
        x = random_bitstring(n, rng)
        res = mod.run_linear(
            np.asarray(weights, dtype=np.float64), x, flip_count_cdf(n),
            max_iters, stop, rng, pot_w, stride, stats,
        )
        out.append((res, x))
    return out


@needs_compiled
@pytest.mark.parametrize(
    "make_f,n,seed",
    [
        (one_max, 8, 1),
        (one_max, 100, 2),
        (bin_val, 50, 3),
        (bin_val, 200, 4),
    ],
)
def test_run_parity(make_f, n, seed):
    f = make_f(n)
    (res_py, x_py), (res_cy, x_cy) = _run_both(f.weights, n, seed)
    assert res_py[0] == res_cy[0]
    assert res_py[1] == res_cy[1]
    assert np.array_equal(x_py, x_cy)


@needs_compiled
def test_run_parity_random_weights_with_trace_and_stats():
    n = 60
    f = random_linear(n, make_rng(10))
    pot = ramp_potential(n)
    (res_py, x_py), (res_cy, x_cy) = _run_both(
        f.weights, n, 11, pot_w=pot.weights, stride=2, stats=True
    )
    assert res_py[0] == res_cy[0]
    assert np.array_equal(x_py, x_cy)
    assert np.array_equal(res_py[2], res_cy[2])  # raw traces bit-identical
    for a, b in zip(res_py[3], res_cy[3]):
        assert np.array_equal(a, b)


@needs_compiled
def test_fixed_horizon_parity():
    n = 40
    f = bin_val(n)
    (res_py, x_py), (res_cy, x_cy) = _run_both(
        f.weights, n, 12, max_iters=100, stop=False
    )
    assert res_py[0] == res_cy[0] == 100
    assert res_py[1] is False and res_cy[1] is False
    assert np.array_equal(x_py, x_cy)


@needs_compiled
def test_mutation_stats_parity():
    n = 20
    h1, p1 = _ea_py.mutation_stats(n, 30000, flip_count_cdf(n), make_rng(13))
    h2, p2 = _ea_cy.mutation_stats(n, 30000, flip_count_cdf(n), make_rng(13))
    assert np.array_equal(h1, h2)
    assert np.array_equal(p1, p2)
    assert h1.sum() == 30000


def test_backend_selection():
    assert active_backend() in available_backends()
    assert get_backend("python") is _ea_py
    with pytest.raises(ValueError):
        get_backend("fortran")


def test_trace_endpoints_and_zero_tail():
    # the trace records the start, every stride-th step, and the end
    n = 30
    f = one_max(n)
    rng = make_rng(14)
    x = random_bitstring(n, rng)
    t, capped, trace, _ = _ea_py.run_linear(
        f.weights, x, flip_count_cdf(n), 10**6, True, rng,
        np.ones(n), 7, False,
    )
    assert not capped
    assert trace[-1] == 0.0
    assert np.all(trace[:-1] > 0)
    assert len(trace) == 1 + t // 7 + (1 if t % 7 else 0)
