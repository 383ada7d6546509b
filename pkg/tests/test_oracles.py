"""Recompute the frozen reference values in ``oracles.py`` with mpmath."""
import pytest

import oracles

mp = pytest.importorskip("mpmath")
mp.mp.dps = 30


def _h(x):
    return -x * mp.log(x, 2) - (1 - x) * mp.log(1 - x, 2)


def _g(k, n):
    if k == 1:
        return mp.mpf(0)
    return _h((1 + mp.sqrt(1 - mp.mpf(4) * (k - 1) / n**2)) / 2)


def _w_vector(n):
    return [(n - k + 1) * (_g(k, n) - _g(k - 1, n)) for k in range(2, n + 1)]


def _close(frozen, exact):
    return abs(mp.mpf(frozen) - exact) <= mp.mpf("1e-15")


def test_scalar_oracles():
    assert _close(oracles.H_TWO_THIRDS, _h(mp.mpf(2) / 3))
    assert _close(oracles.H_TWO_THIRDS, _g(3, 3))
    assert _close(oracles.G_2_3, _g(2, 3))
    assert _close(oracles.G_3_4, _g(3, 4))


@pytest.mark.parametrize(
    "n, per, total",
    [(3, oracles.W3, oracles.W3_TOTAL), (4, oracles.W4, oracles.W4_TOTAL),
     (5, oracles.W5, oracles.W5_TOTAL), (6, oracles.W6, oracles.W6_TOTAL)],
)
def test_w_vector_oracles(n, per, total):
    exact = _w_vector(n)
    assert all(_close(f, e) for f, e in zip(per, exact))
    assert _close(total, mp.fsum(exact))
    assert _close(total, mp.fsum(_g(k, n) for k in range(2, n + 1)))


def test_w7_three_partite_oracle():
    assert _close(oracles.W7_E3, _w_vector(7)[1])


def test_w3_ghz3_oracles():
    # the GHZ_3 block adds exactly one bit at degree 3
    w3 = _w_vector(3)
    assert _close(oracles.W3_GHZ3_E3, w3[1] + 1)
    assert _close(oracles.W3_GHZ3_TOTAL, mp.fsum(w3) + 1)
