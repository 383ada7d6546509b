import numpy as np
import pytest

from entcost import _kernels
from entcost.multipartite import candidate_arrays

needs_numba = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not installed")


@needs_numba
@pytest.mark.parametrize("n", range(2, 10))
def test_jit_and_numpy_agree(n):
    rng = np.random.default_rng(n)
    for k in range(2, n + 1):
        heads, masks, offsets = candidate_arrays(n, k)
        # rounded values create many exact ties, which exercises the tie rule
        values = np.round(rng.random(len(heads)), 1)
        a = _kernels.subset_dp(values, heads, masks, offsets, n, k, use_jit=False)
        b = _kernels.subset_dp(values, heads, masks, offsets, n, k, use_jit=True)
        assert np.allclose(a[0], b[0], atol=1e-12, rtol=0)
        assert np.array_equal(a[1], b[1])


def test_env_flag(monkeypatch):
    monkeypatch.setenv("ENTCOST_JIT", "0")
    assert not _kernels.jit_enabled()
    monkeypatch.setenv("ENTCOST_JIT", "1")
    assert _kernels.jit_enabled() == _kernels.HAVE_NUMBA


def test_singletons_and_pairs():
    heads, masks, offsets = candidate_arrays(3, 3)
    values = np.arange(len(heads), dtype=float)
    best, choice = _kernels.subset_dp(values, heads, masks, offsets, 3, 3, use_jit=False)
    assert best[0b001] == best[0b010] == best[0b100] == 0.0
    # a pair keeps only the head with the smallest qubit index
    i = choice[0b011]
    assert masks[i] == 0b011 and heads[i] == 0
