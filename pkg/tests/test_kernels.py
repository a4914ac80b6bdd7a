import numpy as np
import pytest

from amrlink import kernels
from amrlink.kernels import (
    max_cosine,
    max_cosine_numba,
    max_cosine_numpy,
    numba_enabled,
    segmented_max_cosine,
    segmented_max_cosine_numba,
    segmented_max_cosine_numpy,
)


def brute_max_cosine(a, b):
    best, found = 0.0, False
    for va in a:
        na = np.linalg.norm(va)
        if na == 0:
            continue
        for vb in b:
            nb = np.linalg.norm(vb)
            if nb == 0:
                continue
            sim = float(va @ vb / (na * nb))
            if not found or sim > best:
                best, found = sim, True
    return best if found else 0.0


class TestMaxCosine:
    def test_paths_agree_on_random_inputs(self):
        rng = np.random.default_rng(0)
        for _ in range(30):
            a = rng.normal(size=(rng.integers(1, 6), 5))
            b = rng.normal(size=(rng.integers(1, 6), 5))
            expected = brute_max_cosine(a, b)
            assert max_cosine_numpy(a, b) == pytest.approx(expected, abs=1e-12)
            assert max_cosine_numba(a, b) == pytest.approx(expected, abs=1e-12)

    def test_empty_inputs(self):
        a = np.zeros((0, 4))
        b = np.ones((2, 4))
        assert max_cosine_numpy(a, b) == 0.0
        assert max_cosine_numba(a, b) == 0.0

    def test_identical_vectors(self):
        v = np.array([[0.3, 0.4, 0.5]])
        assert max_cosine(v, v) == pytest.approx(1.0)

    def test_negative_max_preserved(self):
        a = np.array([[1.0, 0.0]])
        b = np.array([[-1.0, 0.0]])
        assert max_cosine_numpy(a, b) == pytest.approx(-1.0)
        assert max_cosine_numba(a, b) == pytest.approx(-1.0)

    def test_zero_rows_skipped(self):
        a = np.array([[0.0, 0.0], [1.0, 0.0]])
        b = np.array([[1.0, 0.0]])
        assert max_cosine_numpy(a, b) == pytest.approx(1.0)
        assert max_cosine_numba(a, b) == pytest.approx(1.0)


class TestSegmented:
    def make_case(self, seed):
        rng = np.random.default_rng(seed)
        q = rng.normal(size=(rng.integers(1, 5), 4))
        segs = [rng.normal(size=(rng.integers(0, 4), 4)) for _ in range(rng.integers(1, 6))]
        offsets = np.zeros(len(segs) + 1, dtype=np.int64)
        for i, s in enumerate(segs):
            offsets[i + 1] = offsets[i] + s.shape[0]
        flat = np.vstack([s for s in segs if s.shape[0]]) if offsets[-1] else np.zeros((0, 4))
        return q, flat, offsets, segs

    def test_paths_agree_and_match_per_segment_pooling(self):
        for seed in range(20):
            q, flat, offsets, segs = self.make_case(seed)
            got_np = segmented_max_cosine_numpy(q, flat, offsets)
            got_nb = segmented_max_cosine_numba(q, flat, offsets)
            np.testing.assert_allclose(got_np, got_nb, atol=1e-12)
            for r, seg in enumerate(segs):
                if seg.shape[0] == 0:
                    assert got_np[r] == 0.0
                else:
                    sims = []
                    for row in seg:
                        n = np.linalg.norm(row)
                        for v in q:
                            nv = np.linalg.norm(v)
                            sims.append(float(row @ v / (n * nv)) if n > 0 and nv > 0 else 0.0)
                    assert got_np[r] == pytest.approx(max(sims), abs=1e-12)

    def test_empty_question_side(self):
        offsets = np.array([0, 2], dtype=np.int64)
        flat = np.ones((2, 3))
        assert segmented_max_cosine(np.zeros((0, 3)), flat, offsets).tolist() == [0.0]


class TestEnvFlag:
    def test_flag_disables_numba(self, monkeypatch):
        monkeypatch.setenv("AMRLINK_NO_NUMBA", "1")
        assert not numba_enabled()

    def test_default_uses_numba_when_available(self, monkeypatch):
        monkeypatch.delenv("AMRLINK_NO_NUMBA", raising=False)
        assert numba_enabled() == kernels.HAS_NUMBA

    def test_dispatch_consistent_under_flag(self, monkeypatch):
        rng = np.random.default_rng(1)
        a, b = rng.normal(size=(3, 4)), rng.normal(size=(2, 4))
        monkeypatch.setenv("AMRLINK_NO_NUMBA", "1")
        forced = max_cosine(a, b)
        monkeypatch.delenv("AMRLINK_NO_NUMBA", raising=False)
        assert max_cosine(a, b) == pytest.approx(forced, abs=1e-12)
