import math

import numpy as np
import pytest

from djfam.errors import InvalidInputError
from djfam.recommend import (
    Recommendation,
    cosine_similarity,
    rank_candidates,
    standardize,
)

from oracles import cosine_oracle, topk_oracle


class TestStandardize:
    def test_single_vector_goes_to_zero(self):
        standardized, stats = standardize([np.arange(72.0)])
        np.testing.assert_array_equal(standardized, np.zeros((1, 72)))
        assert stats.degenerate.all()

    def test_two_vectors_standardize_to_plus_minus_one(self):
        a = np.full(72, 1.0)
        b = np.full(72, 3.0)
        standardized, stats = standardize([a, b])
        np.testing.assert_allclose(standardized[0], -1.0)
        np.testing.assert_allclose(standardized[1], 1.0)
        np.testing.assert_allclose(stats.mean, 2.0)
        np.testing.assert_allclose(stats.std, 1.0)

    def test_constant_dimension_is_zeroed(self):
        rng = np.random.default_rng(0)
        vectors = rng.normal(size=(10, 72))
        vectors[:, 31] = 7.7
        standardized, stats = standardize(vectors)
        np.testing.assert_array_equal(standardized[:, 31], np.zeros(10))
        assert stats.degenerate[31]
        assert not stats.degenerate[0]

    def test_mixed_fingerprints_rejected(self):
        with pytest.raises(InvalidInputError, match="fingerprint"):
            standardize([np.zeros(72), np.ones(72)], fingerprints=["aa", "bb"])

    def test_zscore_properties(self):
        rng = np.random.default_rng(1)
        vectors = rng.normal(2.0, 5.0, size=(50, 72))
        standardized, _ = standardize(vectors)
        np.testing.assert_allclose(standardized.mean(axis=0), 0.0, atol=1e-12)
        np.testing.assert_allclose(standardized.std(axis=0), 1.0, atol=1e-12)


class TestCosineSimilarity:
    def test_self_similarity_is_one(self):
        v = np.array([0.3, -2.0, 5.0, 1.0])
        assert cosine_similarity(v, v) == pytest.approx(1.0, abs=1e-12)
        assert cosine_similarity(v, v) <= 1.0

    def test_orthogonal_axes(self):
        e1, e2 = np.zeros(72), np.zeros(72)
        e1[0] = 1.0
        e2[1] = 1.0
        assert cosine_similarity(e1, e2) == 0.0

    def test_hand_computed_value(self):
        a, b = np.zeros(72), np.zeros(72)
        a[:3] = [1.0, 2.0, 3.0]
        b[:3] = [4.0, 5.0, 6.0]
        expected = 32.0 / math.sqrt(14.0 * 77.0)  # = 0.9746318...
        assert cosine_similarity(a, b) == pytest.approx(expected, rel=1e-12)
        assert cosine_similarity(a, b) == pytest.approx(cosine_oracle(a, b), rel=1e-12)

    def test_zero_norm_convention(self):
        assert cosine_similarity(np.zeros(4), np.ones(4)) == 0.0

    def test_bounded(self):
        rng = np.random.default_rng(2)
        for _ in range(200):
            a, b = rng.normal(size=(2, 16))
            assert -1.0 <= cosine_similarity(a, b) <= 1.0


def _random_pool(rng, n, dim=72):
    ids = [f"s{idx:04d}" for idx in range(n)]
    return {sid: rng.normal(size=dim) for sid in ids}


class TestRankCandidates:
    def test_pool_smaller_than_k(self):
        rng = np.random.default_rng(3)
        pool = _random_pool(rng, 3)
        corpus = list(pool.values()) + [rng.normal(size=72)]
        recs = rank_candidates("src", corpus[-1], pool, corpus, k=5)
        assert len(recs) == 3
        assert [r.rank for r in recs] == [1, 2, 3]

    def test_duplicate_vector_ranks_first_with_similarity_one(self):
        rng = np.random.default_rng(4)
        pool = _random_pool(rng, 20)
        source_vec = pool["s0007"].copy()
        pool["dup"] = source_vec.copy()
        corpus = list(pool.values()) + [source_vec]
        recs = rank_candidates("src", source_vec, pool, corpus, k=5)
        assert recs[0].candidate_song_id in ("dup", "s0007")
        assert recs[0].similarity == pytest.approx(1.0, abs=1e-9)

    def test_source_and_exclusions_never_returned(self):
        rng = np.random.default_rng(5)
        pool = _random_pool(rng, 30)
        corpus = list(pool.values())
        recs = rank_candidates(
            "s0001", pool["s0001"], pool, corpus, k=30, exclusions={"s0002", "s0003"}
        )
        returned = {r.candidate_song_id for r in recs}
        assert "s0001" not in returned
        assert not returned & {"s0002", "s0003"}
        assert len(recs) == 27

    def test_matches_brute_force_oracle(self):
        rng = np.random.default_rng(6)
        for trial in range(50):
            n = int(rng.integers(1, 40))
            pool = _random_pool(rng, n, dim=8)
            source_vec = rng.normal(size=8)
            corpus = list(pool.values()) + [source_vec]
            k = int(rng.integers(0, 8))
            recs = rank_candidates("src", source_vec, pool, corpus, k=k)

            from djfam.recommend.similarity import corpus_stats as stats_fn

            stats = stats_fn(np.array(corpus))
            std_pool = {cid: stats.apply(v) for cid, v in pool.items()}
            expected = topk_oracle(stats.apply(source_vec), std_pool, k)
            assert [r.candidate_song_id for r in recs] == [cid for cid, _ in expected]
            for rec, (_, sim) in zip(recs, expected):
                assert rec.similarity == pytest.approx(sim, abs=1e-12)

    def test_tie_break_by_ascending_song_id(self):
        v = np.ones(72)
        pool = {"zzz": v.copy(), "aaa": v.copy(), "mmm": v.copy()}
        corpus = [v, 2 * v, np.arange(72.0)]
        recs = rank_candidates("src", v, pool, corpus, k=3, raw_cosine=True)
        assert [r.candidate_song_id for r in recs] == ["aaa", "mmm", "zzz"]

    def test_similarity_monotone_in_rank(self):
        rng = np.random.default_rng(7)
        pool = _random_pool(rng, 50)
        corpus = list(pool.values())
        recs = rank_candidates("src", rng.normal(size=72), pool, corpus, k=50)
        sims = [r.similarity for r in recs]
        assert all(a >= b for a, b in zip(sims, sims[1:]))
        assert [r.rank for r in recs] == list(range(1, len(recs) + 1))

    def test_k_zero_and_empty_pool(self):
        rng = np.random.default_rng(8)
        pool = _random_pool(rng, 5)
        corpus = list(pool.values())
        assert rank_candidates("src", rng.normal(size=72), pool, corpus, k=0) == []
        assert rank_candidates("src", rng.normal(size=72), {}, corpus, k=5) == []

    def test_negative_k_rejected(self):
        with pytest.raises(InvalidInputError):
            rank_candidates("src", np.ones(72), {}, [np.ones(72)], k=-1)

    def test_deterministic(self):
        rng = np.random.default_rng(9)
        pool = _random_pool(rng, 25)
        corpus = list(pool.values())
        source_vec = rng.normal(size=72)
        first = rank_candidates("src", source_vec, pool, corpus, k=5)
        second = rank_candidates("src", source_vec, pool, corpus, k=5)
        assert first == second


def test_recommendation_as_dict_roundtrip():
    rec = Recommendation("a", "b", 0.5, 1)
    assert rec.as_dict() == {
        "source_song_id": "a",
        "candidate_song_id": "b",
        "similarity": 0.5,
        "rank": 1,
    }
