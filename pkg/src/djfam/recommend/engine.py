"""Cross-generation top-k ranking.

Candidates come exclusively from the *other* dyad member's playlist.
The source song and both playlists are standardized together, candidates
are ranked by cosine similarity (descending, ties broken by ascending
song id), and the top k are returned with 1-based contiguous ranks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import InvalidInputError
from .similarity import corpus_stats, cosine_similarity

DEFAULT_K = 5


@dataclass(frozen=True)
class Recommendation:
    source_song_id: str
    candidate_song_id: str
    similarity: float
    rank: int

    def as_dict(self) -> dict:
        return {
            "source_song_id": self.source_song_id,
            "candidate_song_id": self.candidate_song_id,
            "similarity": self.similarity,
            "rank": self.rank,
        }


def rank_candidates(
    source_song_id: str,
    source_vector,
    candidates: dict,
    corpus_vectors,
    k: int = DEFAULT_K,
    exclusions: frozenset | set = frozenset(),
    raw_cosine: bool = False,
) -> list[Recommendation]:
    """Rank candidate vectors against a source vector.

    ``candidates`` maps song_id -> raw feature vector; ``corpus_vectors``
    is the standardization scope (the union of both playlists' vectors).
    The source song and exclusions never appear in the output.
    """
    if k < 0:
        raise InvalidInputError("k must be >= 0")
    pool = {
        song_id: vec
        for song_id, vec in candidates.items()
        if song_id != source_song_id and song_id not in exclusions
    }
    if not pool or k == 0:
        return []

    if raw_cosine:
        standardized_source = np.asarray(source_vector, dtype=np.float64)
        standardized_pool = {cid: np.asarray(v, dtype=np.float64) for cid, v in pool.items()}
    else:
        corpus = np.atleast_2d(np.asarray(corpus_vectors, dtype=np.float64))
        if corpus.size == 0:
            raise InvalidInputError("empty standardization corpus")
        stats = corpus_stats(corpus)
        standardized_source = stats.apply(np.asarray(source_vector, dtype=np.float64))
        standardized_pool = {cid: stats.apply(v) for cid, v in pool.items()}

    scored = [
        (cid, cosine_similarity(standardized_source, vec))
        for cid, vec in standardized_pool.items()
    ]
    scored.sort(key=lambda item: (-item[1], item[0]))

    return [
        Recommendation(
            source_song_id=source_song_id,
            candidate_song_id=cid,
            similarity=sim,
            rank=position + 1,
        )
        for position, (cid, sim) in enumerate(scored[:k])
    ]
