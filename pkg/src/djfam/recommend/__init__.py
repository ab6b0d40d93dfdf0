from .engine import DEFAULT_K, Recommendation, rank_candidates
from .registry import IssuedRecommendation, RecommendationRegistry, VALIDITY_WINDOW_S
from .similarity import CorpusStats, corpus_stats, cosine_similarity, standardize

__all__ = [
    "CorpusStats",
    "DEFAULT_K",
    "IssuedRecommendation",
    "Recommendation",
    "RecommendationRegistry",
    "VALIDITY_WINDOW_S",
    "corpus_stats",
    "cosine_similarity",
    "rank_candidates",
    "standardize",
]
