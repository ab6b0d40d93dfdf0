"""djfam: audio featurization, cross-generation music recommendation,
and asynchronous song-share messaging for parent-child dyads."""

__version__ = "0.1.0"
