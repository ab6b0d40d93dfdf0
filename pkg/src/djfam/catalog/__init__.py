from .models import Dyad, MusicInfo, Playlist, Song, lyrics_excerpt
from .storage import RecordLog, atomic_write_bytes
from .store import CatalogStore, DEFAULT_PLAYLIST_CAP, song_identity
from .wav import decode_wav, load_audio, resample_linear

__all__ = [
    "CatalogStore",
    "DEFAULT_PLAYLIST_CAP",
    "Dyad",
    "MusicInfo",
    "Playlist",
    "RecordLog",
    "Song",
    "atomic_write_bytes",
    "decode_wav",
    "load_audio",
    "lyrics_excerpt",
    "resample_linear",
    "song_identity",
]
