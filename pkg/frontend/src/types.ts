// Wire types mirroring the gateway's JSON schemas.

export interface LoginResponse {
  token: string;
  user_id: string;
  dyad_id: string;
  role: string;
  expires_at_ms: number;
}

export interface SongSummary {
  song_id: string;
  title: string;
  artist: string;
  release_year: number;
  genre: string;
  duration_s: number;
  popularity_rank: number;
  album_art_ref: string;
}

export interface Recommendation {
  source_song_id: string;
  candidate_song_id: string;
  similarity: number;
  rank: number;
}

export interface PlaybackState {
  user_id: string;
  now_playing: string;
  started_at_ms: number;
  recommendations: Recommendation[];
}

export interface ShareInfo {
  recommended_song_id: string;
  source_song_id: string;
  similarity: number;
}

export interface Message {
  seq: number;
  sender: string;
  server_time_ms: number;
  client_msg_id: string;
  kind: "text" | "song_share";
  body: string | null;
  share: ShareInfo | null;
}

export interface MusicInfo {
  song: SongSummary;
  lyrics_excerpt: string;
  lyrics_truncated: boolean;
  source_song: SongSummary | null;
  other_hits: SongSummary[];
  covers: SongSummary[];
  original: SongSummary | null;
}

export type EventFrame =
  | { type: "message"; payload: Message & { thread_id: string } }
  | {
      type: "notification";
      payload: {
        kind: "text" | "song_share";
        thread_id: string;
        seq: number;
        from_user: string;
        song_id?: string;
        song_title?: string;
      };
    };

export type Screen = "playlist" | "playback" | "chat" | "music_info";
