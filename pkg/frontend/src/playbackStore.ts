// Playback-screen state: the current track and the recommendation strip.
//
// Two rules hold at all times: every visible recommendation comes from
// the most recent playback response (never fabricated or stale), and
// the share button is enabled only while a recommendation is displayed
// as the current track.

import type { PlaybackState, Recommendation, SongSummary } from "./types.js";

export interface SharePayload {
  source_song_id: string;
  recommended_song_id: string;
}

export class PlaybackStore {
  currentSongId: string | null = null;
  playing = false;
  /** recommendations from the latest playback response only */
  recommendations: Recommendation[] = [];
  /** set when the current track was chosen from the strip */
  activeRecommendation: Recommendation | null = null;
  songsById = new Map<string, SongSummary>();

  indexSongs(songs: SongSummary[]): void {
    for (const song of songs) this.songsById.set(song.song_id, song);
  }

  /** A track chosen from the playlist replaces the whole strip. */
  trackSelected(songId: string, response: PlaybackState): void {
    this.currentSongId = songId;
    this.playing = true;
    this.recommendations = response.recommendations;
    this.activeRecommendation = null;
  }

  /**
   * A track chosen from the strip: it becomes the current track and the
   * strip refreshes from its own playback response.
   */
  recommendationSelected(rec: Recommendation, response: PlaybackState): void {
    if (!this.recommendations.some((r) => r.candidate_song_id === rec.candidate_song_id)) {
      throw new Error("recommendation is not on the current strip");
    }
    this.currentSongId = rec.candidate_song_id;
    this.playing = true;
    this.activeRecommendation = rec;
    this.recommendations = response.recommendations;
  }

  shareEnabled(): boolean {
    return this.activeRecommendation !== null;
  }

  sharePayload(): SharePayload {
    if (!this.activeRecommendation) throw new Error("no recommendation displayed");
    return {
      source_song_id: this.activeRecommendation.source_song_id,
      recommended_song_id: this.activeRecommendation.candidate_song_id,
    };
  }

  titleOf(songId: string): string {
    return this.songsById.get(songId)?.title ?? songId;
  }
}
