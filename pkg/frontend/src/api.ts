// Thin typed client for the gateway. The fetch implementation is
// injectable so tests can stand in a fake server.

import type {
  LoginResponse,
  Message,
  MusicInfo,
  PlaybackState,
  SongSummary,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }
}

export class ApiClient {
  token: string | null = null;

  constructor(
    private baseUrl: string = "",
    private fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const headers: Record<string, string> = { "Content-Type": "application/json" };
    if (this.token) headers["Authorization"] = `Bearer ${this.token}`;
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      let code = "error";
      let message = `HTTP ${response.status}`;
      try {
        const payload = await response.json();
        code = payload.code ?? code;
        message = payload.message ?? message;
      } catch {
        // non-JSON error body; keep the defaults
      }
      throw new ApiError(response.status, code, message);
    }
    return (await response.json()) as T;
  }

  async login(dyadCode: string, role: string): Promise<LoginResponse> {
    const session = await this.request<LoginResponse>("POST", "/v1/login", {
      dyad_code: dyadCode,
      role,
    });
    this.token = session.token;
    return session;
  }

  playlistSelf(): Promise<{ user_id: string; songs: SongSummary[] }> {
    return this.request("GET", "/v1/playlist/self");
  }

  playlistPartner(): Promise<{ user_id: string; songs: SongSummary[] }> {
    return this.request("GET", "/v1/playlist/partner");
  }

  playback(songId: string): Promise<PlaybackState> {
    return this.request("POST", "/v1/playback", { song_id: songId });
  }

  musicInfo(songId: string, sourceSongId?: string): Promise<MusicInfo> {
    const query = sourceSongId ? `?source=${encodeURIComponent(sourceSongId)}` : "";
    return this.request("GET", `/v1/songs/${encodeURIComponent(songId)}/info${query}`);
  }

  audioUrl(songId: string): string {
    return `${this.baseUrl}/v1/songs/${encodeURIComponent(songId)}/audio`;
  }

  postText(clientMsgId: string, body: string): Promise<Message> {
    return this.request("POST", "/v1/messages", {
      client_msg_id: clientMsgId,
      kind: "text",
      body,
    });
  }

  shareRecommendation(
    clientMsgId: string,
    sourceSongId: string,
    recommendedSongId: string,
  ): Promise<Message> {
    return this.request("POST", "/v1/messages", {
      client_msg_id: clientMsgId,
      kind: "song_share",
      recommendation_ref: {
        source_song_id: sourceSongId,
        recommended_song_id: recommendedSongId,
      },
    });
  }

  fetchMessages(sinceSeq: number): Promise<{ thread_id: string; messages: Message[] }> {
    return this.request("GET", `/v1/messages?since_seq=${sinceSeq}`);
  }

  pollEvents(cursor: number, waitS = 0): Promise<{ cursor: number; events: unknown[] }> {
    return this.request("GET", `/v1/events/poll?cursor=${cursor}&wait_s=${waitS}`);
  }
}
