// Screen shell: playlist, playback (with the recommendation strip),
// chat, and music info, plus the notification banner and unread badge.
// Navigation uses a persistent bottom bar; everything renders into one
// root element so the whole app is drivable from tests.

import { ApiClient, ApiError } from "./api.js";
import { ChatStore } from "./chatStore.js";
import { EventChannel } from "./events.js";
import { PlaybackStore } from "./playbackStore.js";
import type {
  EventFrame,
  Message,
  MusicInfo,
  Recommendation,
  Screen,
  SongSummary,
} from "./types.js";

const SHARE_CAPTION = "I received a recommendation for this song!";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export class App {
  screen: Screen = "playlist";
  chat: ChatStore;
  playback = new PlaybackStore();
  channel: EventChannel | null = null;
  ownSongs: SongSummary[] = [];
  partnerRole: string;
  musicInfoTarget: { songId: string; sourceSongId?: string } | null = null;
  lastError: string | null = null;
  retryAction: (() => Promise<void>) | null = null;
  private pendingShareId: string | null = null;
  private msgCounter = 0;

  constructor(
    private root: HTMLElement,
    public api: ApiClient,
    public userId: string,
    public role: string,
  ) {
    this.chat = new ChatStore(userId);
    this.partnerRole = role === "parent" ? "child" : "parent";
  }

  async boot(channel: EventChannel | null): Promise<void> {
    this.channel = channel;
    this.ownSongs = (await this.api.playlistSelf()).songs;
    this.playback.indexSongs(this.ownSongs);
    try {
      this.playback.indexSongs((await this.api.playlistPartner()).songs);
    } catch {
      // partner playlist may be empty or unavailable; titles fall back to ids
    }
    const backlog = await this.api.fetchMessages(0);
    this.chat.ingestAll(backlog.messages);
    this.chat.markAllSeen();
    if (channel) channel.start();
    this.render();
  }

  newClientMsgId(): string {
    this.msgCounter += 1;
    return `${this.userId}-${Date.now()}-${this.msgCounter}`;
  }

  // -- event channel -------------------------------------------------------

  handleFrame = (frame: EventFrame): void => {
    if (frame.type === "message") {
      this.chat.ingest(frame.payload);
      if (this.screen === "chat") this.chat.markAllSeen();
    } else if (frame.type === "notification") {
      this.showBanner(frame.payload);
    }
    this.render();
  };

  showBanner(payload: { kind: string; from_user: string; song_title?: string }): void {
    const banner = this.root.querySelector(".banner");
    if (banner) banner.remove();
    const node = el("div", "banner");
    node.setAttribute("data-testid", "banner");
    node.textContent =
      payload.kind === "song_share"
        ? `New shared song from your ${this.partnerRole}: ${payload.song_title ?? ""}`
        : `New message from your ${this.partnerRole}`;
    const open = el("button", "banner-open", "Open chat");
    open.onclick = () => {
      node.remove();
      this.navigate("chat");
    };
    node.appendChild(open);
    this.root.prepend(node);
  }

  // -- actions ---------------------------------------------------------------

  navigate(screen: Screen): void {
    this.screen = screen;
    if (screen === "chat") this.chat.markAllSeen();
    this.lastError = null;
    this.render();
  }

  async onTrackSelected(songId: string): Promise<void> {
    const attempt = async () => {
      const state = await this.api.playback(songId);
      this.playback.trackSelected(songId, state);
      this.screen = "playback";
      this.lastError = null;
      this.retryAction = null;
      this.render();
      this.startAudio(songId);
    };
    try {
      await attempt();
    } catch (error) {
      if (error instanceof ApiError) {
        this.lastError = error.message;
      } else {
        // network failure: keep playback state, offer a retry
        this.lastError = "Network problem; try again.";
        this.retryAction = attempt;
      }
      this.render();
    }
  }

  async onRecommendationTapped(rec: Recommendation): Promise<void> {
    const attempt = async () => {
      const state = await this.api.playback(rec.candidate_song_id);
      this.playback.recommendationSelected(rec, state);
      this.screen = "playback";
      this.lastError = null;
      this.retryAction = null;
      this.render();
      this.startAudio(rec.candidate_song_id);
    };
    try {
      await attempt();
    } catch (error) {
      if (error instanceof ApiError) {
        this.lastError = error.message;
      } else {
        this.lastError = "Network problem; try again.";
        this.retryAction = attempt;
      }
      this.render();
    }
  }

  async onShareTapped(): Promise<void> {
    if (!this.playback.shareEnabled()) return;
    const payload = this.playback.sharePayload();
    // reuse the same client_msg_id until the server acknowledges, so a
    // double tap can never create two messages
    if (!this.pendingShareId) this.pendingShareId = this.newClientMsgId();
    try {
      const message = await this.api.shareRecommendation(
        this.pendingShareId,
        payload.source_song_id,
        payload.recommended_song_id,
      );
      this.pendingShareId = null;
      this.chat.ingest(message);
      this.navigate("chat");
    } catch (error) {
      if (error instanceof ApiError) {
        // stale/unknown recommendation: stay on playback with the reason
        this.lastError = error.message;
        this.pendingShareId = null;
        this.render();
      } else {
        this.lastError = "Network problem; share not sent yet.";
        this.render();
      }
    }
  }

  async onSendText(body: string): Promise<void> {
    if (!body.trim()) return;
    const message = await this.api.postText(this.newClientMsgId(), body);
    this.chat.ingest(message);
    this.render();
  }

  async onLearnMore(songId: string, sourceSongId?: string): Promise<void> {
    this.musicInfoTarget = { songId, sourceSongId };
    this.screen = "music_info";
    this.render();
    const info = await this.api.musicInfo(songId, sourceSongId);
    this.renderMusicInfo(info);
  }

  private startAudio(songId: string): void {
    const audio = this.root.querySelector("audio");
    if (audio) {
      audio.src = this.api.audioUrl(songId);
      const playing = audio.play();
      if (playing && typeof playing.catch === "function") playing.catch(() => {});
    }
  }

  // -- rendering ---------------------------------------------------------------

  render(): void {
    const banner = this.root.querySelector(".banner");
    this.root.textContent = "";
    if (banner) this.root.appendChild(banner);

    const main = el("main", `screen screen-${this.screen}`);
    main.setAttribute("data-testid", `screen-${this.screen}`);
    if (this.lastError) {
      const error = el("p", "error", this.lastError);
      error.setAttribute("data-testid", "error");
      main.appendChild(error);
      if (this.retryAction) {
        const retry = el("button", "retry", "Retry");
        retry.setAttribute("data-testid", "retry");
        retry.onclick = () => void this.retryAction?.();
        main.appendChild(retry);
      }
    }
    if (this.screen === "playlist") this.renderPlaylist(main);
    if (this.screen === "playback") this.renderPlayback(main);
    if (this.screen === "chat") this.renderChat(main);
    if (this.screen === "music_info") this.renderMusicInfoShell(main);
    this.root.appendChild(main);
    this.root.appendChild(this.renderNav());
  }

  private renderNav(): HTMLElement {
    const nav = el("nav", "bottom-nav");
    for (const target of ["playlist", "chat"] as Screen[]) {
      const button = el("button", "nav-btn", target === "playlist" ? "Playlist" : "Chat");
      button.setAttribute("data-testid", `nav-${target}`);
      if (target === "chat") {
        const unread = this.chat.unreadCount();
        if (unread > 0) {
          const badge = el("span", "badge", String(unread));
          badge.setAttribute("data-testid", "unread-badge");
          button.appendChild(badge);
        }
      }
      button.onclick = () => this.navigate(target);
      nav.appendChild(button);
    }
    return nav;
  }

  private renderPlaylist(main: HTMLElement): void {
    main.appendChild(el("h1", "title", "My songs"));
    const list = el("ul", "playlist");
    for (const song of this.ownSongs) {
      const item = el("li", "playlist-item");
      const button = el("button", "song", `${song.title} — ${song.artist}`);
      button.setAttribute("data-testid", `song-${song.song_id}`);
      button.onclick = () => void this.onTrackSelected(song.song_id);
      item.appendChild(button);
      list.appendChild(item);
    }
    main.appendChild(list);
  }

  private renderPlayback(main: HTMLElement): void {
    const songId = this.playback.currentSongId;
    if (!songId) {
      main.appendChild(el("p", "hint", "Pick a song from your playlist."));
      return;
    }
    const song = this.playback.songsById.get(songId);
    main.appendChild(el("div", "album-art", "♪"));
    main.appendChild(el("h1", "track-title", song?.title ?? songId));
    main.appendChild(el("p", "track-artist", song?.artist ?? ""));
    main.appendChild(document.createElement("audio"));

    const share = el("button", "share", "Share");
    share.setAttribute("data-testid", "share");
    if (!this.playback.shareEnabled()) share.setAttribute("disabled", "disabled");
    share.onclick = () => void this.onShareTapped();
    main.appendChild(share);

    if (this.playback.recommendations.length > 0) {
      main.appendChild(
        el(
          "p",
          "rec-caption",
          `How about these songs that your ${this.partnerRole} also loves?`,
        ),
      );
      const strip = el("ul", "rec-strip");
      strip.setAttribute("data-testid", "rec-strip");
      for (const rec of this.playback.recommendations) {
        const item = el("li", "rec-item");
        const button = el(
          "button",
          "rec",
          this.playback.titleOf(rec.candidate_song_id),
        );
        button.setAttribute("data-testid", `rec-${rec.rank}`);
        button.onclick = () => void this.onRecommendationTapped(rec);
        item.appendChild(button);
        strip.appendChild(item);
      }
      main.appendChild(strip);
    }
  }

  private renderChat(main: HTMLElement): void {
    main.appendChild(el("h1", "title", "Chat"));
    const list = el("ul", "chat-list");
    list.setAttribute("data-testid", "chat-list");
    for (const message of this.chat.ordered()) {
      list.appendChild(this.renderBubble(message));
    }
    main.appendChild(list);

    const composer = el("div", "composer");
    const input = el("input", "composer-input");
    input.setAttribute("data-testid", "composer-input");
    const send = el("button", "composer-send", "Send");
    send.setAttribute("data-testid", "composer-send");
    send.onclick = () => {
      const body = input.value;
      input.value = "";
      void this.onSendText(body);
    };
    composer.appendChild(input);
    composer.appendChild(send);
    main.appendChild(composer);
  }

  private renderBubble(message: Message): HTMLElement {
    const mine = message.sender === this.userId;
    const item = el("li", `bubble ${mine ? "mine" : "theirs"} kind-${message.kind}`);
    item.setAttribute("data-seq", String(message.seq));
    if (message.kind === "text") {
      item.appendChild(el("p", "body", message.body ?? ""));
    } else if (message.share) {
      item.setAttribute("data-testid", `share-bubble-${message.seq}`);
      item.appendChild(el("p", "share-caption", SHARE_CAPTION));
      item.appendChild(
        el("p", "share-title", this.playback.titleOf(message.share.recommended_song_id)),
      );
      const learnMore = el("button", "learn-more", "Learn more");
      learnMore.setAttribute("data-testid", `learn-more-${message.seq}`);
      const share = message.share;
      learnMore.onclick = () =>
        void this.onLearnMore(share.recommended_song_id, share.source_song_id);
      item.appendChild(learnMore);
    }
    return item;
  }

  private renderMusicInfoShell(main: HTMLElement): void {
    main.appendChild(el("h1", "title", "Music information"));
    const body = el("div", "music-info");
    body.setAttribute("data-testid", "music-info");
    body.appendChild(el("p", "loading", "Loading..."));
    main.appendChild(body);
    const back = el("button", "back", "Back to chat");
    back.setAttribute("data-testid", "back-to-chat");
    back.onclick = () => this.navigate("chat");
    main.appendChild(back);
  }

  renderMusicInfo(info: MusicInfo): void {
    const body = this.root.querySelector('[data-testid="music-info"]');
    if (!body || this.screen !== "music_info") return;
    body.textContent = "";
    body.appendChild(el("h2", "info-title", info.song.title));
    body.appendChild(
      el(
        "p",
        "info-meta",
        `${info.song.artist} · ${info.song.genre} · ${info.song.release_year}`,
      ),
    );

    const lyrics = el("p", "lyrics", info.lyrics_excerpt);
    lyrics.setAttribute("data-testid", "lyrics-excerpt");
    body.appendChild(lyrics);
    if (info.lyrics_truncated) {
      const readMore = el("button", "read-more", "Read More");
      readMore.setAttribute("data-testid", "read-more");
      body.appendChild(readMore);
    }

    if (info.source_song) {
      const source = el(
        "p",
        "source-song",
        `Recommended while listening to: ${info.source_song.title}`,
      );
      source.setAttribute("data-testid", "source-song");
      body.appendChild(source);
    }

    if (info.other_hits.length > 0) {
      body.appendChild(el("h3", "section", "Other hits by this artist"));
      const hits = el("ul", "other-hits");
      hits.setAttribute("data-testid", "other-hits");
      for (const hit of info.other_hits) {
        hits.appendChild(el("li", "hit", hit.title));
      }
      body.appendChild(hits);
    }

    if (info.original) {
      const original = el("p", "original", `Original: ${info.original.title}`);
      original.setAttribute("data-testid", "original");
      body.appendChild(original);
    } else if (info.covers.length > 0) {
      body.appendChild(el("h3", "section", "Cover versions"));
      const covers = el("ul", "covers");
      covers.setAttribute("data-testid", "covers");
      for (const cover of info.covers) {
        covers.appendChild(el("li", "cover", cover.title));
      }
      body.appendChild(covers);
    }
  }
}
