// Event channel: websocket push with long-poll fallback.
//
// Frames flow into one handler; the channel remembers its cursor so a
// reconnect (or a switch to polling) never drops or re-delivers events.

import type { EventFrame } from "./types.js";

export type FrameHandler = (frame: EventFrame) => void;

export interface WebSocketLike {
  onmessage: ((event: { data: string }) => void) | null;
  onclose: (() => void) | null;
  onerror: (() => void) | null;
  close(): void;
}

export type WebSocketFactory = (url: string) => WebSocketLike;
export type PollFn = (cursor: number, waitS: number) => Promise<{ cursor: number; events: unknown[] }>;

const RECONNECT_DELAY_MS = 2000;
const POLL_WAIT_S = 25;

export class EventChannel {
  cursor = 0;
  private socket: WebSocketLike | null = null;
  private stopped = false;
  private pollTimer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private handler: FrameHandler,
    private poll: PollFn,
    private socketFactory: WebSocketFactory | null,
    private wsUrl: (cursor: number) => string,
  ) {}

  start(): void {
    this.stopped = false;
    if (this.socketFactory) {
      this.connectSocket();
    } else {
      void this.pollLoop();
    }
  }

  stop(): void {
    this.stopped = true;
    if (this.socket) this.socket.close();
    if (this.pollTimer) clearTimeout(this.pollTimer);
  }

  deliver(frame: EventFrame): void {
    this.handler(frame);
  }

  private connectSocket(): void {
    if (this.stopped || !this.socketFactory) return;
    try {
      this.socket = this.socketFactory(this.wsUrl(this.cursor));
    } catch {
      void this.pollLoop();
      return;
    }
    this.socket.onmessage = (event) => {
      this.cursor += 1;
      this.deliver(JSON.parse(event.data) as EventFrame);
    };
    const retry = () => {
      this.socket = null;
      if (!this.stopped) {
        this.pollTimer = setTimeout(() => this.connectSocket(), RECONNECT_DELAY_MS);
      }
    };
    this.socket.onclose = retry;
    this.socket.onerror = () => this.socket?.close();
  }

  private async pollLoop(): Promise<void> {
    while (!this.stopped) {
      try {
        const result = await this.poll(this.cursor, POLL_WAIT_S);
        this.cursor = result.cursor;
        for (const frame of result.events) this.deliver(frame as EventFrame);
      } catch {
        await new Promise((resolve) => setTimeout(resolve, RECONNECT_DELAY_MS));
      }
    }
  }
}
