// Chat cache keyed by server sequence number.
//
// Messages arrive from three directions (optimistic send acks, push
// frames, catch-up fetches) in arbitrary order and with duplicates; the
// render order is always the server seq order. The unread badge counts
// messages the user has not yet seen on the chat screen.

import type { Message } from "./types.js";

export class ChatStore {
  private messages = new Map<number, Message>();
  private lastSeenSeq = 0;

  constructor(private selfUserId: string) {}

  ingest(message: Message): void {
    this.messages.set(message.seq, message);
  }

  ingestAll(messages: Message[]): void {
    for (const message of messages) this.ingest(message);
  }

  /** Messages in server order, independent of arrival order. */
  ordered(): Message[] {
    return [...this.messages.values()].sort((a, b) => a.seq - b.seq);
  }

  lastSeq(): number {
    let max = 0;
    for (const seq of this.messages.keys()) if (seq > max) max = seq;
    return max;
  }

  /** Highest seq with no gap below it; fetches resume from here. */
  contiguousSeq(): number {
    let seq = 0;
    while (this.messages.has(seq + 1)) seq += 1;
    return seq;
  }

  hasGaps(): boolean {
    return this.contiguousSeq() !== this.lastSeq();
  }

  markAllSeen(): void {
    this.lastSeenSeq = Math.max(this.lastSeenSeq, this.lastSeq());
  }

  /** Unseen messages from the partner. */
  unreadCount(): number {
    let count = 0;
    for (const message of this.messages.values()) {
      if (message.seq > this.lastSeenSeq && message.sender !== this.selfUserId) count += 1;
    }
    return count;
  }
}
