// End-to-end against the real gateway: the Python service is started as
// a child process on a scratch corpus and both clients run the sharing
// journey over actual HTTP, using the long-poll event fallback.

import { execFileSync, spawn, type ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { App } from "../src/app.js";
import { EventChannel } from "../src/events.js";

const PYTHON = process.env.DJFAM_PYTHON ?? "python3";
const PORT = 18230 + Math.floor(Math.random() * 1000);
const BASE = `http://127.0.0.1:${PORT}`;

let workdir: string;
let server: ChildProcess | null = null;

function wav(path: string, freq: number, seconds = 0.4, rate = 22050): void {
  const n = Math.floor(seconds * rate);
  const data = Buffer.alloc(44 + n * 2);
  data.write("RIFF", 0);
  data.writeUInt32LE(36 + n * 2, 4);
  data.write("WAVEfmt ", 8);
  data.writeUInt32LE(16, 16);
  data.writeUInt16LE(1, 20); // PCM
  data.writeUInt16LE(1, 22); // mono
  data.writeUInt32LE(rate, 24);
  data.writeUInt32LE(rate * 2, 28);
  data.writeUInt16LE(2, 32);
  data.writeUInt16LE(16, 34);
  data.write("data", 36);
  data.writeUInt32LE(n * 2, 40);
  for (let i = 0; i < n; i++) {
    const noise = Math.sin(i * 12.9898 + freq) * 43758.5453;
    const dither = (noise - Math.floor(noise) - 0.5) * 0.1;
    const sample = 0.4 * Math.sin((2 * Math.PI * freq * i) / rate) + dither;
    data.writeInt16LE(Math.round(sample * 32767) | 0, 44 + i * 2);
  }
  writeFileSync(path, data);
}

function cli(...args: string[]): string {
  return execFileSync(
    PYTHON,
    ["-m", "djfam.cli", "--config", join(workdir, "config.toml"), ...args],
    { encoding: "utf-8" },
  );
}

beforeAll(async () => {
  workdir = mkdtempSync(join(tmpdir(), "djfam-web-"));
  writeFileSync(
    join(workdir, "config.toml"),
    `data_dir = "${join(workdir, "data")}"\ningest_workers = 1\n`,
  );
  const entries = [];
  for (let i = 0; i < 8; i++) {
    const path = join(workdir, `t${i}.wav`);
    wav(path, 220 + 170 * i);
    entries.push({
      title: `Track ${i}`,
      artist: `Artist ${i % 2}`,
      release_year: 1990 + i,
      genre: "pop",
      lyrics: "one\ntwo\nthree\nfour\nfive",
      popularity_rank: i + 1,
      audio_path: path,
    });
  }
  writeFileSync(join(workdir, "manifest.json"), JSON.stringify(entries));
  cli("ingest", join(workdir, "manifest.json"));
  const songs = JSON.parse(cli("list-songs")) as {
    song_id: string;
    title: string;
  }[];
  const byTitle = new Map(songs.map((s) => [s.title, s.song_id]));
  const parentIds = [0, 1, 2, 3].map((i) => byTitle.get(`Track ${i}`)!);
  const childIds = [4, 5, 6, 7].map((i) => byTitle.get(`Track ${i}`)!);
  cli("provision-dyad", "--dyad-id", "fam1", "--parent", "p1", "--child", "c1",
      "--code", "WEB1");
  writeFileSync(join(workdir, "pl_p.json"), JSON.stringify(parentIds));
  writeFileSync(join(workdir, "pl_c.json"), JSON.stringify(childIds));
  cli("set-playlist", "--user", "p1", "--from-file", join(workdir, "pl_p.json"));
  cli("set-playlist", "--user", "c1", "--from-file", join(workdir, "pl_c.json"));

  server = spawn(
    PYTHON,
    ["-m", "djfam.cli", "--config", join(workdir, "config.toml"),
     "serve", "--port", String(PORT)],
    { stdio: "ignore" },
  );
  const deadline = Date.now() + 30_000;
  for (;;) {
    try {
      const probe = await fetch(`${BASE}/v1/login`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ dyad_code: "WEB1", role: "parent" }),
      });
      if (probe.ok) break;
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) throw new Error("gateway never came up");
    await new Promise((resolve) => setTimeout(resolve, 300));
  }
}, 60_000);

afterAll(() => {
  if (server) server.kill();
  rmSync(workdir, { recursive: true, force: true });
});

describe("against the real gateway", () => {
  it(
    "runs the share journey over HTTP with long-poll events",
    async () => {
      const childApi = new ApiClient(BASE);
      const parentApi = new ApiClient(BASE);
      const childSession = await childApi.login("WEB1", "child");
      const parentSession = await parentApi.login("WEB1", "parent");

      const childRoot = document.createElement("div");
      const parentRoot = document.createElement("div");
      document.body.append(childRoot, parentRoot);
      const childApp = new App(childRoot, childApi, childSession.user_id, "child");
      const parentApp = new App(parentRoot, parentApi, parentSession.user_id, "parent");
      const parentChannel = new EventChannel(
        parentApp.handleFrame,
        (cursor, waitS) => parentApi.pollEvents(cursor, waitS),
        null, // long-poll fallback path
        () => "unused",
      );
      await childApp.boot(null);
      await parentApp.boot(null);

      // child: select own track, recommendations render (<=5, partner pool)
      const ownSongs = (await childApi.playlistSelf()).songs;
      await childApp.onTrackSelected(ownSongs[0]!.song_id);
      expect(childApp.playback.recommendations.length).toBeGreaterThan(0);
      expect(childApp.playback.recommendations.length).toBeLessThanOrEqual(5);
      const strip = childRoot.querySelectorAll('[data-testid="rec-strip"] li');
      expect(strip.length).toBe(childApp.playback.recommendations.length);

      // tap rank 1, share it
      const top = childApp.playback.recommendations[0]!;
      await childApp.onRecommendationTapped(top);
      expect(childApp.playback.shareEnabled()).toBe(true);
      await childApp.onShareTapped();
      expect(childRoot.querySelector('[data-testid="screen-chat"]')).toBeTruthy();

      // partner: one long poll brings the message + notification frames
      const result = await parentApi.pollEvents(0, 5);
      for (const frame of result.events) {
        parentChannel.deliver(frame as never);
      }
      const banner = parentRoot.querySelector('[data-testid="banner"]');
      expect(banner?.textContent).toContain("New shared song");
      parentApp.navigate("chat");
      const bubble = parentRoot.querySelector(".kind-song_share");
      expect(bubble?.textContent).toContain("I received a recommendation for this song!");

      // learn more against the live music-info endpoint
      await parentApp.onLearnMore(top.candidate_song_id, top.source_song_id);
      const hits = parentRoot.querySelectorAll('[data-testid="other-hits"] li');
      expect(hits.length).toBeLessThanOrEqual(3);
      expect(
        parentRoot.querySelector('[data-testid="source-song"]'),
      ).toBeTruthy();
      expect(parentRoot.querySelector('[data-testid="read-more"]')).toBeTruthy();

      // audio is range-servable where the client points its player
      const audio = await fetch(childApi.audioUrl(top.candidate_song_id), {
        headers: {
          Authorization: `Bearer ${childApi.token}`,
          Range: "bytes=0-43",
        },
      });
      expect(audio.status).toBe(206);
      expect((await audio.arrayBuffer()).byteLength).toBe(44);
    },
    120_000,
  );
});
