"""djfam admin/research CLI.

A thin client over the same core the HTTP service uses: corpus ingestion
with a featurization worker pool, offline recommendation runs, dyad
provisioning, playlist management, weekly interaction reports, and
``serve`` to launch the gateway.

Exit codes: 0 success, 1 domain error, 2 usage/IO error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import secrets
import sys
from concurrent.futures import ProcessPoolExecutor
from datetime import date
from pathlib import Path

from .appconfig import AppConfig, load_config
from .catalog.wav import load_audio
from .errors import DJFamError, InvalidInputError
from .features import AudioClip, FeatureConfig, FeatureVector, featurize
from .reports import report_csv, weekly_report
from .service import AppState, create_app

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


def _build_state(config: AppConfig) -> AppState:
    return AppState(
        config.data_dir,
        feature_config=config.feature_config(),
        playlist_cap=config.playlist_cap,
        recommend_k=config.recommend_k,
        no_repeat_window=config.no_repeat_window,
        raw_cosine=config.raw_cosine,
        gap_threshold_s=config.gap_threshold_s,
    )


def _featurize_file(audio_path: str, cfg: FeatureConfig) -> tuple[str, list, float]:
    """Worker-pool task: (content hash, vector values, duration seconds)."""
    payload = Path(audio_path).read_bytes()
    content_hash = hashlib.sha256(payload).hexdigest()
    samples = load_audio(payload, cfg.sample_rate)
    vector = featurize(AudioClip(samples, cfg.sample_rate), cfg)
    return content_hash, vector.to_list(), samples.size / cfg.sample_rate


# -- subcommands ------------------------------------------------------------


def cmd_ingest(args, config: AppConfig) -> int:
    manifest_path = Path(args.manifest)
    try:
        entries = json.loads(manifest_path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        print(f"cannot read manifest {manifest_path}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if not isinstance(entries, list):
        print("manifest must be a JSON array of song entries", file=sys.stderr)
        return EXIT_USAGE

    state = _build_state(config)
    cfg = state.catalog.feature_config
    workers = args.workers or config.ingest_workers

    ingested = skipped = failed = 0
    # featurize in parallel, persist strictly in manifest order so that
    # cover_of may reference earlier entries
    jobs: list = [None] * len(entries)
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for index, entry in enumerate(entries):
            audio_path = entry.get("audio_path")
            if not audio_path:
                continue  # caught as a failure during the persist pass
            resolved = manifest_path.parent / audio_path
            if pool is not None and resolved.exists():
                jobs[index] = pool.submit(_featurize_file, str(resolved), cfg)

        for index, entry in enumerate(entries):
            title = entry.get("title", f"entry {index}")
            try:
                if "audio_path" not in entry:
                    raise InvalidInputError("manifest entry missing audio_path")
                metadata = {k: v for k, v in entry.items() if k != "audio_path"}
                resolved = manifest_path.parent / entry["audio_path"]
                if jobs[index] is not None:
                    content_hash, values, duration_s = jobs[index].result()
                    vector = FeatureVector(values=values, config_fingerprint=cfg.fingerprint())
                    _, created = state.catalog.ingest_prefeaturized(
                        resolved, metadata, content_hash, vector, duration_s
                    )
                else:
                    _, created = state.catalog.ingest_song(resolved, metadata)
                if created:
                    ingested += 1
                else:
                    skipped += 1
            except Exception as exc:
                failed += 1
                reason = exc.message if isinstance(exc, DJFamError) else str(exc)
                print(f"failed: {title}: {reason}", file=sys.stderr)
    finally:
        if pool is not None:
            pool.shutdown(wait=False, cancel_futures=True)
        state.close()

    print(json.dumps({"ingested": ingested, "skipped": skipped, "failed": failed}))
    return EXIT_OK if failed == 0 else EXIT_DOMAIN


def cmd_featurize(args, config: AppConfig) -> int:
    state = _build_state(config)
    cfg = state.catalog.feature_config
    updated = unchanged = 0
    try:
        for song in state.catalog.all_songs():
            if args.all or song.config_fingerprint != cfg.fingerprint():
                state.catalog.refeaturize(song.song_id, cfg)
                updated += 1
            else:
                unchanged += 1
    finally:
        state.close()
    print(json.dumps({"updated": updated, "unchanged": unchanged}))
    return EXIT_OK


def cmd_list_songs(args, config: AppConfig) -> int:
    state = _build_state(config)
    try:
        songs = sorted(state.catalog.all_songs(), key=lambda s: (s.artist, s.title))
    finally:
        state.close()
    print(
        json.dumps(
            [{"song_id": s.song_id, "title": s.title, "artist": s.artist} for s in songs],
            sort_keys=True,
        )
    )
    return EXIT_OK


def cmd_recommend(args, config: AppConfig) -> int:
    state = _build_state(config)
    try:
        recommendations = state.recommend_for(args.user_id, args.source_song_id, k=args.k)
    finally:
        state.close()
    print(json.dumps([rec.as_dict() for rec in recommendations], sort_keys=True))
    return EXIT_OK


def cmd_provision_dyad(args, config: AppConfig) -> int:
    state = _build_state(config)
    code = args.code or secrets.token_hex(4)
    try:
        dyad = state.provision_dyad(args.dyad_id, code, args.parent, args.child)
    finally:
        state.close()
    print(json.dumps({"dyad_id": dyad.dyad_id, "code": dyad.code}))
    return EXIT_OK


def cmd_set_playlist(args, config: AppConfig) -> int:
    if args.from_file:
        try:
            song_ids = json.loads(Path(args.from_file).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            print(f"cannot read playlist file: {exc}", file=sys.stderr)
            return EXIT_USAGE
    else:
        song_ids = args.song_ids
    state = _build_state(config)
    try:
        playlist = state.catalog.set_playlist(args.user_id, song_ids)
    finally:
        state.close()
    print(json.dumps({"user_id": args.user_id, "size": len(playlist.song_ids)}))
    return EXIT_OK


def cmd_report(args, config: AppConfig) -> int:
    state = _build_state(config)
    try:
        start = date.fromisoformat(args.start) if args.start else None
        rows = weekly_report(
            state, args.dyad_id, args.weeks, start=start, gap_threshold_s=args.gap
        )
    finally:
        state.close()
    sys.stdout.write(report_csv(rows))
    return EXIT_OK


def cmd_serve(args, config: AppConfig) -> int:
    import uvicorn

    state = _build_state(config)
    app = create_app(state)
    uvicorn.run(app, host=args.host or config.host, port=args.port or config.port)
    return EXIT_OK


# -- argument parsing -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="djfam", description=__doc__)
    parser.add_argument("--config", help="path to TOML config (or $DJFAM_CONFIG)")
    sub = parser.add_subparsers(dest="command", required=True)

    p_ingest = sub.add_parser("ingest", help="ingest a JSON song manifest")
    p_ingest.add_argument("manifest")
    p_ingest.add_argument("--workers", type=int, default=None)
    p_ingest.set_defaults(func=cmd_ingest)

    p_feat = sub.add_parser("featurize", help="re-featurize songs under the current config")
    p_feat.add_argument("--all", action="store_true", help="recompute even if up to date")
    p_feat.set_defaults(func=cmd_featurize)

    p_list = sub.add_parser("list-songs", help="print cataloged songs as JSON")
    p_list.set_defaults(func=cmd_list_songs)

    p_rec = sub.add_parser("recommend", help="offline recommendation run")
    p_rec.add_argument("source_song_id")
    p_rec.add_argument("user_id")
    p_rec.add_argument("--k", type=int, default=None)
    p_rec.set_defaults(func=cmd_recommend)

    p_dyad = sub.add_parser("provision-dyad", help="create a parent-child dyad")
    p_dyad.add_argument("--dyad-id", required=True, dest="dyad_id")
    p_dyad.add_argument("--parent", required=True)
    p_dyad.add_argument("--child", required=True)
    p_dyad.add_argument("--code", default=None)
    p_dyad.set_defaults(func=cmd_provision_dyad)

    p_set = sub.add_parser("set-playlist", help="replace a user's playlist")
    p_set.add_argument("--user", required=True, dest="user_id")
    p_set.add_argument("--from-file", dest="from_file")
    p_set.add_argument("song_ids", nargs="*")
    p_set.set_defaults(func=cmd_set_playlist)

    p_report = sub.add_parser("report", help="weekly interaction report (CSV)")
    p_report.add_argument("--dyad", required=True, dest="dyad_id")
    p_report.add_argument("--weeks", type=int, default=4)
    p_report.add_argument("--start", default=None, help="anchor date YYYY-MM-DD")
    p_report.add_argument("--gap", type=float, default=None, help="session gap threshold (s)")
    p_report.set_defaults(func=cmd_report)

    p_serve = sub.add_parser("serve", help="run the HTTP gateway")
    p_serve.add_argument("--host", default=None)
    p_serve.add_argument("--port", type=int, default=None)
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config)
        return args.func(args, config)
    except DJFamError as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
