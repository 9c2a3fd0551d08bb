"""Command-line surface for the subtitle alignment pipeline.

Exit codes: 0 on success, 1 on unreadable or corrupt input, 2 when the
strict document filter drops the pair. The SUBALIGN_LOG environment
variable (DEBUG/INFO/WARNING/ERROR) controls log verbosity.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .align import (
    AlignedPair,
    AlignmentConfig,
    AlignmentMode,
    align_documents,
    apply_strict_filter,
    document_match_ratio,
)
from .corpus import (
    PairManifest,
    build_catalog,
    compute_stats,
    generate_synthetic_pair,
    read_manifest,
    write_parallel,
)
from .model import SCRIPT_ARABIC, SCRIPT_LATIN, SubtitleDocument, SubtitleError
from .preprocess import CleaningReport, clean_document
from .srt import parse_srt, serialize_srt

log = logging.getLogger("subalign")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_DROPPED = 2

_MODE_FLAGS = {"1-1": AlignmentMode.ONE_TO_ONE, "1-m": AlignmentMode.ONE_TO_MANY}


def _add_alignment_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("alignment")
    group.add_argument("--mode", choices=sorted(_MODE_FLAGS), default=None,
                       help="1-1 pairs only, or 1-m with expansion (default: 1-m)")
    group.add_argument("--threshold", type=float, default=None,
                       help="minimum overlap ratio for a match (default: 0.65)")
    group.add_argument("--max-expansion", type=int, default=None,
                       help="maximum adjacent cues on the expanded side (default: 5)")
    group.add_argument("--strict-min-ratio", type=float, default=None,
                       help="drop document pairs matching less than this fraction of cues")
    group.add_argument("--preset", choices=["strict"], default=None,
                       help="strict = threshold 0.85 plus 20%% document filter")


def _alignment_config(args: argparse.Namespace) -> AlignmentConfig:
    strict = args.preset == "strict"
    threshold = args.threshold if args.threshold is not None else (0.85 if strict else 0.65)
    min_ratio = args.strict_min_ratio
    if min_ratio is None and strict:
        min_ratio = 0.20
    return AlignmentConfig(
        threshold=threshold,
        mode=_MODE_FLAGS[args.mode or "1-m"],
        max_expansion=args.max_expansion if args.max_expansion is not None else 5,
        strict_min_doc_ratio=min_ratio,
    )


def _config_dict(config: AlignmentConfig) -> dict:
    return {
        "threshold": config.threshold,
        "mode": config.mode.value,
        "max_expansion": config.max_expansion,
        "strict_min_doc_ratio": config.strict_min_doc_ratio,
    }


def _load_document(path: Path) -> tuple[SubtitleDocument, list[str]]:
    return parse_srt(path.read_bytes(), source_id=str(path))


def _parallel_extensions(language_a: str, language_b: str) -> tuple[str, str]:
    if language_a != language_b:
        return language_a, language_b
    return "src", "tgt"


def _print_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _cmd_parse(args: argparse.Namespace) -> int:
    try:
        doc, warnings = _load_document(args.file)
    except (OSError, SubtitleError) as exc:
        log.error("%s: %s", args.file, exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    if args.emit_srt is not None:
        args.emit_srt.write_text(serialize_srt(doc), encoding="utf-8")
    _print_json(
        {
            "path": str(args.file),
            "cues": len(doc.cues),
            "language": doc.language,
            "warnings": warnings,
        }
    )
    return EXIT_OK


def _cmd_clean(args: argparse.Namespace) -> int:
    try:
        doc, warnings = _load_document(args.file)
    except (OSError, SubtitleError) as exc:
        log.error("%s: %s", args.file, exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    cleaned, report = clean_document(doc)
    args.output.write_text(serialize_srt(cleaned), encoding="utf-8")
    _print_json(
        {
            "path": str(args.file),
            "output": str(args.output),
            "parse_warnings": len(warnings),
            "cleaning": report.as_dict(),
        }
    )
    return EXIT_OK


def _cmd_align(args: argparse.Namespace) -> int:
    config = _alignment_config(args)
    try:
        doc_a, warnings_a = _load_document(args.source)
        doc_b, warnings_b = _load_document(args.target)
    except (OSError, SubtitleError) as exc:
        log.error("cannot load subtitles: %s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE

    clean_a, report_a = clean_document(doc_a)
    clean_b, report_b = clean_document(doc_b)
    if not clean_a.cues or not clean_b.cues:
        print("error: no usable cues after cleaning", file=sys.stderr)
        return EXIT_FAILURE

    pairs = align_documents(clean_a, clean_b, config)
    match_ratio = document_match_ratio(pairs, clean_a, clean_b)
    kept = apply_strict_filter(pairs, clean_a, clean_b, config)

    args.out_dir.mkdir(parents=True, exist_ok=True)
    ext_a, ext_b = _parallel_extensions(clean_a.language, clean_b.language)
    out_source = args.out_dir / f"aligned.{ext_a}"
    out_target = args.out_dir / f"aligned.{ext_b}"
    if kept:
        write_parallel(pairs, out_source, out_target)

    _print_json(
        {
            "source": str(args.source),
            "target": str(args.target),
            "config": _config_dict(config),
            "pairs": len(pairs),
            "document_match_ratio": match_ratio,
            "kept": kept,
            "outputs": [str(out_source), str(out_target)] if kept else [],
            "parse_warnings": {"source": len(warnings_a), "target": len(warnings_b)},
            "cleaning": {"source": report_a.as_dict(), "target": report_b.as_dict()},
        }
    )
    return EXIT_OK if kept else EXIT_DROPPED


@dataclass(frozen=True)
class _PairTask:
    pair: PairManifest
    base_dir: str
    config: AlignmentConfig


@dataclass(frozen=True)
class _PairOutcome:
    movie_id: str
    pairs: tuple[AlignedPair, ...]
    kept: bool
    match_ratio: float | None
    cleaning: tuple[CleaningReport, CleaningReport] | None
    error: str | None


def _resolve(base_dir: str, path: str) -> Path:
    candidate = Path(path)
    return candidate if candidate.is_absolute() else Path(base_dir) / candidate


def _process_pair(task: _PairTask) -> _PairOutcome:
    """Worker for one manifest pair; never raises, reports errors instead."""
    pm = task.pair
    try:
        doc_a, _ = parse_srt(_resolve(task.base_dir, pm.path_a).read_bytes(), source_id=pm.path_a)
        doc_b, _ = parse_srt(_resolve(task.base_dir, pm.path_b).read_bytes(), source_id=pm.path_b)
        for doc, expected in ((doc_a, pm.language_a), (doc_b, pm.language_b)):
            if (
                expected in (SCRIPT_ARABIC, SCRIPT_LATIN)
                and doc.language in (SCRIPT_ARABIC, SCRIPT_LATIN)
                and doc.language != expected
            ):
                raise SubtitleError(
                    f"{doc.source_id}: detected {doc.language} script, manifest says {expected}"
                )
        clean_a, report_a = clean_document(doc_a)
        clean_b, report_b = clean_document(doc_b)
        if not clean_a.cues or not clean_b.cues:
            raise SubtitleError("no usable cues after cleaning")
        pairs = align_documents(clean_a, clean_b, task.config)
        match_ratio = document_match_ratio(pairs, clean_a, clean_b)
        kept = apply_strict_filter(pairs, clean_a, clean_b, task.config)
        return _PairOutcome(
            movie_id=pm.movie_id,
            pairs=tuple(pairs),
            kept=kept,
            match_ratio=match_ratio,
            cleaning=(report_a, report_b),
            error=None,
        )
    except (OSError, SubtitleError, ValueError) as exc:
        return _PairOutcome(
            movie_id=pm.movie_id, pairs=(), kept=False, match_ratio=None, cleaning=None,
            error=str(exc),
        )


def _cmd_batch(args: argparse.Namespace) -> int:
    config = _alignment_config(args)
    try:
        rows = read_manifest(args.manifest)
        catalog = build_catalog(rows, seed=args.seed)
    except (OSError, ValueError) as exc:
        log.error("bad manifest: %s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE

    tasks = [_PairTask(pm, str(args.manifest.parent), config) for pm in catalog]
    if args.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            outcomes = list(pool.map(_process_pair, tasks))
    else:
        outcomes = [_process_pair(task) for task in tasks]

    corpus_pairs: list[AlignedPair] = []
    kept_count = 0
    failed_count = 0
    for outcome in outcomes:
        if outcome.error is not None:
            failed_count += 1
            log.warning("skipping %s: %s", outcome.movie_id, outcome.error)
            continue
        if not outcome.kept:
            log.info(
                "strict filter dropped %s (match ratio %.3f)",
                outcome.movie_id,
                outcome.match_ratio,
            )
            continue
        kept_count += 1
        corpus_pairs.extend(outcome.pairs)

    if catalog:
        ext_a, ext_b = _parallel_extensions(catalog[0].language_a, catalog[0].language_b)
    else:
        ext_a, ext_b = "src", "tgt"
    args.out_dir.mkdir(parents=True, exist_ok=True)
    write_parallel(corpus_pairs, args.out_dir / f"corpus.{ext_a}", args.out_dir / f"corpus.{ext_b}")
    stats = compute_stats(corpus_pairs, doc_pairs_in=len(catalog), doc_pairs_kept=kept_count)
    stats_path = args.out_dir / "stats.json"
    stats_path.write_text(json.dumps(stats.as_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    _print_json(stats.as_dict())

    if tasks and failed_count == len(tasks):
        return EXIT_FAILURE
    return EXIT_OK


def _cmd_stats(args: argparse.Namespace) -> int:
    try:
        source_lines = args.source.read_text(encoding="utf-8").splitlines()
        target_lines = (
            args.target.read_text(encoding="utf-8").splitlines() if args.target else None
        )
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    if target_lines is not None and len(target_lines) != len(source_lines):
        print(
            f"error: line counts differ ({len(source_lines)} vs {len(target_lines)})",
            file=sys.stderr,
        )
        return EXIT_FAILURE
    token_count = sum(len(line.split()) for line in source_lines)
    sentence_pairs = len(source_lines)
    _print_json(
        {
            "sentence_pairs": sentence_pairs,
            "avg_len_tokens": token_count / sentence_pairs if sentence_pairs else 0.0,
            "token_count": token_count,
            "doc_pairs_in": 0,
            "doc_pairs_kept": 0,
        }
    )
    return EXIT_OK


def _cmd_synth(args: argparse.Namespace) -> int:
    doc_a, doc_b, gold = generate_synthetic_pair(
        seed=args.seed,
        cue_count=args.cues,
        jitter_ms=args.jitter_ms,
        split_probability=args.split_prob,
        drop_probability=args.drop_prob,
    )
    args.out_dir.mkdir(parents=True, exist_ok=True)
    (args.out_dir / "source.srt").write_text(serialize_srt(doc_a), encoding="utf-8")
    (args.out_dir / "target.srt").write_text(serialize_srt(doc_b), encoding="utf-8")
    gold_payload = {
        "links": [
            {"source": list(source), "target": list(target)} for source, target in gold
        ]
    }
    (args.out_dir / "gold.json").write_text(
        json.dumps(gold_payload, indent=2) + "\n", encoding="utf-8"
    )
    _print_json(
        {
            "out_dir": str(args.out_dir),
            "cues_source": len(doc_a.cues),
            "cues_target": len(doc_b.cues),
            "gold_links": len(gold),
        }
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subalign",
        description="Align bilingual subtitle files into parallel corpora by time overlap.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_parse = sub.add_parser("parse", help="parse one SRT file and report its shape")
    p_parse.add_argument("file", type=Path)
    p_parse.add_argument("--emit-srt", type=Path, default=None,
                         help="also write the canonical serialized form here")
    p_parse.set_defaults(func=_cmd_parse)

    p_clean = sub.add_parser("clean", help="clean one SRT file (markup, dialogue splits)")
    p_clean.add_argument("file", type=Path)
    p_clean.add_argument("-o", "--output", type=Path, required=True)
    p_clean.set_defaults(func=_cmd_clean)

    p_align = sub.add_parser("align", help="align one subtitle pair into parallel text")
    p_align.add_argument("source", type=Path)
    p_align.add_argument("target", type=Path)
    p_align.add_argument("--out-dir", type=Path, default=Path("."))
    _add_alignment_flags(p_align)
    p_align.set_defaults(func=_cmd_align)

    p_batch = sub.add_parser("batch", help="build a corpus from a manifest of file pairs")
    p_batch.add_argument("manifest", type=Path)
    p_batch.add_argument("--out-dir", type=Path, default=Path("."))
    p_batch.add_argument("--seed", type=int, default=0, help="seed for random version picks")
    p_batch.add_argument("--jobs", type=int, default=1, help="worker processes")
    _add_alignment_flags(p_batch)
    p_batch.set_defaults(func=_cmd_batch)

    p_stats = sub.add_parser("stats", help="recount corpus statistics from parallel files")
    p_stats.add_argument("source", type=Path)
    p_stats.add_argument("target", type=Path, nargs="?", default=None)
    p_stats.set_defaults(func=_cmd_stats)

    p_synth = sub.add_parser("synth", help="generate a synthetic pair with gold alignment")
    p_synth.add_argument("--out-dir", type=Path, default=Path("."))
    p_synth.add_argument("--seed", type=int, default=0)
    p_synth.add_argument("--cues", type=int, default=100)
    p_synth.add_argument("--jitter-ms", type=int, default=0)
    p_synth.add_argument("--split-prob", type=float, default=0.0)
    p_synth.add_argument("--drop-prob", type=float, default=0.0)
    p_synth.set_defaults(func=_cmd_synth)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    level_name = os.environ.get("SUBALIGN_LOG", "WARNING").upper()
    logging.basicConfig(
        level=getattr(logging, level_name, logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
