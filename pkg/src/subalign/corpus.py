"""Corpus-level machinery: catalog pairing, parallel output, statistics,
and a synthetic document-pair generator for evaluation."""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .align import AlignedPair
from .model import SCRIPT_LATIN, SubtitleCue, SubtitleDocument, TimeInterval

MANIFEST_HEADER = ("movie_id", "language", "release_name", "path")

PAIRED_BY_RELEASE = "release_match"
PAIRED_BY_RANDOM = "random"

_RELEASE_SEPARATORS_RE = re.compile(r"[._\-\s]+")
_WS_RE = re.compile(r"\s+")

# Synthetic generator shape parameters.
_TOKEN_SPAN_MS = 400  # one token per ~0.4 s of screen time
_MIN_SPLIT_DURATION_MS = 4000  # only long cues get split across two segments

GoldAlignment = tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]


@dataclass(frozen=True)
class CatalogRow:
    """One manifest line: a subtitle file available for some movie."""

    movie_id: str
    language: str
    release_name: str
    path: str

    def __post_init__(self) -> None:
        if not self.movie_id:
            raise ValueError("movie_id must be non-empty")
        if not self.language or self.language.split() != [self.language]:
            raise ValueError(f"invalid language tag {self.language!r}")
        if not self.path:
            raise ValueError("path must be non-empty")


@dataclass(frozen=True)
class PairManifest:
    """A chosen bilingual file pair for one movie."""

    movie_id: str
    release_name_a: str
    release_name_b: str
    path_a: str
    path_b: str
    language_a: str
    language_b: str
    paired_by: str

    def __post_init__(self) -> None:
        if self.language_a == self.language_b:
            raise ValueError(f"pair languages must differ, both are {self.language_a!r}")
        if self.paired_by not in (PAIRED_BY_RELEASE, PAIRED_BY_RANDOM):
            raise ValueError(f"unknown pairing origin {self.paired_by!r}")


@dataclass(frozen=True)
class CorpusStats:
    """Size summary of a produced corpus, counted on the source side."""

    sentence_pairs: int
    avg_len_tokens: float
    token_count: int
    doc_pairs_in: int
    doc_pairs_kept: int

    def as_dict(self) -> dict[str, int | float]:
        return {
            "sentence_pairs": self.sentence_pairs,
            "avg_len_tokens": self.avg_len_tokens,
            "token_count": self.token_count,
            "doc_pairs_in": self.doc_pairs_in,
            "doc_pairs_kept": self.doc_pairs_kept,
        }


def read_manifest(path: Path) -> list[CatalogRow]:
    """Read a UTF-8 TSV manifest with header movie_id/language/release_name/path."""
    lines = path.read_text(encoding="utf-8").split("\n")
    if not lines or tuple(lines[0].rstrip("\r").split("\t")) != MANIFEST_HEADER:
        raise ValueError(f"manifest {path} missing header {'	'.join(MANIFEST_HEADER)!r}")
    rows = []
    for line_no, line in enumerate(lines[1:], start=2):
        line = line.rstrip("\r")
        if not line:
            continue
        fields = line.split("\t")
        if len(fields) != len(MANIFEST_HEADER):
            raise ValueError(f"manifest {path} line {line_no}: expected 4 tab-separated fields")
        rows.append(CatalogRow(*fields))
    return rows


def _normalize_release(name: str) -> str:
    return _RELEASE_SEPARATORS_RE.sub(" ", name.lower()).strip()


def build_catalog(
    rows: Sequence[CatalogRow],
    seed: int = 0,
    languages: tuple[str, str] | None = None,
) -> list[PairManifest]:
    """Pick one file pair per movie that has both languages.

    Versions sharing an identical normalized release name are paired as
    ``release_match``; otherwise one version per language is chosen by a
    per-movie seeded random draw (``random``), reproducible across runs.
    Movies missing either language are skipped.

    When ``languages`` is not given, the bilingual pair is inferred as the
    first two distinct tags in row order (the first tag becomes side A);
    more than two distinct tags is then an error.
    """
    seen_rows: set[CatalogRow] = set()
    for row in rows:
        if row in seen_rows:
            raise ValueError(f"duplicate manifest row: {row}")
        seen_rows.add(row)

    if languages is None:
        tags: list[str] = []
        for row in rows:
            if row.language not in tags:
                tags.append(row.language)
        if len(tags) != 2:
            raise ValueError(f"manifest must carry exactly two languages, found {tags}")
        languages = (tags[0], tags[1])
    lang_a, lang_b = languages
    if lang_a == lang_b:
        raise ValueError("the two catalog languages must differ")

    by_movie: dict[str, list[CatalogRow]] = {}
    for row in rows:
        by_movie.setdefault(row.movie_id, []).append(row)

    catalog = []
    for movie_id, group in by_movie.items():
        side_a = sorted(
            (r for r in group if r.language == lang_a), key=lambda r: (r.release_name, r.path)
        )
        side_b = sorted(
            (r for r in group if r.language == lang_b), key=lambda r: (r.release_name, r.path)
        )
        if not side_a or not side_b:
            continue

        names_a = {}
        for row in side_a:
            names_a.setdefault(_normalize_release(row.release_name), row)
        names_b = {}
        for row in side_b:
            names_b.setdefault(_normalize_release(row.release_name), row)
        shared = sorted(name for name in names_a.keys() & names_b.keys() if name)

        if shared:
            chosen_a, chosen_b = names_a[shared[0]], names_b[shared[0]]
            paired_by = PAIRED_BY_RELEASE
        else:
            rng = random.Random(f"{seed}:{movie_id}")
            chosen_a = rng.choice(side_a)
            chosen_b = rng.choice(side_b)
            paired_by = PAIRED_BY_RANDOM

        catalog.append(
            PairManifest(
                movie_id=movie_id,
                release_name_a=chosen_a.release_name,
                release_name_b=chosen_b.release_name,
                path_a=chosen_a.path,
                path_b=chosen_b.path,
                language_a=lang_a,
                language_b=lang_b,
                paired_by=paired_by,
            )
        )
    return catalog


def _flatten(text: str) -> str:
    return _WS_RE.sub(" ", text).strip()


def write_parallel(pairs: Sequence[AlignedPair], out_source: Path, out_target: Path) -> None:
    """Write pair texts line-aligned to two UTF-8, LF-terminated files."""
    source = "".join(_flatten(p.source_text) + "\n" for p in pairs)
    target = "".join(_flatten(p.target_text) + "\n" for p in pairs)
    out_source.write_text(source, encoding="utf-8")
    out_target.write_text(target, encoding="utf-8")


def compute_stats(
    pairs: Sequence[AlignedPair], doc_pairs_in: int = 0, doc_pairs_kept: int = 0
) -> CorpusStats:
    """Count sentence pairs and whitespace tokens on the source side."""
    token_count = sum(len(p.source_text.split()) for p in pairs)
    sentence_pairs = len(pairs)
    avg = token_count / sentence_pairs if sentence_pairs else 0.0
    return CorpusStats(
        sentence_pairs=sentence_pairs,
        avg_len_tokens=avg,
        token_count=token_count,
        doc_pairs_in=doc_pairs_in,
        doc_pairs_kept=doc_pairs_kept,
    )


def _round_half_up(numerator: int, denominator: int) -> int:
    return (2 * numerator + denominator) // (2 * denominator)


def generate_synthetic_pair(
    seed: int,
    cue_count: int,
    jitter_ms: int = 0,
    split_probability: float = 0.0,
    drop_probability: float = 0.0,
    *,
    duration_range: tuple[int, int] = (1000, 7000),
    gap_range: tuple[int, int] = (200, 2000),
) -> tuple[SubtitleDocument, SubtitleDocument, GoldAlignment]:
    """Generate a document pair with a known-correct (gold) alignment.

    Document A gets ``cue_count`` cues with randomized durations and gaps
    (defaults: 1-7 s and 0.2-2 s) and one token per ~0.4 s of duration.
    Document B replays A with each boundary jittered uniformly within
    ``±jitter_ms``; each cue may be dropped (gold: unaligned) with
    ``drop_probability`` or split into two segments (gold: 1-2) with
    ``split_probability``. Splits apply only to cues of at least 4 s and
    divide both the time span and the token sequence near the middle
    (45-55%), so at the default threshold neither half alone can pass as a
    1-1 match of the original. Output is deterministic per seed.
    """
    if cue_count < 0:
        raise ValueError("cue_count must be non-negative")
    if jitter_ms < 0:
        raise ValueError("jitter_ms must be non-negative")
    for name, probability in (("split_probability", split_probability), ("drop_probability", drop_probability)):
        if not 0.0 <= probability <= 1.0:
            raise ValueError(f"{name} must be in [0, 1], got {probability}")
    if not 1 <= duration_range[0] <= duration_range[1]:
        raise ValueError(f"bad duration_range {duration_range}")
    if not 0 <= gap_range[0] <= gap_range[1]:
        raise ValueError(f"bad gap_range {gap_range}")

    rng = random.Random(seed)
    source_id = f"synthetic:{seed}"

    a_cues: list[SubtitleCue] = []
    a_tokens: list[list[str]] = []
    clock = 0
    for position in range(cue_count):
        start = clock + rng.randint(*gap_range)
        duration = rng.randint(*duration_range)
        end = start + duration
        clock = end
        tokens = [f"w{position}t{k}" for k in range(max(1, round(duration / _TOKEN_SPAN_MS)))]
        a_tokens.append(tokens)
        a_cues.append(
            SubtitleCue(
                index=position + 1,
                interval=TimeInterval.from_millis(start, end),
                text=(" ".join(tokens),),
            )
        )

    def jitter(ms: int) -> int:
        return ms + rng.randint(-jitter_ms, jitter_ms) if jitter_ms else ms

    b_cues: list[SubtitleCue] = []
    links: list[tuple[int, list[int]]] = []  # (A position, B cue indices)
    next_b_index = 1
    for position, cue in enumerate(a_cues):
        r_drop = rng.random()
        r_split = rng.random()
        if r_drop < drop_probability:
            continue

        start = cue.interval.start.millis
        end = cue.interval.end.millis
        duration = end - start
        tokens = a_tokens[position]

        spans: list[tuple[int, int, list[str]]]
        if r_split < split_probability and duration >= _MIN_SPLIT_DURATION_MS:
            count = len(tokens)
            low = math.ceil(0.45 * count)
            high = math.floor(0.55 * count)
            split_at = min(max(round(count * rng.uniform(0.45, 0.55)), low), high)
            mid = start + _round_half_up(duration * split_at, count)
            spans = [(start, mid, tokens[:split_at]), (mid, end, tokens[split_at:])]
        else:
            spans = [(start, end, tokens)]

        b_indices = []
        for span_start, span_end, span_tokens in spans:
            jittered_start = max(0, jitter(span_start))
            jittered_end = max(jittered_start, jitter(span_end))
            b_cues.append(
                SubtitleCue(
                    index=next_b_index,
                    interval=TimeInterval.from_millis(jittered_start, jittered_end),
                    text=(" ".join(span_tokens),),
                )
            )
            b_indices.append(next_b_index)
            next_b_index += 1
        links.append((position, b_indices))

    doc_a = SubtitleDocument(cues=tuple(a_cues), language=SCRIPT_LATIN, source_id=source_id)
    doc_b = SubtitleDocument(cues=tuple(b_cues), language=SCRIPT_LATIN, source_id=source_id)

    position_of = {cue.index: pos for pos, cue in enumerate(doc_b.cues)}
    gold = tuple(
        ((a_position,), tuple(sorted(position_of[ix] for ix in b_indices)))
        for a_position, b_indices in links
    )
    return doc_a, doc_b, gold


def alignment_precision_recall(
    pairs: Iterable[AlignedPair], gold: GoldAlignment
) -> tuple[float, float]:
    """Exact-match precision/recall of predicted pairs against a gold alignment.

    Empty predictions score precision 1.0 (vacuously correct); an empty
    gold scores recall 1.0.
    """
    predicted = {(p.source_indices, p.target_indices) for p in pairs}
    expected = {(tuple(source), tuple(target)) for source, target in gold}
    correct = len(predicted & expected)
    precision = correct / len(predicted) if predicted else 1.0
    recall = correct / len(expected) if expected else 1.0
    return precision, recall
