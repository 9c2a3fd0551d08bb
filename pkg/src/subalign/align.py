"""Time-overlap scoring and the forward-scan subtitle alignment algorithm.

Two cues match when their time intervals overlap strongly enough. The
score is a smoothed Jaccard ratio over the two intervals, measured in
seconds:

    ratio = (intersect + 1) / (union + 1)

where ``intersect`` is the span covered by both intervals and ``union``
the span from the earliest start to the latest end. Working in integer
milliseconds, this is exactly ``(intersect_ms + 1000) / (union_ms + 1000)``,
so the computation never leaves exact integer arithmetic before the final
division. Touching intervals (one ends where the other starts) have zero
intersection and score nothing.

Alignment is a single forward scan over the two time-sorted documents
with one cursor per side. Disjoint or below-threshold cue pairs advance
the cursor of the side that ends earlier; matches consume a cue from both
sides, so every cue belongs to at most one emitted pair. The one-to-many
variant additionally tries, on a weak overlap, to grow the earlier-ending
side by whole adjacent cues (up to a cap) until the combined span clears
the threshold; exactly one side may grow per match, never both.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .model import SubtitleDocument, TimeInterval

# One second, the magnitude of the +1 smoothing term, in milliseconds.
SMOOTHING_MS = 1000

DEFAULT_THRESHOLD = 0.65
STRICT_THRESHOLD = 0.85
DEFAULT_MAX_EXPANSION = 5
STRICT_MIN_DOC_RATIO = 0.20


class OverlapKind(Enum):
    """How two time intervals relate to each other."""

    DISJOINT_A_BEFORE = "disjoint_a_before"
    DISJOINT_B_BEFORE = "disjoint_b_before"
    PARTIAL_A_LEADS = "partial_a_leads"
    PARTIAL_B_LEADS = "partial_b_leads"
    A_CONTAINS_B = "a_contains_b"
    B_CONTAINS_A = "b_contains_a"
    IDENTICAL = "identical"


class AlignmentMode(str, Enum):
    ONE_TO_ONE = "one_to_one"
    ONE_TO_MANY = "one_to_many"


@dataclass(frozen=True)
class AlignmentConfig:
    """Knobs of the alignment scan.

    ``strict_min_doc_ratio``, when set, enables the document-level filter
    that discards a whole document pair whose match ratio falls below it
    (suspected out-of-sync subtitles).
    """

    threshold: float = DEFAULT_THRESHOLD
    mode: AlignmentMode = AlignmentMode.ONE_TO_MANY
    max_expansion: int = DEFAULT_MAX_EXPANSION
    strict_min_doc_ratio: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "mode", AlignmentMode(self.mode))
        if not 0 < self.threshold <= 1:
            raise ValueError(f"threshold must be in (0, 1], got {self.threshold}")
        if self.max_expansion < 1:
            raise ValueError(f"max_expansion must be positive, got {self.max_expansion}")
        if self.strict_min_doc_ratio is not None and not 0 <= self.strict_min_doc_ratio <= 1:
            raise ValueError(
                f"strict_min_doc_ratio must be in [0, 1], got {self.strict_min_doc_ratio}"
            )

    @classmethod
    def strict(cls, mode: AlignmentMode = AlignmentMode.ONE_TO_MANY) -> AlignmentConfig:
        """The high-precision preset: threshold 0.85, document filter at 20%."""
        return cls(
            threshold=STRICT_THRESHOLD,
            mode=mode,
            strict_min_doc_ratio=STRICT_MIN_DOC_RATIO,
        )


@dataclass(frozen=True)
class AlignedPair:
    """A matched unit: one cue on one side, one or more adjacent cues on the other.

    Indices are 0-based positions into the respective document's cue tuple,
    strictly ascending; at least one side always has exactly one cue.
    Multi-cue text is the constituent cue texts joined with single spaces.
    """

    source_indices: tuple[int, ...]
    target_indices: tuple[int, ...]
    source_text: str
    target_text: str
    ratio: float
    span_a: TimeInterval
    span_b: TimeInterval

    def __post_init__(self) -> None:
        if not isinstance(self.source_indices, tuple):
            object.__setattr__(self, "source_indices", tuple(self.source_indices))
        if not isinstance(self.target_indices, tuple):
            object.__setattr__(self, "target_indices", tuple(self.target_indices))
        if not self.source_indices or not self.target_indices:
            raise ValueError("aligned pair must cover at least one cue per side")
        if min(len(self.source_indices), len(self.target_indices)) != 1:
            raise ValueError("only 1-1 and 1-M pairs are allowed, never M-M")
        for indices in (self.source_indices, self.target_indices):
            if any(b <= a for a, b in zip(indices, indices[1:])):
                raise ValueError(f"pair indices must be strictly ascending: {indices}")


def overlap_ratio(a: TimeInterval, b: TimeInterval) -> float | None:
    """Smoothed Jaccard overlap of two intervals, or None when they do not overlap.

    Identical intervals score exactly 1.0; the score is symmetric in its
    arguments.
    """
    intersect_ms = min(a.end.millis, b.end.millis) - max(a.start.millis, b.start.millis)
    if intersect_ms <= 0:
        return None
    union_ms = max(a.end.millis, b.end.millis) - min(a.start.millis, b.start.millis)
    return (intersect_ms + SMOOTHING_MS) / (union_ms + SMOOTHING_MS)


def classify_overlap(a: TimeInterval, b: TimeInterval) -> OverlapKind:
    """Classify the relation of two intervals into exactly one OverlapKind.

    Equality is checked before disjointness so that two identical
    zero-length intervals classify as identical rather than disjoint;
    touching intervals count as disjoint (zero intersection), containment
    boundaries are inclusive, and partial overlaps are labelled by the
    earlier-starting ("leading") interval. A zero-length interval strictly
    interior to the other classifies as contained even though the overlap
    ratio scores it as no overlap: neither "before" direction would be
    true of it.
    """
    if a == b:
        return OverlapKind.IDENTICAL
    if a.end <= b.start:
        return OverlapKind.DISJOINT_A_BEFORE
    if b.end <= a.start:
        return OverlapKind.DISJOINT_B_BEFORE
    if a.start <= b.start and b.end <= a.end:
        return OverlapKind.A_CONTAINS_B
    if b.start <= a.start and a.end <= b.end:
        return OverlapKind.B_CONTAINS_A
    if a.start < b.start:
        return OverlapKind.PARTIAL_A_LEADS
    return OverlapKind.PARTIAL_B_LEADS


def _combined_span(doc: SubtitleDocument, positions: tuple[int, ...]) -> TimeInterval:
    start = doc.cues[positions[0]].interval.start
    end = max(doc.cues[p].interval.end for p in positions)
    return TimeInterval(start, end)


def _make_pair(
    doc_a: SubtitleDocument,
    doc_b: SubtitleDocument,
    source_positions: tuple[int, ...],
    target_positions: tuple[int, ...],
    ratio: float,
) -> AlignedPair:
    return AlignedPair(
        source_indices=source_positions,
        target_indices=target_positions,
        source_text=" ".join(doc_a.cues[p].joined_text for p in source_positions),
        target_text=" ".join(doc_b.cues[p].joined_text for p in target_positions),
        ratio=ratio,
        span_a=_combined_span(doc_a, source_positions),
        span_b=_combined_span(doc_b, target_positions),
    )


def align_one_to_one(
    doc_a: SubtitleDocument, doc_b: SubtitleDocument, config: AlignmentConfig
) -> list[AlignedPair]:
    """Forward scan emitting 1-1 pairs whose overlap ratio clears the threshold.

    Both documents must be sorted by start time (document construction
    guarantees this). Output pairs are strictly ascending in both index
    sequences and no cue appears twice.
    """
    pairs: list[AlignedPair] = []
    i = j = 0
    size_a, size_b = len(doc_a.cues), len(doc_b.cues)
    while i < size_a and j < size_b:
        a = doc_a.cues[i].interval
        b = doc_b.cues[j].interval
        ratio = overlap_ratio(a, b)
        if ratio is not None and ratio >= config.threshold:
            pairs.append(_make_pair(doc_a, doc_b, (i,), (j,), ratio))
            i += 1
            j += 1
        elif a.end <= b.end:
            # Disjoint or too weak: drop the earlier-ending cue, which can
            # no longer overlap anything the other cursor has yet to reach.
            i += 1
        else:
            j += 1
    return pairs


def _try_expand(
    doc_a: SubtitleDocument,
    doc_b: SubtitleDocument,
    i: int,
    j: int,
    config: AlignmentConfig,
) -> tuple[tuple[int, ...], tuple[int, ...], float] | None:
    """Grow the earlier-ending side over adjacent cues until the ratio clears.

    Returns (source_positions, target_positions, ratio) on success, None
    when no expansion within the cap recovers the match. When both sides
    end simultaneously no expansion is attempted: growing either side
    leaves the intersection unchanged while the union grows, so the ratio
    can only fall.
    """
    a = doc_a.cues[i].interval
    b = doc_b.cues[j].interval
    if a.end < b.end:
        grow_doc, grow_from, fixed, growing_source = doc_a, i, b, True
    elif b.end < a.end:
        grow_doc, grow_from, fixed, growing_source = doc_b, j, a, False
    else:
        return None

    span_start = grow_doc.cues[grow_from].interval.start
    span_end = grow_doc.cues[grow_from].interval.end
    count = 1
    while count < config.max_expansion:
        next_position = grow_from + count
        if next_position >= len(grow_doc.cues):
            return None
        count += 1
        span_end = max(span_end, grow_doc.cues[next_position].interval.end)
        ratio = overlap_ratio(TimeInterval(span_start, span_end), fixed)
        if ratio is not None and ratio >= config.threshold:
            positions = tuple(range(grow_from, grow_from + count))
            if growing_source:
                return positions, (j,), ratio
            return (i,), positions, ratio
        if span_end.millis > fixed.end.millis + fixed.duration_ms:
            # Overshot the other side by more than its own duration:
            # further growth only dilutes the ratio.
            return None
    return None


def align_one_to_many(
    doc_a: SubtitleDocument, doc_b: SubtitleDocument, config: AlignmentConfig
) -> list[AlignedPair]:
    """Forward scan emitting 1-1 pairs plus 1-M pairs recovered by expansion.

    Behaves exactly like :func:`align_one_to_one` except that a weak
    (below-threshold) overlap first attempts to expand the earlier-ending
    side by up to ``config.max_expansion`` adjacent cues; on success all
    cues of the pair are consumed, on failure the scan advances as in the
    1-1 case. With ``max_expansion == 1`` this function is extensionally
    equal to :func:`align_one_to_one`.
    """
    pairs: list[AlignedPair] = []
    i = j = 0
    size_a, size_b = len(doc_a.cues), len(doc_b.cues)
    while i < size_a and j < size_b:
        a = doc_a.cues[i].interval
        b = doc_b.cues[j].interval
        ratio = overlap_ratio(a, b)
        if ratio is not None and ratio >= config.threshold:
            pairs.append(_make_pair(doc_a, doc_b, (i,), (j,), ratio))
            i += 1
            j += 1
            continue
        if ratio is not None:
            expansion = _try_expand(doc_a, doc_b, i, j, config)
            if expansion is not None:
                source_positions, target_positions, expansion_ratio = expansion
                pairs.append(
                    _make_pair(doc_a, doc_b, source_positions, target_positions, expansion_ratio)
                )
                i = source_positions[-1] + 1
                j = target_positions[-1] + 1
                continue
        if a.end <= b.end:
            i += 1
        else:
            j += 1
    return pairs


def align_documents(
    doc_a: SubtitleDocument, doc_b: SubtitleDocument, config: AlignmentConfig
) -> list[AlignedPair]:
    """Run the scan selected by ``config.mode``."""
    if config.mode is AlignmentMode.ONE_TO_ONE:
        return align_one_to_one(doc_a, doc_b, config)
    return align_one_to_many(doc_a, doc_b, config)


def document_match_ratio(
    pairs: list[AlignedPair], doc_a: SubtitleDocument, doc_b: SubtitleDocument
) -> float:
    """Fraction of cues (over both documents) covered by any emitted pair."""
    if not doc_a.cues or not doc_b.cues:
        raise ValueError("match ratio is undefined for documents without cues")
    covered_a: set[int] = set()
    covered_b: set[int] = set()
    for pair in pairs:
        covered_a.update(pair.source_indices)
        covered_b.update(pair.target_indices)
    return (len(covered_a) + len(covered_b)) / (len(doc_a.cues) + len(doc_b.cues))


def apply_strict_filter(
    pairs: list[AlignedPair],
    doc_a: SubtitleDocument,
    doc_b: SubtitleDocument,
    config: AlignmentConfig,
) -> bool:
    """Decide whether a document pair's output is kept.

    Returns False (drop everything, the documents are probably out of
    sync) when the document match ratio falls strictly below
    ``config.strict_min_doc_ratio``; always True when the filter is not
    configured.
    """
    if config.strict_min_doc_ratio is None:
        return True
    return document_match_ratio(pairs, doc_a, doc_b) >= config.strict_min_doc_ratio
