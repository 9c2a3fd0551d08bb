"""Cleaning pipeline for parsed subtitles.

Three stages: markup removal, multi-speaker dialogue splitting with
proportional time reallocation, and document-level reassembly with
counts of what changed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace

from .model import SubtitleCue, SubtitleDocument, TimeInterval, Timestamp

_TAG_RE = re.compile(r"<[^>]*>")
_BRACE_RE = re.compile(r"\{[^}]*\}")
_WS_RE = re.compile(r"\s+")
# The whole run of leading dialogue dashes is removed, not just the first
# one, so that cleaning is idempotent ("-- Hi" must not re-trigger a split).
_LEADING_DASH_RE = re.compile(r"^(?:[-–]\s*)+")

_DIALOGUE_MARKS = ("-", "–")


@dataclass(frozen=True)
class CleaningReport:
    """Counts describing one document-cleaning run."""

    cues_in: int
    cues_out: int
    markup_stripped: int
    dialogues_split: int
    cues_dropped_empty: int

    def as_dict(self) -> dict[str, int]:
        return {
            "cues_in": self.cues_in,
            "cues_out": self.cues_out,
            "markup_stripped": self.markup_stripped,
            "dialogues_split": self.dialogues_split,
            "cues_dropped_empty": self.cues_dropped_empty,
        }


def _has_markup(cue: SubtitleCue) -> bool:
    return any(_TAG_RE.search(line) or _BRACE_RE.search(line) for line in cue.text)


def strip_markup(cue: SubtitleCue) -> SubtitleCue:
    """Remove HTML-style tags and ``{...}`` control codes from a cue.

    Repeated whitespace is collapsed, lines are trimmed, and lines that
    become empty are dropped (the returned cue may have no lines left).
    """
    lines = []
    for line in cue.text:
        cleaned = _TAG_RE.sub("", line)
        cleaned = _BRACE_RE.sub("", cleaned)
        cleaned = _WS_RE.sub(" ", cleaned).strip()
        if cleaned:
            lines.append(cleaned)
    return replace(cue, text=tuple(lines))


def split_dialogue(cue: SubtitleCue) -> list[SubtitleCue]:
    """Split a multi-speaker cue into one cue per dialogue line.

    A split triggers only when at least two lines start with a dialogue
    dash (``-`` or en dash); otherwise the cue is returned unchanged. Lines
    without a dash continue the preceding speaker's fragment. The original
    interval is partitioned contiguously, each fragment receiving a share
    of the duration proportional to its character count after dash removal
    (internal spaces included); durations are rounded to whole milliseconds
    and the final fragment absorbs the remainder, so the fragments tile the
    original interval exactly.
    """
    starts = [line.lstrip().startswith(_DIALOGUE_MARKS) for line in cue.text]
    if sum(starts) < 2:
        return [cue]

    groups: list[list[str]] = []
    leading: list[str] = []
    for line, is_start in zip(cue.text, starts):
        if is_start:
            content = _LEADING_DASH_RE.sub("", line.lstrip()).strip()
            groups.append([content] if content else [])
        elif groups:
            groups[-1].append(line)
        else:
            leading.append(line)
    if leading:
        groups[0] = leading + groups[0]

    texts = [tuple(line for line in group if line) for group in groups]
    lengths = [len(" ".join(lines)) for lines in texts]
    total_length = sum(lengths)
    if total_length == 0:
        return [cue]

    start_ms = cue.interval.start.millis
    end_ms = cue.interval.end.millis
    duration = end_ms - start_ms

    fragments = []
    cursor = start_ms
    for position, (lines, length) in enumerate(zip(texts, lengths)):
        if position == len(texts) - 1:
            fragment_end = end_ms
        else:
            # Round half up in exact integer arithmetic, then clamp so the
            # running boundary can never overshoot the cue end.
            share = (2 * duration * length + total_length) // (2 * total_length)
            fragment_end = min(cursor + share, end_ms)
        fragments.append(
            SubtitleCue(
                index=position + 1,
                interval=TimeInterval(Timestamp(cursor), Timestamp(fragment_end)),
                text=lines,
            )
        )
        cursor = fragment_end
    return fragments


def clean_document(doc: SubtitleDocument) -> tuple[SubtitleDocument, CleaningReport]:
    """Apply markup stripping and dialogue splitting to every cue.

    Cues whose text becomes empty are dropped; the result is re-sorted and
    renumbered from 1. Returns the cleaned document and a report of counts.
    """
    kept: list[SubtitleCue] = []
    markup_stripped = dialogues_split = dropped_empty = 0

    for cue in doc.cues:
        if _has_markup(cue):
            markup_stripped += 1
        stripped = strip_markup(cue)
        if not stripped.text:
            dropped_empty += 1
            continue
        fragments = split_dialogue(stripped)
        if len(fragments) > 1:
            dialogues_split += 1
        for fragment in fragments:
            if fragment.text:
                kept.append(fragment)
            else:
                dropped_empty += 1

    ordered = sorted(kept, key=lambda c: (c.interval.start, c.interval.end))
    renumbered = tuple(replace(cue, index=position + 1) for position, cue in enumerate(ordered))
    cleaned = SubtitleDocument(cues=renumbered, language=doc.language, source_id=doc.source_id)
    report = CleaningReport(
        cues_in=len(doc.cues),
        cues_out=len(cleaned.cues),
        markup_stripped=markup_stripped,
        dialogues_split=dialogues_split,
        cues_dropped_empty=dropped_empty,
    )
    return cleaned, report
