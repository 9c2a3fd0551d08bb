"""Reading and writing SubRip (SRT) files, bit-exact on output.

Canonical serialized form: LF line endings, cues renumbered from 1,
timecode lines ``HH:MM:SS,mmm --> HH:MM:SS,mmm`` with a single space on
each side of the arrow, one blank line between blocks, no trailing blank
line.
"""

from __future__ import annotations

import re
from itertools import pairwise

from .model import (
    SubtitleCue,
    SubtitleDocument,
    SubtitleError,
    TimecodeError,
    TimeInterval,
    _dominant_script,
    format_timestamp,
    parse_timestamp,
)

# A file is rejected as corrupt when more than this fraction of its blocks
# fails to parse; isolated bad blocks are skipped with a warning instead.
MAX_FAILED_BLOCK_FRACTION = 0.20

_BLANK_LINE_RE = re.compile(r"\n\s*\n")
_INDEX_RE = re.compile(r"[0-9]+")
_TIMECODE_LINE_RE = re.compile(r"(\S+)\s*-->\s*(\S+)")


class SubtitleDecodeError(SubtitleError):
    """The file content is not valid UTF-8."""


class CorruptDocumentError(SubtitleError):
    """Too many blocks of the file failed to parse."""


def parse_srt(data: bytes | str, source_id: str = "") -> tuple[SubtitleDocument, list[str]]:
    """Parse raw SRT content into a document plus a list of warnings.

    Input must be UTF-8 (an optional BOM is stripped; CRLF and LF are both
    accepted). Each block is expected to carry an index line, a timecode
    line, and at least one text line::

        1
        00:00:01,000 --> 00:00:04,000
        First subtitle text

    Malformed blocks are skipped and reported as warnings. The document is
    rejected with :class:`CorruptDocumentError` only when more than 20% of
    the blocks fail. Cues are re-sorted by start time; zero-length and
    mutually overlapping cues are preserved but flagged in the warnings.

    Raises:
        SubtitleDecodeError: if the bytes are not valid UTF-8.
        CorruptDocumentError: if too many blocks fail to parse.
    """
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8-sig")
        except UnicodeDecodeError as exc:
            raise SubtitleDecodeError(f"not valid UTF-8: {exc}") from exc
    else:
        text = data.lstrip("﻿")
    text = text.replace("\r\n", "\n").replace("\r", "\n")

    blocks = [b for b in _BLANK_LINE_RE.split(text) if b.strip()]
    cues: list[SubtitleCue] = []
    warnings: list[str] = []
    seen_indices: set[int] = set()
    failed = 0

    for block_no, block in enumerate(blocks, start=1):
        lines = [line.strip() for line in block.split("\n") if line.strip()]
        problem = _parse_block(lines, seen_indices, cues)
        if problem is not None:
            warnings.append(f"block {block_no}: skipped ({problem})")
            failed += 1

    if blocks and failed / len(blocks) > MAX_FAILED_BLOCK_FRACTION:
        raise CorruptDocumentError(
            f"{failed} of {len(blocks)} blocks failed to parse; file treated as corrupt"
        )

    doc = SubtitleDocument(
        cues=tuple(cues),
        language=_dominant_script(tuple(cues)),
        source_id=source_id,
    )
    warnings.extend(_timing_flags(doc))
    return doc, warnings


def _parse_block(lines: list[str], seen_indices: set[int], cues: list[SubtitleCue]) -> str | None:
    """Parse one block into `cues`; return a problem description on failure."""
    if len(lines) < 2:
        return "incomplete block"
    if not _INDEX_RE.fullmatch(lines[0]):
        return f"missing or invalid index line {lines[0]!r}"
    index = int(lines[0])
    if index < 1:
        return f"non-positive cue index {index}"
    if index in seen_indices:
        return f"duplicate cue index {index}"

    timecode = _TIMECODE_LINE_RE.fullmatch(lines[1])
    if timecode is None:
        return f"malformed timecode line {lines[1]!r}"
    try:
        start = parse_timestamp(timecode.group(1))
        end = parse_timestamp(timecode.group(2))
        interval = TimeInterval(start, end)
    except (TimecodeError, ValueError) as exc:
        return str(exc)

    text = tuple(lines[2:])
    if not text:
        return "no text lines"

    seen_indices.add(index)
    cues.append(SubtitleCue(index=index, interval=interval, text=text))
    return None


def _timing_flags(doc: SubtitleDocument) -> list[str]:
    flags = []
    for cue in doc.cues:
        if cue.interval.duration_ms == 0:
            flags.append(f"cue {cue.index}: zero-length interval")
    for prev, cur in pairwise(doc.cues):
        if prev.interval.end > cur.interval.start:
            flags.append(f"cues {prev.index} and {cur.index} overlap in time")
    return flags


def serialize_srt(doc: SubtitleDocument) -> str:
    """Render a document as canonical SRT text.

    Cues are renumbered from 1 in time order. ``parse_srt(serialize_srt(d))``
    reproduces ``d`` up to that renumbering. An empty document serializes to
    an empty string.
    """
    blocks = []
    for number, cue in enumerate(doc.cues, start=1):
        timecode = (
            f"{format_timestamp(cue.interval.start)} --> {format_timestamp(cue.interval.end)}"
        )
        blocks.append("\n".join((str(number), timecode, *cue.text)) + "\n")
    return "\n".join(blocks)
