"""Domain types for subtitle documents: timestamps, intervals, cues, documents.

Times are kept in integer milliseconds (the native precision of SRT
timecodes); conversions to seconds happen only where a score formula
requires them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

MS_PER_HOUR = 3_600_000
MS_PER_MINUTE = 60_000
MS_PER_SECOND = 1_000

# The SRT textual form HH:MM:SS,mmm covers timestamps below 100 hours.
MAX_SRT_MILLIS = 100 * MS_PER_HOUR

SCRIPT_ARABIC = "arabic"
SCRIPT_LATIN = "latin"
SCRIPT_UNKNOWN = "unknown"

# \d would also accept non-ASCII digits, which SRT does not allow.
_TIMECODE_RE = re.compile(r"([0-9]{2}):([0-9]{2}):([0-9]{2})[,.]([0-9]{3})")

# Expected character class at each position of a timecode, used to locate
# the first offending byte of a malformed input.
_TIMECODE_SHAPE = "dd:dd:dd.ddd"

_ARABIC_BLOCKS = (
    (0x0600, 0x06FF),
    (0x0750, 0x077F),
    (0x08A0, 0x08FF),
    (0xFB50, 0xFDFF),
    (0xFE70, 0xFEFF),
)
_LATIN_BLOCKS = (
    (0x0041, 0x005A),
    (0x0061, 0x007A),
    (0x00C0, 0x00FF),
    (0x0100, 0x024F),
    (0x1E00, 0x1EFF),
)


class SubtitleError(Exception):
    """Base class for all subtitle parsing/processing errors."""


class TimecodeError(SubtitleError, ValueError):
    """Malformed SRT timecode; carries the offset of the offending byte."""

    def __init__(self, text: str, offset: int):
        self.text = text
        self.offset = offset
        super().__init__(f"malformed SRT timecode {text!r}: unexpected input at byte offset {offset}")


@dataclass(frozen=True, order=True)
class Timestamp:
    """A point on the movie timeline, in milliseconds since the start."""

    millis: int

    def __post_init__(self) -> None:
        if self.millis < 0:
            raise ValueError(f"timestamp must be non-negative, got {self.millis}")

    @property
    def seconds(self) -> float:
        return self.millis / MS_PER_SECOND


@dataclass(frozen=True)
class TimeInterval:
    """A closed time span [start, end]. Zero-length intervals are legal."""

    start: Timestamp
    end: Timestamp

    def __post_init__(self) -> None:
        if self.end < self.start:
            raise ValueError(
                f"interval end {self.end.millis} ms precedes start {self.start.millis} ms"
            )

    @classmethod
    def from_millis(cls, start_ms: int, end_ms: int) -> TimeInterval:
        return cls(Timestamp(start_ms), Timestamp(end_ms))

    @property
    def duration_ms(self) -> int:
        return self.end.millis - self.start.millis

    def shifted(self, offset_ms: int) -> TimeInterval:
        """Return the interval moved by a constant offset (may not go negative)."""
        return TimeInterval.from_millis(self.start.millis + offset_ms, self.end.millis + offset_ms)


@dataclass(frozen=True)
class SubtitleCue:
    """One subtitle unit: sequence number, time interval, and text lines.

    Text lines are stored cleaned: non-empty, stripped, and free of line
    breaks. An empty line tuple is permitted so that cleaning stages can
    represent "nothing left"; document cleaning drops such cues.
    """

    index: int
    interval: TimeInterval
    text: tuple[str, ...]

    def __post_init__(self) -> None:
        if self.index < 1:
            raise ValueError(f"cue index must be positive, got {self.index}")
        if not isinstance(self.text, tuple):
            object.__setattr__(self, "text", tuple(self.text))
        for line in self.text:
            if not line or line != line.strip() or "\n" in line or "\r" in line:
                raise ValueError(f"cue text line must be non-empty, stripped, single-line: {line!r}")

    @property
    def joined_text(self) -> str:
        """All text lines joined into one whitespace-separated line."""
        return " ".join(self.text)


@dataclass(frozen=True)
class SubtitleDocument:
    """An ordered collection of cues from one subtitle file.

    Cues are re-sorted on construction by start time (end time breaks
    ties), and cue indices must be unique.
    """

    cues: tuple[SubtitleCue, ...]
    language: str = SCRIPT_UNKNOWN
    source_id: str = ""

    def __post_init__(self) -> None:
        cues = tuple(sorted(self.cues, key=lambda c: (c.interval.start, c.interval.end)))
        object.__setattr__(self, "cues", cues)
        seen: set[int] = set()
        for cue in cues:
            if cue.index in seen:
                raise ValueError(f"duplicate cue index {cue.index}")
            seen.add(cue.index)

    def __len__(self) -> int:
        return len(self.cues)

    def __iter__(self):
        return iter(self.cues)

    def __getitem__(self, position: int) -> SubtitleCue:
        return self.cues[position]


def _timecode_error_offset(text: str) -> int:
    """Byte offset of the first character that breaks the HH:MM:SS,mmm shape."""
    for i, expected in enumerate(_TIMECODE_SHAPE):
        if i >= len(text):
            return len(text.encode("utf-8"))
        ch = text[i]
        if expected == "d":
            ok = ch in "0123456789"
        elif expected == ".":
            ok = ch in ",."
        else:
            ok = ch == expected
        if not ok:
            return len(text[:i].encode("utf-8"))
    # Shape matched but there is trailing junk.
    return len(text[: len(_TIMECODE_SHAPE)].encode("utf-8"))


def parse_timestamp(text: str) -> Timestamp:
    """Parse an SRT timecode (``HH:MM:SS,mmm``; a period separator is tolerated).

    Raises:
        TimecodeError: naming the byte offset of the first offending character.
    """
    match = _TIMECODE_RE.fullmatch(text)
    if match is None:
        raise TimecodeError(text, _timecode_error_offset(text))
    hours, minutes, seconds, millis = (int(group) for group in match.groups())
    return Timestamp(
        hours * MS_PER_HOUR + minutes * MS_PER_MINUTE + seconds * MS_PER_SECOND + millis
    )


def format_timestamp(ts: Timestamp) -> str:
    """Render a timestamp in canonical SRT form (comma millisecond separator)."""
    if ts.millis >= MAX_SRT_MILLIS:
        raise ValueError(f"timestamp {ts.millis} ms does not fit the SRT form (< 100 hours)")
    hours, rest = divmod(ts.millis, MS_PER_HOUR)
    minutes, rest = divmod(rest, MS_PER_MINUTE)
    seconds, millis = divmod(rest, MS_PER_SECOND)
    return f"{hours:02d}:{minutes:02d}:{seconds:02d},{millis:03d}"


def _in_blocks(codepoint: int, blocks: tuple[tuple[int, int], ...]) -> bool:
    return any(lo <= codepoint <= hi for lo, hi in blocks)


def detect_script(doc: SubtitleDocument) -> str:
    """Classify the dominant script of a document's text.

    Returns ``arabic`` if at least half of the letter characters fall in
    Arabic Unicode blocks, ``latin`` if at least half fall in Latin blocks,
    and ``unknown`` otherwise. Digits, punctuation and whitespace are
    ignored.
    """
    return _dominant_script(doc.cues)


def _dominant_script(cues: tuple[SubtitleCue, ...]) -> str:
    arabic = latin = total = 0
    for cue in cues:
        for line in cue.text:
            for ch in line:
                if not ch.isalpha():
                    continue
                total += 1
                cp = ord(ch)
                if _in_blocks(cp, _ARABIC_BLOCKS):
                    arabic += 1
                elif _in_blocks(cp, _LATIN_BLOCKS):
                    latin += 1
    if total == 0:
        return SCRIPT_UNKNOWN
    if 2 * arabic >= total:
        return SCRIPT_ARABIC
    if 2 * latin >= total:
        return SCRIPT_LATIN
    return SCRIPT_UNKNOWN
