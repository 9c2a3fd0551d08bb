"""Tests for SRT parsing and serialization, including the round-trip property."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subalign import (
    CorruptDocumentError,
    SubtitleCue,
    SubtitleDecodeError,
    SubtitleDocument,
    TimeInterval,
    parse_srt,
    serialize_srt,
)

WELL_FORMED = (
    "1\n"
    "00:00:01,000 --> 00:00:03,000\n"
    "Hello.\n"
    "\n"
    "2\n"
    "00:00:04,000 --> 00:00:06,500\n"
    "How are you?\n"
    "Fine, thanks.\n"
)


def _block(number: int, start: str, end: str, text: str) -> str:
    return f"{number}\n{start} --> {end}\n{text}\n"


class TestParseSrt:
    def test_well_formed_two_cues_no_warnings(self):
        doc, warnings = parse_srt(WELL_FORMED.encode())
        assert len(doc.cues) == 2
        assert warnings == []
        assert doc.cues[0].text == ("Hello.",)
        assert doc.cues[1].text == ("How are you?", "Fine, thanks.")
        assert doc.cues[1].interval.start.millis == 4000

    def test_shuffled_blocks_sorted_by_start(self):
        shuffled = (
            _block(1, "00:00:10,000", "00:00:12,000", "later")
            + "\n"
            + _block(2, "00:00:01,000", "00:00:02,000", "earlier")
        )
        doc, warnings = parse_srt(shuffled)
        assert [c.text[0] for c in doc.cues] == ["earlier", "later"]
        assert warnings == []

    def test_garbage_timecode_block_skipped_with_warning(self):
        # 6 blocks, 1 bad: below the 20% corruption cutoff, so the rest of
        # the file survives with exactly one warning.
        blocks = [
            _block(n, f"00:00:{10 + n:02d},000", f"00:00:{11 + n:02d},000", f"line {n}")
            for n in range(1, 6)
        ]
        blocks.insert(2, "99\ngarbage\nbad block\n")
        content = "\n".join(blocks)
        doc, warnings = parse_srt(content)
        assert len(doc.cues) == 5
        assert len([w for w in warnings if "skipped" in w]) == 1

    def test_undecodable_bytes_rejected(self):
        with pytest.raises(SubtitleDecodeError):
            parse_srt(b"1\n00:00:01,000 --> 00:00:02,000\n\xff\xfe broken\n")

    def test_mostly_bad_file_rejected_as_corrupt(self):
        content = _block(1, "00:00:01,000", "00:00:02,000", "ok") + "\nnot a block at all\n"
        with pytest.raises(CorruptDocumentError):
            parse_srt(content)

    def test_twenty_percent_bad_is_kept(self):
        blocks = [
            _block(n, f"00:01:{n:02d},000", f"00:01:{n:02d},900", f"line {n}") for n in range(1, 5)
        ]
        blocks.append("5\nbroken timecode line\ntext\n")
        doc, warnings = parse_srt("\n".join(blocks))
        assert len(doc.cues) == 4
        assert len(warnings) == 1

    def test_bom_and_crlf_accepted(self):
        content = b"\xef\xbb\xbf" + WELL_FORMED.replace("\n", "\r\n").encode()
        doc, warnings = parse_srt(content)
        assert len(doc.cues) == 2
        assert warnings == []

    def test_period_separator_normalized(self):
        doc, warnings = parse_srt(_block(1, "00:00:01.500", "00:00:02.000", "x"))
        assert doc.cues[0].interval.start.millis == 1500
        assert warnings == []

    def test_duplicate_index_skipped_with_warning(self):
        content = (
            _block(1, "00:00:01,000", "00:00:02,000", "first")
            + "\n"
            + _block(1, "00:00:03,000", "00:00:04,000", "dup")
            + "\n"
            + _block(2, "00:00:05,000", "00:00:06,000", "second")
            + "\n"
            + _block(3, "00:00:07,000", "00:00:08,000", "third")
            + "\n"
            + _block(4, "00:00:09,000", "00:00:10,000", "fourth")
        )
        doc, warnings = parse_srt(content)
        assert [c.text[0] for c in doc.cues] == ["first", "second", "third", "fourth"]
        assert any("duplicate" in w for w in warnings)

    def test_zero_length_and_overlapping_cues_flagged_not_repaired(self):
        content = (
            _block(1, "00:00:01,000", "00:00:01,000", "zero")
            + "\n"
            + _block(2, "00:00:01,000", "00:00:05,000", "a")
            + "\n"
            + _block(3, "00:00:04,000", "00:00:06,000", "b")
        )
        doc, warnings = parse_srt(content)
        assert len(doc.cues) == 3
        assert any("zero-length" in w for w in warnings)
        assert any("overlap" in w for w in warnings)

    def test_empty_input_gives_empty_document(self):
        doc, warnings = parse_srt(b"")
        assert doc.cues == ()
        assert warnings == []


class TestSerializeSrt:
    def test_empty_document(self):
        assert serialize_srt(SubtitleDocument(cues=())) == ""

    def test_single_cue_exact_bytes(self):
        doc = SubtitleDocument(
            cues=(SubtitleCue(index=1, interval=TimeInterval.from_millis(0, 1000), text=("Hi",)),)
        )
        assert serialize_srt(doc) == "1\n00:00:00,000 --> 00:00:01,000\nHi\n"

    def test_indices_renumbered_from_one(self):
        doc = SubtitleDocument(
            cues=(
                SubtitleCue(index=7, interval=TimeInterval.from_millis(0, 1000), text=("a",)),
                SubtitleCue(index=9, interval=TimeInterval.from_millis(2000, 3000), text=("b",)),
            )
        )
        text = serialize_srt(doc)
        assert text.startswith("1\n")
        assert "\n\n2\n" in text


_LINE_ALPHABET = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJ0123456789 م.,!?'-"

_line = (
    st.text(alphabet=_LINE_ALPHABET, min_size=1, max_size=30)
    .map(lambda s: " ".join(s.split()))
    .filter(bool)
)

_cue_shapes = st.lists(
    st.tuples(
        st.integers(min_value=0, max_value=5000),  # gap before the cue
        st.integers(min_value=0, max_value=8000),  # duration (zero-length allowed)
        st.lists(_line, min_size=1, max_size=3),
    ),
    min_size=0,
    max_size=12,
)


def _build_document(shapes) -> SubtitleDocument:
    cues = []
    clock = 0
    for position, (gap, duration, lines) in enumerate(shapes):
        start = clock + gap
        end = start + duration
        clock = end
        cues.append(
            SubtitleCue(
                index=position + 1,
                interval=TimeInterval.from_millis(start, end),
                text=tuple(lines),
            )
        )
    return SubtitleDocument(cues=tuple(cues))


class TestRoundTrip:
    @settings(max_examples=150)
    @given(_cue_shapes)
    def test_parse_of_serialize_recovers_document(self, shapes):
        doc = _build_document(shapes)
        parsed, _ = parse_srt(serialize_srt(doc))
        assert [(c.interval, c.text) for c in parsed.cues] == [
            (c.interval, c.text) for c in doc.cues
        ]

    @given(_cue_shapes)
    def test_parsed_cues_sorted_by_start(self, shapes):
        doc = _build_document(shapes)
        parsed, _ = parse_srt(serialize_srt(doc))
        starts = [c.interval.start.millis for c in parsed.cues]
        assert starts == sorted(starts)
