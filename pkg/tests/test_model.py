"""Tests for timestamps, intervals, cues, documents, and script detection."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from subalign import (
    SCRIPT_ARABIC,
    SCRIPT_LATIN,
    SCRIPT_UNKNOWN,
    SubtitleCue,
    SubtitleDocument,
    TimecodeError,
    TimeInterval,
    Timestamp,
    detect_script,
    format_timestamp,
    parse_timestamp,
)
from subalign.model import MAX_SRT_MILLIS


def _cue(index: int, start_ms: int, end_ms: int, *lines: str) -> SubtitleCue:
    return SubtitleCue(
        index=index, interval=TimeInterval.from_millis(start_ms, end_ms), text=tuple(lines)
    )


class TestParseTimestamp:
    def test_zero(self):
        assert parse_timestamp("00:00:00,000") == Timestamp(0)

    def test_positional_arithmetic(self):
        assert parse_timestamp("01:02:03,456") == Timestamp(3_723_456)

    def test_period_separator_tolerated(self):
        assert parse_timestamp("00:00:01.500") == Timestamp(1_500)

    @pytest.mark.parametrize(
        "text,offset",
        [
            ("garbage", 0),
            ("0a:00:00,000", 1),
            ("00.00:00,000", 2),
            ("00:00:00;000", 8),
            ("00:00:00,00", 11),
            ("00:00:00,0000", 12),
            ("00:00:00,000 ", 12),
        ],
    )
    def test_malformed_names_byte_offset(self, text, offset):
        with pytest.raises(TimecodeError) as excinfo:
            parse_timestamp(text)
        assert excinfo.value.offset == offset
        assert str(offset) in str(excinfo.value)

    def test_non_ascii_digits_rejected(self):
        with pytest.raises(TimecodeError):
            parse_timestamp("٠٠:00:00,000")


class TestFormatTimestamp:
    def test_canonical_form(self):
        assert format_timestamp(Timestamp(3_723_456)) == "01:02:03,456"

    def test_rejects_hundred_hours(self):
        with pytest.raises(ValueError):
            format_timestamp(Timestamp(MAX_SRT_MILLIS))

    @given(st.integers(min_value=0, max_value=MAX_SRT_MILLIS - 1))
    def test_round_trip_over_full_domain(self, millis):
        ts = Timestamp(millis)
        assert parse_timestamp(format_timestamp(ts)) == ts

    @given(
        st.integers(0, 99),
        st.integers(0, 59),
        st.integers(0, 59),
        st.integers(0, 999),
    )
    def test_format_is_inverse_of_parse(self, h, m, s, ms):
        text = f"{h:02d}:{m:02d}:{s:02d},{ms:03d}"
        assert format_timestamp(parse_timestamp(text)) == text


class TestDomainTypes:
    def test_negative_timestamp_rejected(self):
        with pytest.raises(ValueError):
            Timestamp(-1)

    def test_interval_end_before_start_rejected(self):
        with pytest.raises(ValueError):
            TimeInterval.from_millis(10, 5)

    def test_zero_length_interval_permitted(self):
        assert TimeInterval.from_millis(5, 5).duration_ms == 0

    def test_cue_rejects_unclean_lines(self):
        interval = TimeInterval.from_millis(0, 1000)
        with pytest.raises(ValueError):
            SubtitleCue(index=1, interval=interval, text=(" padded ",))
        with pytest.raises(ValueError):
            SubtitleCue(index=1, interval=interval, text=("",))
        with pytest.raises(ValueError):
            SubtitleCue(index=1, interval=interval, text=("two\nlines",))

    def test_cue_rejects_non_positive_index(self):
        with pytest.raises(ValueError):
            _cue(0, 0, 1000, "x")

    def test_document_sorts_on_construction(self):
        doc = SubtitleDocument(cues=(_cue(1, 5000, 6000, "b"), _cue(2, 0, 1000, "a")))
        assert [c.text[0] for c in doc.cues] == ["a", "b"]

    def test_document_tie_broken_by_end(self):
        doc = SubtitleDocument(cues=(_cue(1, 0, 9000, "long"), _cue(2, 0, 1000, "short")))
        assert [c.text[0] for c in doc.cues] == ["short", "long"]

    def test_document_rejects_duplicate_indices(self):
        with pytest.raises(ValueError):
            SubtitleDocument(cues=(_cue(3, 0, 1000, "a"), _cue(3, 2000, 3000, "b")))


class TestDetectScript:
    def test_pure_ascii_is_latin(self):
        doc = SubtitleDocument(cues=(_cue(1, 0, 1000, "Hello there, friend!"),))
        assert detect_script(doc) == SCRIPT_LATIN

    def test_pure_arabic(self):
        doc = SubtitleDocument(cues=(_cue(1, 0, 1000, "مرحبا بالعالم"),))
        assert detect_script(doc) == SCRIPT_ARABIC

    def test_no_letters_is_unknown(self):
        doc = SubtitleDocument(cues=(_cue(1, 0, 1000, "123 456 ... !!"),))
        assert detect_script(doc) == SCRIPT_UNKNOWN

    def test_majority_rule_on_near_even_mix(self):
        # 5 Latin letters vs 4 Arabic letters: one Arabic letter short of an
        # even split, so Latin holds the majority.
        arabic = "مرحب"
        latin = "abcde"
        assert len(arabic) == 4 and len(latin) == 5
        doc = SubtitleDocument(cues=(_cue(1, 0, 1000, f"{arabic} {latin}"),))
        assert detect_script(doc) == SCRIPT_LATIN

    def test_digits_and_punctuation_ignored(self):
        doc = SubtitleDocument(cues=(_cue(1, 0, 1000, "ب 12345!!??"),))
        assert detect_script(doc) == SCRIPT_ARABIC
