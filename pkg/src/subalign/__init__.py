"""Time-overlap alignment of bilingual movie subtitles into parallel corpora."""

from .align import (
    AlignedPair,
    AlignmentConfig,
    AlignmentMode,
    OverlapKind,
    align_documents,
    align_one_to_many,
    align_one_to_one,
    apply_strict_filter,
    classify_overlap,
    document_match_ratio,
    overlap_ratio,
)
from .corpus import (
    CatalogRow,
    CorpusStats,
    PairManifest,
    alignment_precision_recall,
    build_catalog,
    compute_stats,
    generate_synthetic_pair,
    read_manifest,
    write_parallel,
)
from .model import (
    SCRIPT_ARABIC,
    SCRIPT_LATIN,
    SCRIPT_UNKNOWN,
    SubtitleCue,
    SubtitleDocument,
    SubtitleError,
    TimecodeError,
    TimeInterval,
    Timestamp,
    detect_script,
    format_timestamp,
    parse_timestamp,
)
from .preprocess import CleaningReport, clean_document, split_dialogue, strip_markup
from .srt import CorruptDocumentError, SubtitleDecodeError, parse_srt, serialize_srt

__version__ = "0.1.0"

__all__ = [
    "AlignedPair",
    "AlignmentConfig",
    "AlignmentMode",
    "CatalogRow",
    "CleaningReport",
    "CorpusStats",
    "CorruptDocumentError",
    "OverlapKind",
    "PairManifest",
    "SCRIPT_ARABIC",
    "SCRIPT_LATIN",
    "SCRIPT_UNKNOWN",
    "SubtitleCue",
    "SubtitleDecodeError",
    "SubtitleDocument",
    "SubtitleError",
    "TimecodeError",
    "TimeInterval",
    "Timestamp",
    "align_documents",
    "align_one_to_many",
    "align_one_to_one",
    "alignment_precision_recall",
    "apply_strict_filter",
    "build_catalog",
    "classify_overlap",
    "clean_document",
    "compute_stats",
    "detect_script",
    "document_match_ratio",
    "format_timestamp",
    "generate_synthetic_pair",
    "overlap_ratio",
    "parse_srt",
    "parse_timestamp",
    "read_manifest",
    "serialize_srt",
    "split_dialogue",
    "strip_markup",
    "write_parallel",
]
