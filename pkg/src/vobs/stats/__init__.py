"""Analysis pipeline for timing-treatment choice data."""

from .data import ChoiceDataset, ChoiceRecord, DatasetError, ingest_csv
from .deltas import DeltaRecord, compute_deltas
from .descriptive import ecdf, fosd, summarize
from .rank import StatsError, TestResult, rank_sum, signed_rank
from .report import IncompleteDesign, hypothesis_report
from .ttest import t_test, t_test_paired

__all__ = [
    "ChoiceDataset", "ChoiceRecord", "DatasetError", "DeltaRecord", "IncompleteDesign",
    "StatsError", "TestResult", "compute_deltas", "ecdf", "fosd", "hypothesis_report",
    "ingest_csv", "rank_sum", "signed_rank", "summarize", "t_test", "t_test_paired",
]
