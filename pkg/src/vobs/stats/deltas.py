"""Within-subject differences across timing treatments."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .data import ChoiceDataset

KINDS = ("claim", "invest", "return")


@dataclass(frozen=True)
class DeltaRecord:
    subject_id: str
    kind: str
    value: Fraction
    role: str


@dataclass(frozen=True)
class DeltaSet:
    kind: str
    records: tuple[DeltaRecord, ...]
    excluded: int

    def values(self, role: str | None = None) -> list[Fraction]:
        return [d.value for d in self.records if role is None or d.role == role]


def compute_deltas(dataset: ChoiceDataset, kind: str) -> DeltaSet:
    """Per-subject differences, sorted by subject id.

    claim:  td_seq minus td_sim, tagged with the td_seq role.
    invest: trust_if minus trust_tf, subjects who were investor in both.
    return: trust_tf minus trust_if, subjects who were trustee in both.
    Subjects missing a game or switching trust roles are counted in
    ``excluded``.
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    if kind == "claim":
        later, earlier = dataset.by_subject("td_seq"), dataset.by_subject("td_sim")
        role_filter = None
    elif kind == "invest":
        later, earlier = dataset.by_subject("trust_if"), dataset.by_subject("trust_tf")
        role_filter = "investor"
    else:
        later, earlier = dataset.by_subject("trust_tf"), dataset.by_subject("trust_if")
        role_filter = "trustee"
    subjects = sorted(set(later) | set(earlier))
    out, excluded = [], 0
    for s in subjects:
        a, b = later.get(s), earlier.get(s)
        if a is None or b is None:
            excluded += 1
            continue
        if role_filter is not None and not (a.role == b.role == role_filter):
            if a.role != b.role:
                excluded += 1
            continue
        out.append(DeltaRecord(s, kind, a.choice - b.choice, a.role))
    return DeltaSet(kind, tuple(out), excluded)
