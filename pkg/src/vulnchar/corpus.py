"""Labeled datasets of CVE descriptions.

Datasets are stored as UTF-8 JSON Lines, one object per line with keys
exactly {"cve_id", "description", "label"}.  Corpus values are immutable
after load and safe to share across threads.
"""

from __future__ import annotations

import json
import re
import statistics
from dataclasses import dataclass, field
from pathlib import Path

from .taxonomy import Characterization, characterization

CVE_ID_RE = re.compile(r"^CVE-\d{4}-\d{4,}$")


class DatasetError(ValueError):
    """A dataset file could not be parsed into a valid corpus."""


class MalformedCveIdError(ValueError):
    def __init__(self, cve_id: str):
        super().__init__(f"malformed CVE id {cve_id!r}; expected CVE-YYYY-NNNN...")
        self.cve_id = cve_id


def _check_cve_id(cve_id: str) -> str:
    if not CVE_ID_RE.match(cve_id):
        raise MalformedCveIdError(cve_id)
    return cve_id


@dataclass(frozen=True)
class CveRecord:
    """A vulnerability report: unique id plus its free-text description."""

    cve_id: str
    description: str
    source: str | None = None

    def __post_init__(self):
        _check_cve_id(self.cve_id)
        if not self.description.strip():
            raise ValueError(f"{self.cve_id}: description is empty")


@dataclass(frozen=True)
class LabeledExample:
    """A CVE description paired with exactly one characterization."""

    cve_id: str
    description: str
    label: Characterization

    def __post_init__(self):
        _check_cve_id(self.cve_id)
        if not self.description.strip():
            raise ValueError(f"{self.cve_id}: description is empty")


@dataclass(frozen=True)
class Corpus:
    """An ordered collection of labeled examples."""

    examples: tuple[LabeledExample, ...]
    class_counts: dict[Characterization, int] = field(init=False, compare=False)

    def __post_init__(self):
        counts: dict[Characterization, int] = {}
        for ex in self.examples:
            counts[ex.label] = counts.get(ex.label, 0) + 1
        object.__setattr__(self, "class_counts", counts)

    def __len__(self) -> int:
        return len(self.examples)

    @property
    def labels(self) -> list[Characterization]:
        return [ex.label for ex in self.examples]

    @property
    def descriptions(self) -> list[str]:
        return [ex.description for ex in self.examples]

    def classes(self) -> list[Characterization]:
        """Distinct classes present, ordered by taxonomy index."""
        return sorted(self.class_counts, key=lambda c: c.index)


def load_labeled(path: str | Path) -> Corpus:
    """Load a JSON Lines dataset, preserving file order.

    Raises DatasetError naming the offending line on bad JSON, missing or
    extra keys, unknown labels, or empty descriptions.
    """
    examples = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as e:
                raise DatasetError(f"{path}:{lineno}: invalid JSON: {e.msg}") from e
            if not isinstance(record, dict) or set(record) != {
                "cve_id",
                "description",
                "label",
            }:
                raise DatasetError(
                    f"{path}:{lineno}: expected exactly the keys cve_id, description, label"
                )
            try:
                label = characterization(record["label"])
                example = LabeledExample(record["cve_id"], record["description"], label)
            except ValueError as e:
                raise DatasetError(f"{path}:{lineno}: {e}") from e
            examples.append(example)
    return Corpus(tuple(examples))


def save_labeled(corpus: Corpus, path: str | Path) -> None:
    """Write a corpus back to JSON Lines; load_labeled(save_labeled(c)) == c."""
    with open(path, "w", encoding="utf-8") as fh:
        for ex in corpus.examples:
            fh.write(
                json.dumps(
                    {
                        "cve_id": ex.cve_id,
                        "description": ex.description,
                        "label": ex.label.name,
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )


@dataclass
class ValidationReport:
    """Findings from checking a corpus against the dataset contract.

    Duplicate ids are errors; classes under the minimum count are warnings
    (they only matter once stratified cross-validation enters the picture).
    """

    class_counts: dict[Characterization, int]
    duplicate_ids: list[tuple[str, list[str]]]
    below_minimum: list[tuple[Characterization, int]]
    min_count: int

    @property
    def errors(self) -> list[str]:
        return [
            f"duplicate cve_id {cve_id} (labels: {', '.join(labels)})"
            for cve_id, labels in self.duplicate_ids
        ]

    @property
    def warnings(self) -> list[str]:
        return [
            f"class {c.name} has {n} example(s), below minimum {self.min_count}"
            for c, n in self.below_minimum
        ]

    @property
    def ok(self) -> bool:
        return not self.errors


def validate(corpus: Corpus, min_count: int = 2) -> ValidationReport:
    """Report per-class counts, duplicate ids, and classes below ``min_count``."""
    seen: dict[str, list[str]] = {}
    for ex in corpus.examples:
        seen.setdefault(ex.cve_id, []).append(ex.label.name)
    duplicates = [(cve_id, labels) for cve_id, labels in seen.items() if len(labels) > 1]
    below = sorted(
        ((c, n) for c, n in corpus.class_counts.items() if n < min_count),
        key=lambda item: item[0].index,
    )
    return ValidationReport(dict(corpus.class_counts), duplicates, below, min_count)


@dataclass(frozen=True)
class DistributionSummary:
    min: int
    max: int
    median: float
    total: int


def summarize(corpus: Corpus) -> DistributionSummary:
    """Min / max / median / total of the per-class example counts."""
    if not corpus.examples:
        raise ValueError("cannot summarize an empty corpus")
    counts = list(corpus.class_counts.values())
    return DistributionSummary(
        min=min(counts),
        max=max(counts),
        median=statistics.median(counts),
        total=sum(counts),
    )
