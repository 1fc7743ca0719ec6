"""Annotation file IO for the manual evaluation workflow.

One XML document holds one annotator's judgments: per target sentence, the
generated clauses each carry an error tag (a-f) and a 0-5 rating, plus an
optional best-realisation choice and a free-text generation suggestion.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import Sequence
from xml.sax.saxutils import escape

ERROR_TAGS = ("a", "b", "c", "d", "e", "f")

ERROR_DESCRIPTIONS = {
    "a": "morphological",
    "b": "syntactic",
    "c": "lexicon",
    "d": "grammar",
    "e": "target",
    "f": "lemmatiser",
}

RATING_RANGE = range(0, 6)


class AnnotationSchemaError(Exception):
    """The annotation document violates the expected structure or values."""


@dataclass
class GeneratedClause:
    text: str
    error: str
    rating: int

    def __post_init__(self):
        if self.error not in ERROR_TAGS:
            raise AnnotationSchemaError(f"unknown error tag {self.error!r}")
        if self.rating not in RATING_RANGE:
            raise AnnotationSchemaError(
                f"rating {self.rating!r} outside 0-5"
            )


@dataclass
class AnnotationRecord:
    target: str
    clauses: list[GeneratedClause] = field(default_factory=list)
    best_realisation: int | None = None  # 1-based clause index
    suggestion: str | None = None

    def __post_init__(self):
        if self.best_realisation is not None and not (
            1 <= self.best_realisation <= len(self.clauses)
        ):
            raise AnnotationSchemaError(
                f"best realisation {self.best_realisation} does not index "
                f"{len(self.clauses)} clauses"
            )


def read_annotations(xml_text: str) -> list[AnnotationRecord]:
    try:
        root = ET.fromstring(xml_text)
    except ET.ParseError as exc:
        raise AnnotationSchemaError(f"malformed XML: {exc}") from exc
    if root.tag != "TAGGING":
        raise AnnotationSchemaError(f"root element is {root.tag!r}, not TAGGING")
    records = []
    for clause_el in root:
        if clause_el.tag != "CLAUSE":
            raise AnnotationSchemaError(f"unexpected element {clause_el.tag!r}")
        records.append(_read_clause(clause_el))
    return records


def _read_clause(clause_el: ET.Element) -> AnnotationRecord:
    target = None
    clauses: list[GeneratedClause] = []
    best = None
    suggestion = None
    for child in clause_el:
        if child.tag == "TARGET":
            target = (child.text or "").strip()
        elif child.tag == "Generated_Clauses":
            for generated in child:
                if generated.tag != "Clause":
                    raise AnnotationSchemaError(
                        f"unexpected element {generated.tag!r}"
                    )
                text = (generated.text or "").strip()
                error = None
                rating = None
                for detail in generated:
                    if detail.tag == "Error":
                        error = (detail.text or "").strip()
                    elif detail.tag == "Rating":
                        raw = (detail.text or "").strip()
                        try:
                            rating = int(raw)
                        except ValueError:
                            raise AnnotationSchemaError(
                                f"non-integer rating {raw!r}"
                            ) from None
                    else:
                        raise AnnotationSchemaError(
                            f"unexpected element {detail.tag!r} in Clause"
                        )
                if error is None or rating is None:
                    raise AnnotationSchemaError(
                        "Clause element without Error and Rating"
                    )
                clauses.append(GeneratedClause(text=text, error=error, rating=rating))
        elif child.tag == "Best_realisation":
            best = int((child.text or "").strip())
        elif child.tag == "Suggestion_for_Generation":
            suggestion = (child.text or "").strip()
        else:
            raise AnnotationSchemaError(f"unexpected element {child.tag!r}")
    if target is None:
        raise AnnotationSchemaError("CLAUSE without TARGET")
    return AnnotationRecord(
        target=target, clauses=clauses, best_realisation=best, suggestion=suggestion
    )


def write_annotations(records: Sequence[AnnotationRecord]) -> str:
    out = ['<?xml version="1.0" encoding="UTF-8"?>', "<TAGGING>"]
    for record in records:
        out.append(" <CLAUSE>")
        out.append(f"  <TARGET>{escape(record.target)}</TARGET>")
        out.append("   <Generated_Clauses>")
        for clause in record.clauses:
            out.append("    <Clause>")
            out.append(f"     {escape(clause.text)}")
            out.append(f"     <Error>{clause.error}</Error>")
            out.append(f"     <Rating>{clause.rating}</Rating>")
            out.append("    </Clause>")
        out.append("   </Generated_Clauses>")
        if record.best_realisation is not None:
            out.append(
                f"  <Best_realisation>{record.best_realisation}</Best_realisation>"
            )
        if record.suggestion is not None:
            out.append(
                "  <Suggestion_for_Generation>"
                f"{escape(record.suggestion)}"
                "</Suggestion_for_Generation>"
            )
        out.append(" </CLAUSE>")
    out.append("</TAGGING>")
    return "\n".join(out) + "\n"


def check_alignment(annotator_docs: Sequence[Sequence[AnnotationRecord]]) -> None:
    """Annotator documents must cover the same targets with the same clauses."""
    if not annotator_docs:
        raise AnnotationSchemaError("no annotation documents")
    reference = [(r.target, len(r.clauses)) for r in annotator_docs[0]]
    for i, records in enumerate(annotator_docs[1:], start=2):
        shape = [(r.target, len(r.clauses)) for r in records]
        if shape != reference:
            raise AnnotationSchemaError(
                f"annotator document {i} does not align with the first "
                "(different targets or clause counts)"
            )


def reliability_from_annotations(
    annotator_docs: Sequence[Sequence[AnnotationRecord]],
) -> list[list[str | None]]:
    """Rows of error tags per annotator, units aligned by clause position."""
    check_alignment(annotator_docs)
    rows: list[list[str | None]] = []
    for records in annotator_docs:
        row: list[str | None] = []
        for record in records:
            for clause in record.clauses:
                row.append(clause.error)
        rows.append(row)
    return rows


def mean_rating(records: Sequence[AnnotationRecord]) -> float:
    """Arithmetic mean of all clause ratings in one annotator's document."""
    ratings = [c.rating for r in records for c in r.clauses]
    if not ratings:
        raise ValueError("no ratings present")
    return sum(ratings) / len(ratings)


NO_CONSENSUS_ERROR = "no consensus about error type"
NO_CONSENSUS_BEST = "no consensus about best realisation"


@dataclass
class UnitConsensus:
    """Aggregated judgment for one generated clause across annotators."""

    target: str
    text: str
    error: str | None  # unique majority error tag, else None
    mean_rating: float
    tags: list[str] = field(default_factory=list)


@dataclass
class ConsensusSummary:
    units: list[UnitConsensus]
    best_realisation: dict[str, int | None]  # target -> agreed 1-based index

    @property
    def total_consensus(self) -> int:
        return sum(
            1
            for u in self.units
            if u.error is not None
            and self.best_realisation.get(u.target, 0) is not None
        )

    @property
    def no_error_consensus(self) -> int:
        return sum(
            1
            for u in self.units
            if u.error is None
            and self.best_realisation.get(u.target, 0) is not None
        )

    @property
    def no_best_consensus(self) -> int:
        return sum(
            1
            for u in self.units
            if self.best_realisation.get(u.target, 0) is None
        )

    def to_dict(self) -> dict:
        return {
            "total_consensus": self.total_consensus,
            "no_consensus_about_error_type": self.no_error_consensus,
            "no_consensus_about_best_realisation": self.no_best_consensus,
            "units": [
                {
                    "target": u.target,
                    "text": u.text,
                    "error": u.error if u.error is not None else NO_CONSENSUS_ERROR,
                    "mean_rating": u.mean_rating,
                    "tags": u.tags,
                }
                for u in self.units
            ],
        }


def _unique_mode(items: Sequence) -> "object | None":
    """The single most frequent item, or None on a tie for first place."""
    counts: dict = {}
    for item in items:
        counts[item] = counts.get(item, 0) + 1
    best = max(counts.values())
    winners = [item for item, c in counts.items() if c == best]
    return winners[0] if len(winners) == 1 else None


def aggregate_annotations(
    annotator_docs: Sequence[Sequence[AnnotationRecord]],
) -> ConsensusSummary:
    """Combine annotators: majority-vote errors, mean ratings, consensus tags.

    Per generated clause the error tag is settled by majority vote (a tie
    means no consensus) and the rating is the arithmetic mean.  Per target,
    the chosen best realisation must have a unique majority as well.
    """
    check_alignment(annotator_docs)
    units: list[UnitConsensus] = []
    best: dict[str, int | None] = {}
    reference = annotator_docs[0]
    for rec_index, record in enumerate(reference):
        per_annotator = [doc[rec_index] for doc in annotator_docs]
        for clause_index, clause in enumerate(record.clauses):
            tags = [doc_rec.clauses[clause_index].error for doc_rec in per_annotator]
            ratings = [doc_rec.clauses[clause_index].rating for doc_rec in per_annotator]
            units.append(
                UnitConsensus(
                    target=record.target,
                    text=clause.text,
                    error=_unique_mode(tags),
                    mean_rating=sum(ratings) / len(ratings),
                    tags=tags,
                )
            )
        if len(record.clauses) <= 1:
            best[record.target] = 1 if record.clauses else None
        else:
            choices = [
                doc_rec.best_realisation
                for doc_rec in per_annotator
                if doc_rec.best_realisation is not None
            ]
            best[record.target] = _unique_mode(choices) if choices else None
    return ConsensusSummary(units=units, best_realisation=best)
