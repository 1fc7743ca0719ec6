import pytest

from expando.annotations import (
    NO_CONSENSUS_ERROR,
    AnnotationRecord,
    AnnotationSchemaError,
    GeneratedClause,
    aggregate_annotations,
    mean_rating,
    read_annotations,
    reliability_from_annotations,
    write_annotations,
)

EXAMPLE_XML = """<?xml version="1.0" encoding="UTF-8"?>
<TAGGING>
 <CLAUSE>
  <TARGET>Dropped my change.</TARGET>
   <Generated_Clauses>
    <Clause>
     Drop my change.
     <Error>b</Error>
     <Rating>1</Rating>
    </Clause>
    <Clause>
     I drop my change.
     <Error>a</Error>
     <Rating>2</Rating>
    </Clause>
  </Generated_Clauses>
  <Best_realisation>2</Best_realisation>
  <Suggestion_for_Generation>
   I dropped my change yesterday.
  </Suggestion_for_Generation>
 </CLAUSE>
</TAGGING>
"""


def test_read_example_document():
    (record,) = read_annotations(EXAMPLE_XML)
    assert record.target == "Dropped my change."
    assert [(c.text, c.error, c.rating) for c in record.clauses] == [
        ("Drop my change.", "b", 1),
        ("I drop my change.", "a", 2),
    ]
    assert record.best_realisation == 2
    assert record.suggestion == "I dropped my change yesterday."


def test_roundtrip_identity():
    records = read_annotations(EXAMPLE_XML)
    assert read_annotations(write_annotations(records)) == records


def test_rating_out_of_range_rejected():
    bad = EXAMPLE_XML.replace("<Rating>2</Rating>", "<Rating>7</Rating>")
    with pytest.raises(AnnotationSchemaError):
        read_annotations(bad)


def test_unknown_error_tag_rejected():
    bad = EXAMPLE_XML.replace("<Error>b</Error>", "<Error>z</Error>")
    with pytest.raises(AnnotationSchemaError):
        read_annotations(bad)


def test_best_realisation_must_index_clauses():
    with pytest.raises(AnnotationSchemaError):
        AnnotationRecord(
            target="x",
            clauses=[GeneratedClause(text="y", error="a", rating=3)],
            best_realisation=5,
        )


def test_reliability_rows_align_by_clause_position():
    records = read_annotations(EXAMPLE_XML)
    other = [
        AnnotationRecord(
            target="Dropped my change.",
            clauses=[
                GeneratedClause(text="Drop my change.", error="b", rating=2),
                GeneratedClause(text="I drop my change.", error="d", rating=1),
            ],
        )
    ]
    rows = reliability_from_annotations([records, other])
    assert rows == [["b", "a"], ["b", "d"]]


def test_mean_rating():
    records = read_annotations(EXAMPLE_XML)
    assert mean_rating(records) == 1.5


def test_misaligned_documents_rejected():
    records = read_annotations(EXAMPLE_XML)
    other = [AnnotationRecord(target="Different target.", clauses=[])]
    with pytest.raises(AnnotationSchemaError):
        reliability_from_annotations([records, other])


def _doc(error_pairs, best=None):
    return [
        AnnotationRecord(
            target="Dropped my change.",
            clauses=[
                GeneratedClause(text="Drop my change.", error=error_pairs[0], rating=1),
                GeneratedClause(text="I drop my change.", error=error_pairs[1], rating=3),
            ],
            best_realisation=best,
        )
    ]


def test_aggregate_majority_vote_and_mean_rating():
    docs = [
        _doc(("b", "a"), best=2),
        _doc(("b", "a"), best=2),
        _doc(("d", "a"), best=1),
    ]
    summary = aggregate_annotations(docs)
    first, second = summary.units
    assert first.error == "b"  # 2 vs 1 majority
    assert second.error == "a"  # unanimous
    assert first.mean_rating == 1.0
    assert second.mean_rating == 3.0
    assert summary.best_realisation["Dropped my change."] == 2
    assert summary.total_consensus == 2
    assert summary.no_best_consensus == 0


def test_aggregate_tie_means_no_consensus():
    docs = [_doc(("b", "a"), best=1), _doc(("d", "a"), best=2)]
    summary = aggregate_annotations(docs)
    first, second = summary.units
    assert first.error is None
    assert second.error == "a"
    # 1 vs 2 best-realisation tie: the whole target lacks best consensus
    assert summary.best_realisation["Dropped my change."] is None
    assert summary.no_best_consensus == 2
    assert summary.to_dict()["units"][0]["error"] == NO_CONSENSUS_ERROR


def test_aggregate_classes_partition_units():
    docs = [
        _doc(("b", "a"), best=2),
        _doc(("b", "e"), best=2),
        _doc(("d", "f"), best=1),
    ]
    summary = aggregate_annotations(docs)
    assert (
        summary.total_consensus
        + summary.no_error_consensus
        + summary.no_best_consensus
        == len(summary.units)
    )
