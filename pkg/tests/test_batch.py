"""Seeded batches, manifests and summaries."""

import pytest

from src.errors import InputFormatError
from src.lab.batch import (
    STATEMENTS,
    load_manifest,
    parse_seed_range,
    run_batch,
    run_instance,
    run_manifest,
    summarize,
)
from src.utils.report import exact_report


@pytest.mark.parametrize("statement_id", sorted(STATEMENTS))
def test_every_statement_holds_at_its_lowest_dimension(statement_id, small_config):
    dim = STATEMENTS[statement_id].min_dim
    reports = run_batch(statement_id, dim, range(3), small_config)
    assert len(reports) == 3
    assert all(r.statement_id == statement_id for r in reports)
    assert all(r.holds for r in reports), [r.to_dict() for r in reports if not r.holds]


@pytest.mark.parametrize(
    "statement_id",
    sorted(s for s, st in STATEMENTS.items() if st.min_dim <= 2 <= st.max_dim and s != "mc-volume"),
)
def test_every_statement_holds_in_the_plane(statement_id, small_config):
    reports = run_batch(statement_id, 2, range(3), small_config)
    assert all(r.holds for r in reports), [r.to_dict() for r in reports if not r.holds]


def test_instances_are_reproducible(small_config):
    first = run_instance("loss-single", 2, 7, small_config)
    again = run_instance("loss-single", 2, 7, small_config)
    assert first == again
    assert run_instance("loss-single", 2, 8, small_config).inputs_digest != first.inputs_digest


def test_batches_run_in_seed_order(small_config):
    reports = run_batch("nu-max-concavity", 2, [2, 0, 1], small_config)
    assert [r.inputs_digest for r in reports] == [
        run_instance("nu-max-concavity", 2, seed, small_config).inputs_digest for seed in (0, 1, 2)
    ]


@pytest.mark.parametrize("text, expected", [("0..9", range(0, 10)), ("5", range(5, 6)), (" 3..3 ", range(3, 4))])
def test_parse_seed_range(text, expected):
    assert parse_seed_range(text) == expected


@pytest.mark.parametrize("text", ["a..b", "5..2", "-1..3", "1...3"])
def test_parse_seed_range_rejects(text):
    with pytest.raises(InputFormatError):
        parse_seed_range(text)


def test_unknown_statement_and_dimension(small_config):
    with pytest.raises(InputFormatError):
        run_batch("no-such-statement", 2, range(1), small_config)
    with pytest.raises(InputFormatError):
        run_batch("riemann-surface", 2, range(1), small_config)
    with pytest.raises(InputFormatError):
        run_batch("loss-mixed", 1, range(1), small_config)
    with pytest.raises(InputFormatError):
        run_batch("mixed-volume-oracle", 5, range(1), small_config)


def test_manifest(tmp_path, small_config):
    path = tmp_path / "batches.yaml"
    path.write_text(
        "- {statement: riemann-surface, dim: 1, seeds: '0..1'}\n"
        "- {statement: lelong-monotone, dim: [1, 2], seeds: '4'}\n"
    )
    jobs = load_manifest(path)
    assert [(s, d, list(r)) for s, d, r in jobs] == [
        ("riemann-surface", 1, [0, 1]),
        ("lelong-monotone", 1, [4]),
        ("lelong-monotone", 2, [4]),
    ]
    reports = run_manifest(path, small_config)
    assert len(reports) == 4 and all(r.holds for r in reports)


@pytest.mark.parametrize(
    "body",
    [
        "statement: minkowski\n",
        "- {statement: minkowski}\n",
        "- {statement: minkowski, dim: two, seeds: '0'}\n",
        "- {statement: minkowski, dim: 2, seeds: '0'\n",
    ],
)
def test_malformed_manifests(tmp_path, body):
    path = tmp_path / "bad.yaml"
    path.write_text(body)
    with pytest.raises(InputFormatError):
        load_manifest(path)


def test_missing_manifest(tmp_path):
    with pytest.raises(InputFormatError):
        load_manifest(tmp_path / "missing.yaml")


def test_summarize_counts_failures():
    reports = [
        exact_report("a", "1", 2, 1),
        exact_report("a", "2", 0, 1),
        exact_report("b", "3", 1, 1, relation="=="),
    ]
    frame = summarize(reports)
    assert list(frame.columns) == ["statement", "count", "failures", "min_slack"]
    rows = {row["statement"]: row for _, row in frame.iterrows()}
    assert rows["a"]["count"] == 2 and rows["a"]["failures"] == 1 and rows["a"]["min_slack"] == -1.0
    assert rows["b"]["failures"] == 0


def test_summarize_empty():
    assert summarize([]).empty
