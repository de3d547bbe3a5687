import json
from fractions import Fraction

import pytest

from src.hyperreal import LC
from src.ingest import (
    InputError,
    load_continuity_file,
    load_vector_records,
    standardize_count,
    standardize_lc_vector,
    standardize_scalar,
    standardize_vector,
)
from src.vector import vec, vec_equal

F = Fraction


@pytest.mark.parametrize("raw, expected", [
    ("3/4", F(3, 4)),
    ('"-2"', F(-2)),
    (5, F(5)),
    (0.25, F(1, 4)),
])
def test_standardize_scalar(raw, expected):
    assert standardize_scalar(raw) == expected


def test_standardize_scalar_rejects():
    with pytest.raises(InputError):
        standardize_scalar("1/0")


def test_standardize_vector_text_and_list():
    assert vec_equal(standardize_vector("[1, -1/2, 3]"), vec([1, "-1/2", 3]))
    assert vec_equal(standardize_vector(["1", 2]), vec([1, 2]))
    assert standardize_vector("[]").dim == 0
    with pytest.raises(InputError):
        standardize_vector("1, 2")


def test_load_cs_fixture(fixtures):
    records = load_vector_records(fixtures / "cs_pairs.txt", 2)
    assert len(records) == 7
    good = [r for r in records if r.error is None]
    assert len(good) == 7
    u, v = good[0].vectors
    assert vec_equal(u, vec([2, 4])) and vec_equal(v, vec([1, 2]))
    assert good[0].line == 2
    assert good[5].vectors[1] == vec([1, 0, 2])


def test_bad_lines_are_kept_with_their_error(tmp_path):
    path = tmp_path / "pairs.txt"
    path.write_text("[1, 2] [3, 4]\n\n[1/0] [1]\n[1] [2] [3]\n[1] oops [2]\n")
    records = load_vector_records(path, 2)
    assert [r.line for r in records] == [1, 3, 4, 5]
    assert records[0].error is None
    assert all(r.error for r in records[1:])
    assert "expected 2 vectors, found 3" in records[2].error


def test_load_json_pairs(fixtures):
    records = load_vector_records(fixtures / "cs_pairs.json", 2)
    assert len(records) == 4
    assert all(r.error is None for r in records)
    u, v = records[3].vectors
    assert vec_equal(u, vec(["1/2", "1/4"]))


def test_invalid_json_raises(tmp_path):
    path = tmp_path / "pairs.json"
    path.write_text('{"pairs": [')
    with pytest.raises(InputError):
        load_vector_records(path, 2)


def test_missing_file_raises(tmp_path):
    with pytest.raises(InputError):
        load_vector_records(tmp_path / "nope.txt", 2)


def test_load_continuity_text(fixtures):
    job = load_continuity_file(fixtures / "continuity_sum3.txt")
    assert job.expr.arity == 3
    assert not job.from_builtin
    assert [p.k for p in job.probes] == [1, None, 2]
    assert len(job.lc_pairs) == 2
    line, x, y = job.lc_pairs[0]
    assert x[1] == 2 * LC.epsilon(1)
    assert y[0] == 1 + LC.epsilon(2)
    assert job.errors == []


def test_load_continuity_json(fixtures):
    job = load_continuity_file(fixtures / "continuity_prod2.json")
    assert job.from_builtin
    assert job.source == "prod2"
    assert len(job.probes) == 3
    assert len(job.lc_pairs) == 1


def test_continuity_file_errors(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("arity 2\nexpr x1 + x3\n")
    with pytest.raises(InputError) as info:
        load_continuity_file(path)
    assert info.value.line == 2

    path.write_text("arity 2\nexpr x1 + x2\nfrobnicate 3\n")
    with pytest.raises(InputError):
        load_continuity_file(path)

    path.write_text("builtin sum(2)\nprobe [1, 2] [1, 1] 1\nprobe [1 2]\nlc_pair [[]] \n")
    job = load_continuity_file(path)
    assert len(job.probes) == 1
    assert [line for line, _ in job.errors] == [3, 4]


def test_continuity_json_object_required(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps([1, 2]))
    with pytest.raises(InputError):
        load_continuity_file(path)


@pytest.mark.parametrize("raw, expected", [(3, 3), ("2", 2), (" 0 ", 0)])
def test_standardize_count(raw, expected):
    assert standardize_count(raw, "arity", 0) == expected


@pytest.mark.parametrize("raw", ["three", 2.5, True, None, -1, "1.0"])
def test_standardize_count_rejects(raw):
    with pytest.raises(InputError):
        standardize_count(raw, "arity", 0, line=4)


@pytest.mark.parametrize("arity", ['"three"', "2.5", "true", "-1"])
def test_continuity_json_bad_arity(tmp_path, arity):
    path = tmp_path / "c.json"
    path.write_text('{"arity": %s, "expr": "x1 + x2"}' % arity)
    with pytest.raises(InputError):
        load_continuity_file(path)


def test_continuity_text_bad_arity(tmp_path):
    path = tmp_path / "c.txt"
    path.write_text("arity 2.5\nexpr x1 + x2\n")
    with pytest.raises(InputError) as info:
        load_continuity_file(path)
    assert info.value.line == 1


def test_bad_orders_are_rejected_per_record(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({
        "builtin": "sum(1)",
        "probes": [
            {"x": ["1"], "h": ["1"], "k": 1.5},
            {"x": ["1"], "h": ["1"], "k": 0},
            {"x": ["1"], "h": ["1"], "k": True},
            {"x": ["1"], "h": ["1"], "k": 2},
        ],
    }))
    job = load_continuity_file(path)
    assert [p.k for p in job.probes] == [2]
    assert [i for i, _ in job.errors] == [1, 2, 3]

    text = tmp_path / "c.txt"
    text.write_text("builtin sum(1)\nprobe [1] [1] 0\n")
    job = load_continuity_file(text)
    assert job.probes == []
    assert [i for i, _ in job.errors] == [2]


def test_lc_vector_rejects_fractional_exponents():
    with pytest.raises(InputError):
        standardize_lc_vector([[[1.5, "1"]]])
    with pytest.raises(InputError):
        standardize_lc_vector([[[True, "1"]]])
