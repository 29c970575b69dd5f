import json

import pytest

from commentcomplete.adapter import (
    PairingError, export_records, export_tasks, import_predictions, import_records, read_predictions, task_input,
    write_predictions,
)
from commentcomplete.datasetgen import TEST, CompletionTask
from commentcomplete.fileio import read_meta
from commentcomplete.ngram import NO_PREDICTION


def tasks(n):
    return [CompletionTask(f"t{i}", "inner", ["x", "=", "1", ";"], ["Old", "."], ["Sets", "the"],
                           ["value", "to", str(i)], 1, 0, f"o{i}") for i in range(n)]


def rec(tid, tokens=("value",), conf=0.5, model="ext"):
    return {"task_id": tid, "tokens": list(tokens), "confidence": conf, "model": model}


def test_input_shape_hides_target():
    t = tasks(1)[0]
    assert task_input(t) == "x = 1 ; <sep> Old . Sets the <sep>"
    assert "value" not in task_input(t)


def test_expected_length():
    (r,) = export_records(tasks(1))
    assert r["expected_length"] == 3


def test_export_empty(tmp_path):
    manifest = export_tasks([], tmp_path / "e.jsonl")
    assert manifest["count"] == 0
    assert (tmp_path / "e.jsonl").read_text() == ""
    assert read_meta(tmp_path / "e.jsonl")["count"] == 0


def test_export_sorted_by_id(tmp_path):
    ts = list(reversed(tasks(12)))
    export_tasks(ts, tmp_path / "e.jsonl")
    ids = [json.loads(l)["task_id"] for l in (tmp_path / "e.jsonl").read_text().splitlines()]
    assert ids == sorted(ids)


def test_export_count_matches_metadata(tmp_path, mini_dataset):
    manifest = export_tasks(mini_dataset.tasks[TEST], tmp_path / "t.jsonl")
    assert manifest["count"] == mini_dataset.metadata["task_counts"]["test"]["total"]


def test_clamp_confidence():
    preds, stats = import_records([rec("t0", conf=1.3)], tasks(1))
    assert preds[0].confidence == 1.0 and stats.clamped == 1


def test_unknown_task_is_error():
    with pytest.raises(PairingError):
        import_records([rec("nope")], tasks(2))


def test_duplicate_task_is_error():
    with pytest.raises(PairingError):
        import_records([rec("t0"), rec("t0")], tasks(2))


def test_import_is_total():
    preds, stats = import_records([rec(f"t{i}") for i in range(8)], tasks(10))
    assert len(preds) == 10
    assert sum(p.status == NO_PREDICTION for p in preds) == 2 and stats.missing == 2


def test_malformed_records_are_skips(tmp_path):
    path = tmp_path / "p.jsonl"
    path.write_text("\n".join([json.dumps(rec("t0")), "{broken", json.dumps([1, 2]),
                               json.dumps({"task_id": "t1", "tokens": "not a list", "confidence": 1}),
                               json.dumps(rec("t2", conf="high"))]) + "\n")
    preds, stats = import_predictions(path, tasks(3))
    assert stats.skipped == 4 and stats.records == 5
    assert [p.status for p in preds] == ["ok", NO_PREDICTION, NO_PREDICTION]


def test_empty_token_list_means_no_prediction():
    preds, _ = import_records([rec("t0", tokens=())], tasks(1))
    assert preds[0].status == NO_PREDICTION and preds[0].confidence == 0.0


def test_echo_round_trip(tmp_path):
    ts = tasks(5)
    export_tasks(ts, tmp_path / "x.jsonl")
    by_id = {t.id: t for t in ts}
    lines = [json.dumps(rec(json.loads(l)["task_id"], by_id[json.loads(l)["task_id"]].target, 1.0))
             for l in (tmp_path / "x.jsonl").read_text().splitlines()]
    (tmp_path / "echo.jsonl").write_text("\n".join(lines) + "\n")
    preds, _ = import_predictions(tmp_path / "echo.jsonl", ts)
    assert all(p.tokens == by_id[p.task_id].target for p in preds)
    write_predictions(preds, tmp_path / "round.jsonl", {"k": 1})
    assert read_predictions(tmp_path / "round.jsonl") == preds
