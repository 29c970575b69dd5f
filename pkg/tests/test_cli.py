import io
import json

import pytest

from oracles import brute_ngram_counts, brute_predict_next
from commentcomplete import cli
from commentcomplete.datasetgen import load_split, training_sequences
from commentcomplete.fileio import read_meta


def run(*argv):
    return cli.main([str(a) for a in argv])


@pytest.fixture(scope="module")
def chain(tmp_path_factory):
    d = tmp_path_factory.mktemp("chain")
    assert run("ingest", "mini", "--out", d / "corpus.jsonl") == 0
    assert run("preprocess", d / "corpus.jsonl", "--out", d / "clean.jsonl") == 0
    assert run("build-dataset", d / "clean.jsonl", "--out", d / "ds", "--seed", 42) == 0
    assert run("train", "--dataset", d / "ds", "--order", 5, "--out", d / "m5.model") == 0
    assert run("predict", "--dataset", d / "ds", "--model", d / "m5.model", "--out", d / "p5.jsonl") == 0
    return d


def test_ingest_summary(tmp_path, capsys):
    assert run("ingest", "mini", "--out", tmp_path / "c.jsonl") == 0
    assert "ingested 200 instances" in capsys.readouterr().out
    assert len((tmp_path / "c.jsonl").read_text().splitlines()) == 200


def test_ingest_missing_path(tmp_path, capsys):
    assert run("ingest", tmp_path / "missing", "--out", tmp_path / "c.jsonl") == 2
    assert "missing" in capsys.readouterr().err


def test_ingest_empty_dir(tmp_path, capsys):
    (tmp_path / "src").mkdir()
    assert run("ingest", tmp_path / "src", "--out", tmp_path / "c.jsonl") == 0
    assert "ingested 0 instances" in capsys.readouterr().out
    assert (tmp_path / "c.jsonl").read_text() == ""


def test_usage_errors_exit_1(tmp_path, capsys):
    assert run_exit("train", "--dataset", tmp_path, "--order", 1, "--out", tmp_path / "m") == 1
    assert run_exit("nonsense") == 1
    assert run_exit("sweep", "--dataset", tmp_path, "--orders", "3,x") == 1


def run_exit(*argv):
    with pytest.raises(SystemExit) as exc:
        run(*argv)
    return exc.value.code


def test_artifacts_carry_seed_and_fingerprint(chain):
    for name in ("p5.jsonl", "m5.model"):
        meta = read_meta(chain / name)
        assert meta["seed"] == 42 and "config_fingerprint" in meta
        assert meta["dataset_fingerprint"] == json.loads((chain / "ds" / "metadata.json").read_text())["fingerprint"]
    assert "config_fingerprint" in read_meta(chain / "clean.jsonl")
    ds_meta = json.loads((chain / "ds" / "metadata.json").read_text())
    assert ds_meta["seed"] == 42 and ds_meta["config"]["seed"] == 42


def test_evaluate_text_and_machine(chain, capsys):
    assert run("evaluate", "--dataset", chain / "ds", chain / "p5.jsonl", "--format", "text") == 0
    out = capsys.readouterr().out
    assert "== model 5-gram" in out and "-- inner" in out
    assert run("evaluate", "--dataset", chain / "ds", chain / "p5.jsonl", "--out", chain / "r.json") == 0
    rep = json.loads((chain / "r.json").read_text())
    assert rep["meta"]["dataset_fingerprint"] and list(rep["models"]) == ["5-gram"]


def test_evaluate_refuses_foreign_predictions(chain, tmp_path, capsys):
    assert run("build-dataset", chain / "clean.jsonl", "--out", tmp_path / "other", "--seed", 7) == 0
    capsys.readouterr()
    assert run("evaluate", "--dataset", tmp_path / "other", chain / "p5.jsonl") == 2
    assert "fingerprint" in capsys.readouterr().err


def test_evaluate_requires_sidecar(chain, tmp_path, capsys):
    bare = tmp_path / "bare.jsonl"
    bare.write_text((chain / "p5.jsonl").read_text())
    assert run("evaluate", "--dataset", chain / "ds", bare) == 2
    assert "import-predictions" in capsys.readouterr().err


def test_label_collision(chain, capsys):
    assert run("evaluate", "--dataset", chain / "ds", chain / "p5.jsonl", chain / "p5.jsonl") == 2
    assert "label" in capsys.readouterr().err


def _echo_file(chain, path, skip=()):
    tasks = load_split(chain / "ds", "test")
    with open(path, "w") as fh:
        for t in tasks:
            if t.id not in skip:
                fh.write(json.dumps({"task_id": t.id, "tokens": t.target, "confidence": 1.0, "model": "echo"}) + "\n")
    return tasks


def test_compare_echo_and_empty(chain, tmp_path, capsys):
    _echo_file(chain, tmp_path / "raw.jsonl")
    (tmp_path / "empty.jsonl").write_text("")
    ds = chain / "ds"
    assert run("import-predictions", "--dataset", ds, tmp_path / "raw.jsonl", "--out", tmp_path / "echo.jsonl") == 0
    assert run("import-predictions", "--dataset", ds, tmp_path / "empty.jsonl", "--label", "empty",
               "--out", tmp_path / "none.jsonl") == 0
    assert run("compare", "--dataset", ds, tmp_path / "echo.jsonl", tmp_path / "none.jsonl",
               "--out", tmp_path / "cmp.json") == 0
    ov = json.loads((tmp_path / "cmp.json").read_text())["comparison"]["panels"]["overall"]["overlap"]
    assert (ov["shared"], ov["only_a"], ov["only_b"]) == (0, 1, 0)


def test_schema_violation_names_record(chain, tmp_path, capsys):
    bad = tmp_path / "ds"
    bad.mkdir()
    for f in (chain / "ds").iterdir():
        (bad / f.name).write_bytes(f.read_bytes())
    lines = (bad / "test.jsonl").read_text().splitlines()
    lines[2] = json.dumps({"id": "broken"})
    (bad / "test.jsonl").write_text("\n".join(lines) + "\n")
    assert run("export-tasks", "--dataset", bad, "--out", tmp_path / "x.jsonl") == 2
    assert "test.jsonl:3" in capsys.readouterr().err


def test_sweep_cells_match_oracle(chain, capsys):
    assert run("sweep", "--dataset", chain / "ds", "--orders", "3,5,7") == 0
    out = json.loads(capsys.readouterr().out)
    assert [r["order"] for r in out["rows"]] == [3, 5, 7]
    seqs = training_sequences(load_split(chain / "ds", "train"))
    evals = load_split(chain / "ds", "eval")
    best = None
    for row in out["rows"]:
        table = brute_ngram_counts(seqs, row["order"])
        hits = 0
        for t in evals:
            hist, got = list(t.history), []
            for _ in t.target:
                step = brute_predict_next(table, row["order"], hist)
                if step is None:
                    break
                got.append(step[0])
                hist.append(step[0])
            hits += got == t.target
        assert row["overall"]["perfect"] == hits
        if best is None or hits > best[1]:
            best = (row["order"], hits)
    assert out["best_order"] == best[0]


def test_complete_prints_argmax(chain, monkeypatch, capsys):
    seqs = training_sequences(load_split(chain / "ds", "train"))
    want = brute_predict_next(brute_ngram_counts(seqs, 5), 5, ["Returns", "the"])
    assert want is not None
    monkeypatch.setattr("sys.stdin", io.StringIO("Returns the\n\nqqq zzz\n"))
    assert run("complete", "--model", chain / "m5.model", "--k", 1) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines == [f"{want[0]}\t{want[1]:.4f}", cli.NO_PREDICTION_MARKER]


def test_complete_missing_model(tmp_path, capsys):
    assert run("complete", "--model", tmp_path / "nope.model") == 2


def test_env_overrides_default_seed(chain, tmp_path, monkeypatch):
    monkeypatch.setenv("COMMENTCOMPLETE_SEED", "7")
    assert run("build-dataset", chain / "clean.jsonl", "--out", tmp_path / "a") == 0
    assert json.loads((tmp_path / "a" / "metadata.json").read_text())["seed"] == 7
    assert run("build-dataset", chain / "clean.jsonl", "--out", tmp_path / "b", "--seed", 9) == 0
    assert json.loads((tmp_path / "b" / "metadata.json").read_text())["seed"] == 9


def test_bad_env_override(monkeypatch, capsys):
    monkeypatch.setenv("COMMENTCOMPLETE_ORDERS", "three")
    assert cli.main(["ingest", "mini", "--out", "/dev/null"]) == 1


def test_preprocess_toggle(chain, tmp_path, capsys):
    assert run("preprocess", chain / "corpus.jsonl", "--out", tmp_path / "c.jsonl", "--disable", "satd_filter") == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["satd_comments"] == 0
