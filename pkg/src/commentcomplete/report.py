"""Evaluation reports: per-k metric tables, confidence, POS and paired comparison."""

from collections import defaultdict
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from . import metrics, pos
from .datasetgen import INNER, JAVADOC, CompletionTask
from .ngram import OK, Prediction

PANELS = (JAVADOC, INNER, "overall")
LONG = ">10"
BUCKETS: Tuple[Union[int, str], ...] = tuple(range(1, 11)) + (LONG,)
POPULATION_NOTE = "row k covers tasks with |target| >= k; row >10 covers tasks with |target| > 10 (full target)"


class ReportError(Exception):
    pass


def _mean(values: Sequence[float]) -> Optional[float]:
    return sum(values) / len(values) if values else None


def _in_bucket(task: CompletionTask, bucket) -> bool:
    n = len(task.target)
    return n > 10 if bucket == LONG else n >= bucket


def _length(task: CompletionTask, bucket) -> int:
    return len(task.target) if bucket == LONG else bucket


def _panel_tasks(tasks: Sequence[CompletionTask], panel: str) -> List[CompletionTask]:
    return [t for t in tasks if panel == "overall" or t.task_kind == panel]


def perfect_full(task: CompletionTask, pred: Optional[Prediction]) -> bool:
    return bool(metrics.perfect_at_k(task.target, pred, len(task.target)))


def _cells(tasks: Sequence[CompletionTask], preds: Dict[str, Prediction]) -> List[Dict[str, Any]]:
    """Per-bucket metric rows for one panel of one model."""
    plan = []
    pairs = []
    for bucket in BUCKETS:
        members = [t for t in tasks if _in_bucket(t, bucket)]
        plan.append((bucket, members))
        for t in members:
            k = _length(t, bucket)
            pairs.append((metrics.predicted_tokens(preds.get(t.id))[:k], t.target[:k]))
    distances = metrics.levenshtein_many(pairs)
    rows = []
    cursor = 0
    for bucket, members in plan:
        perfect = 0
        bleu = {n: [] for n in range(1, 5)}
        bleu_a = []
        for t in members:
            k = _length(t, bucket)
            pred = preds.get(t.id)
            cand = metrics.predicted_tokens(pred)[:k]
            ref = t.target[:k]
            perfect += bool(metrics.perfect_at_k(t.target, pred, k))
            for n in range(1, 5):
                if k >= n:
                    bleu[n].append(metrics.bleu_n(cand, ref, n))
            a = metrics.bleu_a(cand, ref)
            if a is not None:
                bleu_a.append(a)
        lev = distances[cursor:cursor + len(members)]
        cursor += len(members)
        count = len(members)
        rows.append({
            "k": bucket,
            "count": count,
            "empty": count == 0,
            "perfect": perfect,
            "perfect_rate": perfect / count if count else None,
            "bleu_a": _mean(bleu_a),
            "bleu_a_count": len(bleu_a),
            **{f"bleu_{n}": _mean(bleu[n]) for n in range(1, 5)},
            "levenshtein": _mean(lev),
        })
    return rows


def confidence_report(tasks: Sequence[CompletionTask], preds: Dict[str, Prediction]) -> List[Dict[str, Any]]:
    """Mean confidence of perfect vs wrong predictions in every k bucket."""
    out = []
    for bucket in BUCKETS:
        groups: Dict[str, List[float]] = {"perfect": [], "wrong": []}
        for t in tasks:
            if not _in_bucket(t, bucket):
                continue
            pred = preds.get(t.id)
            ok = metrics.perfect_at_k(t.target, pred, _length(t, bucket))
            groups["perfect" if ok else "wrong"].append(pred.confidence if pred is not None else 0.0)
        out.append({
            "k": bucket,
            "perfect_mean": _mean(groups["perfect"]),
            "perfect_count": len(groups["perfect"]),
            "wrong_mean": _mean(groups["wrong"]),
            "wrong_count": len(groups["wrong"]),
        })
    return out


def pos_accuracy_report(tasks: Sequence[CompletionTask], preds: Dict[str, Prediction]) -> Dict[str, Dict[str, Any]]:
    """Share of target positions predicted exactly, grouped by the target token's POS."""
    correct: Dict[str, int] = defaultdict(int)
    total: Dict[str, int] = defaultdict(int)
    for t in tasks:
        predicted = metrics.predicted_tokens(preds.get(t.id))
        for i, (tok, tag) in enumerate(zip(t.target, pos.pos_tag(t.target))):
            cat = pos.report_category(tag)
            total[cat] += 1
            if i < len(predicted) and predicted[i] == tok:
                correct[cat] += 1
    out = {}
    for cat in pos.REPORTED + (pos.OTHER,):
        n = total.get(cat, 0)
        out[cat] = {"correct": correct.get(cat, 0), "total": n, "rate": correct.get(cat, 0) / n if n else None}
    return out


def compare_models(tasks: Sequence[CompletionTask], preds_a: Dict[str, Prediction],
                   preds_b: Dict[str, Prediction], label_a: str, label_b: str) -> Dict[str, Any]:
    """Overlap of full-target perfect predictions plus McNemar/odds ratio, per panel."""
    out: Dict[str, Any] = {"model_a": label_a, "model_b": label_b, "panels": {}}
    for panel in PANELS:
        members = _panel_tasks(tasks, panel)
        outcomes = [(perfect_full(t, preds_a.get(t.id)), perfect_full(t, preds_b.get(t.id))) for t in members]
        ov = metrics.overlap_metrics(
            [t.id for t, (a, _) in zip(members, outcomes) if a],
            [t.id for t, (_, b) in zip(members, outcomes) if b],
        )
        block = {"tasks": len(members), "overlap": ov.to_dict()}
        if outcomes:
            block["mcnemar"] = metrics.mcnemar_and_or(outcomes).to_dict()
        else:
            block["mcnemar"] = None
        out["panels"][panel] = block
    return out


def build_report(tasks: Sequence[CompletionTask], predictions: Dict[str, Sequence[Prediction]],
                 meta: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """Three panels (javadoc / inner / overall) of per-k rows for each model; paired block for two models."""
    if not 1 <= len(predictions) <= 2:
        raise ReportError("a report covers one or two models")
    labels = list(predictions)
    if len(set(labels)) != len(labels):
        raise ReportError("model label collision")
    indexed = {}
    for label, preds in predictions.items():
        by_id = {}
        for p in preds:
            if p.task_id in by_id:
                raise ReportError(f"duplicate prediction for {p.task_id!r} in model {label!r}")
            by_id[p.task_id] = p
        indexed[label] = by_id
    report: Dict[str, Any] = {"meta": dict(meta or {}), "models": {}}
    report["meta"]["population"] = POPULATION_NOTE
    report["meta"]["task_count"] = len(tasks)
    for label in labels:
        preds = indexed[label]
        missing = sum(1 for t in tasks if t.id not in preds)
        abstained = sum(1 for t in tasks if t.id in preds and preds[t.id].status != OK)
        report["models"][label] = {
            "no_prediction": missing + abstained,
            "panels": {panel: _cells(_panel_tasks(tasks, panel), preds) for panel in PANELS},
            "confidence": {panel: confidence_report(_panel_tasks(tasks, panel), preds) for panel in PANELS},
            "pos": {panel: pos_accuracy_report(_panel_tasks(tasks, panel), preds) for panel in PANELS},
        }
    if len(labels) == 2:
        a, b = labels
        report["comparison"] = compare_models(tasks, indexed[a], indexed[b], a, b)
    return report


# ---------------------------------------------------------------------------
# plain-text rendering

def _fmt(x, pct: bool = False) -> str:
    if x is None:
        return "-"
    return f"{100 * x:6.2f}" if pct else f"{x:6.3f}"


def render_text(report: Dict[str, Any]) -> str:
    lines = []
    meta = report.get("meta", {})
    if meta.get("split"):
        lines.append(f"split: {meta['split']}  tasks: {meta.get('task_count')}")
    lines.append(f"note: {POPULATION_NOTE}")
    for label, body in report["models"].items():
        lines.append("")
        lines.append(f"== model {label} (no prediction: {body['no_prediction']})")
        for panel in PANELS:
            lines.append(f"-- {panel}")
            lines.append(f"{'k':>4} {'n':>7} {'PP%':>7} {'BLEU-A':>7} {'Lev':>7} {'conf+':>7} {'conf-':>7}")
            conf = {row["k"]: row for row in body["confidence"][panel]}
            for row in body["panels"][panel]:
                c = conf[row["k"]]
                lines.append(
                    f"{str(row['k']):>4} {row['count']:>7} {_fmt(row['perfect_rate'], True):>7} "
                    f"{_fmt(row['bleu_a']):>7} {_fmt(row['levenshtein']):>7} "
                    f"{_fmt(c['perfect_mean']):>7} {_fmt(c['wrong_mean']):>7}"
                )
            pos_row = body["pos"][panel]
            cats = "  ".join(f"{cat}={_fmt(v['rate'], True).strip()}" for cat, v in pos_row.items())
            lines.append(f"   POS correct %: {cats}")
    comp = report.get("comparison")
    if comp:
        lines.append("")
        lines.append(f"== comparison {comp['model_a']} vs {comp['model_b']} (full-target perfect predictions)")
        lines.append(f"{'panel':>8} {'shared':>7} {'onlyA':>7} {'onlyB':>7} {'b':>6} {'c':>6} {'chi2':>8} {'p':>8} {'OR':>8}")
        for panel, block in comp["panels"].items():
            ov, mc = block["overlap"], block["mcnemar"] or {}
            lines.append(
                f"{panel:>8} {_fmt(ov['shared'], True):>7} {_fmt(ov['only_a'], True):>7} "
                f"{_fmt(ov['only_b'], True):>7} {mc.get('b', '-'):>6} {mc.get('c', '-'):>6} "
                f"{_fmt(mc.get('chi_square')):>8} {_fmt(mc.get('p_value')):>8} {_fmt(mc.get('odds_ratio')):>8}"
            )
    return "\n".join(lines) + "\n"
