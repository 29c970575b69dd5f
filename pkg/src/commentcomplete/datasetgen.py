"""Completion-task generation and corpus splitting.

Each comment is linked to its code context, split into sentences, and every
sentence with ``n >= 2`` tokens yields ``min(5, n - 1)`` tasks whose visible
prefix lengths are distinct draws from ``[1, n - 1]``. Sentences after the one
being completed never appear in its tasks. Splits are made per origin method
so that variants of one sentence never straddle train and test.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from . import rng as rng_mod
from .corpus import InnerComment, MethodInstance, extract_inner_comments, strip_comments
from .fileio import (
    PathLike, SchemaError, fingerprint, iter_jsonl_numbered, read_json, sha256_file, write_json, write_jsonl,
)
from .tokens import SEP, TOKENIZER_VERSION, mask_token, tokenize

logger = logging.getLogger(__name__)

JAVADOC = "javadoc"
INNER = "inner"
TASK_KINDS = (JAVADOC, INNER)

PRETRAIN = "pretrain"
TRAIN = "finetune-train"
EVAL = "finetune-eval"
TEST = "finetune-test"
SPLIT_FILES = {TRAIN: "train", EVAL: "eval", TEST: "test"}
SPLIT_NAMES = {v: k for k, v in SPLIT_FILES.items()}

MAX_VARIANTS = 5
MASK_RATE = Fraction(15, 100)
PRETRAIN_RATIO = Fraction(2, 3)
FINETUNE_RATIOS = (Fraction(8, 10), Fraction(1, 10), Fraction(1, 10))


@dataclass
class CompletionTask:
    id: str
    task_kind: str
    context: List[str]
    preceding: List[str]
    prefix: List[str]
    target: List[str]
    sentence_index: int
    variant_index: int
    origin: str
    comment: str = ""

    @property
    def sentence(self) -> List[str]:
        return self.prefix + self.target

    @property
    def history(self) -> List[str]:
        """Comment text visible to the completer: earlier sentences then the prefix."""
        return self.preceding + self.prefix

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "task_kind": self.task_kind,
            "context": self.context,
            "preceding": self.preceding,
            "prefix": self.prefix,
            "target": self.target,
            "sentence_index": self.sentence_index,
            "variant_index": self.variant_index,
            "origin": self.origin,
            "comment": self.comment,
        }

    @classmethod
    def from_dict(cls, d: Dict[str, Any]) -> "CompletionTask":
        try:
            task = cls(
                id=str(d["id"]),
                task_kind=str(d["task_kind"]),
                context=list(d["context"]),
                preceding=list(d["preceding"]),
                prefix=list(d["prefix"]),
                target=list(d["target"]),
                sentence_index=int(d["sentence_index"]),
                variant_index=int(d["variant_index"]),
                origin=str(d["origin"]),
                comment=str(d.get("comment", "")),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"invalid task record: {exc}") from exc
        if task.task_kind not in TASK_KINDS or not task.prefix or not task.target:
            raise SchemaError(f"invalid task record {task.id!r}")
        return task


@dataclass
class PretrainInstance:
    input_tokens: List[str]
    target_tokens: List[Tuple[str, str]]
    origin: str

    def to_dict(self) -> Dict[str, Any]:
        return {
            "input": self.input_tokens,
            "target": [list(p) for p in self.target_tokens],
            "origin": self.origin,
        }


# ---------------------------------------------------------------------------
# context linking

def link_javadoc_context(instance: MethodInstance) -> Optional[Tuple[List[str], List[str]]]:
    """(context, comment) tokens for the Javadoc; None when there is no Javadoc."""
    if instance.javadoc is None:
        return None
    return tokenize(instance.method_code), tokenize(instance.javadoc)


def serialize_javadoc_instance(context: Sequence[str], comment: Sequence[str]) -> List[str]:
    return [*context, SEP, *comment, SEP]


def link_inner_context(instance: MethodInstance, comment: InnerComment) -> List[str]:
    """Code lines around an inner comment.

    Expansion runs up and down from the comment's line and stops before a
    blank line, a line starting with ``}``, or a line holding another comment.
    It never leaves the method; the signature line can be included.
    """
    raw_lines = instance.method_code.split("\n")
    code_lines = strip_comments(instance.method_code).split("\n")
    own = set(range(comment.start_line, comment.end_line + 1))
    comment_lines = set()
    for c in extract_inner_comments(instance.method_code):
        comment_lines.update(range(c.start_line, c.end_line + 1))
    comment_lines -= own

    def boundary(lineno: int) -> bool:
        raw = raw_lines[lineno - 1]
        return not raw.strip() or raw.lstrip().startswith("}") or lineno in comment_lines

    top = comment.start_line
    while top - 1 >= 1 and not boundary(top - 1):
        top -= 1
    bottom = comment.end_line
    while bottom + 1 <= len(raw_lines) and not boundary(bottom + 1):
        bottom += 1
    return tokenize("\n".join(code_lines[top - 1:bottom]))


# ---------------------------------------------------------------------------
# sentences and masking

_TERMINALS = {".", "!", "?"}
_ABBREVIATIONS = (("e", ".", "g", "."), ("i", ".", "e", "."), ("etc", "."))


def _abbreviation_end(tokens: Sequence[str], i: int) -> bool:
    """True when the '.' at ``i`` closes e.g. / i.e. / etc."""
    for abbr in _ABBREVIATIONS:
        start = i - len(abbr) + 1
        if start >= 0 and tuple(t.lower() for t in tokens[start:i + 1]) == abbr:
            return True
    return False


def split_sentences(tokens: Sequence[str]) -> List[List[str]]:
    sentences: List[List[str]] = []
    current: List[str] = []
    n = len(tokens)
    for i, tok in enumerate(tokens):
        nxt = tokens[i + 1] if i + 1 < n else None
        if tok == "@" and nxt is not None and nxt[0].isalpha() and current:
            sentences.append(current)
            current = []
        current.append(tok)
        if tok in _TERMINALS and not _abbreviation_end(tokens, i):
            if nxt is None or nxt[0].isupper():
                sentences.append(current)
                current = []
    if current:
        sentences.append(current)
    return sentences


def generate_masked_variants(
    sentences: Sequence[Sequence[str]],
    sentence_index: int,
    context: Sequence[str],
    stream: rng_mod.SeededStream,
    *,
    task_kind: str = JAVADOC,
    origin: str = "",
    comment: str = JAVADOC,
) -> List[CompletionTask]:
    sentence = list(sentences[sentence_index])
    n = len(sentence)
    if n < 2:
        return []
    preceding = [t for s in sentences[:sentence_index] for t in s]
    ms = stream.sample(1, n, min(MAX_VARIANTS, n - 1))
    tasks = []
    for j, m in enumerate(ms):
        tasks.append(CompletionTask(
            id=f"{origin}|{comment}|s{sentence_index}|v{j}",
            task_kind=task_kind,
            context=list(context),
            preceding=list(preceding),
            prefix=sentence[:m],
            target=sentence[m:],
            sentence_index=sentence_index,
            variant_index=j,
            origin=origin,
            comment=comment,
        ))
    return tasks


def tasks_for_instance(instance: MethodInstance, seed: int) -> List[CompletionTask]:
    stream = rng_mod.stream_for(seed, f"variants|{instance.id}")
    tasks = []
    linked = link_javadoc_context(instance)
    if linked is not None:
        context, comment_tokens = linked
        sentences = split_sentences(comment_tokens)
        for i in range(len(sentences)):
            tasks.extend(generate_masked_variants(
                sentences, i, context, stream, task_kind=JAVADOC, origin=instance.id, comment=JAVADOC))
    for idx, c in enumerate(instance.inner_comments):
        context = link_inner_context(instance, c)
        sentences = split_sentences(tokenize(c.text))
        key = f"inner{idx}"
        for i in range(len(sentences)):
            tasks.extend(generate_masked_variants(
                sentences, i, context, stream, task_kind=INNER, origin=instance.id, comment=key))
    return tasks


def mask_count(n_tokens: int, rate: Fraction = MASK_RATE) -> int:
    """round-half-up(rate * n), at least one for a non-empty comment."""
    if n_tokens <= 0:
        return 0
    k = (Fraction(rate) * n_tokens + Fraction(1, 2)).__floor__()
    return max(1, k)


def pretrain_instance(instance: MethodInstance, seed: int, rate: Fraction = MASK_RATE) -> PretrainInstance:
    stream = rng_mod.stream_for(seed, f"pretrain|{instance.id}")
    inputs = tokenize(strip_comments(instance.method_code))
    targets: List[Tuple[str, str]] = []
    for text in instance.comments():
        toks = tokenize(text)
        masked = set(stream.sample(0, len(toks), mask_count(len(toks), rate))) if toks else set()
        inputs.append(SEP)
        for pos, tok in enumerate(toks):
            if pos in masked:
                sentinel = mask_token(len(targets))
                targets.append((sentinel, tok))
                inputs.append(sentinel)
            else:
                inputs.append(tok)
    return PretrainInstance(inputs, targets, instance.id)


def generate_pretrain_instances(
    corpus: Sequence[MethodInstance], seed: int, rate: Fraction = MASK_RATE
) -> List[PretrainInstance]:
    return [pretrain_instance(inst, seed, rate) for inst in corpus]


# ---------------------------------------------------------------------------
# splitting

def largest_remainder(total: int, ratios: Sequence[Fraction]) -> List[int]:
    """Integer sizes summing to ``total``; leftovers go to the largest fractional quotas, earliest first."""
    ratios = [Fraction(r) for r in ratios]
    if sum(ratios) != 1 or any(r < 0 for r in ratios):
        raise ValueError(f"ratios must be non-negative and sum to 1, got {ratios}")
    quotas = [r * total for r in ratios]
    sizes = [q.__floor__() for q in quotas]
    order = sorted(range(len(ratios)), key=lambda i: (-(quotas[i] - sizes[i]), i))
    for i in order[: total - sum(sizes)]:
        sizes[i] += 1
    return sizes


def split_corpus(ids: Sequence[str], ratios: Dict[str, Fraction], seed: int, salt: str = "") -> Dict[str, str]:
    """Seeded shuffle of the sorted ids, then contiguous slices sized by largest remainder."""
    order = sorted(set(ids))
    rng_mod.stream_for(seed, f"split|{salt}").shuffle(order)
    labels = list(ratios)
    sizes = largest_remainder(len(order), [ratios[k] for k in labels])
    out = {}
    pos = 0
    for label, size in zip(labels, sizes):
        for oid in order[pos:pos + size]:
            out[oid] = label
        pos += size
    return out


def assign_splits(
    ids: Sequence[str],
    seed: int,
    pretrain_ratio: Fraction = PRETRAIN_RATIO,
    finetune_ratios: Sequence[Fraction] = FINETUNE_RATIOS,
) -> Dict[str, str]:
    first = split_corpus(ids, {PRETRAIN: Fraction(pretrain_ratio), "finetune": 1 - Fraction(pretrain_ratio)},
                         seed, "pretrain")
    finetune = [i for i in sorted(first) if first[i] == "finetune"]
    second = split_corpus(finetune, dict(zip((TRAIN, EVAL, TEST), finetune_ratios)), seed, "finetune")
    return {i: (second[i] if label == "finetune" else label) for i, label in first.items()}


# ---------------------------------------------------------------------------
# dataset files

def _composition(instances: Sequence[MethodInstance]) -> Dict[str, int]:
    c = Counter()
    for inst in instances:
        has_jd, has_inner = inst.javadoc is not None, bool(inst.inner_comments)
        c["D1_inner_only" if not has_jd else "D3_javadoc_and_inner" if has_inner else "D2_javadoc_only"] += 1
    return {k: c.get(k, 0) for k in ("D1_inner_only", "D2_javadoc_only", "D3_javadoc_and_inner")}


@dataclass
class Dataset:
    tasks: Dict[str, List[CompletionTask]]
    pretrain: List[PretrainInstance]
    assignment: Dict[str, str]
    metadata: Dict[str, Any] = field(default_factory=dict)


def build_dataset(
    corpus: Sequence[MethodInstance],
    seed: int,
    pretrain_ratio: Fraction = PRETRAIN_RATIO,
    finetune_ratios: Sequence[Fraction] = FINETUNE_RATIOS,
    mask_rate: Fraction = MASK_RATE,
) -> Dataset:
    assignment = assign_splits([i.id for i in corpus], seed, pretrain_ratio, finetune_ratios)
    tasks: Dict[str, List[CompletionTask]] = {TRAIN: [], EVAL: [], TEST: []}
    pretrain_src = []
    finetune_src = []
    for inst in sorted(corpus, key=lambda i: i.id):
        label = assignment[inst.id]
        if label == PRETRAIN:
            pretrain_src.append(inst)
        else:
            finetune_src.append(inst)
            tasks[label].extend(tasks_for_instance(inst, seed))
    for label in tasks:
        tasks[label].sort(key=lambda t: t.id)
    pretrain = generate_pretrain_instances(pretrain_src, seed, mask_rate)
    counts = {
        SPLIT_FILES[label]: {kind: sum(t.task_kind == kind for t in ts) for kind in TASK_KINDS}
        for label, ts in tasks.items()
    }
    for row in counts.values():
        row["total"] = row[JAVADOC] + row[INNER]
    metadata = {
        "seed": seed,
        "rng": rng_mod.ALGORITHM,
        "tokenizer": TOKENIZER_VERSION,
        "ratios": {
            "pretrain": str(Fraction(pretrain_ratio)),
            "finetune": [str(Fraction(r)) for r in finetune_ratios],
            "mask_rate": str(Fraction(mask_rate)),
        },
        "origins": dict(sorted(Counter(assignment.values()).items())),
        "composition": {"pretrain": _composition(pretrain_src), "finetune": _composition(finetune_src)},
        "task_counts": counts,
        "pretrain_instances": len(pretrain),
    }
    return Dataset(tasks, pretrain, assignment, metadata)


def write_dataset(dataset: Dataset, out_dir: PathLike, extra_meta: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files = {}
    for label, name in SPLIT_FILES.items():
        path = out / f"{name}.jsonl"
        write_jsonl((t.to_dict() for t in dataset.tasks[label]), path)
        files[name] = sha256_file(path)
    write_jsonl((p.to_dict() for p in dataset.pretrain), out / "pretrain.jsonl")
    files["pretrain"] = sha256_file(out / "pretrain.jsonl")
    write_json(dict(sorted(dataset.assignment.items())), out / "splits.json")
    meta = dict(dataset.metadata)
    meta.update(extra_meta or {})
    meta["files"] = files
    meta["fingerprint"] = fingerprint(files)
    write_json(meta, out / "metadata.json")
    return meta


def read_metadata(dataset_dir: PathLike) -> Dict[str, Any]:
    path = Path(dataset_dir) / "metadata.json"
    if not path.is_file():
        raise FileNotFoundError(f"no dataset metadata in {dataset_dir}")
    return read_json(path)


def load_split(dataset_dir: PathLike, split: str) -> List[CompletionTask]:
    name = SPLIT_FILES.get(split, split)
    if name not in SPLIT_NAMES:
        raise KeyError(f"unknown split {split!r}; expected one of {sorted(SPLIT_NAMES)}")
    path = Path(dataset_dir) / f"{name}.jsonl"
    if not path.is_file():
        raise FileNotFoundError(f"missing split file {path}")
    tasks = []
    for lineno, rec in iter_jsonl_numbered(path):
        if not isinstance(rec, dict):
            raise SchemaError(f"{path}:{lineno}: task record is not an object")
        try:
            tasks.append(CompletionTask.from_dict(rec))
        except SchemaError as exc:
            raise SchemaError(f"{path}:{lineno}: {exc}") from exc
    return tasks


def training_sequences(tasks: Sequence[CompletionTask]) -> List[List[str]]:
    """One unmasked token sequence per comment: its text up to the last sentence with tasks."""
    best: Dict[Tuple[str, str], Tuple[int, List[str]]] = {}
    for t in tasks:
        key = (t.origin, t.comment or t.task_kind)
        seq = t.preceding + t.sentence
        if key not in best or t.sentence_index > best[key][0]:
            best[key] = (t.sentence_index, seq)
    return [best[k][1] for k in sorted(best)]
