"""Command line front door: train, fix, eval, gen.

Structured outputs are line-delimited JSON with stable field names (see
README); the rendered tables are advisory.  Exit codes: 0 success /
completely fixed, 1 fixed with a residual error on a later line,
2 invalid arguments or empty corpus, 3 I/O or container failure,
4 no fix found.
"""

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import container as container_io
from .container import container_from_training, load_model, save_model
from .corpus import EmptyInput, IoFailure, UnknownFamily, _read_programs, \
    generate_synthetic, load_corpus
from .lexer import tokenize
from .model import CorpusTooSmall, ModelConfig, TrainHyper, train
from .parser import parse_check
from .repair import DEFAULT_STRATEGY_ORDER, Endpoint, RepairConfig, Status, \
    Strategy, synfix
from .vocab import EmptyCorpus, VocabConfig, build_vocab

EXIT_OK = 0
EXIT_FIXED_OTHER = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_NO_FIX = 4

METHOD_CELLS = (
    (Strategy.INSERT, Endpoint.OFFSET),
    (Strategy.REPLACE, Endpoint.OFFSET),
    (Strategy.INSERT, Endpoint.OFFSET_MINUS_1),
    (Strategy.REPLACE, Endpoint.OFFSET_MINUS_1),
    (Strategy.PREVLINE, Endpoint.PREVLINE),
)


def method_name(strategy, endpoint) -> str:
    if strategy is Strategy.PREVLINE:
        return "prevline"
    return f"{strategy.value}@{endpoint.value}"


def _parse_strategy_order(text: str):
    lookup = {method_name(s, e): (s, e) for s, e in DEFAULT_STRATEGY_ORDER}
    order = []
    for cell in text.split(","):
        cell = cell.strip()
        if cell not in lookup:
            raise argparse.ArgumentTypeError(
                f"unknown strategy cell {cell!r}; choose from {sorted(lookup)}")
        order.append(lookup[cell])
    return tuple(order)


class _Exit(Exception):
    def __init__(self, code, message):
        self.code = code
        self.message = message


def _add_model_flags(p):
    p.add_argument("--arch", choices=["rnn", "lstm"], default="rnn")
    p.add_argument("--layers", type=int, default=1)
    p.add_argument("--hidden", type=int, default=128)
    p.add_argument("--threshold", type=int, default=4,
                   help="vocabulary count threshold for IDENT relabeling")
    p.add_argument("--lr", type=float, default=0.002)
    p.add_argument("--seq-len", type=int, default=10)
    p.add_argument("--batch", type=int, default=50)
    p.add_argument("--decay", type=float, default=0.97)
    p.add_argument("--clip", type=float, default=5.0)
    p.add_argument("--epochs", type=int, default=40)
    p.add_argument("--seed", type=int, default=0)


def _add_repair_flags(p):
    p.add_argument("--k", type=int, default=10,
                   help="predicted sequence length per endpoint")
    p.add_argument("--max-line-len", type=int, default=40)
    p.add_argument("--strategy-order", type=_parse_strategy_order,
                   default=DEFAULT_STRATEGY_ORDER,
                   help="comma list of insert/replace cells, e.g. "
                        "'insert@offset,replace@offset,insert@offset-1,replace@offset-1'")


def _repair_config(args) -> RepairConfig:
    return RepairConfig(k=args.k, max_line_len=args.max_line_len,
                        strategy_order=args.strategy_order)


# -- train -------------------------------------------------------------------

def cmd_train(args) -> int:
    try:
        training, rejected = load_corpus(args.corpus)
    except (IoFailure, EmptyInput) as exc:
        raise _Exit(EXIT_IO, str(exc))
    if rejected:
        print(f"skipping {len(rejected)} programs with syntax errors", file=sys.stderr)
    if not len(training):
        raise _Exit(EXIT_USAGE, "corpus has no syntactically valid programs")

    seqs = [tokenize(text, sid) for sid, text in training.programs]
    try:
        vocab = build_vocab(seqs, VocabConfig(threshold=args.threshold))
    except EmptyCorpus as exc:
        raise _Exit(EXIT_USAGE, str(exc))
    stream = []
    for seq in seqs:
        stream.extend(vocab.ids(seq))

    config = ModelConfig(arch=args.arch, num_layers=args.layers,
                         hidden_units=args.hidden, vocab_size=vocab.size,
                         seed=args.seed)
    hyper = TrainHyper(learning_rate=args.lr, seq_length=args.seq_len,
                       batch_size=args.batch, rmsprop_decay=args.decay,
                       clip_threshold=args.clip, max_epochs=args.epochs)
    try:
        model, losses = train(
            stream, config, hyper,
            progress=lambda epoch, loss: print(f"epoch {epoch} loss {loss:.6f}"))
    except CorpusTooSmall as exc:
        raise _Exit(EXIT_USAGE, str(exc))
    container = container_from_training(model, hyper, vocab,
                                        epochs_run=len(losses),
                                        final_loss=float(losses[-1]))
    try:
        save_model(container, args.output)
    except container_io.IoFailure as exc:
        raise _Exit(EXIT_IO, str(exc))
    print(f"wrote {args.output} ({len(training)} programs, vocab {vocab.size})")
    return EXIT_OK


# -- fix ---------------------------------------------------------------------

def _result_record(source_id, result) -> dict:
    rec = {
        "id": source_id,
        "status": result.status.value,
        "strategy": result.strategy.value if result.strategy else None,
        "endpoint": result.endpoint.value if result.endpoint else None,
        "method": (method_name(result.strategy, result.endpoint)
                   if result.strategy else None),
        "patch": result.patch,
        "original_line": result.original_error.line,
        "original_kind": result.original_error.kind.value,
        "residual_line": result.residual_error.line if result.residual_error else None,
    }
    return rec


def cmd_fix(args) -> int:
    try:
        container = load_model(args.model)
        source = Path(args.submission).read_text(encoding="utf-8")
    except (container_io.IoFailure, OSError) as exc:
        raise _Exit(EXIT_IO, str(exc))
    model = container.model()

    if parse_check(source).ok:
        print(json.dumps({"id": Path(args.submission).stem,
                          "status": "already-valid"}))
        return EXIT_OK

    result = synfix(source, model, container.vocab, _repair_config(args))
    rec = _result_record(Path(args.submission).stem, result)
    rec["repaired_source"] = result.repaired_source
    print(json.dumps(rec))
    if result.repaired_source and args.output:
        try:
            Path(args.output).write_text(result.repaired_source, encoding="utf-8")
        except OSError as exc:
            raise _Exit(EXIT_IO, str(exc))
    if result.status is Status.COMPLETELY_FIXED:
        return EXIT_OK
    if result.status is Status.FIXED_OTHER_LINE:
        return EXIT_FIXED_OTHER
    return EXIT_NO_FIX


# -- eval --------------------------------------------------------------------

@dataclass
class EvalReport:
    totals: dict = field(default_factory=dict)
    by_method: dict = field(default_factory=dict)
    by_mutation_kind: dict = field(default_factory=dict)
    by_method_independent: dict = None  # only with --all-methods
    config: dict = field(default_factory=dict)
    wall_clock: float = 0.0

    def check(self):
        t = self.totals
        assert t["completely_fixed"] + t["fixed_other"] + t["no_fix"] \
            == t["incorrect_attempts"], "outcome partition does not sum"


def _empty_cells():
    return {method_name(s, e): {"completely_fixed": 0, "fixed_other": 0}
            for s, e in METHOD_CELLS}


def run_eval(model, vocab, programs, repair_config, workers=1,
             all_methods=False):
    """Repair every broken program; aggregation is order-independent.

    `programs` holds (source_id, text, mutation-or-None) triples.
    Returns (EvalReport, per-program records).
    """
    t0 = time.monotonic()

    def one(item):
        sid, text, mutation = item
        if parse_check(text).ok:
            return sid, None, mutation, None
        result = synfix(text, model, vocab, repair_config)
        if result.status is Status.COMPLETELY_FIXED:
            assert parse_check(result.repaired_source).ok, \
                f"unsound fix for {sid}"
        if result.status is Status.FIXED_OTHER_LINE:
            assert result.residual_error.line > result.original_error.line, \
                f"residual error not on a later line for {sid}"
        methods = None
        if all_methods:
            methods = {}
            for strategy, endpoint in METHOD_CELLS:
                if strategy is Strategy.PREVLINE:
                    cfg = RepairConfig(k=repair_config.k,
                                       max_line_len=repair_config.max_line_len,
                                       strategy_order=(), use_prevline=True)
                else:
                    cfg = RepairConfig(k=repair_config.k,
                                       max_line_len=repair_config.max_line_len,
                                       strategy_order=((strategy, endpoint),),
                                       use_prevline=False)
                methods[method_name(strategy, endpoint)] = \
                    synfix(text, model, vocab, cfg).status.value
        return sid, result, mutation, methods

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(one, programs))
    else:
        outcomes = [one(item) for item in programs]

    report = EvalReport()
    totals = {"incorrect_attempts": 0, "completely_fixed": 0,
              "fixed_other": 0, "no_fix": 0, "already_valid": 0}
    cells = _empty_cells()
    by_kind = {}
    all_cells = _empty_cells() if all_methods else None
    records = []
    for sid, result, mutation, methods in outcomes:
        if result is None:
            totals["already_valid"] += 1
            records.append({"type": "result", "id": sid, "status": "already-valid"})
            continue
        totals["incorrect_attempts"] += 1
        key = {Status.COMPLETELY_FIXED: "completely_fixed",
               Status.FIXED_OTHER_LINE: "fixed_other",
               Status.NO_FIX: "no_fix"}[result.status]
        totals[key] += 1
        rec = _result_record(sid, result)
        rec["type"] = "result"
        if result.strategy is not None:
            cells[method_name(result.strategy, result.endpoint)][key] += 1
        if mutation is not None:
            slot = by_kind.setdefault(
                mutation, {"completely_fixed": 0, "fixed_other": 0,
                           "no_fix": 0, "total": 0})
            slot[key] += 1
            slot["total"] += 1
            rec["mutation"] = mutation
        if methods is not None:
            rec["methods"] = methods
            for name, status in methods.items():
                if status == Status.COMPLETELY_FIXED.value:
                    all_cells[name]["completely_fixed"] += 1
                elif status == Status.FIXED_OTHER_LINE.value:
                    all_cells[name]["fixed_other"] += 1
        records.append(rec)

    report.totals = totals
    report.by_method = cells
    report.by_mutation_kind = by_kind
    if all_methods:
        report.by_method_independent = all_cells
    report.wall_clock = time.monotonic() - t0
    report.check()
    return report, records


def _render_report(report: EvalReport) -> str:
    t = report.totals
    n = t["incorrect_attempts"]
    pct = lambda c: f"{c} ({c / n:.2%})" if n else str(c)
    lines = [
        "outcome             count",
        f"incorrect attempts  {n}",
        f"completely fixed    {pct(t['completely_fixed'])}",
        f"fixed (other line)  {pct(t['fixed_other'])}",
        f"no fix              {pct(t['no_fix'])}",
        f"already valid       {t['already_valid']} (excluded)",
        "",
        "method              completely fixed   fixed (other line)",
    ]
    for name, cell in report.by_method.items():
        lines.append(f"{name:<19} {cell['completely_fixed']:>16} "
                     f"{cell['fixed_other']:>20}")
    if report.by_mutation_kind:
        lines.append("")
        lines.append("mutation                 fixed  other  nofix  total")
        for kind in sorted(report.by_mutation_kind):
            c = report.by_mutation_kind[kind]
            lines.append(f"{kind:<24} {c['completely_fixed']:>5}  "
                         f"{c['fixed_other']:>5}  {c['no_fix']:>5}  {c['total']:>5}")
    return "\n".join(lines)


def _read_buggy_set(path):
    """Buggy programs as (id, text, mutation-or-None) triples."""
    p = Path(path)
    if p.is_dir():
        return [(sid, text, None) for sid, text in _read_programs(p)]
    triples = []
    with p.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
                triples.append((str(rec["id"]), rec["source"],
                                rec.get("mutation")))
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise IoFailure(f"{path}:{lineno}: bad record ({exc})")
    return triples


def cmd_eval(args) -> int:
    try:
        container = load_model(args.model)
        programs = _read_buggy_set(args.buggy_set)
    except (container_io.IoFailure, IoFailure, OSError) as exc:
        raise _Exit(EXIT_IO, str(exc))
    model = container.model()
    repair_config = _repair_config(args)

    report, records = run_eval(model, container.vocab, programs, repair_config,
                               workers=args.workers, all_methods=args.all_methods)
    report.config = {
        "model": {"arch": container.config.arch,
                  "num_layers": container.config.num_layers,
                  "hidden_units": container.config.hidden_units,
                  "vocab_size": container.config.vocab_size,
                  "seed": container.config.seed,
                  "threshold": container.vocab.threshold},
        "hyper": {"learning_rate": container.hyper.learning_rate,
                  "seq_length": container.hyper.seq_length,
                  "batch_size": container.hyper.batch_size,
                  "rmsprop_decay": container.hyper.rmsprop_decay,
                  "clip_threshold": container.hyper.clip_threshold,
                  "max_epochs": container.hyper.max_epochs},
        "repair": {"k": repair_config.k,
                   "max_line_len": repair_config.max_line_len,
                   "strategy_order": [method_name(s, e)
                                      for s, e in repair_config.strategy_order]},
    }
    print(_render_report(report))

    if args.report:
        summary = {
            "type": "summary",
            "totals": report.totals,
            "by_method": report.by_method,
            "by_mutation_kind": report.by_mutation_kind,
            "config": report.config,
            "wall_clock": report.wall_clock,
        }
        if args.all_methods:
            summary["by_method_independent"] = report.by_method_independent
        try:
            with open(args.report, "w", encoding="utf-8") as fh:
                for rec in records:
                    fh.write(json.dumps(rec, sort_keys=True) + "\n")
                fh.write(json.dumps(summary, sort_keys=True) + "\n")
        except OSError as exc:
            raise _Exit(EXIT_IO, str(exc))
    return EXIT_OK


# -- gen ---------------------------------------------------------------------

def cmd_gen(args) -> int:
    if args.n < 1:
        raise _Exit(EXIT_USAGE, "n must be >= 1")
    try:
        corpus = generate_synthetic(args.family, args.n, args.seed)
    except UnknownFamily as exc:
        raise _Exit(EXIT_USAGE, str(exc))
    out = Path(args.output)
    try:
        out.mkdir(parents=True, exist_ok=True)
        for sid, text in corpus.programs:
            (out / f"{sid}.py").write_text(text, encoding="utf-8")
    except OSError as exc:
        raise _Exit(EXIT_IO, str(exc))
    print(f"wrote {len(corpus)} programs to {out}")
    return EXIT_OK


# -- entry -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="synfix",
        description="Train per-assignment token sequence models and use "
                    "them to repair syntax errors in submissions.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train a model on a corpus of programs")
    p.add_argument("corpus", help="directory of source files or JSONL record file")
    p.add_argument("-o", "--output", required=True, help="model container path")
    _add_model_flags(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("fix", help="repair a single submission")
    p.add_argument("model", help="trained model container")
    p.add_argument("submission", help="program file to repair")
    p.add_argument("-o", "--output", help="write repaired source here")
    _add_repair_flags(p)
    p.set_defaults(func=cmd_fix)

    p = sub.add_parser("eval", help="batch-repair a buggy set and report")
    p.add_argument("model", help="trained model container")
    p.add_argument("buggy_set", help="directory or JSONL record file")
    p.add_argument("--report", help="write JSONL records + summary here")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--all-methods", action="store_true",
                   help="also try every strategy cell independently")
    _add_repair_flags(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("gen", help="generate a synthetic corpus")
    p.add_argument("family", help="template family, e.g. recurPower-like")
    p.add_argument("n", type=int, help="number of programs")
    p.add_argument("-o", "--output", required=True, help="output directory")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _Exit as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
