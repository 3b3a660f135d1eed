"""Command-line front end: ``hetramsey <command> [options]``.

Exit status: 0 verified/computed, 1 refuted, 2 inconclusive, 3 error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .colorings import parse_coloring
from .config import (
    ExperimentConfig,
    SequenceSpec,
    build_sequence,
    config_echo,
    config_from_mapping,
    parse_config,
    parse_sequence_spec,
)
from .core import MATRIX, SCALAR, format_element
from .errors import RamseyAlgebraError
from .matrices import FULL_OPS, matrix_signature
from .reduction import check_reduction, fr_set
from .terms import enumerate_orderly_terms, term_profile
from .verifier import (
    INCONCLUSIVE,
    REFUTED,
    THEOREM_IDS,
    VERIFIED,
    Exhibit,
    WitnessReport,
    run_bad_sequence_probe,
    search_homogeneous,
    verify_final_theorem,
    verify_homomorphism_lemma,
    verify_lemma_long,
    verify_mod5_theorem,
    verify_pythagorean_lemma,
    verify_sort_separation,
    verify_subalgebra_transfer,
    verify_ubr_theorem,
)

EXIT_CODES = {VERIFIED: 0, "Computed": 0, REFUTED: 1, INCONCLUSIVE: 2}
EXIT_ERROR = 3
TIMING_KEY = "timing"


@dataclass
class Report:
    command: str
    config: dict
    status: str
    summary: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)
    exhibits: list = field(default_factory=list)
    vacuity_flags: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def as_dict(self) -> dict:
        return {
            "tool": "hetramsey",
            "version": __version__,
            "command": self.command,
            "config": self.config,
            "status": self.status,
            "exit_code": self.exit_code,
            "summary": self.summary,
            "bounds": self.bounds,
            "exhibits": self.exhibits,
            "vacuity_flags": self.vacuity_flags,
            "notes": self.notes,
            TIMING_KEY: {"seconds": round(self.seconds, 6)},
        }


def to_json(report: Report) -> str:
    return json.dumps(report.as_dict(), sort_keys=True, indent=2) + "\n"


EXHIBIT_COLUMNS = ("element", "verdict", "term", "block", "candidate", "context")


def to_csv(report: Report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(EXHIBIT_COLUMNS)
    for ex in report.exhibits:
        w.writerow([
            ex["element"], ex["verdict"], ex["term"], " ".join(map(str, ex["block"])),
            " ".join(ex["candidate"]), ex["context"],
        ])
    return buf.getvalue()


def to_text(report: Report, max_exhibits: int = 12) -> str:
    title = report.command + (f" {report.config['theorem']}" if report.config.get("theorem") else "")
    lines = [f"{title}: {report.status}"]
    for k, v in report.summary.items():
        lines.append(f"  {k}: {v}")
    if report.bounds:
        lines.append("  bounds: " + ", ".join(f"{k}={v}" for k, v in report.bounds.items()))
    for flag in report.vacuity_flags:
        lines.append(f"  vacuous: {flag}")
    for note in report.notes:
        lines.append(f"  note: {note}")
    for ex in report.exhibits[:max_exhibits]:
        where = f" = {ex['term']}@{ex['block']}" if ex["term"] else ""
        ctx = f"  [{ex['context']}]" if ex["context"] else ""
        lines.append(f"  {ex['verdict']:>8}: {ex['element']}{where}{ctx}")
    if len(report.exhibits) > max_exhibits:
        lines.append(f"  ... {len(report.exhibits) - max_exhibits} more exhibits in the structured report")
    lines.append(f"  time: {report.seconds:.3f}s")
    return "\n".join(lines) + "\n"


def strip_timing(doc: dict) -> dict:
    return {k: v for k, v in doc.items() if k != TIMING_KEY}


# -- dispatch -----------------------------------------------------------------------


def _signature(cfg: ExperimentConfig, default=FULL_OPS):
    return matrix_signature(cfg.ops if cfg.ops is not None else default)


def _from_witness_report(cfg: ExperimentConfig, wr: WitnessReport) -> Report:
    return Report(
        "verify",
        config_echo(cfg),
        wr.status,
        summary=wr.stats,
        bounds=wr.bounds,
        exhibits=[e.as_dict() for e in wr.exhibits],
        vacuity_flags=wr.vacuity_flags,
        notes=wr.notes,
    )


def _verify(cfg: ExperimentConfig) -> WitnessReport:
    b = cfg.bounds()
    t = cfg.theorem
    if t == "mod5":
        return verify_mod5_theorem(cfg.n, cfg.index_bound, cfg.out_len, b, cfg.scalar_only, indices=cfg.indices)
    if t == "ubr":
        return verify_ubr_theorem(cfg.n, cfg.index_bound, cfg.out_len, b, cfg.variant, indices=cfg.indices)
    if t == "pythagorean":
        return verify_pythagorean_lemma(max(cfg.index_list()), cfg.len_bound)
    if t == "final":
        return verify_final_theorem(cfg.n, cfg.index_bound, cfg.out_len, b, indices=cfg.indices)
    if t == "hom-lemma":
        return verify_homomorphism_lemma(cfg.prefix_len, None, trials=cfg.trials, seed=cfg.seed)
    if t == "lemma-long":
        return verify_lemma_long(cfg.prefix_len, b, trials=cfg.trials, seed=cfg.seed, out_len=cfg.out_len)
    if t == "sort-sep":
        return verify_sort_separation(b, _signature(cfg))
    if t == "subalg":
        return verify_subalgebra_transfer(b, cfg.n, cfg.trials, cfg.seed, cfg.ops or ("add", "mul"))
    if t == "probe":
        seq_cfg = cfg if cfg.sequence is not None else cfg.model_copy(update={"sequence": SequenceSpec(kind="D")})
        seq = build_sequence(seq_cfg)
        x = parse_coloring(cfg.coloring or f"theta:{cfg.n}")
        return run_bad_sequence_probe(seq, x, _signature(cfg, ("add", "fmul", "det")), b, cfg.out_len)
    raise RamseyAlgebraError(f"unknown theorem {t!r}")


def _enumerate_terms(cfg: ExperimentConfig) -> Report:
    sig = _signature(cfg)
    cod = cfg.codomain
    if cod is None:
        cod = MATRIX if sig.g1 and not sig.g0 and not sig.h else SCALAR
    max_arity = cfg.arity or cfg.max_arity
    terms = enumerate_orderly_terms(sig, cod, max_arity, cfg.max_depth)
    if cfg.arity is not None:
        terms = [t for t in terms if term_profile(t).arity == cfg.arity]
    exhibits = []
    for t in terms:
        p = term_profile(t)
        exhibits.append(Exhibit(str(t), "term", context=f"arity={p.arity} depth={p.depth} domain={list(p.domain_word)}").as_dict())
    summary = {"ops": list(sig.op_names), "codomain": cod, "count": len(terms)}
    return Report("enumerate-terms", config_echo(cfg), "Computed", summary, cfg.bounds().as_dict(), exhibits)


def _fr_set(cfg: ExperimentConfig) -> Report:
    sig = _signature(cfg)
    b = build_sequence(cfg)
    target = cfg.codomain if cfg.codomain is not None else b.word[0]
    fr = fr_set(b, target, sig, cfg.bounds())
    exhibits = []
    for v in fr.elements:
        term, block = fr.provenance[v]
        exhibits.append(Exhibit(format_element(v), "member", str(term), list(block), candidate=b.items).as_dict())
    summary = {
        "ops": list(sig.op_names),
        "sequence": [format_element(v) for v in b.items],
        "target": target,
        "size": len(fr),
    }
    flags = ["empty FR set"] if not len(fr) else []
    return Report("fr-set", config_echo(cfg), "Computed", summary, fr.bounds, exhibits, flags)


def _check_reduction(cfg: ExperimentConfig) -> Report:
    sig = _signature(cfg)
    b = build_sequence(cfg)
    if cfg.target_sequence is None:
        raise RamseyAlgebraError("check-reduction needs --target-seq (the candidate reduction a)")
    a = build_sequence(cfg, cfg.target_sequence)
    wit = check_reduction(a, b, sig, cfg.bounds())
    summary = {
        "ops": list(sig.op_names),
        "a": [format_element(v) for v in a.items],
        "b": [format_element(v) for v in b.items],
        "reduces": wit is not None,
    }
    exhibits = []
    notes = []
    if wit is None:
        notes.append("no witness within bounds (not a proof of non-reduction)")
    else:
        for v, step in zip(a.items, wit.steps):
            exhibits.append(
                Exhibit(format_element(v), "step", str(step.term), list(step.block), candidate=b.items).as_dict()
            )
    status = "Computed" if wit is not None else INCONCLUSIVE
    return Report("check-reduction", config_echo(cfg), status, summary, cfg.bounds().as_dict(), exhibits, notes=notes)


def _search_homogeneous(cfg: ExperimentConfig) -> Report:
    sig = _signature(cfg)
    b = build_sequence(cfg)
    if cfg.coloring is None:
        raise RamseyAlgebraError("search-homogeneous needs --coloring")
    x = parse_coloring(cfg.coloring)
    found = search_homogeneous(b, b.word, sig, cfg.out_len, cfg.bounds(), x)
    summary = {
        "ops": list(sig.op_names),
        "sequence": [format_element(v) for v in b.items],
        "coloring": x.spec,
        "found": found is not None,
    }
    bounds = {**cfg.bounds().as_dict(), "out_len": cfg.out_len}
    if found is None:
        return Report(
            "search-homogeneous", config_echo(cfg), INCONCLUSIVE, summary, bounds,
            notes=["every bounded reduction is Mixed"],
        )
    summary["reduction"] = [format_element(v) for v in found.prefix.items]
    summary["witness"] = str(found.witness)
    summary["verdict"] = found.verdict.kind
    exhibits = []
    for v in found.fr.elements:
        term, block = found.fr.provenance[v]
        exhibits.append(
            Exhibit(
                format_element(v), "in" if x(v) else "out", str(term), list(block), candidate=found.prefix.items
            ).as_dict()
        )
    flags = ["empty FR set"] if found.verdict.vacuous else []
    return Report("search-homogeneous", config_echo(cfg), "Computed", summary, bounds, exhibits, flags)


def run(cmd: str, cfg: ExperimentConfig) -> Report:
    if cmd != cfg.command:
        cfg = cfg.model_copy(update={"command": cmd})
    start = time.perf_counter()
    if cmd == "verify":
        report = _from_witness_report(cfg, _verify(cfg))
    elif cmd == "enumerate-terms":
        report = _enumerate_terms(cfg)
    elif cmd == "fr-set":
        report = _fr_set(cfg)
    elif cmd == "check-reduction":
        report = _check_reduction(cfg)
    elif cmd == "search-homogeneous":
        report = _search_homogeneous(cfg)
    else:
        raise RamseyAlgebraError(f"unknown command {cmd!r}")
    report.seconds = time.perf_counter() - start
    return report


def rerun(report_doc: dict) -> Report:
    """Re-run a report from its echoed config."""
    cfg = config_from_mapping(report_doc["config"])
    return run(cfg.command, cfg)


# -- argument parsing ---------------------------------------------------------------


def _common(p: argparse.ArgumentParser):
    p.add_argument("--config", type=Path, help="YAML/JSON config or a previous report")
    p.add_argument("--n", type=int, help="matrix order")
    p.add_argument("--index-bound", type=int)
    p.add_argument("--indices", help="explicit comma-separated witness indices")
    p.add_argument("--out-len", type=int)
    p.add_argument("--max-arity", type=int)
    p.add_argument("--max-depth", type=int)
    p.add_argument("--ops", help="comma-separated operations from " + ",".join(FULL_OPS))
    p.add_argument("--coloring", help="kind:params, e.g. residue:5,1 | y | theta:2 | predicate:even")
    p.add_argument("--seq", help="kind:params, e.g. G | D:1,2,3 | list:1,2,3 | diag:1,2")
    p.add_argument("--report", type=Path, help="write the structured report (JSON, or CSV for *.csv)")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hetramsey", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"hetramsey {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate-terms", help="list orderly terms over the chosen operations")
    _common(p)
    p.add_argument("--arity", type=int, help="only terms of exactly this arity")
    p.add_argument("--codomain", help="scalar|matrix (default inferred from the operations)")

    p = sub.add_parser("fr-set", help="finite FR-set approximation of a sequence")
    _common(p)
    p.add_argument("--target", dest="codomain", help="sort of the FR set (default: first sort of the word)")

    p = sub.add_parser("check-reduction", help="search a reduction witness a <= b")
    _common(p)
    p.add_argument("--target-seq", required=False, help="the candidate reduction a, same syntax as --seq")

    p = sub.add_parser("search-homogeneous", help="find a reduction whose FR set is homogeneous")
    _common(p)

    p = sub.add_parser("verify", help="run a theorem check")
    p.add_argument("theorem", nargs="?", choices=THEOREM_IDS, help="may come from --config instead")
    _common(p)
    p.add_argument("--len-bound", type=int)
    p.add_argument("--variant")
    p.add_argument("--scalar-only", action="store_true", default=None)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--prefix-len", type=int)

    p = sub.add_parser("run", help="run whatever command a config or previous report describes")
    p.add_argument("config", type=Path)
    p.add_argument("--report", type=Path)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    return parser


FLAG_FIELDS = (
    "n", "index_bound", "out_len", "max_arity", "max_depth", "coloring", "len_bound", "variant",
    "scalar_only", "trials", "seed", "prefix_len", "arity", "codomain",
)


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    data = {}
    if args.config is not None:
        data = config_echo(parse_config(args.config.read_text()))
    if args.command == "run":
        return config_from_mapping(data)
    data["command"] = args.command
    if args.command == "verify":
        if args.theorem is not None:
            data["theorem"] = args.theorem
        elif data.get("theorem") is None:
            raise RamseyAlgebraError("verify needs a theorem id, either positionally or from --config")
    else:
        data.pop("theorem", None)
    for name in FLAG_FIELDS:
        value = getattr(args, name, None)
        if value is not None:
            data[name] = value
    if args.indices:
        data["indices"] = [int(i) for i in args.indices.split(",") if i.strip()]
    if args.ops:
        data["ops"] = [o.strip() for o in args.ops.split(",") if o.strip()]
    if args.seq:
        data["sequence"] = parse_sequence_spec(args.seq)
    if getattr(args, "target_seq", None):
        data["target_sequence"] = parse_sequence_spec(args.target_seq)
    return config_from_mapping(data)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        report = run(cfg.command, cfg)
    except (RamseyAlgebraError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    rendered = {"text": to_text, "json": to_json, "csv": to_csv}[args.format](report)
    sys.stdout.write(rendered)
    if args.report is not None:
        doc = to_csv(report) if args.report.suffix == ".csv" else to_json(report)
        args.report.write_text(doc)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
