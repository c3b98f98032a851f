"""Command-line entry point: ``tanglekit {measure,roof,monogamy,paper-repro,search}``.

Exit codes: 0 success, 1 certified monogamy violation, 2 usage or validation error.
"""
from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from . import __version__
from . import convexroof as cr
from . import measures as ms
from . import monogamy as mono
from . import states as st
from .qstate import Partition, PureState, QubitCut
from .statefile import StateFileError, dumps_canonical, load_state

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- serialization helpers

def _ensemble_doc(e: st.Ensemble) -> list:
    out = []
    for w, s in e.members:
        out.append({"weight": w, "re": s.amplitudes.real.tolist(), "im": s.amplitudes.imag.tolist()})
    return out


def _bracket_doc(b: cr.RoofBracket, emit_witness: bool = False) -> dict:
    doc = {"lower": b.lower, "upper": b.upper, "gap": b.gap, "certified": b.certified,
           "anomaly": b.anomaly}
    if b.witness is not None:
        doc["witness_members"] = len(b.witness)
        doc["witness_effective_members"] = cr.effective_members(b.witness)
        if emit_witness:
            doc["witness"] = _ensemble_doc(b.witness)
    return doc


def _term_doc(t) -> dict | float:
    return _bracket_doc(t) if isinstance(t, cr.RoofBracket) else float(t)


def report_doc(rep: mono.MonogamyReport) -> dict:
    return {
        "context": {k: rep.context[k] for k in sorted(rep.context)},
        "lhs": _term_doc(rep.lhs),
        "rhs_terms": [{"label": label, "value": _term_doc(t)} for label, t in rep.rhs_terms],
        "slack": rep.slack,
        "slack_max": rep.slack_max,
        "verdict": rep.verdict.value,
        "tolerance": rep.tolerance,
        "saturation_tolerance": rep.saturation_tolerance,
    }


def _config_doc(cfg: cr.RoofConfig) -> dict:
    return {"ensemble_size": cfg.ensemble_size, "restarts": cfg.restarts,
            "max_iterations": cfg.max_iterations, "step_tolerance": cfg.step_tolerance,
            "certificate_tolerance": cfg.certificate_tolerance, "seed": cfg.seed}


def _cfg(args) -> cr.RoofConfig:
    try:
        return cr.RoofConfig(ensemble_size=args.ensemble_size, restarts=args.restarts,
                             max_iterations=args.max_iterations, step_tolerance=args.step_tol,
                             certificate_tolerance=args.tol, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _parse_cut(text: str) -> QubitCut:
    try:
        return QubitCut(int(q) for q in text.split(","))
    except ValueError as exc:
        raise UsageError(f"--cut: {exc}") from exc


def _parse_partition(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except ValueError as exc:
        raise UsageError(f"--partition: {exc}") from exc


def _emit(doc: dict, args, human_lines: list[str], elapsed: float) -> None:
    if args.json:
        if args.timing:
            doc = {**doc, "wall_time_s": elapsed}
        sys.stdout.write(dumps_canonical(doc) + "\n")
    else:
        for line in human_lines:
            print(line)
        if args.timing:
            print(f"wall time: {elapsed:.3f} s")


def _fmt(x: float) -> str:
    return f"{x:.12g}"


# ---------------------------------------------------------------- commands

def cmd_measure(args) -> int:
    loaded = load_state(args.state)
    cut = _parse_cut(args.cut)
    try:
        cut.validate(loaded.state.n_qubits)
    except ValueError as exc:
        raise UsageError(f"--cut: {exc}") from exc
    kind = args.measure
    mixed = not loaded.is_pure
    result = {"kind": kind, "cut": sorted(cut.side_a)}
    if mixed and kind in ("tangle", "concurrence") and loaded.state.n_qubits > 2:
        if kind == "concurrence" or len(cut.side_a) != 1:
            raise UsageError(f"{kind} of a mixed state with more than two qubits is only available"
                             " as a tangle upper bound across a single-qubit cut")
        cfg = _cfg(args)
        res = cr.optimize_roof(loaded.state, cut, cfg)
        result.update(value=res.upper, bound="upper", restarts_run=res.restarts_run)
    else:
        try:
            result.update(value=ms.measure(loaded.state, cut, kind).value, bound="exact")
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    doc = {"command": "measure", "state": args.state, "seed": args.seed, "result": result}
    lines = [f"{kind} across {cut} | rest: {_fmt(result['value'])} ({result['bound']})"]
    _emit(doc, args, lines, time.perf_counter() - args._t0)
    return EXIT_OK


def cmd_roof(args) -> int:
    loaded = load_state(args.state)
    cfg = _cfg(args)
    n = loaded.state.n_qubits
    if not 0 <= args.focus < n:
        raise UsageError(f"--focus {args.focus} out of range for {n} qubits")
    bracket = cr.certified_tangle(loaded.state, args.focus, cfg)
    doc = {"command": "roof", "state": args.state, "focus": args.focus, "seed": cfg.seed,
           "config": _config_doc(cfg), "result": _bracket_doc(bracket, args.emit_witness)}
    lines = [f"tangle across {{{args.focus}}} | rest in [{_fmt(bracket.lower)}, {_fmt(bracket.upper)}]",
             f"gap {bracket.gap:.3e}  certified={bracket.certified}"
             f"  witness members={len(bracket.witness) if bracket.witness else 0}"]
    if bracket.anomaly:
        lines.append("WARNING: upper bound below the CKW lower bound")
    _emit(doc, args, lines, time.perf_counter() - args._t0)
    return EXIT_OK


def _run_check(state, partition: Partition, kind: str, cfg) -> mono.MonogamyReport:
    if kind == "tangle":
        if isinstance(state, PureState):
            return mono.check_generalized(state, partition, cfg)
        return mono.check_generalized_mixed(state, partition, cfg)
    if not isinstance(state, PureState):
        raise UsageError(f"{kind} monogamy is defined here for pure states only")
    return mono.check_measure_monogamy(state, partition, kind)


def _exit_for(reports) -> int:
    verdicts = {r.verdict for r in reports}
    if mono.Verdict.VIOLATED in verdicts:
        return EXIT_VIOLATION
    if mono.Verdict.INCONCLUSIVE in verdicts:
        print("warning: some checks are inconclusive (uncertified brackets)", file=sys.stderr)
    return EXIT_OK


def cmd_monogamy(args) -> int:
    partition = _parse_partition(args.partition)
    cfg = _cfg(args)
    if args.random is not None:
        if args.state is not None:
            raise UsageError("give either a state file or --random, not both")
        try:
            partition.validate(args.random)
        except ValueError as exc:
            raise UsageError(f"--partition: {exc}") from exc
        reports = []
        for i in range(args.samples):
            state = st.random_pure(args.random, np.random.SeedSequence([args.seed, i]))
            rep = _run_check(state, partition, args.kind, cfg)
            rep.context["sample"] = i
            reports.append(rep)
        reports.sort(key=lambda r: (r.slack, r.context["sample"]))
        slacks = [r.slack for r in reports]
        doc = {"command": "monogamy", "random_qubits": args.random, "partition": str(partition),
               "kind": args.kind, "samples": args.samples, "seed": args.seed,
               "config": _config_doc(cfg),
               "min_slack": min(slacks) if slacks else None,
               "verdict_counts": {v.value: sum(r.verdict is v for r in reports) for v in mono.Verdict},
               "reports": [report_doc(r) for r in reports]}
        lines = [f"{args.kind} monogamy, {args.samples} random {args.random}-qubit states, partition {partition}",
                 f"min slack: {_fmt(min(slacks)) if slacks else 'n/a'}"]
        lines += [f"  {k}: {v}" for k, v in doc["verdict_counts"].items()]
        _emit(doc, args, lines, time.perf_counter() - args._t0)
        return _exit_for(reports)
    if args.state is None:
        raise UsageError("a state file or --random N is required")
    loaded = load_state(args.state)
    try:
        partition.validate(loaded.state.n_qubits)
    except ValueError as exc:
        raise UsageError(f"--partition: {exc}") from exc
    rep = _run_check(loaded.state, partition, args.kind, cfg)
    doc = {"command": "monogamy", "state": args.state, "partition": str(partition), "kind": args.kind,
           "seed": args.seed, "config": _config_doc(cfg), "report": report_doc(rep)}
    lhs = rep.lhs if not isinstance(rep.lhs, cr.RoofBracket) else rep.lhs.upper
    lines = [f"{args.kind} monogamy for partition {partition}",
             f"  lhs {_fmt(lhs)}"]
    for label, t in rep.rhs_terms:
        val = t.upper if isinstance(t, cr.RoofBracket) else t
        cert = "" if not isinstance(t, cr.RoofBracket) else f" (bracket gap {t.gap:.2e}, certified={t.certified})"
        lines.append(f"  rhs[{label}] {_fmt(val)}{cert}")
    lines.append(f"  slack {rep.slack:.6e}  verdict: {rep.verdict.value}")
    _emit(doc, args, lines, time.perf_counter() - args._t0)
    return _exit_for([rep])


def cmd_search(args) -> int:
    cfg = _cfg(args)
    if not 2 <= args.n <= 8:
        raise UsageError(f"--n must be in 2..8, got {args.n}")
    if args.samples < 0:
        raise UsageError("--samples must be >= 0")
    shapes = []
    for text in args.partition_shape or []:
        try:
            shapes.append(tuple(int(x) for x in text.split(",")))
        except ValueError as exc:
            raise UsageError(f"--partition-shape {text!r}: {exc}") from exc
    if not shapes:
        shapes = [(1, args.n - 2)] if args.n > 2 else [(1,)]
    try:
        reports = mono.conjecture_search(args.n, shapes, args.samples, cfg, args.seed,
                                         w_class_only=args.w_class_only)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    found = mono.violations(reports)
    unsure = mono.inconclusive(reports)
    doc = {"command": "search", "n": args.n, "partition_shapes": [list(s) for s in shapes],
           "samples": args.samples, "seed": args.seed, "w_class_only": args.w_class_only,
           "config": _config_doc(cfg),
           "min_slack": reports[0].slack if reports else None,
           "violations": len(found), "inconclusive": len(unsure),
           "verdict_counts": {v.value: sum(r.verdict is v for r in reports) for v in mono.Verdict},
           "reports": [report_doc(r) for r in reports]}
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(dumps_canonical(doc) + "\n")
    lines = [f"search: {args.samples} samples, n={args.n}, shapes={shapes}",
             f"min slack: {_fmt(reports[0].slack) if reports else 'n/a'}"]
    lines += [f"  {k}: {v}" for k, v in doc["verdict_counts"].items()]
    if found:
        lines.append("*** CERTIFIED VIOLATION FOUND ***")
        lines += [f"  sample {r.context['sample']} partition {r.context['partition']}: slack {r.slack:.3e}"
                  for r in found]
    for r in unsure:
        lines.append(f"  inconclusive: sample {r.context['sample']} partition {r.context['partition']}"
                     f" slack in [{r.slack:.3e}, {r.slack_max:.3e}]")
    _emit(doc, args, lines, time.perf_counter() - args._t0)
    return EXIT_VIOLATION if found else EXIT_OK


def cmd_paper_repro(args) -> int:
    from .repro import reproduce

    cfg = _cfg(args)
    doc = reproduce(cfg)
    lines = []
    for claim in doc["claims"]:
        mark = "PASS" if claim["pass"] else "FAIL"
        lines.append(f"[{mark}] {claim['id']}: {claim['description']}"
                     f" (expected {claim['expected']}, got {_fmt(claim['observed'])})")
    lines.append("")
    lines.append("tangle vs p, uniform three-qubit W mixed with |000>:")
    lines.append("      p    analytic        roof lower      roof upper      pairwise sum")
    for row in doc["tangle_vs_p"]:
        lines.append(f"  {row['p']:5.2f}  {row['analytic']:.12f}  {row['lower']:.12f}"
                     f"  {row['upper']:.12f}  {row['pairwise_sum']:.12f}")
    lines.append(f"all claims pass: {doc['all_pass']}")
    _emit(doc, args, lines, time.perf_counter() - args._t0)
    return EXIT_OK if doc["all_pass"] else EXIT_VIOLATION


# ---------------------------------------------------------------- parser

def _add_roof_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--restarts", type=int, default=32)
    p.add_argument("--ensemble-size", type=int, default=None)
    p.add_argument("--max-iterations", type=int, default=500)
    p.add_argument("--step-tol", type=float, default=1e-10)
    p.add_argument("--tol", type=float, default=1e-6, help="certificate tolerance")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--timing", action="store_true", help="include wall time in --json output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tanglekit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", help="closed-form measure of a state file")
    p.add_argument("state")
    p.add_argument("--cut", required=True, help="comma list of side-A qubits, e.g. 0 or 0,2")
    p.add_argument("--measure", choices=ms.KINDS, default="tangle")
    _add_common(p)
    _add_roof_flags(p)
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("roof", help="certified convex-roof tangle bracket")
    p.add_argument("state")
    p.add_argument("--focus", type=int, default=0)
    p.add_argument("--emit-witness", action="store_true")
    _add_common(p)
    _add_roof_flags(p)
    p.set_defaults(func=cmd_roof)

    p = sub.add_parser("monogamy", help="CKW-type inequality for a partition")
    p.add_argument("state", nargs="?")
    p.add_argument("--partition", required=True, help="focus|block|block, e.g. 0|1,2|3,4")
    p.add_argument("--kind", choices=("tangle", "negativity", "realignment"), default="tangle")
    p.add_argument("--random", type=int, default=None, metavar="N",
                   help="sweep random N-qubit pure states instead of a file")
    p.add_argument("--samples", type=int, default=200)
    _add_common(p)
    _add_roof_flags(p)
    p.set_defaults(func=cmd_monogamy)

    p = sub.add_parser("paper-repro", help="reproduce the reference numbers and the tangle-vs-p table")
    _add_common(p)
    _add_roof_flags(p)
    p.set_defaults(func=cmd_paper_repro)

    p = sub.add_parser("search", help="random search for violations of partition monogamy")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--partition-shape", action="append",
                   help="block sizes after the focus, e.g. 1,2 (repeatable)")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--w-class-only", action="store_true")
    p.add_argument("--output", help="write the full JSON report here")
    _add_common(p)
    _add_roof_flags(p)
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args._t0 = time.perf_counter()
    try:
        return args.func(args)
    except (UsageError, StateFileError) as exc:
        print(f"tanglekit {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"tanglekit {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
