from __future__ import annotations

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional

from .config import load_config
from .core import PatternPoset, interpolating_poset
from .errors import BudgetExceeded, CrossCheckMismatch, EngineError, LabelParseError, PosetError
from .evaluators import EVALUATOR_NAMES, build_evaluator, cross_check, evaluate
from .field import FiniteField, field_of_order
from .oracle import verify_axioms
from .reps import CHARACTER, CLASS, RepStyle, SupercharLabel, enumerate_labels
from .restrict import FIRST_ROW, LAST_COLUMN, Decomposition, restrict, restrict_step
from .table import TableResult, build_table
from .utils import (
    colorize,
    decomposition_lines,
    format_label,
    format_value,
    iter_lines,
    label_payload,
    parse_label,
    to_json,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ENGINE = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_MISMATCH = 4

STEP = "step"


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=int, required=True, help="Matrix size n")
    parser.add_argument("--q", default=None, help="Field order as 'p^e' or an integer (default from DEFAULT_Q)")
    parser.add_argument("--m", type=int, default=None, help="Interpolating parameter m (default: the chain U_n)")
    parser.add_argument(
        "--style", default="auto", choices=["auto"] + [s.value for s in RepStyle], help="Representative style"
    )
    parser.add_argument("--format", default="text", choices=["text", "json", "csv"], help="Output format")
    parser.add_argument("--output", default=None, help="Output file path. Defaults to stdout")
    parser.add_argument("--threads", type=int, default=None, help="Worker threads (default from ENGINE_THREADS)")
    parser.add_argument("--budget", type=int, default=None, help="Oracle budget (default from ORACLE_BUDGET)")
    parser.add_argument("--log-level", default=None, help="Logging level (default from LOG_LEVEL)")
    parser.add_argument("--no-color", action="store_true", help="Disable ANSI colour in text output")


def parse_args(argv: Optional[list[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(description="Supercharacter engine for U_n(F_q) and the groups U_(m)")
    sub = parser.add_subparsers(dest="command", required=True)

    reps = sub.add_parser("reps", help="List superclass and supercharacter labels")
    _common(reps)
    reps.add_argument("--kind", default="both", choices=[CHARACTER, CLASS, "both"])

    char = sub.add_parser("char", help="Evaluate one χ^λ(u)")
    _common(char)
    char.add_argument("--label", required=True, help="Supercharacter label λ in arc notation")
    char.add_argument("--at", required=True, help="Superclass label u in arc notation")
    char.add_argument("--evaluator", default="auto", choices=["auto", *EVALUATOR_NAMES])
    char.add_argument("--cross-check", action="store_true", help="Also run every applicable evaluator")

    table = sub.add_parser("table", help="Full supercharacter table")
    _common(table)
    table.add_argument("--evaluator", default="auto", choices=["auto", *EVALUATOR_NAMES])
    table.add_argument("--cross-check", action="store_true", help="Compare against general and oracle values")

    res = sub.add_parser("restrict", help="Restriction to U_{n-1} or one step down the U_(m) chain")
    _common(res)
    res.add_argument("--label", default=None, help="Supercharacter label in arc notation")
    res.add_argument("--file", default=None, help="File with one label per line")
    res.add_argument("--embedding", default=FIRST_ROW, choices=[FIRST_ROW, LAST_COLUMN, STEP])

    verify = sub.add_parser("verify", help="Check the supercharacter axioms by enumeration")
    _common(verify)
    verify.add_argument("--sweep", action="store_true", help="Also cross-check every evaluator on the full table")

    return parser.parse_args(argv)


def _setup_logging(level: str) -> None:
    logging.basicConfig(level=getattr(logging, level.upper(), logging.WARNING), format="%(levelname)s %(name)s: %(message)s")


def _poset(args: argparse.Namespace) -> PatternPoset:
    m = 0 if args.m is None else args.m
    if args.n < 1:
        raise PosetError(f"n must be positive, got {args.n}")
    return interpolating_poset(args.n, m)


def _style(args: argparse.Namespace, poset: PatternPoset) -> RepStyle:
    if args.style != "auto":
        return RepStyle(args.style)
    return RepStyle.UN_CANONICAL if poset.is_chain else RepStyle.PATH


def _emit(text: str, args: argparse.Namespace) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _header(poset: PatternPoset, fld: FiniteField, style: RepStyle) -> Dict[str, Any]:
    return {"schema": "1", "n": poset.n, "m": poset.m, "q": fld.q, "style": style.value}


def _run_reps(args: argparse.Namespace, poset: PatternPoset, fld: FiniteField, style: RepStyle, color: bool) -> str:
    kinds = [CHARACTER, CLASS] if args.kind == "both" else [args.kind]
    listing = {kind: enumerate_labels(poset, fld, style, kind) for kind in kinds}
    if args.format == "json":
        payload = _header(poset, fld, style)
        for kind, labels in listing.items():
            payload[f"{kind}s" if kind == CHARACTER else "classes"] = [label_payload(lab) for lab in labels]
        return to_json(payload)
    lines: List[str] = []
    for kind, labels in listing.items():
        lines.append(colorize(f"# {len(labels)} {kind} labels", "bold", color))
        lines.extend(format_label(lab) for lab in labels)
    return "\n".join(lines)


def _run_char(
    args: argparse.Namespace, poset: PatternPoset, fld: FiniteField, style: RepStyle, budget: int
) -> str:
    lam = parse_label(args.label, poset, fld, style, CHARACTER)
    u = parse_label(args.at, poset, fld, style, CLASS)
    ev = build_evaluator(args.evaluator, style, budget)
    result = evaluate(ev, lam, u)  # type: ignore[arg-type]
    if args.cross_check:
        cross_check(lam, u, [ev] + [build_evaluator(n, budget=budget) for n in EVALUATOR_NAMES if n != ev.name])  # type: ignore[arg-type]
    if args.format == "json":
        payload = _header(poset, fld, style)
        payload.update(
            {
                "evaluator": ev.name,
                "label": format_label(lam),
                "at": format_label(u),
                "value": format_value(result.value),
                "coeffs": result.value.to_json(),
                "zero_reason": result.zero_reason,
            }
        )
        return to_json(payload)
    return format_value(result.value)


def _table_text(result: TableResult, color: bool) -> str:
    header = ["λ \\ u"] + [format_label(u) for u in result.classes]
    rows = [[format_label(lam)] + [format_value(v.value) for v in row] for lam, row in zip(result.characters, result.values)]
    widths = [max(len(r[c]) for r in [header] + rows) for c in range(len(header))]
    lines = [colorize("  ".join(h.ljust(w) for h, w in zip(header, widths)), "bold", color)]
    lines.extend("  ".join(cell.ljust(w) for cell, w in zip(r, widths)) for r in rows)
    return "\n".join(lines)


def _run_table(
    args: argparse.Namespace, poset: PatternPoset, fld: FiniteField, style: RepStyle, threads: int, budget: int, color: bool
) -> str:
    result = build_table(poset, fld, style, args.evaluator, threads=threads, check=args.cross_check, budget=budget)
    if args.format == "json":
        return to_json(result.to_payload(format_label))
    if args.format == "csv":
        return result.to_csv(format_label).rstrip("\n")
    return _table_text(result, color)


def _restrict_one(label: SupercharLabel, embedding: str, budget: int) -> Decomposition:
    if embedding == STEP:
        return restrict_step(label, budget=budget)
    return restrict(label, embedding)


def _run_restrict(
    args: argparse.Namespace, poset: PatternPoset, fld: FiniteField, style: RepStyle, budget: int
) -> str:
    if args.embedding != STEP and not poset.is_chain:
        raise PosetError("the first-row and last-column embeddings restrict from the chain U_n (omit --m)")
    if args.embedding == STEP and (poset.m is None or poset.m >= poset.n):
        raise PosetError("--embedding step restricts from P_(m) to P_(m+1) and needs m < n")
    if args.file:
        with open(args.file, "r", encoding="utf-8") as f:
            sources = list(iter_lines(f.read()))
    elif args.label is not None:
        sources = [(1, args.label)]
    else:
        raise LabelParseError("restrict needs --label or --file")
    payloads = []
    text_blocks = []
    for line, raw in sources:
        label = parse_label(raw, poset, fld, style, CHARACTER, line=line)
        result = _restrict_one(label, args.embedding, budget)  # type: ignore[arg-type]
        terms = result.items()
        payloads.append(
            {
                "input": format_label(label),
                "embedding": args.embedding,
                "terms": [{"coeff": c, "label": format_label(lab)} for lab, c in terms],
            }
        )
        text_blocks.append("\n".join(decomposition_lines(terms)))
    if args.format == "json":
        if len(payloads) == 1:
            return to_json({"schema": "1", **payloads[0]})
        return to_json({"schema": "1", "results": payloads})
    return "\n\n".join(text_blocks)


def _run_verify(
    args: argparse.Namespace, poset: PatternPoset, fld: FiniteField, threads: int, budget: int
) -> tuple[str, bool]:
    report = verify_axioms(poset, fld, budget)
    payload = report.to_json()
    passed = report.passed
    if args.sweep:
        swept = []
        styles = [RepStyle.UN_CANONICAL] if poset.is_chain else []
        styles += [RepStyle.COMB, RepStyle.PATH] if poset.is_interpolating else []
        for sweep_style in styles:
            build_table(poset, fld, sweep_style, "auto", threads=threads, check=True, budget=budget)
            swept.append(sweep_style.value)
        payload["sweep"] = {"styles": swept, "passed": True}
    if args.format == "json":
        return to_json(payload), passed
    lines = [f"{name}: {'pass' if ok else 'FAIL'}" for name, ok in report.checks.items()]
    lines.extend(report.notes)
    return "\n".join(lines), passed


def main(argv: Optional[list[str]] = None) -> int:
    args = parse_args(argv)
    cfg = load_config()
    _setup_logging(args.log_level or cfg.log_level)

    color = cfg.color and not args.no_color and not args.output
    threads = args.threads or cfg.threads
    budget = args.budget or cfg.oracle_budget

    try:
        fld = field_of_order(args.q or cfg.default_q)
        poset = _poset(args)
        style = _style(args, poset)
        status = EXIT_OK
        if args.command == "reps":
            text = _run_reps(args, poset, fld, style, color)
        elif args.command == "char":
            text = _run_char(args, poset, fld, style, budget)
        elif args.command == "table":
            text = _run_table(args, poset, fld, style, threads, budget, color)
        elif args.command == "restrict":
            text = _run_restrict(args, poset, fld, style, budget)
        else:
            text, passed = _run_verify(args, poset, fld, threads, budget)
            status = EXIT_OK if passed else EXIT_MISMATCH
    except LabelParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except CrossCheckMismatch as exc:
        print(f"cross-check mismatch: {exc} {exc.values}", file=sys.stderr)
        return EXIT_MISMATCH
    except EngineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ENGINE

    _emit(text, args)
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
