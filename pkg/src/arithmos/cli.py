"""Command line interface.

    arithmos classify EXPR [--json] [--explain] [--precision N] [--max-degree D]
    arithmos batch FILE    [--json] [--explain] [--precision N] [--max-degree D]
    arithmos rules         [--json]

Exit status: 0 success, 1 parse error (or unreadable batch file),
2 domain error, 3 internal contradiction.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Optional

from . import grammar as g
from .algebraic import DegreeCapConfig
from .anchors import RULES
from .certificate import render as render_cert
from .engine import DisjunctiveFact, EngineConfig, Fact, KnowledgeBase, classify, classify_set, explain
from .errors import ArithmosError, ContradictionError, DomainError, ParseError
from .numeric import MAX_PRECISION
from .verdict import ALGIRR, ALL_NATURES, RAT, TRANS, YES, describe_value

log = logging.getLogger("arithmos")

EXIT_OK, EXIT_PARSE, EXIT_DOMAIN, EXIT_CONTRADICTION = 0, 1, 2, 3

_CLASS_WORD = {"TRANS": "transcendental", "IRRATIONAL": "irrational"}


# ------------------------------------------------------------------ wording


def _poly_text(coeffs) -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        mag = abs(c)
        body = str(mag) if (mag != 1 or k == 0) else ""
        body = body + ("*" if body and mono else "") + mono
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def verdict_label(f: Fact) -> str:
    """Human-readable verdict for a fact."""
    c = f.conclusion
    natures = c.natures
    nz = c.verdict.nonzero == YES
    if natures == {TRANS}:
        return "TRANSCENDENTAL"
    if c.value is not None:
        q = c.value.as_rational()
        if q is not None:
            return f"RATIONAL ({q})"
        return f"ALGEBRAIC IRRATIONAL (minimal polynomial {_poly_text(c.value.minpoly)})"
    if natures == {RAT}:
        label = "RATIONAL"
    elif natures == {ALGIRR}:
        label = "ALGEBRAIC IRRATIONAL"
    elif natures == {RAT, ALGIRR}:
        label = "ALGEBRAIC"
    elif natures == {ALGIRR, TRANS}:
        label = "IRRATIONAL"
    elif natures == {RAT, TRANS}:
        label = "ZERO OR TRANSCENDENTAL" if c.zero_or_trans else "RATIONAL OR TRANSCENDENTAL"
    else:
        label = "UNKNOWN (rational, algebraic-irrational, or transcendental)"
    if nz and RAT in natures:
        label += "; NONZERO"
    return label


def disjunctive_text(d: DisjunctiveFact) -> str:
    members = ", ".join(g.render(m, compact=True) for m in d.members)
    return f"at least {d.at_least} of {{{members}}} {_CLASS_WORD[d.nature_class]}"


def _related(kb: KnowledgeBase, e: g.Expr) -> list[DisjunctiveFact]:
    """Disjunctive facts about e, when e's own nature is not already pinned down."""
    if len(kb.fact(e).conclusion.natures) == 1:
        return []
    return sorted(kb.disjunctive_for(e), key=lambda d: (-d.at_least, d.certificate.subject))


def _verdict_record(text: str, f: Fact, kb: KnowledgeBase, with_cert: bool, **extra) -> dict:
    rec = {
        "type": "verdict",
        **extra,
        "input": text,
        "subject": g.render(f.subject),
        "verdict": f.verdict.to_dict(),
        "label": verdict_label(f),
        "rule": f.certificate.rule,
        "anchor": f.certificate.anchor,
        "related": [disjunctive_text(d) for d in _related(kb, f.subject)],
    }
    if f.conclusion.value is not None:
        rec["value"] = describe_value(f.conclusion.value)
    if with_cert:
        rec["certificate"] = explain(f.subject, kb).to_dict()
    return rec


def _disjunctive_record(d: DisjunctiveFact, with_cert: bool) -> dict:
    rec = {
        "type": "disjunctive",
        "members": [g.render(m) for m in d.members],
        "at_least": d.at_least,
        "class": d.nature_class,
        "rule": d.certificate.rule,
        "anchor": d.certificate.anchor,
    }
    if with_cert:
        rec["certificate"] = d.certificate.to_dict()
    return rec


def _emit(obj) -> None:
    print(json.dumps(obj, ensure_ascii=False, sort_keys=True))


# ----------------------------------------------------------------- commands


def _config(args) -> EngineConfig:
    return EngineConfig(caps=DegreeCapConfig(max_degree=args.max_degree), start_precision=args.precision)


def cmd_classify(args) -> int:
    e = g.parse(args.expr)
    kb = KnowledgeBase(_config(args))
    classify(e, kb)
    f = kb.fact(e)
    if args.json:
        _emit(_verdict_record(args.expr, f, kb, args.explain))
        return EXIT_OK
    line = verdict_label(f)
    for d in _related(kb, e):
        line += f"; related fact: {disjunctive_text(d)}"
    print(line)
    if args.explain:
        print(render_cert(f.certificate))
        for d in _related(kb, e):
            print(render_cert(d.certificate))
    return EXIT_OK


def cmd_batch(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        print(f"error: cannot read {args.file}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    kb = KnowledgeBase(_config(args))
    slots: list[tuple[int, str, Optional[g.Expr], Optional[dict]]] = []
    for n, raw in enumerate(lines, 1):
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        try:
            e = g.parse(text)
            classify(e, kb)
        except ParseError as exc:
            slots.append((n, text, None, _error_record(n, text, "parse", exc)))
            continue
        except DomainError as exc:
            slots.append((n, text, None, _error_record(n, text, "domain", exc)))
            continue
        slots.append((n, text, e, None))
    exprs = list(dict.fromkeys(e for _, _, e, _ in slots if e is not None))
    _, disj, kb = classify_set(exprs, kb)
    disj = sorted(disj, key=lambda d: d.certificate.subject)
    for n, text, e, err in slots:
        if e is None:
            if args.json:
                _emit(err)
            else:
                print(f"line {n}: {text}: ERROR ({err['error']}): {err['message']}")
            continue
        f = kb.fact(e)
        if args.json:
            _emit(_verdict_record(text, f, kb, args.explain, line=n))
        else:
            print(f"line {n}: {text}: {verdict_label(f)}")
            if args.explain:
                print(render_cert(f.certificate))
    for d in disj:
        if args.json:
            _emit(_disjunctive_record(d, args.explain))
        else:
            print(f"related fact: {disjunctive_text(d)}")
            if args.explain:
                print(render_cert(d.certificate))
    return EXIT_OK


def _error_record(n: int, text: str, kind: str, exc: Exception) -> dict:
    rec = {"type": "error", "line": n, "input": text, "error": kind, "message": str(exc)}
    if isinstance(exc, ParseError) and exc.offset is not None:
        rec["offset"] = exc.offset
    return rec


def cmd_rules(args) -> int:
    for r in RULES.values():
        if args.json:
            _emit({"id": r.id, "name": r.name, "source": r.source, "quote": r.quote,
                   "guard": r.guard, "kind": r.kind})
        else:
            print(f"{r.id} — {r.source} — {r.quote}")
            print(f"    {r.name}: {r.guard}")
    return EXIT_OK


# ------------------------------------------------------------------ parsing


def _precision(s: str) -> int:
    v = int(s)
    if not 1 <= v <= MAX_PRECISION:
        raise argparse.ArgumentTypeError(f"precision must lie in [1, {MAX_PRECISION}]")
    return v


def _max_degree(s: str) -> int:
    v = int(s)
    if v < 2:
        raise argparse.ArgumentTypeError("max degree must be at least 2")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON (one object per line)")
    common.add_argument("--explain", action="store_true", help="include the derivation certificate")
    common.add_argument("--precision", type=_precision, default=64, metavar="BITS",
                        help=f"starting working precision in bits (default 64, ceiling {MAX_PRECISION})")
    common.add_argument("--max-degree", type=_max_degree, default=24, metavar="D",
                        help="largest minimal-polynomial degree kept (default 24)")
    common.add_argument("-v", "--verbose", action="store_true", help="log rule activity to stderr")

    p = argparse.ArgumentParser(prog="arithmos", description="Classify closed-form constants.")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("classify", parents=[common], help="classify one expression")
    c.add_argument("expr")
    c.set_defaults(func=cmd_classify)
    b = sub.add_parser("batch", parents=[common], help="classify every line of a file in one session")
    b.add_argument("file")
    b.set_defaults(func=cmd_batch)
    r = sub.add_parser("rules", help="list the rule catalog")
    r.add_argument("--json", action="store_true")
    r.add_argument("-v", "--verbose", action="store_true")
    r.set_defaults(func=cmd_rules)
    return p


def main(argv=None) -> int:
    for stream in (sys.stdout, sys.stderr):
        try:
            stream.reconfigure(encoding="utf-8")
        except (AttributeError, ValueError):
            pass
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ContradictionError as exc:
        print(f"internal contradiction: {exc}", file=sys.stderr)
        return EXIT_CONTRADICTION
    except ArithmosError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
