"""Command-line front end: ``prooflink prove|kbest|parse``."""

from __future__ import annotations

import argparse
import itertools
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from .filter import prune
from .formula import FormulaSyntaxError, Sequent, parse_formula, parse_sequent
from .frame import CandidateMatrix, ProofFrame, candidate_links, unfold
from .kbest import INF, CostMatrix, cost_matrix, murty_kbest
from .prover import (
    OracleRefused,
    ProofNet,
    SearchOptions,
    dr_oracle,
    prove,
    validate_essential,
)

__all__ = [
    "Lexicon",
    "LexiconError",
    "OutputRecord",
    "SolutionRecord",
    "export_dot",
    "load_lexicon",
    "main",
]

EXIT_PROVED, EXIT_UNPROVABLE, EXIT_INPUT_ERROR = 0, 1, 2


class LexiconError(ValueError):
    pass


Lexicon = dict  # word -> list[Formula]


@dataclass
class SolutionRecord:
    linking: list
    weight: Optional[int] = None
    valid: Optional[bool] = True


@dataclass
class OutputRecord:
    sequent: str
    proofs: list = field(default_factory=list)
    count: int = 0
    matrices: Optional[dict] = None

    def to_json(self) -> dict:
        out = {
            "sequent": self.sequent,
            "proofs": [
                {"linking": [list(pair) for pair in s.linking],
                 "weight": s.weight, "valid": s.valid}
                for s in self.proofs
            ],
            "count": self.count,
        }
        if self.matrices is not None:
            out["matrices"] = self.matrices
        return out

    @classmethod
    def from_json(cls, data: dict) -> "OutputRecord":
        proofs = [SolutionRecord([tuple(p) for p in s["linking"]], s["weight"], s["valid"])
                  for s in data["proofs"]]
        return cls(data["sequent"], proofs, data["count"], data.get("matrices"))


# -- rendering ---------------------------------------------------------------------

def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def export_dot(net: ProofNet) -> str:
    """Essential net as a Graphviz digraph; axiom links are dashed."""
    frame = net.frame
    lines = ["digraph proofnet {", "  rankdir=BT;", "  node [shape=circle];"]
    for v in range(1, frame.ess_vertices + 1):
        sign = frame.polarities[v - 1].sign
        label = f"{frame.formulas[v - 1]}{sign} {v}"
        shape = ' shape=doublecircle' if v == frame.output else ''
        lines.append(f'  n{v} [label="{_dot_escape(label)}"{shape}];')
    for a, b in frame.ess_edges:
        lines.append(f"  n{a} -> n{b};")
    for a, b in net.linking:
        lines.append(f"  n{a} -> n{b} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _matrix_json(frame: ProofFrame, cands: CandidateMatrix) -> dict:
    return {
        name: {
            "rows": [frame.tag(r) for r in rows],
            "cols": [frame.tag(c) for c in cols],
            "cells": [[(r, c) in cands for c in cols] for r in rows],
        }
        for name, rows, cols in cands.blocks
    }


def _matrix_text(frame: ProofFrame, cands: CandidateMatrix) -> str:
    lines = []
    for name, rows, cols in cands.blocks:
        heads = [frame.tag(c) for c in cols]
        width = max([len(name)] + [len(frame.tag(r)) for r in rows])
        cell = max([len(h) for h in heads] + [1])
        lines.append(" " * (width + 1) + " ".join(h.rjust(cell) for h in heads))
        for r in rows:
            marks = ["x" if (r, c) in cands else "." for c in cols]
            lines.append(frame.tag(r).ljust(width) + " " + " ".join(m.rjust(cell) for m in marks))
    return "\n".join(lines)


def _render_text(record: OutputRecord, noun: str = "proof") -> str:
    lines = [record.sequent]
    for i, s in enumerate(record.proofs, 1):
        pairs = " ".join(f"{n}-{p}" for n, p in s.linking)
        extra = []
        if s.weight is not None:
            extra.append(f"weight {s.weight}")
        if s.valid is not None and noun != "proof":
            extra.append("valid" if s.valid else "invalid")
        head = f"{noun} {i}" + (f" ({', '.join(extra)})" if extra else "")
        lines.append(f"{head}: {pairs}")
    plural = "" if record.count == 1 else "s"
    lines.append(f"{record.count} {noun}{plural}")
    return "\n".join(lines)


# -- commands ----------------------------------------------------------------------

def _record(sequent: Sequent, nets: list[ProofNet]) -> OutputRecord:
    return OutputRecord(
        str(sequent),
        [SolutionRecord(net.tags(), net.weight, True) for net in nets],
        len(nets),
    )


def _options(args) -> SearchOptions:
    return SearchOptions(planar=args.planar, max_solutions=args.max)


def cmd_prove(args, out) -> int:
    sequent = parse_sequent(args.sequent)
    nets = prove(sequent, _options(args))
    record = _record(sequent, nets)
    frame = unfold(sequent)
    if args.show_matrix:
        before = candidate_links(frame)
        after = prune(frame, [], before).pruned
        record.matrices = {"candidates_before": _matrix_json(frame, before),
                           "candidates_after": _matrix_json(frame, after)}
        if args.format == "text":
            print("candidates before pruning (rows negative, columns positive):", file=out)
            print(_matrix_text(frame, before), file=out)
            print("candidates after pruning:", file=out)
            print(_matrix_text(frame, after), file=out)
    if args.format == "json":
        print(json.dumps(record.to_json(), indent=2, ensure_ascii=False), file=out)
    elif args.format == "dot":
        out.write("".join(export_dot(net) for net in nets))
    else:
        print(_render_text(record), file=out)
    return EXIT_PROVED if nets else EXIT_UNPROVABLE


def load_cost_file(path: str) -> CostMatrix:
    rows = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        rows.append([INF if tok.lower() in ("inf", "∞") else int(tok)
                     for tok in line.replace(",", " ").split()])
    return CostMatrix(rows)


def _valid(frame: ProofFrame, linking) -> bool:
    if not validate_essential(frame, linking):
        return False
    try:
        return dr_oracle(frame, linking)
    except OracleRefused:
        return True


def cmd_kbest(args, out) -> int:
    if args.cost_file:
        cost = load_cost_file(args.cost_file)
        ranked = murty_kbest(cost, args.k)
        record = OutputRecord(
            args.cost_file,
            [SolutionRecord([(str(r), str(c)) for r, c in rl.linking], rl.weight, None)
             for rl in ranked],
            len(ranked),
        )
        found = bool(ranked)
    else:
        if args.sequent is None:
            raise ValueError("kbest needs a sequent or --cost-file")
        sequent = parse_sequent(args.sequent)
        frame = unfold(sequent)
        if not frame.balanced:
            ranked = []
        else:
            cands = candidate_links(frame)
            if args.prune:
                cands = prune(frame, [], cands).pruned
            ranked = murty_kbest(cost_matrix(frame, cands), args.k)
        proofs = [SolutionRecord([(frame.tag(n), frame.tag(p)) for n, p in rl.linking],
                                 rl.weight, _valid(frame, rl.linking))
                  for rl in ranked]
        record = OutputRecord(str(sequent), proofs, len(proofs))
        found = any(s.valid for s in proofs)
    if args.format == "json":
        print(json.dumps(record.to_json(), indent=2, ensure_ascii=False), file=out)
    else:
        print(_render_text(record, noun="linking"), file=out)
    return EXIT_PROVED if found else EXIT_UNPROVABLE


def load_lexicon(path: str) -> Lexicon:
    """Read ``word: formula`` lines; repeated words add alternatives."""
    lexicon: Lexicon = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        word, sep, text = line.partition(":")
        word = word.strip()
        if not sep or not word or any(ch.isspace() for ch in word):
            raise LexiconError(f"{path}:{lineno}: expected 'word: formula'")
        try:
            formula = parse_formula(text)
        except FormulaSyntaxError as exc:
            raise LexiconError(f"{path}:{lineno}: {exc}") from exc
        lexicon.setdefault(word, []).append(formula)
    return lexicon


def cmd_parse(args, out) -> int:
    lexicon = load_lexicon(args.lexicon)
    goal = parse_formula(args.goal)
    words = args.words.split()
    for w in words:
        if w not in lexicon:
            raise LexiconError(f"unknown word {w!r}")
    records = []
    for choice in itertools.product(*(lexicon[w] for w in words)):
        sequent = Sequent(tuple(choice), goal)
        records.append(_record(sequent, prove(sequent, _options(args))))
    if args.format == "json":
        print(json.dumps([r.to_json() for r in records], indent=2, ensure_ascii=False), file=out)
    else:
        print("\n\n".join(_render_text(r) for r in records), file=out)
    total = sum(r.count for r in records)
    return EXIT_PROVED if total else EXIT_UNPROVABLE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prooflink",
                                     description="Proof-net search for the Lambek calculus and MILL.")
    sub = parser.add_subparsers(dest="command", required=True)

    def search_flags(p):
        p.add_argument("--planar", action="store_true", help="only non-crossing axiom links")
        p.add_argument("--max", type=int, default=None, metavar="N", help="stop after N proofs")
        p.add_argument("--trace", action="store_true", help="log search steps to stderr")

    p = sub.add_parser("prove", help="enumerate proof nets of a sequent")
    p.add_argument("sequent")
    search_flags(p)
    p.add_argument("--format", choices=("text", "json", "dot"), default="text")
    p.add_argument("--show-matrix", action="store_true",
                   help="print the candidate matrix before and after pruning")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("kbest", help="rank linkings by total axiom-link distance")
    p.add_argument("sequent", nargs="?")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--cost-file", metavar="PATH")
    p.add_argument("--prune", action="store_true",
                   help="give cyclic or disconnected links infinite cost first")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_kbest)

    p = sub.add_parser("parse", help="prove a sentence against a lexicon")
    p.add_argument("words")
    p.add_argument("--lexicon", required=True, metavar="PATH")
    p.add_argument("--goal", required=True, metavar="FORMULA")
    search_flags(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_parse)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT_ERROR if exc.code else EXIT_PROVED
    if getattr(args, "k", 1) is not None and getattr(args, "k", 1) < 1:
        print("error: -k must be at least 1", file=sys.stderr)
        return EXIT_INPUT_ERROR
    if getattr(args, "max", None) is not None and args.max < 1:
        print("error: --max must be at least 1", file=sys.stderr)
        return EXIT_INPUT_ERROR
    logger = logging.getLogger("prooflink")
    handler = None
    if args.trace:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
        logger.addHandler(handler)
        logger.setLevel(logging.DEBUG)
    try:
        return args.func(args, out)
    except (FormulaSyntaxError, LexiconError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    finally:
        if handler is not None:
            logger.removeHandler(handler)
            logger.setLevel(logging.NOTSET)


if __name__ == "__main__":
    sys.exit(main())
