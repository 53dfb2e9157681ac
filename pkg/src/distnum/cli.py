"""Command-line front end.

Every command prints one JSON document (keys sorted, so equal inputs give
byte-identical output) or a plain-text rendering of the same structure.

Exit codes: 0 success, 2 budget exceeded or search inconclusive,
3 bad input, 4 a verification check failed.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from .automorphism import automorphism_group
from .balls import verify_ball_extension
from .budget import DEFAULT_BUDGET, Budget
from .distinguishing import wreath_distnum_by_counting, distinguishing_witness
from .errors import BudgetExceeded, Inconclusive, PreconditionError, VerificationFailure
from .graph import ball
from .graphio import GraphFormatError, read_graph_file, to_graph6
from .imprimitivity import BlockSystem, all_block_systems, copies_palette_bound, verify_block_copies_bound, verify_block_wreath_bound
from .perm import PermGroup, wreath_imprimitive
from .strip import strip_ball, strip_window, verify_strip_family

EXIT_OK = 0
EXIT_BUDGET = 2
EXIT_PRECONDITION = 3
EXIT_FAILED = 4


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}") from None


def read_group(path: str) -> PermGroup:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise PreconditionError(f"{path}: not valid JSON ({exc})") from None
    return PermGroup.from_json(data)


def read_group_or_graph(path: str, budget: Budget) -> PermGroup:
    """A group JSON file, or the automorphism group of a graph file."""
    if path.endswith(".json"):
        return read_group(path)
    return automorphism_group(read_graph_file(path), budget)


def _pick_systems(group: PermGroup, index: int | None) -> list[BlockSystem]:
    nontrivial = [bs for bs in all_block_systems(group) if not bs.is_trivial()]
    if index is None:
        return nontrivial
    if not 0 <= index < len(nontrivial):
        raise PreconditionError(f"block system index {index} out of range (have {len(nontrivial)})")
    return [nontrivial[index]]


def cmd_autgroup(args, budget: Budget) -> dict:
    g = read_graph_file(args.graph)
    group = automorphism_group(g, budget)
    return {"vertices": g.n, "order": group.order(), "group": group.to_json()}


def cmd_distnum(args, budget: Budget) -> dict:
    g = read_graph_file(args.graph)
    group = automorphism_group(g, budget)
    found = distinguishing_witness(group, budget, args.max_colors)
    if found is None:
        return {"vertices": g.n, "D": None, "exceeds": args.max_colors}
    d, witness = found
    return {"vertices": g.n, "D": d.to_json(), "witness": list(witness)}


def cmd_strip(args, budget: Budget) -> dict:
    w = strip_window(args.k, args.lo, args.hi)
    out = {"graph6": to_graph6(w.graph), "sidecar": w.sidecar()}
    if args.out:
        Path(args.out + ".g6").write_text(out["graph6"] + "\n")
        Path(args.out + ".json").write_text(json.dumps(out["sidecar"], sort_keys=True) + "\n")
    return out


def cmd_ball(args, budget: Budget) -> dict:
    if args.strip_k is not None:
        w, meta = strip_ball(args.strip_k, args.center, args.radius)
        return {"graph6": to_graph6(w.graph), "sidecar": w.sidecar(), "meta": meta}
    if args.graph is None:
        raise PreconditionError("give a graph file or --strip-k")
    g = read_graph_file(args.graph)
    if not 0 <= args.center < g.n:
        raise PreconditionError(f"centre {args.center} is not a vertex")
    b, vmap = ball(g, args.center, args.radius)
    return {"graph6": to_graph6(b), "to_host": list(vmap.to_host), "center": vmap.center,
            "radius": args.radius}


def cmd_blocks(args, budget: Budget) -> dict:
    group = read_group_or_graph(args.source, budget)
    systems = all_block_systems(group)
    return {"degree": group.degree, "order": group.order(),
            "systems": [{"block_size": bs.block_size, "cells": bs.to_json()} for bs in systems]}


def cmd_wreath(args, budget: Budget) -> dict:
    h, k = read_group(args.h), read_group(args.k)
    formula = wreath_distnum_by_counting(h, k, budget)
    out = {"H_order": h.order(), "K_order": k.order(), "formula": formula.to_json()}
    if not args.no_brute:
        wreath = wreath_imprimitive(h, k)
        brute, _ = distinguishing_witness(wreath, budget)
        out["brute_force"] = brute.to_json()
        out["pass"] = formula == brute
        if not out["pass"]:
            raise VerificationFailure(f"formula gives {formula}, search gives {brute}")
    return out


def cmd_verify_balls(args, budget: Budget) -> dict:
    g = read_graph_file(args.graph)
    return verify_ball_extension(g, args.center, args.k, args.radii, budget)


def cmd_verify_block_copies(args, budget: Budget) -> dict:
    g = read_graph_file(args.graph)
    group = automorphism_group(g, budget)
    reports = [verify_block_copies_bound(g, bs, budget) for bs in _pick_systems(group, args.block_index)]
    return {"reports": reports, "pass": all(r["pass"] for r in reports)}


def cmd_verify_block_wreath(args, budget: Budget) -> dict:
    group = read_group_or_graph(args.source, budget)
    rng = random.Random(args.seed)
    reports = [verify_block_wreath_bound(group, bs, budget, rng) for bs in _pick_systems(group, args.block_index)]
    return {"reports": reports, "pass": all(r["pass"] for r in reports)}


def cmd_verify_palette(args, budget: Budget) -> dict:
    from math import comb

    m = copies_palette_bound(args.k, args.n)
    return {"k": args.k, "n": args.n, "m": m,
            "pass": comb(m, args.k) >= args.n > (comb(m - 1, args.k) if m > args.k else 0)}


def cmd_verify_strip_family(args, budget: Budget) -> dict:
    report = verify_strip_family(args.k, args.m, budget, seed=args.seed)
    if not report["pass"]:
        raise VerificationFailure(json.dumps(report, sort_keys=True))
    return report


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET, help="search node limit")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized choices")
    p.add_argument("--format", choices=("json", "text"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="distnum", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("autgroup", help="automorphism group of a graph")
    p.add_argument("graph")
    _common(p)
    p.set_defaults(func=cmd_autgroup)

    p = sub.add_parser("distnum", help="distinguishing number and lex-least witness")
    p.add_argument("graph")
    p.add_argument("--max-colors", type=_positive, default=None)
    _common(p)
    p.set_defaults(func=cmd_distnum)

    p = sub.add_parser("strip", help="window of the layered strip as graph6 plus layer sidecar")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--lo", type=int, required=True)
    p.add_argument("--hi", type=int, required=True)
    p.add_argument("--out", help="also write OUT.g6 and OUT.json")
    _common(p)
    p.set_defaults(func=cmd_strip)

    p = sub.add_parser("ball", help="ball around a vertex of a graph file or of the strip")
    p.add_argument("graph", nargs="?")
    p.add_argument("--center", type=int, default=0, help="vertex, or layer with --strip-k")
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--strip-k", type=int, default=None)
    _common(p)
    p.set_defaults(func=cmd_ball)

    p = sub.add_parser("blocks", help="block systems of a transitive group (JSON) or graph")
    p.add_argument("source")
    _common(p)
    p.set_defaults(func=cmd_blocks)

    p = sub.add_parser("wreath", aliases=["chan"], help="distinguishing number of H wr K by counting formula")
    p.add_argument("h")
    p.add_argument("k")
    p.add_argument("--no-brute", action="store_true", help="skip the direct search on the wreath product")
    _common(p)
    p.set_defaults(func=cmd_wreath)

    verify = sub.add_parser("verify", help="check one of the constructions").add_subparsers(
        dest="what", required=True)
    p = verify.add_parser("balls", aliases=["thm12"], help="extend anchored colourings over nested balls")
    p.add_argument("graph")
    p.add_argument("--center", type=int, default=0)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--radii", type=_int_list, default=None)
    _common(p)
    p.set_defaults(func=cmd_verify_balls)

    p = verify.add_parser("block-copies", aliases=["thm13"], help="graph bound from a block system of Aut")
    p.add_argument("graph")
    p.add_argument("--block-index", type=int, default=None)
    _common(p)
    p.set_defaults(func=cmd_verify_block_copies)

    p = verify.add_parser("block-wreath", aliases=["thm31"], help="group bound through the wreath product of a block system")
    p.add_argument("source")
    p.add_argument("--block-index", type=int, default=None)
    _common(p)
    p.set_defaults(func=cmd_verify_block_wreath)

    p = verify.add_parser("palette", aliases=["cor33"], help="least m with C(m, k) >= n")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    _common(p)
    p.set_defaults(func=cmd_verify_palette)

    p = verify.add_parser("strip", aliases=["example22"], help="finite checks on the layered strip")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, default=3)
    _common(p)
    p.set_defaults(func=cmd_verify_strip_family)
    return parser


def _is_flat(value) -> bool:
    items = value.values() if isinstance(value, dict) else value
    return not any(isinstance(v, (dict, list)) and v and not _is_flat(v) for v in items) and \
        not (isinstance(value, dict) and value)


def render_text(obj, indent: int = 0) -> list[str]:
    """Indented ``key: value`` lines; lists without nested structure stay on one line."""
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for key in sorted(obj):
            value = obj[key]
            if isinstance(value, (dict, list)) and not _is_flat(value):
                lines.append(f"{pad}{key}:")
                lines.extend(render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {json.dumps(value, sort_keys=True)}")
    elif isinstance(obj, list) and not _is_flat(obj):
        for item in obj:
            if isinstance(item, (dict, list)) and not _is_flat(item):
                lines.append(f"{pad}-")
                lines.extend(render_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {json.dumps(item, sort_keys=True)}")
    else:
        lines.append(f"{pad}{json.dumps(obj, sort_keys=True)}")
    return lines


def emit(obj, fmt: str, stream=None) -> None:
    stream = stream or sys.stdout
    if fmt == "text":
        stream.write("\n".join(render_text(obj)) + "\n")
    else:
        stream.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    budget = Budget(args.budget)
    try:
        result = args.func(args, budget)
    except (BudgetExceeded, Inconclusive) as exc:
        emit({"error": str(exc), "kind": type(exc).__name__}, args.format, sys.stderr)
        return EXIT_BUDGET
    except (PreconditionError, GraphFormatError, FileNotFoundError) as exc:
        emit({"error": str(exc), "kind": type(exc).__name__}, args.format, sys.stderr)
        return EXIT_PRECONDITION
    except VerificationFailure as exc:
        emit({"error": str(exc), "kind": type(exc).__name__}, args.format, sys.stderr)
        return EXIT_FAILED
    emit(result, args.format)
    if isinstance(result, dict) and result.get("pass") is False:
        return EXIT_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
