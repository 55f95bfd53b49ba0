"""Command-line interface.

Exit codes: 0 ok, 1 negative verdict, 2 usage or parse error, 3 capability
error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import census as census_mod
from .affine import morphism_witness
from .completeness import EVIDENCE, classify_space, verify_copower_theorem
from .errors import CapabilityError, DomainError
from .freegroup import fold, format_word, letter_name, parse_word
from .instances.finmod import FinMod
from .instances.finset import FinSet
from .workspace import format_morphism, format_point, make_instance, read
from .zariski import RegularQuotient, closed_form_classification, closed_form_zeta, equivalent, zeta

OK, NEGATIVE, USAGE, CAPABILITY = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


def _emit(args, payload: dict, lines: list[str]):
    if args.json:
        print(json.dumps(payload, sort_keys=True, default=str))
    else:
        for line in lines:
            print(line)


def _instance(args):
    return make_instance(args.instance, args.theory)


# --- subcommands -------------------------------------------------------------


def cmd_check(args) -> int:
    ws = read(args.file)
    f = ws.morphism(args.morphism)
    dom, cod = ws.space(args.source), ws.space(args.target)
    a = morphism_witness(f, dom, cod)
    inst = ws.instance
    if a is None:
        _emit(args, {"valid": True, "morphism": args.morphism},
              [f"{args.morphism}: valid affine morphism {dom!r} -> {cod!r}"])
        return OK
    image = inst.apply_point(f, a)
    _emit(
        args,
        {"valid": False, "morphism": args.morphism, "witness": format_point(inst, a), "image": format_point(inst, image)},
        [f"{args.morphism}: invalid, {inst.format_point(a)} is in the source structure but its image "
         f"{inst.format_point(image)} is not in the target"],
    )
    return NEGATIVE


def _describe_map(inst, p) -> str:
    if isinstance(inst, FinSet):
        blocks: dict[int, list[int]] = {}
        for x, y in enumerate(p.table):
            blocks.setdefault(y, []).append(x)
        return "{" + ", ".join("{" + ",".join(map(str, b)) + "}" for _, b in sorted(blocks.items())) + "}"
    if isinstance(inst, FinMod):
        return f"X -> {inst.format_object(p.cod)}"
    return repr(p)


def cmd_zeta(args) -> int:
    ws = read(args.file)
    q = ws.quotient(args.quotient)
    inst = ws.instance
    r = zeta(q)
    payload = {
        "quotient": args.quotient,
        "zeta": format_morphism(inst, r.zeta.p),
        "zeta_codomain": inst.format_object(inst.cod(r.zeta.p)),
        "theta": format_morphism(inst, r.theta),
        "closed": r.is_closed,
        "sparse": r.is_sparse,
    }
    lines = [
        f"zeta p: {_describe_map(inst, r.zeta.p)}",
        f"theta p: {format_morphism(inst, r.theta)}",
        ("closed" if r.is_closed else "not closed") + ", " + ("sparse" if r.is_sparse else "not sparse"),
    ]
    try:
        closed_form = closed_form_zeta(q)
    except CapabilityError:
        closed_form = None
    if closed_form is not None:
        agree = equivalent(RegularQuotient(q.source, closed_form, check=False), r.zeta)
        try:
            agree = agree and closed_form_classification(q) == (r.is_closed, r.is_sparse)
        except CapabilityError:
            pass
        payload["closed_form_agrees"] = agree
        lines.append(f"closed form cross-check: {'agrees' if agree else 'MISMATCH'}")
    _emit(args, payload, lines)
    return OK


def cmd_classify(args) -> int:
    ws = read(args.file)
    space = ws.space(args.space)
    v = classify_space(space, samples=args.samples, max_length=args.max_length, seed=args.seed)
    lines = [
        f"separating: {v.separating}",
        f"regularly separating: {v.regularly_separating}",
        f"zeta-complete: {v.zeta_complete}",
        f"mode: {v.mode}",
    ]
    if v.sampling_bound:
        lines.append(f"sampling bound: {v.sampling_bound}")
    if v.witness:
        lines.append(f"witness: {v.witness}")
    _emit(args, v.as_dict(), lines)
    return OK if v.zeta_complete in (True, EVIDENCE) else NEGATIVE


def cmd_verify_laws(args) -> int:
    inst = _instance(args)
    if isinstance(inst, FinSet) and args.exhaustive is None:
        report = census_mod.finset_law_suite(args.count, args.max_size, args.seed)
        scope = {"mode": "seeded", "count": args.count, "max_size": args.max_size, "seed": args.seed}
    else:
        size = args.exhaustive if args.exhaustive is not None else 2
        census_mod.check_bound(inst, size)
        report = census_mod.exhaustive_law_suite(inst, size)
        scope = {"mode": "exhaustive", "max_size": size}
    payload = {"instance": inst.name, **scope, **report.as_dict()}
    lines = [
        f"{inst.name}: {report.quotients} quotients, {report.pairs} ordered pairs, {report.morphisms} morphisms",
        "all laws hold" if report.ok else f"{len(report.violations)} violations",
    ] + report.violations[:20]
    _emit(args, payload, lines)
    return OK if report.ok else NEGATIVE


def cmd_verify_theorem(args) -> int:
    inst = _instance(args)
    reports = []
    for n in (range(args.n + 1) if args.upto else [args.n]):
        reports.append(verify_copower_theorem(inst, n, samples=args.samples, max_length=args.max_length, seed=args.seed).as_dict())
    ok = all(r["ok"] for r in reports)
    lines = [
        f"n={r['n']}: {'ok' if r['ok'] else 'FAILED'} ({r['checked']} points, classifier {r['classifier']}, mode {r['mode']})"
        for r in reports
    ]
    for r in reports:
        if r["sampling_bound"]:
            lines.append(f"n={r['n']} sampling bound: {r['sampling_bound']}")
        lines += [f"n={r['n']}: {msg}" for msg in r["failures"][:10]]
    _emit(args, {"instance": inst.name, "reports": reports, "ok": ok}, lines)
    return OK if ok else NEGATIVE


def cmd_enumerate(args) -> int:
    inst = _instance(args)
    c = census_mod.census(inst, args.bound, laws=not args.no_laws)
    lines = [f"{inst.name} up to size {args.bound}"]
    for n, row in c.per_size.items():
        lines.append(f"  size {n}: " + ", ".join(f"{k} {v}" for k, v in row.items()))
    lines.append(f"total: {c.spaces} spaces, {c.quotients} quotients, {c.complete} complete")
    if c.laws is not None:
        lines.append("laws: " + ("all hold" if c.laws["ok"] else f"{len(c.laws['violations'])} violations"))
    _emit(args, c.as_dict(), lines)
    return OK if c.laws is None or c.laws["ok"] else NEGATIVE


def cmd_fold(args) -> int:
    gens = [parse_word(w, args.rank) for w in args.generators]
    g = fold(gens, args.rank)
    basis = [format_word(w) for w in g.free_basis()]
    members = {w: g.member(parse_word(w, args.rank)) for w in args.member}
    payload = {
        "rank": args.rank, "states": g.n_states, "edges": sorted(g.edges),
        "free_basis": basis, "full": g.is_full(), "member": members,
    }
    edges = " ".join(f"{u}-{letter_name(x)}->{v}" for u, x, v in sorted(g.edges))
    lines = [f"states: {g.n_states}", f"edges: {edges or 'none'}", "free basis: " + (", ".join(basis) or "none")]
    lines += [f"{w}: {'member' if ok else 'not a member'}" for w, ok in members.items()]
    _emit(args, payload, lines)
    return OK if all(members.values()) else NEGATIVE


# --- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")

    p = _Parser(prog="dualaffine", description="Dually affine spaces: closures, completeness and folding.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("check", parents=[common], help="test whether a base morphism is an affine morphism")
    s.add_argument("file")
    s.add_argument("morphism")
    s.add_argument("source", help="name of the source space")
    s.add_argument("target", help="name of the target space")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("zeta", parents=[common], help="Zariski dual closure of a quotient")
    s.add_argument("file")
    s.add_argument("quotient")
    s.set_defaults(func=cmd_zeta)

    s = sub.add_parser("classify", parents=[common], help="separation and completeness of a space")
    s.add_argument("file")
    s.add_argument("space")
    s.add_argument("--samples", type=int, default=200)
    s.add_argument("--max-length", type=int, default=12)
    s.set_defaults(func=cmd_classify)

    def instance_args(s):
        s.add_argument("--instance", required=True, help="finset, finmod:Z/m or rose")
        s.add_argument("--theory", choices=["empty", "module", "group"], default=None)

    s = sub.add_parser("verify-laws", parents=[common], help="closure laws on seeded or exhaustive quotients")
    instance_args(s)
    s.add_argument("--count", type=int, default=1000)
    s.add_argument("--max-size", type=int, default=6)
    s.add_argument("--exhaustive", type=int, default=None, metavar="SIZE")
    s.set_defaults(func=cmd_verify_laws)

    s = sub.add_parser("verify-theorem", parents=[common], help="completeness of the copowers of S_1")
    instance_args(s)
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--upto", action="store_true", help="check every copower up to n")
    s.add_argument("--samples", type=int, default=200)
    s.add_argument("--max-length", type=int, default=12)
    s.set_defaults(func=cmd_verify_theorem)

    s = sub.add_parser("enumerate", parents=[common], help="census of small spaces and quotients")
    instance_args(s)
    s.add_argument("--bound", type=int, required=True)
    s.add_argument("--no-laws", action="store_true")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("fold", parents=[common], help="Stallings graph of a finitely generated subgroup")
    s.add_argument("generators", nargs="*", help="words such as 'a b^-1'")
    s.add_argument("--rank", type=int, required=True)
    s.add_argument("--member", action="append", default=[], metavar="WORD")
    s.set_defaults(func=cmd_fold)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CapabilityError as exc:
        print(f"capability error: {exc}", file=sys.stderr)
        return CAPABILITY
    except (DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
