"""Command-line front end.

Verbs dispatch to the library; inputs are inline literals or file paths
(sniffed by first byte), outputs are JSON, DOT or term text.  Exit codes:
0 success, 1 domain error, 2 syntax error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import acceptance
from .canonical import (
    CanonicalName,
    classify_2forest,
    classify_2tree_nested,
    representative,
)
from .forest import (
    Forest,
    ForestError,
    Tree,
    as_forest,
    forest_from_json,
    forest_to_json,
    h_leq,
    join,
    meet,
    normalize,
)
from .degrees import degree_poset, degrees_to_dot, degrees_to_json
from .nested import (
    TermSyntaxError,
    flatten,
    nesting_level,
    parse_term,
    print_term,
)
from .ordinal import OrdinalSyntaxError, format_ordinal, parse_ordinal
from .space import (
    FiniteSpace,
    KPartition,
    SpaceError,
    antichain_space,
    base_from_json,
    chain_space,
    diamond_space,
    dh_membership,
    dh_witness_family,
    fh_membership,
    has_reduction_property,
    hierarchy_report,
    is_reduced,
    powerset_base,
    reduce_family,
    report_to_dot,
    up_sets,
    validate_omega_base,
)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_SYNTAX = 2


# ---------------------------------------------------------------------------
# input loading


def _read_maybe_file(value: str) -> str:
    if os.path.isfile(value):
        with open(value, encoding="utf-8") as fh:
            return fh.read()
    return value


def load_forest(value: str) -> Forest:
    """A forest from a term literal, inline JSON, or a file of either."""
    text = _read_maybe_file(value).strip()
    if text.startswith("["):
        return forest_from_json(json.loads(text))
    return parse_term(text)


def load_space(value: str) -> FiniteSpace:
    """A space from JSON, a file, or the names chain:N / antichain:N / diamond."""
    text = _read_maybe_file(value).strip()
    if text == "diamond":
        return diamond_space()
    for name, builder in (("chain", chain_space), ("antichain", antichain_space)):
        if text.startswith(name + ":"):
            return builder(int(text[len(name) + 1:]))
    return FiniteSpace.from_json(json.loads(text))


def load_base(value: str, space: FiniteSpace):
    text = _read_maybe_file(value).strip()
    if text == "upsets":
        return up_sets(space)
    if text == "powerset":
        return powerset_base(space)
    return base_from_json(json.loads(text), space.n)


def load_omega_base(value: str, space: FiniteSpace):
    text = _read_maybe_file(value).strip()
    data = json.loads(text)
    if not isinstance(data, list):
        raise SpaceError("omega-base JSON must be a list of levels")
    return validate_omega_base(
        tuple(base_from_json(level, space.n) for level in data), space.n)


def load_partition(value: str, k: int | None) -> KPartition:
    text = _read_maybe_file(value).strip()
    data = json.loads(text)
    if not isinstance(data, dict) or "labels" not in data:
        raise SpaceError("partition JSON must have 'labels'")
    labels = data["labels"]
    if k is None:
        k = max(labels, default=0) + 1
    return KPartition(tuple(labels), k)


# ---------------------------------------------------------------------------
# emitters


def emit_forest(f: Forest, mode: str) -> str:
    if mode == "term":
        return print_term(f)
    if mode == "json":
        return json.dumps(forest_to_json(f))
    if mode == "dot":
        return forest_to_dot(f)
    raise SpaceError(f"unsupported emit mode {mode!r}")


def forest_to_dot(f: Forest) -> str:
    """One DOT node per forest node, labeled by its color or label term."""
    lines = ["digraph forest {", "  rankdir=BT;"]
    counter = [0]

    def walk(t: Tree, parent: str | None):
        me = f"n{counter[0]}"
        counter[0] += 1
        if isinstance(t.label, int):
            text = str(t.label)
        else:
            text = print_term(t.label)
        lines.append(f'  {me} [label="{text}"];')
        if parent is not None:
            lines.append(f"  {me} -> {parent};")
        for c in t.children:
            walk(c, me)

    for t in as_forest(f):
        walk(t, None)
    lines.append("}")
    return "\n".join(lines)


def _family_json(fam) -> list:
    return [
        {"prefix": [list(path) for path in pfx],
         "set": [i for i in range(64) if mask >> i & 1]}
        for pfx, mask in sorted(fam.sets.items())
    ]


# ---------------------------------------------------------------------------
# verbs


def cmd_compare(args) -> str:
    lhs, rhs = load_forest(args.lhs), load_forest(args.rhs)
    return json.dumps({"h_leq": h_leq(lhs, rhs), "h_geq": h_leq(rhs, lhs)})


def cmd_meet(args) -> str:
    return emit_forest(meet(load_forest(args.lhs), load_forest(args.rhs)),
                       args.emit)


def cmd_join(args) -> str:
    return emit_forest(
        normalize(join(load_forest(args.lhs), load_forest(args.rhs))),
        args.emit)


def cmd_normalize(args) -> str:
    return emit_forest(normalize(load_forest(args.forest)), args.emit)


def cmd_classify(args) -> str:
    f = load_forest(args.forest)
    if args.bound is not None:
        name = classify_2tree_nested(f, args.bound)
        if name is None:
            raise SpaceError(
                f"no canonical class found within size bound {args.bound}")
    else:
        name = classify_2forest(f)
    if args.emit == "term":
        return str(name)
    return json.dumps({
        "kind": name.kind,
        "index": format_ordinal(name.index),
        "name": str(name),
    })


def cmd_canonical(args) -> str:
    alpha = parse_ordinal(args.alpha)
    kind = {"plain": "T", "bar": "Tbar", "join": "TjoinTbar"}[args.polarity]
    return emit_forest(representative(CanonicalName(kind, alpha)), args.emit)


def cmd_flatten(args) -> str:
    f = load_forest(args.forest)
    depth = max(nesting_level(f), 1)
    x = flatten(f, depth)
    return json.dumps({
        "size": x.size,
        "depth": x.depth,
        "labels": list(x.labels),
        "orders": [x.pairs(i) for i in range(x.depth)],
    })


def cmd_parse(args) -> str:
    return emit_forest(load_forest(args.forest), args.emit)


def cmd_dh_check(args) -> str:
    space = load_space(args.space)
    base = load_base(args.base, space)
    partition = load_partition(args.partition, args.k)
    forest = load_forest(args.forest)
    if partition.n != space.n:
        raise SpaceError("partition size does not match the space")
    member = dh_membership(partition, forest, base, space)
    out = {"member": member}
    if member:
        witness = dh_witness_family(partition, forest, base, space)
        out["witness"] = _family_json(witness)
    return json.dumps(out)


def cmd_fh_check(args) -> str:
    space = load_space(args.space)
    levels = load_omega_base(args.omega_base, space)
    partition = load_partition(args.partition, args.k)
    forest = load_forest(args.forest)
    if partition.n != space.n:
        raise SpaceError("partition size does not match the space")
    return json.dumps(
        {"member": fh_membership(partition, forest, levels, space)})


def cmd_reduce_check(args) -> str:
    space = load_space(args.space)
    base = load_base(args.base, space)
    out: dict = {"reduction_property": has_reduction_property(base)}
    if args.partition is not None and args.forest is not None:
        partition = load_partition(args.partition, args.k)
        forest = load_forest(args.forest)
        member = dh_membership(partition, forest, base, space)
        out["member"] = member
        if member and out["reduction_property"]:
            fam = reduce_family(
                dh_witness_family(partition, forest, base, space), base, space)
            out["reduced"] = is_reduced(fam)
            out["reduced_family"] = _family_json(fam)
    return json.dumps(out)


def cmd_degrees(args) -> str:
    space = load_space(args.space)
    poset = degree_poset(space, args.k,
                         override_size_guard=args.override_size_guard)
    if args.emit == "dot":
        return degrees_to_dot(poset)
    return json.dumps(degrees_to_json(poset))


def cmd_report(args) -> str:
    space = load_space(args.space)
    if args.omega_base is not None:
        bases = load_omega_base(args.omega_base, space)
    else:
        bases = load_base(args.base, space)
    forests = [load_forest(v) for v in args.forest]
    k = args.k if args.k is not None else 2
    report = hierarchy_report(space, bases, forests, k,
                              override_size_guard=args.override_size_guard)
    if args.emit == "dot":
        return report_to_dot(report)
    return json.dumps(report)


def cmd_selftest(args) -> str:
    results = acceptance.run_suites(args.scope)
    doc = {name: {"ok": ok, "detail": detail}
           for name, (ok, detail) in results.items()}
    text = json.dumps(doc, indent=2)
    if not all(ok for ok, _ in results.values()):
        failed = sorted(name for name, (ok, _) in results.items() if not ok)
        raise _SelftestFailure(text, failed)
    return text


class _SelftestFailure(Exception):
    def __init__(self, text: str, failed: list):
        super().__init__("selftest failure")
        self.text = text
        self.failed = failed


# ---------------------------------------------------------------------------
# argument plumbing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hforest",
        description="h-preorder calculus on labeled forests and "
                    "hierarchy membership over finite spaces")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name, func, **flags):
        p = sub.add_parser(name)
        p.set_defaults(func=func)
        if flags.pop("pair", False):
            p.add_argument("--lhs", required=True, help="forest term or file")
            p.add_argument("--rhs", required=True, help="forest term or file")
        if flags.pop("forest", False):
            p.add_argument("--forest", required=True,
                           help="forest term or file")
        if flags.pop("forests", False):
            p.add_argument("--forest", action="append", required=True,
                           help="forest term or file (repeatable)")
        if flags.pop("forest_opt", False):
            p.add_argument("--forest", help="forest term or file")
        if flags.pop("space", False):
            p.add_argument("--space", required=True,
                           help="space JSON/file, chain:N, antichain:N, diamond")
        if flags.pop("base", False):
            p.add_argument("--base", default="upsets",
                           help="base JSON/file, 'upsets' or 'powerset'")
        if flags.pop("omega_base", False):
            p.add_argument("--omega-base", dest="omega_base", required=True,
                           help="JSON list of base levels, or a file")
        if flags.pop("omega_base_opt", False):
            p.add_argument("--omega-base", dest="omega_base",
                           help="JSON list of base levels, or a file")
        if flags.pop("partition", False):
            p.add_argument("--partition", required=True,
                           help='partition JSON {"labels": [...]} or file')
        if flags.pop("partition_opt", False):
            p.add_argument("--partition",
                           help='partition JSON {"labels": [...]} or file')
        if flags.pop("k", False):
            p.add_argument("--k", type=int, help="number of colors")
        if flags.pop("emit", None):
            p.add_argument("--emit", choices=("json", "term", "dot"),
                           default=flags.pop("emit_default", "json"))
        if flags.pop("guard", False):
            p.add_argument("--override-size-guard", action="store_true",
                           dest="override_size_guard")
        for extra in flags.pop("extra", ()):
            p.add_argument(*extra[0], **extra[1])
        return p

    add("compare", cmd_compare, pair=True)
    add("meet", cmd_meet, pair=True, emit=True, emit_default="term")
    add("join", cmd_join, pair=True, emit=True, emit_default="term")
    add("normalize", cmd_normalize, forest=True, emit=True,
        emit_default="term")
    add("classify", cmd_classify, forest=True, emit=True, extra=(
        (("--bound",), dict(type=int, default=None,
                            help="search bound for nested classification")),))
    add("canonical", cmd_canonical, emit=True, emit_default="term", extra=(
        (("--alpha",), dict(required=True, help="ordinal notation over w")),
        (("--polarity",), dict(choices=("plain", "bar", "join"),
                               default="plain")),))
    add("flatten", cmd_flatten, forest=True)
    add("parse", cmd_parse, forest=True, emit=True)
    add("dh-check", cmd_dh_check, space=True, base=True, partition=True,
        forest=True, k=True)
    add("fh-check", cmd_fh_check, space=True, omega_base=True, partition=True,
        forest=True, k=True)
    add("reduce-check", cmd_reduce_check, space=True, base=True,
        partition_opt=True, forest_opt=True, k=True)
    add("degrees", cmd_degrees, space=True, emit=True, guard=True, extra=(
        (("--k",), dict(type=int, default=2, help="number of colors")),))
    add("report", cmd_report, space=True, base=True, omega_base_opt=True,
        forests=True, k=True, emit=True, guard=True)
    add("selftest", cmd_selftest, extra=(
        (("--scope",), dict(choices=("fast", "full"), default="fast")),))
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        output = args.func(args)
    except (TermSyntaxError, OrdinalSyntaxError, json.JSONDecodeError) as exc:
        print(f"syntax error: {exc}", file=sys.stderr)
        return EXIT_SYNTAX
    except _SelftestFailure as exc:
        print(exc.text)
        print(f"failed suites: {', '.join(exc.failed)}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ForestError, SpaceError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    print(output)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
