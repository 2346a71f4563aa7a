"""Command-line front end: ``virtlink <command> [INPUT] [options]``.

INPUT is a file path, ``-`` / nothing for stdin, or the text itself.
Exit status: 0 success, 1 domain error (not realizable, criteria disagree,
search too large), 2 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import codec
from .carter import is_planar_carter
from .codec import CodecError, SourceText
from .diagram import GaussParagraph, components, diagram_to_paragraph, paragraph_to_diagram
from .gausscode import (
    GaussCode, all_associated_codes, code_to_paragraph, invariant_table, is_planar_code,
    paragraph_to_code,
)
from .grouptools import (
    InvalidTable, SearchTooLarge, TooLarge, count_homomorphisms, group_by_name, load_group,
)
from .wirtinger import (
    NotRealizable, WirtingerPresentation, build_graph, group_of_diagram, is_realizable,
    realize, to_cyclic_form, to_simple_form,
)


class DomainError(Exception):
    pass


def _read_input(arg) -> SourceText:
    if arg is None or arg == "-":
        return SourceText(sys.stdin.read(), "<stdin>")
    if os.path.isfile(arg):
        with open(arg) as fh:
            return SourceText(fh.read(), arg)
    return SourceText(arg, "<inline>")


def _load(args, allowed):
    src = _read_input(args.input)
    kind = args.format or codec.detect_format(src)
    if kind not in allowed:
        raise CodecError(f"this command reads {' or '.join(allowed)} input, got {kind}",
                         origin=src.origin)
    if kind == "paragraph":
        value, renaming = codec.read_paragraph(src)
    elif kind == "code":
        value, renaming = codec.read_code(src)
    else:
        value, renaming = codec.read_presentation(src), {}
    if args.verbose and any(k != v for k, v in renaming.items()):
        print("renamed crossings: " + ", ".join(f"{k}->{v}" for k, v in renaming.items()),
              file=sys.stderr)
    return kind, value


def _as_paragraph(kind, value) -> GaussParagraph:
    return code_to_paragraph(value) if kind == "code" else value


def _as_presentation(kind, value) -> WirtingerPresentation:
    if kind == "presentation":
        return value
    return group_of_diagram(paragraph_to_diagram(_as_paragraph(kind, value)))


def _chooser(args):
    if args.seed is None:
        return None
    rng = random.Random(args.seed)
    return lambda candidates: rng.choice(candidates)


def _part_info(part):
    return {"crossings": list(part.crossings), "words": [w + 1 for w in part.words]}


def _part_title(k, part):
    cr = " ".join(map(str, part.crossings)) or "none"
    return f"component {k} (crossings {cr}; words {' '.join(str(w + 1) for w in part.words)})"


# -- commands ----------------------------------------------------------------------

def cmd_parse(args):
    kind, value = _load(args, ("paragraph", "code", "presentation"))
    if args.json:
        return {"kind": kind, "value": codec.to_json(value)}
    print(codec.serialize(value))


def cmd_genus(args):
    kind, value = _load(args, ("paragraph", "code"))
    res = is_planar_carter(_as_paragraph(kind, value))
    parts = []
    for part, cx, g in zip(res.parts, res.complexes, res.genera):
        info = _part_info(part) | {"genus": g, "euler_characteristic": cx.euler_characteristic,
                                   "faces": cx.face_count}
        if args.verbose:
            info["face_cycles"] = [cx.face_label(f) for f in cx.faces]
        parts.append(info)
    if args.json:
        return {"components": parts, "total_genus": res.total_genus, "planar": res.planar}
    for k, (part, info) in enumerate(zip(res.parts, parts), 1):
        print(f"{_part_title(k, part)}: genus {info['genus']}, "
              f"chi {info['euler_characteristic']}, faces {info['faces']}")
        for f, label in enumerate(info.get("face_cycles", []), 1):
            print(f"  face {f}: {label}")
    print(f"total genus {res.total_genus} (sum over components); "
          f"planar: {'yes' if res.planar else 'no'}")


def cmd_planar(args):
    kind, value = _load(args, ("paragraph", "code"))
    p = _as_paragraph(kind, value)
    carter = is_planar_carter(p)
    choose = _chooser(args)
    parts, disagree = [], []
    for k, (part, g) in enumerate(zip(carter.parts, carter.genera), 1):
        code = value if kind == "code" else paragraph_to_code(part.paragraph, choose)
        verdict = is_planar_code(code)
        info = _part_info(part) | {"genus": g, "carter_planar": g == 0,
                                   "criterion_planar": verdict, "code": str(code)}
        if args.all_merges:
            if part.paragraph.k > 4:
                info["all_merges"] = "skipped (more than 4 words)"
            else:
                verdicts = {is_planar_code(c) for c in all_associated_codes(part.paragraph)}
                info["all_merges"] = sorted(verdicts)
                if verdicts != {verdict}:
                    disagree.append(k)
        if verdict != (g == 0):
            disagree.append(k)
        parts.append(info)
    report = {"components": parts, "planar": carter.planar, "agree": not disagree}
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        for k, (part, info) in enumerate(zip(carter.parts, parts), 1):
            print(f"{_part_title(k, part)}: genus {info['genus']}; carter "
                  f"{'planar' if info['carter_planar'] else 'non-planar'}; criterion "
                  f"{'planar' if info['criterion_planar'] else 'non-planar'}")
            if "all_merges" in info:
                print(f"  all merge orders: {info['all_merges']}")
        print(f"planar: {'yes' if carter.planar else 'no'}; verdicts "
              f"{'agree' if not disagree else 'DISAGREE'}")
    if disagree:
        raise DomainError(f"planarity criteria disagree on component(s) {disagree}")


def cmd_to_code(args):
    kind, value = _load(args, ("paragraph",))
    choose = _chooser(args)
    out = []
    for k, part in enumerate(components(value), 1):
        trace = []
        code = paragraph_to_code(part.paragraph, choose, trace)
        out.append(_part_info(part) | {"code": codec.to_json(code)["symbols"], "trace": trace})
        if not args.json:
            if args.verbose:
                print(f"# {_part_title(k, part)}", file=sys.stderr)
                for line in trace:
                    print(f"#   {line}", file=sys.stderr)
            print(codec.serialize(code))
    if args.json:
        return {"components": out}


def _table_info(code: GaussCode):
    t = invariant_table(code)
    return {"code": str(code), "alpha": list(t.alpha), "beta": [list(r) for r in t.beta],
            "planar": t.vanishes}


def cmd_invariants(args):
    kind, value = _load(args, ("code", "paragraph"))
    if kind == "code":
        tables = [{"crossings": list(range(1, value.m + 1))} | _table_info(value)]
    else:
        choose = _chooser(args)
        tables = [_part_info(part) | _table_info(paragraph_to_code(part.paragraph, choose))
                  for part in components(value)]
    if args.json:
        return {"tables": tables}
    for t in tables:
        print(f"code {t['code']}")
        for i, a in enumerate(t["alpha"], 1):
            print(f"  alpha_{i} = {a}")
        print("  beta (row i, column j):")
        for row in t["beta"]:
            print("    " + " ".join(f"{b:3d}" for b in row))
        print(f"  planar: {'yes' if t['planar'] else 'no'}")


def cmd_group(args):
    kind, value = _load(args, ("paragraph", "code"))
    pres = _as_presentation(kind, value)
    if args.json:
        return codec.to_json(pres)
    print(codec.serialize(pres))


def cmd_graph(args):
    kind, value = _load(args, ("presentation", "paragraph", "code"))
    pres = _as_presentation(kind, value)
    graph = build_graph(pres)
    comps = [{"generators": [pres.generators[v] for v in vs], "edges": len(es), "chi": chi}
             for vs, es, chi in zip(graph.components, graph.component_edges,
                                    graph.euler_characteristics)]
    report = {"components": comps, "realizable": is_realizable(pres),
              "abelianization_rank": len(comps)}
    if pres.s > pres.n:
        report["warning"] = f"{pres.s} relators exceed {pres.n} generators"
    if args.json:
        return report
    for k, c in enumerate(comps, 1):
        print(f"component {k}: generators {' '.join(c['generators'])}; "
              f"edges {c['edges']}; chi {c['chi']}")
    if "warning" in report:
        print(f"warning: {report['warning']}")
    print(f"realizable: {'yes' if report['realizable'] else 'no'}")


def cmd_realize(args):
    kind, value = _load(args, ("presentation",))
    trace = []
    p = diagram_to_paragraph(realize(value, trace))
    if args.verbose:
        for line in trace:
            print(f"# {line}", file=sys.stderr)
    if args.json:
        return codec.to_json(p)
    print(codec.serialize(p))


def cmd_reduce(args):
    kind, value = _load(args, ("presentation", "paragraph", "code"))
    pres = _as_presentation(kind, value)
    trace = []
    cyclic = to_cyclic_form(pres, trace)
    simple = to_simple_form(cyclic, trace)
    if args.json:
        return {"cyclic": codec.to_json(cyclic), "simple": codec.to_json(simple.presentation),
                "classes": [[simple.presentation.generators[g] for g in c]
                            for c in simple.classes], "trace": trace}
    print("# cyclic form")
    print(codec.serialize(cyclic))
    print("# simple form")
    print(codec.serialize(simple.presentation))
    print("# steps")
    for line in trace:
        print(f"#   {line}")


def cmd_homcount(args):
    kind, value = _load(args, ("presentation", "paragraph", "code"))
    pres = _as_presentation(kind, value)
    G = load_group(args.group_file) if args.group_file else group_by_name(args.group)
    count = count_homomorphisms(pres, G, workers=args.workers)
    if args.json:
        return {"group": G.name, "count": count}
    print(count)


COMMANDS = {
    "parse": (cmd_parse, "validate and print in canonical form"),
    "genus": (cmd_genus, "Carter-surface genus per component"),
    "planar": (cmd_planar, "run both planarity tests and compare them"),
    "to-code": (cmd_to_code, "merge each component into one Gauss code"),
    "invariants": (cmd_invariants, "alpha/beta tables of a Gauss code"),
    "group": (cmd_group, "Wirtinger presentation of the diagram group"),
    "graph": (cmd_graph, "presentation graph summary and realizability"),
    "realize": (cmd_realize, "Gauss paragraph realizing a presentation"),
    "reduce": (cmd_reduce, "cyclic and simple forms of a presentation"),
    "homcount": (cmd_homcount, "count homomorphisms into a finite group"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", nargs="?", help="file, '-' for stdin, or inline text")
    common.add_argument("--json", action="store_true", help="JSON output")
    common.add_argument("-v", "--verbose", action="store_true")
    common.add_argument("--format", choices=("paragraph", "code", "presentation"),
                        help="input format (guessed by default)")
    common.add_argument("--seed", type=int, help="pick merges at random with this seed")
    parser = argparse.ArgumentParser(prog="virtlink", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_)
        if name == "planar":
            p.add_argument("--all-merges", action="store_true",
                           help="check every merge order (components with <= 4 words)")
        if name == "homcount":
            p.add_argument("--group", default="S3", help="S1..S5 or Z<n> (default S3)")
            p.add_argument("--group-file", help="JSON multiplication table")
            p.add_argument("--workers", type=int, default=1)
    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args.all_merges = getattr(args, "all_merges", False)
    try:
        report = COMMANDS[args.command][0](args)
    except CodecError as exc:
        for e in exc.errors:
            print(f"error: {e}", file=sys.stderr)
        return 2
    except (NotRealizable, SearchTooLarge, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (TooLarge, InvalidTable, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if report is not None:
        print(json.dumps(report, indent=2))
    return 0


def main():
    sys.exit(run())
