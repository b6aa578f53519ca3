"""Command-line surface tying the modules into reproducible runs.

Exit codes: 0 clean/OK, 1 witness or failure found, 2 usage or input
error, 3 search gave up on a budget.  Usage and input errors go to
stderr as JSON.  Every run emits exactly one manifest: into
--out/manifest.json when an output directory is given, otherwise
embedded in the stdout document next to the report.  report.json bytes
depend only on the inputs, so re-running a manifest's command
reproduces them exactly; wall-clock timing lives in the manifest.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import families, reporting, search, steiner
from .colorings import (
    build_tower,
    export_coloring,
    import_coloring,
    read_coloring,
    search_base_coloring,
    verify_no_mono_clique,
    write_coloring,
    DEFAULT_TOWER_CAP,
)
from .families import FamilySpec, canonical_member, is_member
from .reporting import RunManifest, check_schema, dump_json, tower
from .trees import LeafSet, TreeParams, classify, projection

EXIT_OK = 0
EXIT_FOUND = 1
EXIT_USAGE = 2
EXIT_INDETERMINATE = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        sys.stderr.write(dump_json({"error": message, "usage": self.format_usage()}))
        raise SystemExit(EXIT_USAGE)


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _emit(args, command: str, params: dict, report: dict, witnesses=None, seeds=None):
    manifest = RunManifest(command=command, params=params, seeds=seeds or {})
    manifest.elapsed_ms = (time.monotonic() - args._start) * 1000.0
    reporting.emit_run(manifest, report, getattr(args, "out", None), witnesses)


def _cmd_tree_classify(args) -> int:
    params = TreeParams(args.depth)
    X = LeafSet.of(args.leaves, params)
    shape = classify(X)
    report = {
        "schema": "treeramsey/shape/1",
        "depth": args.depth,
        "leaves": list(X.elements),
        "shape": shape.kind.value,
        "left_count": shape.left_count,
        "right_count": shape.right_count,
        "balanced": shape.balanced,
        "projection": list(projection(X)),
    }
    _emit(args, "tree classify", {"depth": args.depth, "leaves": list(args.leaves)}, report)
    return EXIT_OK


def _cmd_color_build_base(args) -> int:
    found = search_base_coloring(args.ground, args.clique, args.seed, args.budget)
    report = {
        "schema": "treeramsey/build-base/1",
        "ground": args.ground,
        "clique": args.clique,
        "found": found is not None,
    }
    if found is not None:
        write_coloring(found, args.out_file)
        report["path"] = args.out_file
    _emit(
        args,
        "color build-base",
        {"ground": args.ground, "clique": args.clique, "budget": args.budget},
        report,
        seeds={"seed": args.seed},
    )
    return EXIT_OK if found is not None else EXIT_FOUND


def _cmd_color_verify_clique(args) -> int:
    coloring = read_coloring(args.file)
    witness = verify_no_mono_clique(coloring, args.t)
    report = {
        "schema": "treeramsey/verify-clique/1",
        "t": args.t,
        "status": "ok" if witness is None else "witness",
    }
    if witness is not None:
        report["witness"] = {"clique": list(witness.vertices), "color": witness.color}
    _emit(args, "color verify-clique", {"file": args.file, "t": args.t}, report)
    return EXIT_OK if witness is None else EXIT_FOUND


def _cmd_color_export(args) -> int:
    coloring = read_coloring(args.file)
    text = export_coloring(coloring)
    with open(args.out_file, "w", encoding="utf-8") as fh:
        fh.write(text)
    report = {
        "schema": "treeramsey/color-export/1",
        "path": args.out_file,
        "bytes": len(text.encode()),
    }
    _emit(args, "color export", {"file": args.file, "out_file": args.out_file}, report)
    return EXIT_OK


def _cmd_color_import(args) -> int:
    coloring = read_coloring(args.file)
    report = {
        "schema": "treeramsey/color-import/1",
        "uniformity": coloring.uniformity,
        "ground": coloring.ground_size,
        "palette": coloring.palette,
    }
    _emit(args, "color import", {"file": args.file}, report)
    return EXIT_OK


def _load_tower_descriptor(path):
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    check_schema(obj, reporting.TOWER_SCHEMA, {"base", "target_k", "cap"})
    base = obj["base"]
    if isinstance(base, str) and base.lstrip().startswith("coloring "):
        coloring = import_coloring(base)
    else:
        coloring = read_coloring(base)
    return coloring, obj["target_k"], obj.get("cap", DEFAULT_TOWER_CAP)


def _cmd_stepup_verify(args) -> int:
    if args.tower:
        base, target_k, cap = _load_tower_descriptor(args.tower)
    else:
        if not args.base:
            raise ValueError("provide --base or --tower")
        base = read_coloring(args.base)
        target_k, cap = args.k, args.cap
    chi = build_tower(base, target_k, cap).top
    spec = FamilySpec(target_k, args.n, args.I, families.FLAVOR_F)
    budget = None
    if args.max_nodes or args.max_seconds:
        budget = search.SearchBudget(args.max_nodes, args.max_seconds)
    report_obj = search.verify_stepup_avoidance(chi, spec, budget, args.workers)
    report = report_obj.to_json(include_timing=False)
    witnesses = {
        f"slot_{slot.flavor}_{slot.color}": slot.witness.to_json()
        for slot in report_obj.slots
        if slot.witness is not None
    }
    _emit(
        args,
        "stepup verify",
        {
            "base": args.base or args.tower,
            "k": target_k,
            "n": args.n,
            "I": list(args.I),
            "cap": cap,
            "workers": args.workers,
        },
        report,
        witnesses=witnesses or None,
    )
    if report_obj.status == search.WITNESS:
        return EXIT_FOUND
    if report_obj.status == search.INDETERMINATE:
        return EXIT_INDETERMINATE
    return EXIT_OK


def _cmd_family_gen(args) -> int:
    spec = FamilySpec(args.k, args.n, args.I, args.flavor)
    member = canonical_member(spec)
    families.write_hypergraph(member, args.out_file)
    report = {
        "schema": "treeramsey/family-gen/1",
        "flavor": args.flavor,
        "v": member.v,
        "e": len(member.edges),
        "path": args.out_file,
    }
    _emit(
        args,
        "family gen",
        {"k": args.k, "n": args.n, "I": list(args.I), "flavor": args.flavor},
        report,
    )
    return EXIT_OK


def _cmd_family_check(args) -> int:
    spec = FamilySpec(args.k, args.n, args.I, args.flavor)
    member = families.read_hypergraph(args.file)
    ok = is_member(member, spec)
    report = {
        "schema": "treeramsey/family-check/1",
        "flavor": args.flavor,
        "member": ok,
    }
    _emit(
        args,
        "family check",
        {"file": args.file, "k": args.k, "n": args.n, "I": list(args.I), "flavor": args.flavor},
        report,
    )
    return EXIT_OK if ok else EXIT_FOUND


def _cmd_steiner_blowup(args) -> int:
    system = steiner.build_blowup(args.n, args.k, args.I, args.m)
    if system.edge_count > args.max_edges:
        raise ValueError(
            f"system has {system.edge_count} edges, above --max-edges "
            f"{args.max_edges}; raise the limit to materialize it"
        )
    with open(args.out_file, "w", encoding="utf-8") as fh:
        fh.write(dump_json(system.to_json()))
    report = {
        "schema": "treeramsey/steiner-blowup/1",
        "v": system.vertex_count,
        "e": system.edge_count,
        "m": system.m,
        "path": args.out_file,
    }
    _emit(
        args,
        "steiner blowup",
        {"n": args.n, "k": args.k, "I": list(args.I), "m": args.m},
        report,
    )
    return EXIT_OK


def _cmd_steiner_plane(args) -> int:
    plane = steiner.build_projective_plane(args.order)
    steiner.validate_projective_plane(plane)
    with open(args.out_file, "w", encoding="utf-8") as fh:
        fh.write(dump_json(plane.to_json()))
    report = {
        "schema": "treeramsey/steiner-plane/1",
        "order": plane.order,
        "points": plane.num_points,
        "lines": len(plane.lines),
        "path": args.out_file,
    }
    _emit(args, "steiner plane", {"order": args.order}, report)
    return EXIT_OK


class _RawSystem:
    """System loaded from a file: enough surface for assembly and checks."""

    def __init__(self, obj: dict):
        self.vertex_count = obj["v"]
        self.k = obj["k"]
        self.edges = tuple(tuple(sorted(e)) for e in obj.get("edges", ()))
        params = obj.get("params")
        self.n = params["n"] if params else None

    def iter_edges(self):
        return iter(self.edges)


def _cmd_steiner_assemble(args) -> int:
    system = _RawSystem(steiner.read_system(args.system))
    with open(args.plane, "r", encoding="utf-8") as fh:
        plane = steiner.ProjectivePlane.from_json(json.load(fh))
    glued = steiner.assemble_h(system, plane, args.seed)
    with open(args.out_file, "w", encoding="utf-8") as fh:
        fh.write(dump_json(glued.to_json()))
    report = {
        "schema": "treeramsey/steiner-assemble/1",
        "v": glued.v,
        "e": len(glued.edges),
        "path": args.out_file,
    }
    _emit(
        args,
        "steiner assemble",
        {"system": args.system, "plane": args.plane},
        report,
        seeds={"seed": args.seed},
    )
    return EXIT_OK


def _cmd_steiner_check(args) -> int:
    system = _RawSystem(steiner.read_system(args.file))
    witness = steiner.is_partial_steiner(system, args.ell)
    report = {
        "schema": "treeramsey/steiner-check/1",
        "ell": args.ell,
        "status": "ok" if witness is None else "witness",
    }
    if witness is not None:
        report["witness"] = {
            "first": list(witness.first),
            "second": list(witness.second),
            "shared": list(witness.shared),
        }
    _emit(args, "steiner check", {"file": args.file, "ell": args.ell}, report)
    return EXIT_OK if witness is None else EXIT_FOUND


def _cmd_mc_run(args) -> int:
    raw = steiner.read_system(args.system)
    params = raw.get("params")
    if params is not None:
        system = steiner.BlowupSystem(
            params["n"], params["k"], tuple(params["I"]), params["m"]
        )
    else:
        system = _RawSystem(raw)
    spec = FamilySpec(args.k, args.n, args.I, args.flavor)
    report_obj = steiner.sample_ordering_and_search(
        system, spec, args.trials, args.seed, args.workers
    )
    report = report_obj.to_json(include_timing=False)
    _emit(
        args,
        "mc run",
        {
            "system": args.system,
            "k": args.k,
            "n": args.n,
            "I": list(args.I),
            "trials": args.trials,
            "flavor": args.flavor,
        },
        report,
        seeds={"seed": args.seed},
    )
    return EXIT_OK if not report_obj.failures else EXIT_FOUND


def _cmd_bound_tower(args) -> int:
    value = tower(args.i, args.x)
    report = {"schema": "treeramsey/tower-value/1", "i": args.i, "x": args.x, "value": str(value)}
    _emit(args, "bound tower", {"i": args.i, "x": args.x}, report)
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="treeramsey")
    sub = parser.add_subparsers(dest="group", required=True)

    def add(group_sub, name, fn, **arguments):
        p = group_sub.add_parser(name)
        for arg, kwargs in arguments.items():
            p.add_argument(f"--{arg.replace('_', '-')}", **kwargs)
        p.add_argument("--out", help="output directory for manifest.json and report.json")
        p.set_defaults(handler=fn)
        return p

    tree = parser_sub(sub, "tree")
    add(
        tree, "classify", _cmd_tree_classify,
        depth=dict(type=int, required=True),
        leaves=dict(type=_int_list, required=True),
    )

    color = parser_sub(sub, "color")
    add(
        color, "build-base", _cmd_color_build_base,
        ground=dict(type=int, required=True),
        clique=dict(type=int, required=True),
        seed=dict(type=int, default=0),
        budget=dict(type=int, default=1000),
        out_file=dict(required=True),
    )
    add(
        color, "verify-clique", _cmd_color_verify_clique,
        file=dict(required=True),
        t=dict(type=int, required=True),
    )
    add(
        color, "export", _cmd_color_export,
        file=dict(required=True),
        out_file=dict(required=True),
    )
    add(color, "import", _cmd_color_import, file=dict(required=True))

    stepup = parser_sub(sub, "stepup")
    add(
        stepup, "verify", _cmd_stepup_verify,
        base=dict(default=None),
        tower=dict(default=None, help="tower descriptor JSON"),
        k=dict(type=int, default=3),
        n=dict(type=int, required=True),
        I=dict(type=_int_list, required=True),
        cap=dict(type=int, default=DEFAULT_TOWER_CAP),
        max_nodes=dict(type=int, default=None),
        max_seconds=dict(type=float, default=None),
        workers=dict(type=int, default=1),
    )

    family = parser_sub(sub, "family")
    add(
        family, "gen", _cmd_family_gen,
        k=dict(type=int, required=True),
        n=dict(type=int, required=True),
        I=dict(type=_int_list, required=True),
        flavor=dict(default=families.FLAVOR_F, choices=list(families.FLAVORS)),
        out_file=dict(required=True),
    )
    add(
        family, "check", _cmd_family_check,
        file=dict(required=True),
        k=dict(type=int, required=True),
        n=dict(type=int, required=True),
        I=dict(type=_int_list, required=True),
        flavor=dict(default=families.FLAVOR_F, choices=list(families.FLAVORS)),
    )

    st = parser_sub(sub, "steiner")
    add(
        st, "blowup", _cmd_steiner_blowup,
        n=dict(type=int, required=True),
        k=dict(type=int, required=True),
        I=dict(type=_int_list, required=True),
        m=dict(type=int, default=None),
        max_edges=dict(type=int, default=10**6),
        out_file=dict(required=True),
    )
    add(
        st, "plane", _cmd_steiner_plane,
        order=dict(type=int, required=True),
        out_file=dict(required=True),
    )
    add(
        st, "assemble", _cmd_steiner_assemble,
        system=dict(required=True),
        plane=dict(required=True),
        seed=dict(type=int, default=0),
        out_file=dict(required=True),
    )
    add(
        st, "check", _cmd_steiner_check,
        file=dict(required=True),
        ell=dict(type=int, required=True),
    )

    mc = parser_sub(sub, "mc")
    add(
        mc, "run", _cmd_mc_run,
        system=dict(required=True),
        k=dict(type=int, required=True),
        n=dict(type=int, required=True),
        I=dict(type=_int_list, required=True),
        flavor=dict(default=families.FLAVOR_G, choices=[families.FLAVOR_G, families.FLAVOR_REVG]),
        trials=dict(type=int, required=True),
        seed=dict(type=int, default=0),
        workers=dict(type=int, default=1),
    )

    bound = parser_sub(sub, "bound")
    add(
        bound, "tower", _cmd_bound_tower,
        i=dict(type=int, required=True),
        x=dict(type=int, required=True),
    )
    return parser


def parser_sub(sub, name):
    p = sub.add_parser(name)
    inner = p.add_subparsers(dest="command", required=True)
    return inner


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    args._start = time.monotonic()
    try:
        return args.handler(args)
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        sys.stderr.write(dump_json({"error": str(exc)}))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
