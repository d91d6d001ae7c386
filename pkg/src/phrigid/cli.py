"""Command-line front end.

Reads a JSON framework file, runs one analysis and prints a JSON report
with sorted keys.  Exit codes: 0 computed and rigid/holds, 1 computed but
flexible/fails, 2 error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import constructions, counts, matroidlab, scenes, transfer
from .errors import PhrigidError, SchemaError
from .exactla import DEFAULT_TOL, cayley_rotation, rank
from .matrices import Configuration, euclidean_rigidity_matrix, euclidean_ph_matrix, rigidity
from .phgraph import PARTITION_CAP, SUBSET_CAP, PointHyperplaneGraph

RIGIDITY_MODELS = ("barjoint", "spherical", "pointline", "fixed-normal", "fixed-line",
                   "fixed-intercept", "slider")
THEOREMS = ("collinear", "scene", "fixed-normal", "fixed-line", "fixed-intercept",
            "fixed-intercept-general", "slider")


class Framework:
    """Parsed input: graph with dense ids, original ids, and raw placement data."""

    def __init__(self, dim, graph, ids, points, lines, sliders, has_float):
        self.dim = dim
        self.graph = graph
        self.ids = ids
        self.points = points
        self.lines = lines
        self.sliders = sliders
        self.has_float = has_float

    def ext(self, v):
        return self.ids[v]

    def configuration(self, exact: bool | None = None) -> Configuration:
        pts, hps = dict(self.points), dict(self.lines)
        if exact is False:
            pts = {v: tuple(float(x) for x in p) for v, p in pts.items()}
            hps = {v: (tuple(float(x) for x in a), float(r)) for v, (a, r) in hps.items()}
        return Configuration(self.dim, pts, hps)

    def normals(self, exact: bool | None = None) -> dict:
        out = {v: a for v, (a, _) in self.lines.items()}
        if exact is False:
            out = {v: tuple(float(x) for x in a) for v, a in out.items()}
        return out


def _number(x, ptr, flags):
    if isinstance(x, bool):
        raise SchemaError("expected a number", ptr)
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        flags["float"] = True
        return x
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise SchemaError(f"cannot parse {x!r} as a rational", ptr) from None
    raise SchemaError("expected a number or an 'n/d' string", ptr)


def _vector(x, dim, ptr, flags):
    if not isinstance(x, list):
        raise SchemaError("expected a list of numbers", ptr)
    if len(x) != dim:
        raise SchemaError(f"expected {dim} coordinates, got {len(x)}", ptr)
    return tuple(_number(t, f"{ptr}/{k}", flags) for k, t in enumerate(x))


def _key(ptr_base, ident):
    return f"{ptr_base}/{str(ident).replace('~', '~0').replace('/', '~1')}"


def parse_data(data) -> Framework:
    """Validate a decoded JSON object; errors carry a JSON pointer."""
    if not isinstance(data, dict):
        raise SchemaError("top level must be an object", "")
    flags = {"float": False}
    dim = data.get("dim", 2)
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise SchemaError("dim must be a positive integer", "/dim")
    pv = data.get("point_vertices", [])
    lv = data.get("line_vertices", [])
    for name, vs in (("point_vertices", pv), ("line_vertices", lv)):
        if not isinstance(vs, list):
            raise SchemaError("expected a list of ids", f"/{name}")
        for k, v in enumerate(vs):
            if not isinstance(v, (str, int)) or isinstance(v, bool):
                raise SchemaError("ids are strings or integers", f"/{name}/{k}")
    ids = list(pv) + list(lv)
    seen = {}
    for k, v in enumerate(ids):
        where = f"/point_vertices/{k}" if k < len(pv) else f"/line_vertices/{k - len(pv)}"
        if str(v) in seen:
            raise SchemaError(f"duplicate vertex id {v!r}", where)
        seen[str(v)] = k
    edges_raw = data.get("edges", [])
    if not isinstance(edges_raw, list):
        raise SchemaError("expected a list of edges", "/edges")
    edges, pairs = [], set()
    for k, e in enumerate(edges_raw):
        ptr = f"/edges/{k}"
        if not isinstance(e, list) or len(e) != 2:
            raise SchemaError("an edge is a pair of ids", ptr)
        ends = []
        for t, v in enumerate(e):
            if str(v) not in seen:
                raise SchemaError(f"unknown vertex {v!r}", f"{ptr}/{t}")
            ends.append(seen[str(v)])
        if ends[0] == ends[1]:
            raise SchemaError("self-loop", ptr)
        key = frozenset(ends)
        if key in pairs:
            raise SchemaError("duplicate edge", ptr)
        pairs.add(key)
        edges.append(tuple(ends))
    names = {k: str(v) for k, v in enumerate(ids)}
    g = PointHyperplaneGraph(range(len(pv)), range(len(pv), len(ids)), edges, names)

    points = {}
    raw = data.get("points", {})
    if not isinstance(raw, dict):
        raise SchemaError("expected an object", "/points")
    for ident, p in raw.items():
        ptr = _key("/points", ident)
        if ident not in seen or seen[ident] >= len(pv):
            raise SchemaError(f"{ident!r} is not a point vertex", ptr)
        points[seen[ident]] = _vector(p, dim, ptr, flags)
    lines = {}
    raw = data.get("lines", {})
    if not isinstance(raw, dict):
        raise SchemaError("expected an object", "/lines")
    for ident, ln in raw.items():
        ptr = _key("/lines", ident)
        if ident not in seen or seen[ident] < len(pv):
            raise SchemaError(f"{ident!r} is not a line vertex", ptr)
        if not isinstance(ln, dict) or "normal" not in ln:
            raise SchemaError("a line needs a normal", ptr)
        a = _vector(ln["normal"], dim, f"{ptr}/normal", flags)
        r = _number(ln.get("offset", 0), f"{ptr}/offset", flags)
        lines[seen[ident]] = (a, r)
    sliders = {}
    raw = data.get("sliders", {})
    if not isinstance(raw, dict):
        raise SchemaError("expected an object", "/sliders")
    for ident, x in raw.items():
        ptr = _key("/sliders", ident)
        if ident not in seen:
            raise SchemaError(f"unknown vertex {ident!r}", ptr)
        sliders[seen[ident]] = _number(x, ptr, flags)
    fw = Framework(dim, g, ids, points, lines, sliders, flags["float"])
    fw.configuration()
    return fw


def parse_input(path) -> Framework:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"cannot read input: {exc.strerror}", "") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON at line {exc.lineno} column {exc.colno}", "") from None
    return parse_data(data)


def jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        return x
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        return [jsonable(v) for v in x]
    if hasattr(x, "item"):
        return x.item()
    return str(x)


def dumps(report) -> str:
    return json.dumps(jsonable(report), sort_keys=True, indent=2) + "\n"


def _mode(fw: Framework, args):
    if args.exact and fw.has_float:
        raise SchemaError("--exact given but the input contains floats", "")
    if args.tol is not None and not args.exact:
        return False, args.tol
    if fw.has_float:
        return False, DEFAULT_TOL
    return True, DEFAULT_TOL


def _ids(fw, text, flag):
    if not text:
        return []
    by_name = {str(i): k for k, i in enumerate(fw.ids)}
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if tok not in by_name:
            raise SchemaError(f"unknown vertex {tok!r} in {flag}", "")
        out.append(by_name[tok])
    return out


def _parse_set(fw, items):
    sets = {}
    for item in items or []:
        if "=" not in item:
            raise SchemaError(f"--set expects NAME=ids, got {item!r}", "")
        name, val = item.split("=", 1)
        sets[name.strip()] = _ids(fw, val, "--set")
    return sets


def _slider_config(fw, c_exact):
    pts = dict(fw.points)
    for v, x in fw.sliders.items():
        pts.setdefault(v, (x, Fraction(0)))
    c = Configuration(fw.dim, pts, {})
    return c if c_exact else Configuration(fw.dim, {v: tuple(float(t) for t in p) for v, p in pts.items()}, {})


def cmd_rigidity(fw, args):
    exact, tol = _mode(fw, args)
    model = args.model
    g = fw.graph
    if model == "slider":
        c = _slider_config(fw, exact)
        v = rigidity("slider", g, c, sliders=list(fw.sliders), tol=tol)
    elif model == "spherical":
        c = fw.configuration(None if exact else False)
        sc = transfer.sphere_image(g, c, normalized=not exact)
        v = rigidity("spherical", g, sc, tol=tol)
    else:
        c = fw.configuration(None if exact else False)
        v = rigidity(model, g, c, tol=tol)
    report = v.as_dict()
    report["exact"] = exact
    return report, (0 if v.rigid else 1)


def _framework_dump(fw, g, c):
    return {"dim": c.dim,
            "point_vertices": [fw.ext(v) for v in g.vertices],
            "line_vertices": [],
            "edges": [[fw.ext(e.u), fw.ext(e.v)] for e in g.edges],
            "points": {str(fw.ext(v)): list(c.points[v]) for v in g.vertices}}


def cmd_transfer(fw, args):
    g = fw.graph
    c = fw.configuration()
    if not c.exact:
        raise SchemaError("transfer needs exact rational input", "")
    if args.rotation:
        try:
            params = [Fraction(t.strip()) for t in args.rotation.split(",")]
        except (ValueError, ZeroDivisionError):
            raise SchemaError("--rotation expects comma-separated rationals", "") from None
        n = c.dim + 1
        if len(params) != n * (n - 1) // 2:
            raise SchemaError(f"--rotation needs {n * (n - 1) // 2} parameters", "")
        res = transfer.transfer_to_collinear(g, c, R=cayley_rotation(params, n))
        res = transfer.TransferResult(res.config, res.rotation, tuple(params), res.inverted, 1)
    else:
        res = transfer.transfer_to_collinear(g, c, rng=random.Random(args.seed))
    q = res.config
    lines = list(g.line_vertices)
    before = euclidean_ph_matrix(g, c).nullity()
    after = euclidean_rigidity_matrix(g, q).nullity()
    rows = [list(q.points[v]) + [Fraction(1)] for v in lines]
    collinear = len(rows) <= c.dim or rank(rows) <= c.dim
    dump = _framework_dump(fw, g, q)
    if args.output:
        Path(args.output).write_text(dumps(dump), encoding="utf-8")
    report = {"framework": dump, "rotation": res.rotation, "params": res.params,
              "attempts": res.attempts, "inverted": [fw.ext(v) for v in res.inverted],
              "collinear_vertices": [fw.ext(v) for v in lines], "collinear": collinear,
              "nullity_point_line": before, "nullity_bar_joint": after,
              "preserved": before == after}
    return report, 0


def cmd_count(fw, args):
    g = fw.graph
    sets = _parse_set(fw, args.set)
    th = args.theorem
    normals = fw.normals()
    if th == "collinear":
        X = sets.get("X", list(g.line_vertices))
        rep = counts.check_collinear_realizability(g, X, args.max_edges, args.max_partition)
    elif th == "scene":
        rep = counts.check_scene_count(g, fw.dim, args.max_edges)
    elif th == "fixed-normal":
        rep = counts.check_fixed_normal_plane(g, args.max_edges)
    elif th == "fixed-line":
        rep = counts.check_fixed_line(g, normals, args.max_edges)
    elif th == "fixed-intercept":
        rep = counts.check_fixed_intercept(g, normals, args.max_edges)
    elif th == "fixed-intercept-general":
        rep = counts.check_fixed_intercept_general(g, normals, args.max_edges)
    else:
        X = sets.get("X", list(fw.sliders))
        missing = [fw.ext(v) for v in X if v not in fw.sliders]
        if missing:
            raise SchemaError(f"no slider abscissa for {missing}", "/sliders")
        rep = counts.check_slider(g, X, fw.sliders, args.max_edges)
    out = rep.as_dict(g)
    out["verdict"] = "holds" if rep.holds else "fails"
    return out, (0 if rep.holds else 1)


def cmd_scene(fw, args):
    g = fw.graph
    if args.check_incidence:
        missing = [fw.ext(v) for v in g.point_vertices if v not in fw.points]
        missing += [fw.ext(v) for v in g.line_vertices if v not in fw.lines]
        if missing:
            raise SchemaError(f"no placement for {missing}", "")
        exact, tol = _mode(fw, args)
        c = fw.configuration(None if exact else False)
        bad = scenes.incidence_violations(g, c.points, c.hyperplanes, tol)
        report = {"incidence": not bad, "violations": [[fw.ext(a), fw.ext(b)] for a, b in bad],
                  "verdict": "holds" if not bad else "fails"}
        return report, (0 if not bad else 1)
    missing = [fw.ext(v) for v in g.line_vertices if v not in fw.lines]
    if missing:
        raise SchemaError(f"no normal for {missing}", "/lines")
    exact, tol = _mode(fw, args)
    normals = fw.normals(None if exact else False)
    dim = scenes.realization_space_dim(g, normals, fw.dim, tol)
    trivial = dim == fw.dim
    report = {"realization_space_dim": dim, "dim": fw.dim, "only_trivial": trivial,
              "verdict": "only-trivial" if trivial else "nontrivial"}
    return report, (0 if trivial else 1)


def _graph_dump(fw, g, extra_names):
    def ext(v):
        return fw.ext(v) if v < len(fw.ids) else extra_names[v]
    return {"point_vertices": [ext(v) for v in g.point_vertices],
            "line_vertices": [ext(v) for v in g.line_vertices],
            "edges": [[ext(e.u), ext(e.v)] for e in g.edges]}


def _load_mixed(fw, spec):
    p = Path(spec)
    text = p.read_text(encoding="utf-8") if p.exists() else spec
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        raise SchemaError("--mixed expects a JSON object or a path to one", "") from None
    if not isinstance(data, dict):
        raise SchemaError("--mixed expects a JSON object", "")
    out = {"fixed": [], "fixed_normal": [], "rotation_classes": []}
    for key in ("fixed", "fixed_normal"):
        vals = data.get(key, [])
        if not isinstance(vals, list):
            raise SchemaError("expected a list of ids", f"/{key}")
        out[key] = _ids(fw, ",".join(str(v) for v in vals), key)
    classes = data.get("rotation_classes", [])
    if not isinstance(classes, list) or not all(isinstance(S, list) for S in classes):
        raise SchemaError("expected a list of id lists", "/rotation_classes")
    out["rotation_classes"] = [_ids(fw, ",".join(str(v) for v in S), "rotation_classes") for S in classes]
    return out


def cmd_augment(fw, args):
    g = fw.graph
    if args.tree:
        gt = constructions.add_normal_tree(g)
        rep = counts.check_collinear_realizability(gt, list(gt.line_vertices), args.max_edges,
                                                   args.max_partition)
        report = {"graph": _graph_dump(fw, gt, {}), "added_edges": len(gt.edges) - len(g.edges),
                  "collinear_count": rep.as_dict(gt),
                  "verdict": "holds" if rep.holds else "fails"}
        return report, (0 if rep.holds else 1)
    spec = _load_mixed(fw, args.mixed)
    aug = constructions.mixed_augment(g, **spec)
    extra = {v: aug.graph.name(v) for v in aug.graph.vertices if v >= len(fw.ids)}
    c, cp, centres = constructions.random_mixed_placement(g, aug, random.Random(args.seed))
    constrained = constructions.mixed_constraint_matrix(g, c, centres=centres, **spec).nullity()
    unconstrained = euclidean_ph_matrix(aug.graph, cp).nullity()
    report = {"graph": _graph_dump(fw, aug.graph, extra),
              "K": {"points": [extra[v] for v in aug.k_points], "line": extra[aug.k_line]},
              "connection_edges": [[_graph_ext(fw, extra, a), _graph_ext(fw, extra, b)]
                                   for a, b in aug.connection_edges],
              "centres": {str(j): extra[u] for j, u in aug.centre_vertex.items()},
              "nullity_constrained": constrained, "nullity_augmented": unconstrained,
              "bridge": unconstrained == 3 + constrained,
              "verdict": "rigid" if constrained == 0 else "flexible"}
    return report, (0 if constrained == 0 else 1)


def _graph_ext(fw, extra, v):
    return fw.ext(v) if v < len(fw.ids) else extra[v]


def cmd_dilworth(fw, args):
    g = fw.graph
    missing = [fw.ext(v) for v in g.line_vertices if v not in fw.lines]
    if missing:
        raise SchemaError(f"no normal for {missing}", "/lines")
    normals = fw.normals()
    f = matroidlab.intercept_family(g, normals)
    res = matroidlab.dilworth_experiment(f, args.trials, random.Random(args.seed), args.max_partition)
    report = {"achieved": res.achieved, "minimum": res.minimum, "equal": res.equal,
              "draws": res.draws, "rejected": res.rejected, "history": res.history,
              "s": res.s, "partition": [[[fw.ext(g.edges[k].u), fw.ext(g.edges[k].v)] for k in part]
                                        for part in res.partition],
              "verdict": "equal" if res.equal else "gap"}
    return report, (0 if res.equal else 1)


COMMANDS = {"rigidity": cmd_rigidity, "transfer": cmd_transfer, "count": cmd_count,
            "scene": cmd_scene, "augment": cmd_augment, "dilworth": cmd_dilworth}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, help="framework JSON file")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=None)
    common.add_argument("--exact", action="store_true")
    common.add_argument("--max-edges", type=int, default=SUBSET_CAP)
    common.add_argument("--max-partition", type=int, default=PARTITION_CAP)
    common.add_argument("--timing", action="store_true", help="add wall-clock seconds to the report")
    p = _Parser(prog="phrigid", description="Point-hyperplane rigidity tools")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    r = sub.add_parser("rigidity", parents=[common])
    r.add_argument("--model", required=True, choices=RIGIDITY_MODELS)
    t = sub.add_parser("transfer", parents=[common])
    t.add_argument("--rotation", default=None, help="Cayley parameters r1,r2,...")
    t.add_argument("--output", default=None)
    c = sub.add_parser("count", parents=[common])
    c.add_argument("--theorem", required=True, choices=THEOREMS)
    c.add_argument("--set", action="append", default=[], help="NAME=id1,id2,...")
    s = sub.add_parser("scene", parents=[common])
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--check-incidence", action="store_true")
    g.add_argument("--dim", action="store_true")
    a = sub.add_parser("augment", parents=[common])
    g = a.add_mutually_exclusive_group(required=True)
    g.add_argument("--tree", action="store_true")
    g.add_argument("--mixed", metavar="SPEC")
    d = sub.add_parser("dilworth", parents=[common])
    d.add_argument("--trials", type=int, default=matroidlab.RETRY_BUDGET)
    return p


def run(command: str, args) -> tuple:
    """Run one command; returns (report, exit code)."""
    fw = parse_input(args.input)
    start = time.perf_counter()
    report, code = COMMANDS[command](fw, args)
    report["command"] = command
    if getattr(args, "timing", False):
        report["timing"] = round(time.perf_counter() - start, 6)
    return report, code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report, code = run(args.command, args)
    except (PhrigidError, ValueError) as exc:
        out = {"command": args.command, "error": type(exc).__name__, "message": str(exc),
               "verdict": "error"}
        if getattr(exc, "report", None) is not None:
            out["report"] = exc.report.as_dict()
        sys.stdout.write(dumps(out))
        sys.stderr.write(f"phrigid: {type(exc).__name__}: {exc}\n")
        return 2
    sys.stdout.write(dumps(report))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
