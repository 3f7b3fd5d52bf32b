"""Fan files, the built-in catalog, JSON reports and the command-line tool."""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import __version__
from .alpha import AlphaReport, alpha_g, alpha_m_report
from .fan_model import FanData, FanDiagnosis, FanValidationError, NotFanoInputError, validate_fan
from .polytope_geometry import barycenter, build_polytope, lattice_points
from .symmetry import fixed_space, weyl_group

_CATALOG = {
    "p2": ("CP^2",
           [(1, 0), (0, 1), (-1, -1)],
           [(0, 1), (1, 2), (2, 0)]),
    "p1xp1": ("CP^1 x CP^1",
              [(1, 0), (0, 1), (-1, 0), (0, -1)],
              [(0, 1), (1, 2), (2, 3), (3, 0)]),
    "dp1": ("CP^2 blown up at 1 point",
            [(1, 0), (0, 1), (1, 1), (-1, -1)],
            [(0, 2), (2, 1), (1, 3), (3, 0)]),
    "dp2": ("CP^2 blown up at 2 points",
            [(1, 0), (0, 1), (1, 1), (-1, 0), (0, -1)],
            [(0, 2), (2, 1), (1, 3), (3, 4), (4, 0)]),
    "dp3": ("CP^2 blown up at 3 points",
            [(1, 0), (0, 1), (1, 1), (-1, 0), (0, -1), (-1, -1)],
            [(0, 2), (2, 1), (1, 3), (3, 5), (5, 4), (4, 0)]),
}

DESCRIPTIONS = {key: desc for key, (desc, _, _) in _CATALOG.items()}


class FanParseError(ValueError):
    """Malformed fan file; the message carries a line/column or a field path."""


class UsageError(Exception):
    pass


def catalog() -> dict[str, FanData]:
    """The five smooth toric del Pezzo surfaces, keyed by short name."""
    return {key: FanData.from_lists(rays, cones, name=key)
            for key, (_, rays, cones) in _CATALOG.items()}


def _int_list(value, path: str) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool)
                                              for x in value):
        raise FanParseError(f"{path}: expected an array of integers, got {json.dumps(value)}")
    return value


def parse_fan(text: str) -> FanData:
    """Parse a JSON fan file (fields ``name``, ``dim``, ``rays``, ``max_cones``)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FanParseError(f"syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}")
    if not isinstance(doc, dict):
        raise FanParseError("top level must be a JSON object")
    for key in ("dim", "rays", "max_cones"):
        if key not in doc:
            raise FanParseError(f"missing required field {key!r}")
    dim = doc["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool):
        raise FanParseError(f"dim: expected an integer, got {json.dumps(dim)}")
    if not isinstance(doc["rays"], list):
        raise FanParseError("rays: expected an array")
    if not isinstance(doc["max_cones"], list):
        raise FanParseError("max_cones: expected an array")
    rays = [tuple(_int_list(r, f"rays[{i}]")) for i, r in enumerate(doc["rays"])]
    cones = [tuple(_int_list(c, f"max_cones[{j}]")) for j, c in enumerate(doc["max_cones"])]
    name = doc.get("name", "")
    if not isinstance(name, str):
        raise FanParseError("name: expected a string")
    return FanData(dim=dim, rays=tuple(rays), max_cones=tuple(cones), name=name)


def serialize_fan(fan: FanData, metadata: dict | None = None) -> str:
    doc = {"name": fan.name, "dim": fan.dim,
           "rays": [list(r) for r in fan.rays],
           "max_cones": [list(c) for c in fan.max_cones]}
    if metadata:
        doc["metadata"] = metadata
    return json.dumps(doc, indent=2) + "\n"


def fan_digest(fan: FanData) -> str:
    """Content hash of the fan; invariant under reordering cones or their indices."""
    canon = {"dim": fan.dim, "rays": [list(r) for r in fan.rays],
             "max_cones": sorted(sorted(c) for c in fan.max_cones)}
    blob = json.dumps(canon, sort_keys=True, separators=(",", ":")).encode()
    return "sha256:" + hashlib.sha256(blob).hexdigest()


def load_fan(source: str) -> FanData:
    """Read ``source`` as a file path, or as ``@name`` for a catalog entry."""
    if source.startswith("@"):
        fans = catalog()
        if source[1:] not in fans:
            raise UsageError(f"unknown catalog entry {source!r}; available: "
                             + ", ".join("@" + k for k in fans))
        return fans[source[1:]]
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {source}: {exc.strerror}")
    return parse_fan(text)


def q(x) -> str:
    return str(Fraction(x))


def qvec(v) -> list[str]:
    return [q(x) for x in v]


def alpha_to_dict(rep: AlphaReport, with_certificate: bool = False) -> dict:
    out = {
        "symmetric": rep.symmetric,
        "alpha": q(rep.alpha),
        "t_star": None if rep.t_star is None else q(rep.t_star),
        "minimizers": [qvec(v) for v in rep.minimizers],
        "m_zero": rep.m_zero,
    }
    if with_certificate:
        out["certificate"] = [
            {"point": qvec(e.point), "gauge": q(e.gauge),
             "antipodal_gauge": q(e.antipodal_gauge), "ratio": q(e.ratio),
             "binding_ray": e.binding_facet}
            for e in rep.certificate]
    return out


def build_report(fan: FanData, with_certificate: bool = False, extras: bool = False,
                 oracle: dict | None = None) -> dict:
    """The JSON report document. Exact numbers are ``"p/q"`` strings."""
    diag = validate_fan(fan)
    doc: dict = {"tool": "toricalpha", "version": __version__,
                 "input": {"name": fan.name, "digest": fan_digest(fan)},
                 "diagnosis": diag.to_dict()}
    if not diag.is_fano:
        return doc
    group = weyl_group(fan)
    doc["symmetry"] = {"order": group.order,
                       "fixed_dim_N": fixed_space(group, "N").dim,
                       "fixed_dim_M": fixed_space(group, "M").dim}
    rep = alpha_g(fan)
    doc["alpha"] = alpha_to_dict(rep, with_certificate)
    doc["alpha_m"] = [{"m": row.m, "value": None if row.value is None else q(row.value),
                       "bracket": [q(row.lower), q(row.upper)], "determined": row.determined}
                      for row in alpha_m_report(fan, report=rep)]
    if extras:
        poly = build_polytope(fan)
        doc["barycenter"] = qvec(barycenter(poly))
        doc["lattice_points"] = {str(m): len(lattice_points(poly, m)) for m in (1, 2, 3)}
    if oracle is not None:
        doc["oracle"] = oracle
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _fmt_vec(v) -> str:
    return "(" + ", ".join(q(x) for x in v) + ")"


def _print_diagnosis(diag: FanDiagnosis, out) -> None:
    print(f"complete: {str(diag.is_complete).lower()}", file=out)
    print(f"regular:  {str(diag.is_regular).lower()}", file=out)
    print(f"fano:     {str(diag.is_fano).lower()}", file=out)
    for f in diag.failures:
        print(f"  - {f}", file=out)


def _require_fano(fan: FanData) -> None:
    diag = validate_fan(fan)
    if not diag.is_fano:
        raise NotFanoInputError(diag)


def cmd_check(args, out) -> int:
    fan = load_fan(args.fan)
    diag = validate_fan(fan)
    if args.json:
        out.write(dumps({"input": {"name": fan.name, "digest": fan_digest(fan)},
                         "diagnosis": diag.to_dict()}))
    else:
        _print_diagnosis(diag, out)
    return 0 if diag.is_fano else 1


def cmd_symmetry(args, out) -> int:
    fan = load_fan(args.fan)
    _require_fano(fan)
    group = weyl_group(fan)
    fix_n, fix_m = fixed_space(group, "N"), fixed_space(group, "M")
    if args.json:
        out.write(dumps({"order": group.order,
                         "elements": [[list(r) for r in g] for g in group.elements],
                         "fixed_N": [qvec(b) for b in fix_n.basis],
                         "fixed_M": [qvec(b) for b in fix_m.basis]}))
        return 0
    print(f"order: {group.order}", file=out)
    for g in group.elements:
        print("  " + " ".join(str(list(r)) for r in g), file=out)
    print("fixed N: " + (", ".join(_fmt_vec(b) for b in fix_n.basis) or "{0}"), file=out)
    print("fixed M: " + (", ".join(_fmt_vec(b) for b in fix_m.basis) or "{0}"), file=out)
    return 0


def cmd_alpha(args, out) -> int:
    fan = load_fan(args.fan)
    _require_fano(fan)
    if args.json:
        out.write(dumps(build_report(fan, with_certificate=args.certificate)))
        return 0
    rep = alpha_g(fan)
    print(f"alpha_G: {q(rep.alpha)}", file=out)
    print(f"symmetric: {str(rep.symmetric).lower()}", file=out)
    if not rep.symmetric:
        print(f"t_star: {q(rep.t_star)}", file=out)
        print("minimizers: " + ", ".join(_fmt_vec(v) for v in rep.minimizers), file=out)
        print(f"m_zero: {rep.m_zero}", file=out)
    for row in alpha_m_report(fan, m_max=args.m_max, report=rep):
        if row.determined:
            print(f"  alpha_{{{row.m},G}} = {q(row.value)}", file=out)
        else:
            print(f"  alpha_{{{row.m},G}} in [{q(row.lower)}, {q(row.upper)})  (not determined)",
                  file=out)
    if args.certificate:
        print("certificate (vertex, g(v), g(-v), ratio):", file=out)
        for e in rep.certificate:
            print(f"  {_fmt_vec(e.point)}  {q(e.gauge)}  {q(e.antipodal_gauge)}  {q(e.ratio)}",
                  file=out)
    return 0


def cmd_points(args, out) -> int:
    fan = load_fan(args.fan)
    _require_fano(fan)
    if args.m < 1:
        raise UsageError("--m must be a positive integer")
    pts = lattice_points(build_polytope(fan), args.m)
    if args.json:
        doc = {"m": args.m, "count": len(pts)}
        if args.list:
            doc["points"] = [list(p) for p in pts]
        out.write(dumps(doc))
        return 0
    print(f"lattice points in {args.m}*Sigma: {len(pts)}", file=out)
    if args.list:
        for p in pts:
            print("  " + str(list(p)), file=out)
    return 0


def cmd_barycenter(args, out) -> int:
    fan = load_fan(args.fan)
    _require_fano(fan)
    b = barycenter(build_polytope(fan))
    if args.json:
        out.write(dumps({"barycenter": qvec(b)}))
    else:
        print(f"barycenter: {_fmt_vec(b)}", file=out)
    return 0


def cmd_integral_test(args, out) -> int:
    from .analytic_oracle import (PotentialData, exact_convergence_predicate,
                                  model_integral_estimate)

    fan = load_fan(args.fan)
    _require_fano(fan)
    try:
        alpha = Fraction(args.alpha)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--alpha must be a number or fraction, got {args.alpha!r}")
    if not 0 < alpha < 1:
        raise UsageError("--alpha must lie strictly between 0 and 1")
    poly = build_polytope(fan)
    rep = alpha_g(fan)
    if args.v is not None:
        try:
            v = tuple(Fraction(x) for x in args.v.split(","))
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"--v must be comma-separated numbers, got {args.v!r}")
        if len(v) != fan.dim:
            raise UsageError(f"--v needs {fan.dim} coordinates")
    elif rep.minimizers:
        v = rep.minimizers[0]
    else:
        v = (Fraction(0),) * fan.dim
    # v = 0 is the symmetric case: integrable for every alpha < 1
    predicate = True if not any(v) else exact_convergence_predicate(poly, alpha, v)
    verdict = model_integral_estimate(PotentialData.from_polytope(poly), float(alpha),
                                      [float(x) for x in v], cutoffs=args.cutoffs, step=args.step)
    if args.json:
        out.write(dumps({"alpha": q(alpha), "v": qvec(v), "alpha_G": q(rep.alpha),
                         "exact_convergent": predicate, "oracle": verdict.to_dict()}))
        return 0
    print(f"alpha = {q(alpha)}, v = {_fmt_vec(v)}, alpha_G = {q(rep.alpha)}", file=out)
    print(f"exact predicate: {'convergent' if predicate else 'not convergent'}", file=out)
    print(f"numerical verdict: {verdict.verdict} (last growth ratio {verdict.growth_ratio:.6g})",
          file=out)
    for r, le in zip(args.cutoffs, verdict.log_estimates):
        print(f"  R = {r:g}: log I = {le:.6f}", file=out)
    if verdict.note:
        print(f"note: {verdict.note}", file=out)
    return 0


def cmd_catalog(args, out) -> int:
    fans = catalog()
    if args.json:
        out.write(dumps({k: json.loads(serialize_fan(f)) for k, f in fans.items()}))
        return 0
    for key, fan in fans.items():
        print(f"@{key:6s} {DESCRIPTIONS[key]}  ({len(fan.rays)} rays, "
              f"{len(fan.max_cones)} cones)", file=out)
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="toricalpha",
                     description="Exact alpha_G-invariants of smooth toric Fano manifolds.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        if name != "catalog":
            p.add_argument("fan", metavar="FILE", help="fan JSON file, or @name for a catalog entry")
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.set_defaults(func=func)
        return p

    add("check", cmd_check, "validate a fan (complete, regular, Fano)")
    add("symmetry", cmd_symmetry, "fan symmetry group and fixed spaces")
    p = add("alpha", cmd_alpha, "alpha_G-invariant report")
    p.add_argument("--certificate", action="store_true", help="include per-vertex gauge values")
    p.add_argument("--m-max", type=int, default=None, help="last m in the alpha_m table")
    p = add("points", cmd_points, "lattice points of m * Sigma")
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--list", action="store_true", help="print the points themselves")
    add("barycenter", cmd_barycenter, "exact barycenter of Sigma")
    p = add("integral-test", cmd_integral_test, "numerical convergence test of the model integral")
    p.add_argument("--alpha", required=True)
    p.add_argument("--v", default=None, help="comma-separated direction (default: a minimizer)")
    p.add_argument("--cutoffs", type=float, nargs="+", default=[40, 80, 160, 320])
    p.add_argument("--step", type=float, default=0.5)
    add("catalog", cmd_catalog, "list built-in fans")
    return parser


def run_cli(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = make_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return 2
    except FanParseError as exc:
        print(f"error: {exc}", file=err)
        return 1
    except FanValidationError as exc:
        for f in exc.findings:
            print(f"error: {f}", file=err)
        return 1
    except NotFanoInputError as exc:
        print("error: fan is not a smooth toric Fano fan", file=err)
        _print_diagnosis(exc.diagnosis, err)
        return 1


def main() -> None:
    sys.exit(run_cli())
