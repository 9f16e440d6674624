"""Command-line front end.

    romanpoly table   --alpha 1 --beta -3 --max-n 4 [--format json|csv]
    romanpoly verify  --suite identities|orthogonality|jacobi|physics|rmt|all
    romanpoly physics scarf|rosenmorse|legendre ... --emit states|overlaps|plotdata
    romanpoly gap     --N 2 --a 0 --lo -0.5 --hi 0.5 --method nystrom|mc

Rationals are given as ``num/den`` and kept exact; decimals use doubles and
the output records a notice.  Exit codes: 0 success, 1 verification failure,
2 usage or parse error, 3 domain error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from fractions import Fraction
from importlib import resources
from numbers import Rational

import numpy as np

from . import physics, rmt, verify
from .quadrature import integrate_interval
from .polycore import DOUBLE, format_scalar, parse_scalar
from .romanovski import FamilyParams, build_rodrigues

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3
MAX_TABLE_N = 64
DECIMAL_NOTICE = "decimal input routed to the double backend"


class UsageError(Exception):
    pass


class DomainFailure(Exception):
    pass


# --- serialization ----------------------------------------------------------


def dumps(obj):
    """JSON text with every float written to 17 significant digits.

    Non-finite floats become null; Fractions become "num/den" strings.
    """
    if isinstance(obj, dict):
        items = (f"{json.dumps(str(k))}: {dumps(v)}" for k, v in obj.items())
        return "{" + ", ".join(items) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(dumps(v) for v in obj) + "]"
    if obj is None or isinstance(obj, (bool, np.bool_)):
        return json.dumps(bool(obj) if obj is not None else None)
    if isinstance(obj, (int, np.integer)) and not isinstance(obj, bool):
        return str(int(obj))
    if isinstance(obj, Fraction):
        return json.dumps(format_scalar(obj))
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return format(v, ".17g") if math.isfinite(v) else "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def load_schema(name):
    """JSON schema shipped for the ``name`` command output (table, verify, physics, gap)."""
    text = resources.files("romanpoly").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


def _csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_csv_cell(v) for v in row])
    return buf.getvalue()


def _csv_cell(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, Rational) and not isinstance(v, int):
        return format_scalar(v)
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def _scalar(text, name):
    try:
        return parse_scalar(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"--{name}: cannot parse {text!r}") from exc


def _scalar_json(v):
    return format_scalar(v) if isinstance(v, Rational) else float(v)


# --- table ------------------------------------------------------------------


def cmd_table(args):
    alpha, beta = _scalar(args.alpha, "alpha"), _scalar(args.beta, "beta")
    if not 0 <= args.max_n <= MAX_TABLE_N:
        raise UsageError(f"--max-n must lie in [0, {MAX_TABLE_N}]")
    params = FamilyParams(alpha, beta)
    polys = [build_rodrigues(n, params) for n in range(args.max_n + 1)]
    if args.format == "csv":
        rows = []
        for r in polys:
            for k, c in enumerate(r.poly.coeffs):
                rows.append((r.n, r.degree, r.degree_deficient, k, c))
        return _csv_text(["n", "degree", "degree_deficient", "power", "coefficient"], rows)
    out = {
        "alpha": _scalar_json(params.alpha),
        "beta": _scalar_json(params.beta),
        "backend": params.backend,
        "polynomials": [
            {"n": r.n, "degree": r.degree, "degree_deficient": r.degree_deficient,
             "coefficients": [_scalar_json(c) for c in r.poly.coeffs]}
            for r in polys
        ],
    }
    if params.backend == DOUBLE:
        out["notice"] = DECIMAL_NOTICE
    return dumps(out) + "\n"


# --- verify -----------------------------------------------------------------


def cmd_verify(args):
    overrides = {}
    for item in args.tolerance or []:
        name, sep, value = item.rpartition("=")
        if not sep or not name:
            raise UsageError(f"--tolerance expects NAME=VALUE, got {item!r}")
        try:
            overrides[name] = float(value)
        except ValueError as exc:
            raise UsageError(f"--tolerance: bad value {value!r}") from exc
    checks = verify.run_suite(args.suite, overrides)
    report = {"suite": args.suite, "checks": [c.to_json() for c in checks]}
    failed = any(c.status != verify.PASS for c in checks)
    return dumps(report) + "\n", (EXIT_FAIL if failed else EXIT_OK)


# --- physics ----------------------------------------------------------------


def _family_json(f):
    return {"alpha": float(f.alpha), "beta": float(f.beta)}


def _state_json(s):
    mean, std = physics.rayleigh_energy(s)
    return {"n": s.n, "energy": s.energy, "rayleigh_energy": mean, "rayleigh_stddev": std,
            "nodes": physics.count_nodes(s), "normalization": s.normalization,
            "family": _family_json(s.family)}


def _physics_scarf(args):
    p = physics.ScarfParams(float(_scalar(args.A, "A")), float(_scalar(args.B, "B")))
    if not p.A > 0:
        raise DomainFailure("A must be positive for a bound state")
    top = p.num_bound - 1 if args.max_n is None else args.max_n
    if top >= p.A or top < 0:
        raise DomainFailure(f"n={top} is not a bound state for A={p.A}")
    states = [physics.scarf_state(n, p) for n in range(top + 1)]
    head = {"problem": "scarf", "params": {"A": p.A, "B": p.B}}
    if args.emit == "states":
        return dumps({**head, "states": [_state_json(s) for s in states]}) + "\n"
    if args.emit == "overlaps":
        m = [[physics.scarf_overlap(i, j, p).value for j in range(top + 1)] for i in range(top + 1)]
        return dumps({**head, "overlaps": m}) + "\n"
    z = np.linspace(args.zmin if args.zmin is not None else -10.0,
                    args.zmax if args.zmax is not None else 10.0, args.points)
    cols = [z, physics.scarf_potential(z, p)] + [s(z) for s in states]
    header = ["z", "V"] + [f"psi_{s.n}" for s in states]
    return _csv_text(header, zip(*cols))


def _physics_rosenmorse(args):
    b = float(_scalar(args.b, "b"))
    try:
        p = physics.RosenMorseParams(b, int(args.l))
    except ValueError as exc:
        raise DomainFailure(str(exc)) from exc
    top = 4 if args.max_n is None else args.max_n
    if top < 0:
        raise DomainFailure("--max-n must be nonnegative")
    head = {"problem": "rosenmorse", "params": {"b": p.b, "l": p.l}}
    zlo = args.zmin if args.zmin is not None else 0.01
    zhi = args.zmax if args.zmax is not None else math.pi - 0.01
    if not 0.0 < zlo < zhi < math.pi:
        raise DomainFailure("plot range must lie inside (0, pi)")
    z = np.linspace(zlo, zhi, args.points)
    if args.plot_compare:
        cols = [z, physics.rosen_morse_potential(z, p), physics.coulomb_plus_linear(z, p)]
        return _csv_text(["z", "V", "coulomb_plus_linear"], zip(*cols))
    states = [physics.rosen_morse_state(n, p) for n in range(top + 1)]
    if args.emit == "states":
        return dumps({**head, "states": [_state_json(s) for s in states]}) + "\n"
    if args.emit == "overlaps":
        m = [[integrate_interval(lambda t: a(t) * c(t), 0.0, math.pi, 1e-12).value
              for c in states] for a in states]
        return dumps({**head, "overlaps": m}) + "\n"
    cols = [z, physics.rosen_morse_potential(z, p), physics.coulomb_plus_linear(z, p)]
    cols += [s(z) for s in states]
    header = ["z", "V", "coulomb_plus_linear"] + [f"psi_{s.n}" for s in states]
    return _csv_text(header, zip(*cols))


def _physics_legendre(args):
    l = int(args.l)
    if l < 0:
        raise DomainFailure("l must be nonnegative")
    lmax = l + 2 if args.lmax is None else args.lmax
    head = {"problem": "legendre", "params": {"l": l}}
    if args.emit == "overlaps":
        entries = []
        for lp in range(lmax + 1):
            if lp == l:
                continue
            for m in range(min(l, lp) + 1):
                r = physics.legendre_cross_orthogonality(l, lp, m)
                entries.append({"l": l, "lp": lp, "m": m, "value": r.value, "verdict": r.verdict})
        return dumps({**head, "overlaps": entries}) + "\n"
    theta = np.linspace(0.01, math.pi - 0.01, args.points)
    cols = [theta] + [physics.assoc_legendre_via_romanovski(l, m, theta) for m in range(l + 1)]
    header = ["theta"] + [f"m_{m}" for m in range(l + 1)]
    if args.emit == "states":
        return dumps({**head, "m": list(range(l + 1)),
                      "degrees": [build_rodrigues(m + l, FamilyParams(0, Fraction(1, 2) - l)).degree
                                  for m in range(l + 1)]}) + "\n"
    return _csv_text(header, zip(*cols))


def cmd_physics(args):
    handler = {"scarf": _physics_scarf, "rosenmorse": _physics_rosenmorse,
               "legendre": _physics_legendre}[args.problem]
    try:
        return handler(args)
    except (physics.UnboundStateError, physics.DomainError) as exc:
        raise DomainFailure(str(exc)) from exc


# --- gap --------------------------------------------------------------------


def cmd_gap(args):
    try:
        a = _scalar(args.a, "a")
        spec = rmt.EnsembleSpec(int(args.N), a)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    lo, hi = float(_scalar(args.lo, "lo")), float(_scalar(args.hi, "hi"))
    if not (math.isfinite(lo) and math.isfinite(hi)) or hi < lo:
        raise UsageError("need finite --lo <= --hi")
    out = {"spec": spec.to_json(), "interval": [lo, hi], "method": args.method}
    if args.method == "nystrom":
        kernel = rmt.orthonormal_basis(spec)
        try:
            res = rmt.gap_probability(kernel, lo, hi, order=args.order, full_output=True)
        except rmt.GapConvergenceError as exc:
            raise DomainFailure(str(exc)) from exc
        out.update(value=res.value, error=res.error, quadrature_order=res.quadrature_order)
    else:
        if lo == hi:
            est, se = 1.0, 0.0
        else:
            try:
                est, se = rmt.mc_gap_estimate(spec, lo, hi, args.samples, args.seed)
            except rmt.SamplerEfficiencyError as exc:
                raise DomainFailure(str(exc)) from exc
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
        out.update(value=est, error=se, samples=args.samples, seed=args.seed)
    return dumps(out) + "\n"


# --- parser -----------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser():
    p = _Parser(prog="romanpoly", description="Romanovski polynomials and applications")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t = sub.add_parser("table", help="tabulate R_0..R_max_n")
    t.add_argument("--alpha", required=True)
    t.add_argument("--beta", required=True)
    t.add_argument("--max-n", type=int, required=True)
    t.add_argument("--format", choices=("json", "csv"), default="json")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", choices=verify.SUITES + ("all",), default="all")
    v.add_argument("--tolerance", action="append", metavar="NAME=VALUE")

    ph = sub.add_parser("physics", help="bound states, overlaps and plot data")
    ph.add_argument("problem", choices=("scarf", "rosenmorse", "legendre"))
    ph.add_argument("--A", default="2")
    ph.add_argument("--B", default="1/2")
    ph.add_argument("--b", default="50")
    ph.add_argument("--l", type=int, default=1)
    ph.add_argument("--lmax", type=int)
    ph.add_argument("--max-n", type=int)
    ph.add_argument("--emit", choices=("states", "overlaps", "plotdata"), default="states")
    ph.add_argument("--plot-compare", action="store_true",
                    help="rosenmorse: emit z, v and the Coulomb-plus-linear series only")
    ph.add_argument("--points", type=int, default=401)
    ph.add_argument("--zmin", type=float)
    ph.add_argument("--zmax", type=float)

    g = sub.add_parser("gap", help="gap probability E(0, (lo, hi)) of the Cauchy ensemble")
    g.add_argument("--N", type=int, required=True)
    g.add_argument("--a", default="0")
    g.add_argument("--lo", required=True)
    g.add_argument("--hi", required=True)
    g.add_argument("--method", choices=("nystrom", "mc"), default="nystrom")
    g.add_argument("--order", type=int)
    g.add_argument("--samples", type=int, default=100_000)
    g.add_argument("--seed", type=int, default=0)
    return p


_NEGATIVE = re.compile(r"^-\d")


def _attach_negative_values(argv):
    """Turn ``--beta -1/2`` into ``--beta=-1/2``; argparse would read -1/2 as a flag."""
    out = []
    for tok in argv:
        if out and _NEGATIVE.match(tok) and out[-1].startswith("--") and "=" not in out[-1]:
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    code = EXIT_OK
    try:
        args = build_parser().parse_args(_attach_negative_values(argv))
        if args.command == "table":
            text = cmd_table(args)
        elif args.command == "verify":
            text, code = cmd_verify(args)
        elif args.command == "physics":
            text = cmd_physics(args)
        else:
            text = cmd_gap(args)
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except DomainFailure as exc:
        print(f"domain error: {exc}", file=stderr)
        return EXIT_DOMAIN
    except SystemExit as exc:
        # --help exits through argparse
        return int(exc.code or 0)
    stdout.write(text)
    return code


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
