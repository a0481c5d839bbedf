"""Command-line front end.

Every command prints a deterministic envelope: command name, parameters,
result payload, and the identifiers of any built-in reference table the
invocation reproduces.  Rationals render as "p/q", irrational slopes as
"sqrt(p/q)", groups as one of 1, Z/2, (Z/2)^2, Z, Z x| Z/2, ?.

Exit codes: 0 on success, 1 on a domain error (the error type is printed),
2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import autgroups, cones, lattice, pell, periods, rrinv


def _frac(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def _sol(s) -> str:
    return "-" if s is None else f"({s.a},{s.b})"


def _slope(s: cones.ExtremalSlope) -> str:
    return str(s)


def _key_payload(k: periods.HeegnerKey) -> dict:
    return {"d": k.d, "kappa2": k.kappa_prim_sq, "div": k.s, "star": list(k.star)}


def _emit(args, command: str, params: dict, result, provenance=()) -> int:
    envelope = {
        "command": command,
        "params": params,
        "result": result,
        "provenance": sorted(provenance),
    }
    if args.format == "json":
        print(json.dumps(envelope, sort_keys=True, indent=2))
    elif args.format == "text":
        print(json.dumps(result, sort_keys=True, indent=2))
    else:
        raise SystemExit("csv output is only available for table commands")
    return 0


def _emit_csv(rows: list[list[str]]) -> int:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerows(rows)
    return 0


# ---------------------------------------------------------------------------
# reference tables


def _table_s2_cones() -> list[list[str]]:
    rows = [["e", "pell_1", "pell_5", "mov", "nef"]]
    for e in range(1, 14):
        p1 = pell.min_positive_solution(pell.PellEquation.classical(e, 1))
        p5 = pell.min_positive_solution(pell.PellEquation.classical(4 * e, 5))
        mov = cones.mov_slope_s2(e)
        nef = cones.nef_slope_s2(e)
        rows.append([str(e), _sol(p1), _sol(p5), _slope(mov),
                     "=" if nef == mov else _slope(nef)])
    return rows


def _table_s2_walls() -> list[list[str]]:
    rows = [["e", "pell_1", "mov", "walls"]]
    for e in (5, 11, 19, 29, 31, 41, 55, 71):
        p1 = pell.min_positive_solution(pell.PellEquation.classical(e, 1))
        rep = cones.walls_s2(e)
        rows.append([str(e), _sol(p1), _slope(rep.mov_slope),
                     ";".join(_frac(w) for w in rep.interior_walls)])
    return rows


def _table_aut_n3() -> list[list[str]]:
    rows = [["e_prime", "aut", "bir"]]
    for ep in range(2, 12):
        a, b = autgroups.fourfold_groups(3, ep)
        rows.append([str(ep), str(a), str(b)])
    return rows


def _period_image_payload(m: int, n: int, gamma: int) -> dict:
    keys = periods.excluded_heegner(m, n, gamma)
    return {
        "m": m, "n": n, "gamma": gamma,
        "excluded_d": sorted({k.d for k in keys}),
        "components": [_key_payload(k) for k in keys],
    }


_TABLES = {
    "s2-cones": lambda: ("csv", _table_s2_cones()),
    "s2-walls": lambda: ("csv", _table_s2_walls()),
    "aut-n3": lambda: ("csv", _table_aut_n3()),
    "period-image-m4": lambda: ("json", _period_image_payload(4, 1, 2)),
    "period-image-m8": lambda: ("json", _period_image_payload(8, 1, 2)),
    "period-image-m12": lambda: ("json", _period_image_payload(12, 1, 2)),
}


class UnknownTable(Exception):
    pass


def reproduce_table(table_id: str) -> str:
    """The exact text of a built-in reference table."""
    if table_id not in _TABLES:
        raise UnknownTable(f"unknown table id {table_id!r}; known: {sorted(_TABLES)}")
    kind, payload = _TABLES[table_id]()
    if kind == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(payload)
        return buf.getvalue()
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_pell(args) -> int:
    if args.pell_cmd == "fundamental":
        s = pell.fundamental_solution(args.d)
        return _emit(args, "pell fundamental", {"d": args.d}, {"a": s.a, "b": s.b})
    if args.pell_cmd == "min":
        eq = pell.PellEquation(args.e1, args.d, args.t)
        s = pell.min_positive_solution(eq)
        res = None if s is None else {"a": s.a, "b": s.b}
        return _emit(args, "pell min", {"e1": args.e1, "d": args.d, "t": args.t}, res)
    if args.pell_cmd == "classes":
        cls = pell.solution_classes(args.d, args.t)
        res = [{"a": c.representative.a, "b": c.representative.b,
                "conjugate_of": c.conjugate_of} for c in cls]
        return _emit(args, "pell classes", {"d": args.d, "t": args.t}, res)
    if args.pell_cmd == "stream":
        sols = pell.solutions_in_order(args.d, args.t, args.count)
        res = [{"a": s.a, "b": s.b} for s in sols]
        return _emit(args, "pell stream",
                     {"d": args.d, "t": args.t, "count": args.count}, res)
    raise AssertionError


def _cone_s2_row(e: int) -> dict:
    rep = cones.walls_s2(e)
    return {
        "e": e,
        "mov": _slope(rep.mov_slope),
        "nef": _slope(rep.nef_slope),
        "walls": [_frac(w) for w in rep.interior_walls],
        "nef_equals_mov": rep.nef_equals_mov,
    }


def _cmd_cone(args) -> int:
    if args.cone_cmd == "s2":
        e_from = args.e_from if args.e_from is not None else args.e
        e_to = args.e_to if args.e_to is not None else args.e
        if e_from is None:
            raise SystemExit("cone s2 needs --e or --e-from/--e-to")
        if args.format == "csv":
            rows = [["e", "pell_1", "pell_5", "mov", "nef"]]
            for e in range(e_from, e_to + 1):
                p1 = pell.min_positive_solution(pell.PellEquation.classical(e, 1))
                p5 = pell.min_positive_solution(pell.PellEquation.classical(4 * e, 5))
                mov, nef = cones.mov_slope_s2(e), cones.nef_slope_s2(e)
                rows.append([str(e), _sol(p1), _sol(p5), _slope(mov),
                             "=" if nef == mov else _slope(nef)])
            return _emit_csv(rows)
        res = [_cone_s2_row(e) for e in range(e_from, e_to + 1)]
        prov = ["table:s2-cones"] if (e_from, e_to) == (1, 13) else []
        return _emit(args, "cone s2", {"e_from": e_from, "e_to": e_to}, res, prov)
    if args.cone_cmd in ("sm", "walls"):
        rep = cones.walls_sm(args.e, args.m)
        ray, case = cones.mov_ray_sm(args.e, args.m)
        res = {
            "mov": _slope(rep.mov_slope),
            "nef": _slope(rep.nef_slope),
            "walls": [_frac(w) for w in rep.interior_walls],
            "mov_ray": {"c_l": ray.c_l, "c_delta": ray.c_delta, "case": case},
            "nef_equals_mov": rep.nef_equals_mov,
        }
        return _emit(args, f"cone {args.cone_cmd}", {"e": args.e, "m": args.m}, res)
    if args.cone_cmd == "fourfold":
        rep = cones.fourfold_cones(args.n, args.e_prime, prefix=args.prefix)
        res = {
            "mov": _slope(rep.mov_slope),
            "nef": _slope(rep.nef_slope),
            "walls": [_frac(w) for w in rep.interior_walls],
            "walls_infinite": rep.walls_infinite,
            "symmetric": rep.symmetric,
            "nef_equals_mov": rep.nef_equals_mov,
        }
        return _emit(args, "cone fourfold",
                     {"n": args.n, "e_prime": args.e_prime, "prefix": args.prefix}, res)
    raise AssertionError


def _cmd_chi(args) -> int:
    value = rrinv.chi(rrinv.RiemannRochInput(args.series, args.m, args.q))
    return _emit(args, "chi", {"series": args.series, "m": args.m, "q": args.q},
                 {"chi": value})


def _cmd_fujiki(args) -> int:
    c = rrinv.fujiki_constant(args.series, args.m)
    return _emit(args, "fujiki", {"series": args.series, "m": args.m},
                 {"constant": _frac(c)})


def _cmd_lattice(args) -> int:
    if args.lattice_cmd == "disc":
        dg = lattice.disc_group(args.m, args.n, args.gamma)
        res = {
            "orders": list(dg.orders),
            "q": [_frac(q) for q in dg.gen_q],
            "invariant_factors": list(dg.invariant_factors),
            "order": dg.order,
        }
        return _emit(args, "lattice disc",
                     {"m": args.m, "n": args.n, "gamma": args.gamma}, res)
    if args.lattice_cmd == "orbit":
        spec = lattice.polarized_orthogonal(args.m, args.n, args.gamma)
        key = lattice.OrbitKey(args.square, args.div,
                               Fraction(args.square, args.div ** 2) % 2)
        res = {"exists": lattice.exists_primitive_vector(spec, key)}
        return _emit(args, "lattice orbit",
                     {"m": args.m, "n": args.n, "gamma": args.gamma,
                      "square": args.square, "div": args.div}, res)
    if args.lattice_cmd == "dual":
        m2, n2, g2 = lattice.strange_dual_params(args.m, args.n, args.gamma)
        return _emit(args, "lattice dual",
                     {"m": args.m, "n": args.n, "gamma": args.gamma},
                     {"m": m2, "n": n2, "gamma": g2})
    raise AssertionError


def _cmd_aut(args) -> int:
    if args.aut_cmd == "s2":
        a, b = autgroups.bir_s2(args.e)
        return _emit(args, "aut s2", {"e": args.e}, {"aut": str(a), "bir": str(b)})
    if args.aut_cmd == "sm":
        g = autgroups.bir_sm(args.e, args.m)
        return _emit(args, "aut sm", {"e": args.e, "m": args.m}, {"bir": str(g)})
    if args.aut_cmd == "fourfold":
        a, b = autgroups.fourfold_groups(args.n, args.e_prime)
        return _emit(args, "aut fourfold", {"n": args.n, "e_prime": args.e_prime},
                     {"aut": str(a), "bir": str(b)})
    if args.aut_cmd == "table":
        if args.format == "csv":
            rows = [["e_prime", "aut", "bir"]]
            for ep in range(2, args.emax + 1):
                a, b = autgroups.fourfold_groups(args.n, ep)
                rows.append([str(ep), str(a), str(b)])
            return _emit_csv(rows)
        res = []
        for ep in range(2, args.emax + 1):
            a, b = autgroups.fourfold_groups(args.n, ep)
            res.append({"e_prime": ep, "aut": str(a), "bir": str(b)})
        prov = ["table:aut-n3"] if (args.n, args.emax) == (3, 11) else []
        return _emit(args, "aut table", {"n": args.n, "emax": args.emax}, res, prov)
    if args.aut_cmd == "search":
        hits = []
        for e in range(2, args.emax + 1):
            if e % 5 == 0:
                continue
            neg = pell.min_positive_solution(pell.PellEquation.classical(e, -1))
            five = pell.min_positive_solution(pell.PellEquation.classical(4 * e, 5))
            if neg is not None and five is not None:
                hits.append(e)
        return _emit(args, "aut search", {"emax": args.emax}, {"e": hits})
    raise AssertionError


def _cmd_heegner(args) -> int:
    if args.heegner_cmd == "nonempty":
        res = periods.heegner_nonempty_m2(args.n, args.gamma, args.e)
        return _emit(args, "heegner nonempty",
                     {"n": args.n, "gamma": args.gamma, "e": args.e},
                     {"nonempty": res})
    if args.heegner_cmd == "components":
        rep = periods.heegner_components_m2(args.n, args.gamma, args.e)
        res = {
            "count": rep.count,
            "certain": rep.certain,
            "components": [_key_payload(k) for k in rep.keys],
        }
        return _emit(args, "heegner components",
                     {"n": args.n, "gamma": args.gamma, "e": args.e}, res)
    raise AssertionError


def _cmd_period_image(args) -> int:
    if args.m == 2:
        rep = periods.excluded_heegner_m2_report(args.n, args.gamma)
        keys = rep.keys
        res = {
            "excluded_d": sorted({k.d for k in keys}),
            "components": [_key_payload(k) for k in keys],
            "uncertain": [_key_payload(k) for k in rep.uncertain],
        }
    else:
        keys = periods.excluded_heegner(args.m, args.n, args.gamma)
        res = {
            "excluded_d": sorted({k.d for k in keys}),
            "components": [_key_payload(k) for k in keys],
        }
    prov = []
    if (args.n, args.gamma) == (1, 2) and args.m in (4, 8, 12):
        prov = [f"table:period-image-m{args.m}"]
    return _emit(args, "period-image",
                 {"m": args.m, "n": args.n, "gamma": args.gamma}, res, prov)


def _cmd_oracle(args) -> int:
    quads = periods.coordinate_oracle(args.m, args.n, args.gamma, args.bound)
    res = [
        {"kappa2": k2, "div": s, "star": list(star), "ambient_div": amb}
        for (k2, s, star, amb) in sorted(quads)
    ]
    return _emit(args, "oracle",
                 {"m": args.m, "n": args.n, "gamma": args.gamma, "bound": args.bound},
                 res)


def _cmd_nl_family(args) -> int:
    es = periods.nl_family(args.n, args.gamma, args.a_max)
    return _emit(args, "nl-family",
                 {"n": args.n, "gamma": args.gamma, "a_max": args.a_max},
                 {"e": list(es)})


def _cmd_hilb_square(args) -> int:
    points = periods.hilbert_square_points(args.n, args.e)
    chosen = periods.hilbert_square_point(args.n, args.e, args.gamma)
    res = {
        "point": None if chosen is None else {"a": chosen[0], "b": chosen[1],
                                              "gamma": chosen[2]},
        "all": [{"a": a, "b": b, "gamma": g} for a, b, g in points],
    }
    return _emit(args, "hilb-square",
                 {"n": args.n, "e": args.e, "gamma": args.gamma}, res)


def _cmd_reproduce(args) -> int:
    sys.stdout.write(reproduce_table(args.table_id))
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hkpell",
        description="Exact Pell-equation invariants of polarized hyperkahler "
                    "manifolds of K3^[m]-type: cone slopes and walls, "
                    "automorphism groups, Heegner divisors, period-map images.")
    parser.add_argument("--format", choices=("json", "csv", "text"), default="json")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("pell", help="Pell-type equation solvers")
    ps = p.add_subparsers(dest="pell_cmd", required=True)
    q = ps.add_parser("fundamental")
    q.add_argument("--d", type=int, required=True)
    q = ps.add_parser("min")
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--t", type=int, required=True)
    q.add_argument("--e1", type=int, default=1)
    q = ps.add_parser("classes")
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--t", type=int, required=True)
    q = ps.add_parser("stream")
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--t", type=int, required=True)
    q.add_argument("--count", type=int, default=5)
    p.set_defaults(func=_cmd_pell)

    p = sub.add_parser("cone", help="nef/movable cone slopes and walls")
    cs = p.add_subparsers(dest="cone_cmd", required=True)
    q = cs.add_parser("s2")
    q.add_argument("--e", type=int)
    q.add_argument("--e-from", dest="e_from", type=int)
    q.add_argument("--e-to", dest="e_to", type=int)
    for name in ("sm", "walls"):
        q = cs.add_parser(name)
        q.add_argument("--e", type=int, required=True)
        q.add_argument("--m", type=int, required=True)
    q = cs.add_parser("fourfold")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--e-prime", dest="e_prime", type=int, required=True)
    q.add_argument("--prefix", type=int, default=8)
    p.set_defaults(func=_cmd_cone)

    p = sub.add_parser("chi", help="Euler characteristic of a line bundle")
    p.add_argument("--series", choices=(rrinv.HILB_K3, rrinv.KUMMER),
                   default=rrinv.HILB_K3)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(func=_cmd_chi)

    p = sub.add_parser("fujiki", help="Fujiki constant of a series")
    p.add_argument("--series", choices=(rrinv.HILB_K3, rrinv.KUMMER),
                   default=rrinv.HILB_K3)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=_cmd_fujiki)

    p = sub.add_parser("lattice", help="discriminant groups and orbit data")
    ls = p.add_subparsers(dest="lattice_cmd", required=True)
    for name in ("disc", "dual"):
        q = ls.add_parser(name)
        q.add_argument("--m", type=int, required=True)
        q.add_argument("--n", type=int, required=True)
        q.add_argument("--gamma", type=int, required=True)
    q = ls.add_parser("orbit")
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--gamma", type=int, required=True)
    q.add_argument("--square", type=int, required=True)
    q.add_argument("--div", type=int, required=True)
    p.set_defaults(func=_cmd_lattice)

    p = sub.add_parser("aut", help="automorphism-group decision procedures")
    asb = p.add_subparsers(dest="aut_cmd", required=True)
    q = asb.add_parser("s2")
    q.add_argument("--e", type=int, required=True)
    q = asb.add_parser("sm")
    q.add_argument("--e", type=int, required=True)
    q.add_argument("--m", type=int, required=True)
    q = asb.add_parser("fourfold")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--e-prime", dest="e_prime", type=int, required=True)
    q = asb.add_parser("table")
    q.add_argument("--n", type=int, default=3)
    q.add_argument("--emax", type=int, default=11)
    q = asb.add_parser("search")
    q.add_argument("--emax", type=int, required=True)
    p.set_defaults(func=_cmd_aut)

    p = sub.add_parser("heegner", help="Heegner-divisor nonemptiness and components")
    hs = p.add_subparsers(dest="heegner_cmd", required=True)
    for name in ("nonempty", "components"):
        q = hs.add_parser(name)
        q.add_argument("--n", type=int, required=True)
        q.add_argument("--gamma", type=int, required=True)
        q.add_argument("--e", type=int, required=True)
    p.set_defaults(func=_cmd_heegner)

    p = sub.add_parser("period-image", help="excluded Heegner components")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--gamma", type=int, required=True)
    p.set_defaults(func=_cmd_period_image)

    p = sub.add_parser("oracle", help="brute-force coordinate enumeration")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--gamma", type=int, required=True)
    p.add_argument("--bound", type=int, default=12)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("nl-family", help="Hilbert-square Noether-Lefschetz degrees")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--gamma", type=int, required=True)
    p.add_argument("--a-max", dest="a_max", type=int, required=True)
    p.set_defaults(func=_cmd_nl_family)

    p = sub.add_parser("hilb-square", help="Hilbert-square points of moduli loci")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--gamma", type=int, default=2)
    p.set_defaults(func=_cmd_hilb_square)

    p = sub.add_parser("reproduce", help="print a built-in reference table")
    p.add_argument("table_id")
    p.set_defaults(func=_cmd_reproduce)

    return parser


_DOMAIN_ERRORS = (
    pell.PellError,
    lattice.LatticeError,
    cones.ConeError,
    autgroups.AutError,
    periods.PeriodsError,
    UnknownTable,
    ValueError,
)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _DOMAIN_ERRORS as exc:
        payload = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        print(json.dumps(payload, sort_keys=True), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
