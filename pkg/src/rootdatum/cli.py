"""Command-line interface.

Every verb prints one JSON document (sorted keys, rationals as strings) on
stdout.  Exit status: 0 on success, 1 on a domain error (the JSON then holds
``{"error": {"code", "message"}}``), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from typing import Optional, Sequence

from . import cgroup as cg
from . import datum as dt
from . import satake as st
from . import unitary as un
from .errors import InvalidArgument, RootDatumError
from .fields import CoefficientField
from .jsonio import SCHEMA_VERSION, dumps, fmt_vector, parse_rational


VERBS = ("describe", "dual", "cgroup", "twisting", "gtilde", "classify", "satake",
         "unitary-check", "verify-all")


def _schema(verb: str) -> str:
    return f"{SCHEMA_VERSION}/{verb}"


def load_schema(verb: str) -> dict:
    """The JSON schema shipped for a verb's output (``"error"`` for failures)."""
    if verb not in VERBS + ("error",):
        raise InvalidArgument(f"no schema for {verb!r}")
    text = resources.files(__package__).joinpath("schemas", f"{verb}.schema.json").read_text()
    return json.loads(text)


def _matrix_json(m) -> list:
    return [list(row) for row in m]


def _load_group(args):
    if args.json:
        with open(args.json, encoding="utf-8") as fh:
            obj = json.load(fh)
        rd, g = dt.datum_from_json(obj.get("datum", obj))
        dt.require_valid(rd, g)
        return rd, g
    if not args.group or len(args.group) != 2:
        raise InvalidArgument("give a catalog group as NAME N, or --json FILE")
    name, n = args.group
    try:
        n = int(n)
    except ValueError:
        raise InvalidArgument(f"rank must be an integer, got {n!r}") from None
    return dt.standard(name, n)


# ---------------------------------------------------------------------------
# payloads


def describe_payload(rd: dt.BasedRootDatum, g: dt.GaloisActionData) -> dict:
    res = dt.validate(rd)
    gres = dt.validate_galois(rd, g)
    return {
        "schema": _schema("describe"),
        "datum": dt.datum_to_json(rd, g),
        "valid": bool(res) and bool(gres),
        "diagnostics": res.message if not res else gres.message,
        "semisimple_rank": rd.semisimple_rank,
        "positive_roots": list(rd.positive),
        "cartan_matrix": _matrix_json(rd.cartan_matrix),
        "half_sum_positive_roots": fmt_vector(dt.half_sum_positive_roots(rd)),
        "weyl_group_order": len(dt.weyl_group(rd)),
    }


def parse_describe_payload(obj: dict):
    return dt.datum_from_json(obj["datum"])


def _cgroup_candidates(rank: int):
    """Catalog data of the given rank, and catalog data of rank-1 times GL(1)."""
    out = []
    gl1 = dt.standard("GL", 1)[0]
    for name in dt.CATALOG_NAMES:
        for n in range(1, rank + 2):
            for target, label in ((rank, None), (rank - 1, "x GL(1)")):
                try:
                    rd, _ = dt.standard(name, n)
                except RootDatumError:
                    continue
                if rd.rank != target or (name == "UnitaryQuasiSplit"):
                    continue
                if label:
                    rd = dt.direct_product(rd, gl1)[0]
                    rd = dt.BasedRootDatum(rd.rank, rd.roots, rd.coroots, rd.simple,
                                           f"{dt.standard(name, n)[0].name} x GL(1)")
                out.append(rd)
    return out


def cgroup_payload(rd, g) -> dict:
    ag = cg.c_group_agreement(rd, g)
    cdat = ag.via_quotient.dual_datum
    matches = []
    for cand in _cgroup_candidates(cdat.rank):
        iso = dt.based_isomorphism(cdat, cand)
        if iso is not None:
            matches.append({"candidate": cand.name, "isomorphism": _matrix_json(iso.matrix)})
    return {
        "schema": _schema("cgroup"),
        "group": rd.name,
        "via_g_tilde": dt.datum_to_json(ag.via_g_tilde.dual_datum, ag.via_g_tilde.galois),
        "via_quotient": dt.datum_to_json(cdat, ag.via_quotient.galois),
        "agree": ag.agree,
        "witness": _matrix_json(ag.witness.matrix) if ag.witness else None,
        "catalog_matches": matches,
        "catalog_matches_note": "matches compare root data only; the Galois action is not compared",
    }


def twisting_payload(rd, g, box: int) -> dict:
    res = cg.enumerate_twisting_elements(rd, box, g)
    return {"schema": _schema("twisting"), "group": rd.name, "box": box,
            "existence": res.existence, "elements": [list(e) for e in res.elements]}


def gtilde_payload(rd, g, box: int) -> dict:
    pkg = cg.build_g_tilde(rd, g)
    sp = cg.splittings(pkg, box)
    return {"schema": _schema("gtilde"), "package": cg.package_to_json(pkg),
            "chi_maps_to_2theta": cg.verify_chi_maps_to_2theta(pkg),
            "gamma_base_independent": cg.gamma_is_base_independent(rd),
            "splittings": {"box": box, "characters": [list(c) for c in sp.characters],
                           "twisting_elements": [list(t) for t in sp.twisting_elements]}}


def _family_from_args(args) -> st.GL2FamilySpec:
    if getattr(args, "spec", None):
        with open(args.spec, encoding="utf-8") as fh:
            return st.GL2FamilySpec.from_json(json.load(fh))
    if args.kind is None or args.s is None:
        raise InvalidArgument("give --kind and --s, or --spec FILE")
    kind = st.MAASS if args.kind in ("maass", st.MAASS) else args.kind
    hecke = []
    for item in args.hecke or ():
        p, _, a = item.partition(":")
        if not a:
            raise InvalidArgument(f"Hecke data must look like p:a_p, got {item!r}")
        hecke.append((int(p), parse_rational(a)))
    return st.GL2FamilySpec(kind, parse_rational(args.s), args.k, tuple(hecke))


def classify_payload(spec: st.GL2FamilySpec) -> dict:
    out = st.classify_gl2_family(spec)
    return {"schema": _schema("classify"), "family": spec.to_json(),
            **{k: out[k] for k in st.FLAG_KEYS}, "note": out["note"], "checks": out["checks"]}


def satake_payload(spec: st.GL2FamilySpec) -> dict:
    rows = []
    for p, _ in spec.hecke:
        tp, sp = st.hecke_eigenvalues_gl2(spec, p)
        poly = st.satake_charpoly_gl2(spec, p)
        over = st.defined_over_equivalence_gln(poly)
        rows.append({
            "p": p,
            "T_p": tp.to_json(), "S_p": sp.to_json(),
            "charpoly": poly.to_json(),
            "charpoly_text": f"X^2 + ({poly.coeffs[0]})X + ({poly.coeffs[1]})",
            "defined_over_Q": over.coeffs_in_field,
            "companion": [fmt_vector(r) for r in over.companion] if over.companion else None,
        })
    coeffs = [c for row in spec.hecke for c in st.satake_charpoly_gl2(spec, row[0]).coeffs]
    return {"schema": _schema("satake"), "family": spec.to_json(), "primes": rows,
            "integral_exponent_test": st.integral_exponent_test(coeffs) if coeffs else None}


def unitary_payload(n: int, p: int, samples: int, seed: int) -> dict:
    import random
    f = CoefficientField.prime(p)
    rng = random.Random(seed)
    hom = trip = True
    for _ in range(samples):
        a = un.random_element(un.CGroupUnitaryElement, f, n, rng)
        b = un.random_element(un.CGroupUnitaryElement, f, n, rng)
        hom &= un.j_map(un.multiply(a, b)) == un.multiply(un.j_map(a), un.j_map(b))
        trip &= un.round_trip(a) == a
    out = {"schema": _schema("unitary-check"), "n": n, "p": p, "samples": samples, "seed": seed,
           "phi": _matrix_json(un.phi_matrix(n)), "phi_identities": un.phi_identities_hold(n),
           "j_homomorphism": hom, "j_prime_round_trip": trip,
           "multiplier_j_c": f.to_json(un.multiplier(un.j_of_c(f, n)))}
    if n > 1:
        kernel = un.kernel_of_j(n, f)
        out["kernel_order"] = len(kernel)
        out["kernel"] = [un.element_to_json(x) for x in kernel]
    return out


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rootdatum", description="Root data, dual groups, L- and C-groups.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def group_cmd(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("group", nargs="*", help="catalog NAME and N, e.g. PGL 2")
        p.add_argument("--json", help="read a root datum from a JSON file instead")
        return p

    group_cmd("describe", "validate and summarise a root datum")
    group_cmd("dual", "dual root datum with the dual Galois action")
    group_cmd("cgroup", "C-group by both constructions, compared")
    p = group_cmd("twisting", "twisting elements in a box")
    p.add_argument("--box", type=int, default=3)
    p = group_cmd("gtilde", "the Gm-extension, theta, xi, e and splittings")
    p.add_argument("--box", type=int, default=2)

    for name in ("classify", "satake"):
        p = sub.add_parser(name, help=f"{name} a GL(2) family pi (x) |det|^s")
        p.add_argument("--kind", choices=("holomorphic", "maass", st.MAASS))
        p.add_argument("--k", type=int)
        p.add_argument("--s", help="rational, e.g. 1/2")
        p.add_argument("--hecke", nargs="*", metavar="P:A", help="Hecke data, e.g. 2:-24")
        p.add_argument("--spec", help="family spec as a JSON file")

    p = sub.add_parser("unitary-check", help="exact checks for the unitary comparison maps")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--p", type=int, default=13)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("verify-all", help="run the acceptance suite")
    p.add_argument("--seed", type=int, default=None)
    return parser


def _dispatch(args) -> dict:
    verb = args.verb
    if verb in ("describe", "dual", "cgroup", "twisting", "gtilde"):
        rd, g = _load_group(args)
        if verb == "describe":
            return describe_payload(rd, g)
        if verb == "dual":
            d = dt.l_group(rd, g)
            return {"schema": _schema("dual"), "group": rd.name,
                    "dual": dt.datum_to_json(d.dual_datum, d.galois)}
        if verb == "cgroup":
            return cgroup_payload(rd, g)
        if verb == "twisting":
            return twisting_payload(rd, g, args.box)
        return gtilde_payload(rd, g, args.box)
    if verb == "classify":
        return classify_payload(_family_from_args(args))
    if verb == "satake":
        spec = _family_from_args(args)
        if not spec.hecke:
            raise InvalidArgument("satake needs Hecke data (--hecke P:A ...)")
        return satake_payload(spec)
    if verb == "unitary-check":
        return unitary_payload(args.n, args.p, args.samples, args.seed)
    raise InvalidArgument(f"unknown verb {verb}")


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if (args.verb in ("describe", "dual", "cgroup", "twisting", "gtilde")
            and not args.json and len(args.group) != 2):
        try:
            parser.error("give a catalog group as NAME N, or --json FILE")
        except SystemExit as exc:
            return int(exc.code)
    if args.verb == "verify-all":
        from .acceptance import run_all
        report, results = run_all(args.seed)
        for r in results:
            err.write(f"criterion {r.number:2d} {'PASS' if r.passed else 'FAIL'} "
                      f"{r.seconds:7.3f}s  {r.name}\n")
        out.write(dumps(report))
        return 0 if report["all_passed"] else 1
    try:
        payload = _dispatch(args)
    except RootDatumError as exc:
        out.write(dumps({"schema": _schema("error"),
                         "error": {"code": exc.code, "message": str(exc)}}))
        return 1
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        out.write(dumps({"schema": _schema("error"),
                         "error": {"code": "bad_input", "message": str(exc)}}))
        return 1
    out.write(dumps(payload))
    return 0


def main() -> None:
    raise SystemExit(run())
