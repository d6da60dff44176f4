"""Command-line front end.

Subcommands: order (level-quotient order table of a module), fit (exact
growth-law recovery from a sequence), arith (the (S, T) parameter calculus
with consistency checks), selfcheck (built-in invariant suites).

All input and output is JSON with a versioned "schema" field; reports embed
the sha256 digest of the input bytes.  Table output is rendered from the JSON
report, never computed separately.

Exit codes: 0 ok; 1 selfcheck failure; 2 malformed input; 3 degree cap
exceeded; 4 unstable fit; 5 conditional formula requested without its flag.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from .characters import (AbelianGroupSpec, CharacterTable, MirrorContext,
                         VirtualCharacter)
from .errors import (DegreeCapExceeded, IwatoolError, LeopoldtNotAssumed,
                     MalformedInput, PreconditionSUnionT, TooFewPoints)
from .fit import ParamFit, Unstable, fit_sequence
from .iwasawa import DistinguishedPoly, LambdaElement
from .modules import (ElementaryModuleSpec, closed_form_order,
                      elementary_to_presentation, quotient_order_nk)
from .padic import CoefRing, PrecisionContext, find_irreducible
from .params import (PlaceSpec, ReferentTable, TowerInput,
                     check_lambda_referent_duality, check_mirror_identities,
                     check_mu_bound, compute_params)

EXIT_OK = 0
EXIT_SELFCHECK = 1
EXIT_MALFORMED = 2
EXIT_CAP = 3
EXIT_UNSTABLE = 4
EXIT_NO_FLAG = 5


def _read_input(path: str) -> tuple:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise MalformedInput(f"cannot read input file: {exc}") from exc
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"input is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "schema" not in doc:
        raise MalformedInput("input document must be an object with a 'schema' field")
    return doc, hashlib.sha256(raw).hexdigest()


def _require(doc: dict, key: str, kind=None):
    if key not in doc:
        raise MalformedInput(f"missing required field {key!r}")
    val = doc[key]
    if kind is not None and not isinstance(val, kind):
        raise MalformedInput(f"field {key!r} has the wrong type")
    return val


def _emit(report: dict, args) -> None:
    if args.format == "table":
        text = _render_table(report)
    else:
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render_table(report: dict, indent: str = "") -> str:
    """Plain-text rendering derived from the JSON report."""
    lines = []
    for key in sorted(report):
        val = report[key]
        if isinstance(val, dict):
            lines.append(f"{indent}{key}:")
            lines.append(_render_table(val, indent + "  ").rstrip("\n"))
        elif isinstance(val, list) and val and all(isinstance(v, dict) for v in val):
            cols = sorted({c for v in val for c in v})
            widths = {c: max(len(c), *(len(str(v.get(c, ""))) for v in val))
                      for c in cols}
            lines.append(f"{indent}{key}:")
            lines.append(indent + "  " + "  ".join(c.ljust(widths[c]) for c in cols))
            for v in val:
                lines.append(indent + "  " + "  ".join(
                    str(v.get(c, "")).ljust(widths[c]) for c in cols))
        else:
            lines.append(f"{indent}{key}: {val}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# order
# ---------------------------------------------------------------------------

def _poly_from_json(ring: CoefRing, coeffs) -> LambdaElement:
    if not isinstance(coeffs, list):
        raise MalformedInput("polynomial coefficients must be a list")
    vec = []
    for c in coeffs:
        if isinstance(c, int):
            vec.append(ring.element(c))
        elif isinstance(c, list) and all(isinstance(v, int) for v in c):
            vec.append(ring.element(c))
        else:
            raise MalformedInput("polynomial coefficients must be ints or int lists")
    return LambdaElement.from_coeffs(ring, vec)


def load_module_spec(doc: dict, n_max: int, k: int) -> ElementaryModuleSpec:
    if doc.get("schema") != "iwatool/module-spec/1":
        raise MalformedInput("expected schema 'iwatool/module-spec/1'")
    ell = _require(doc, "ell", int)
    phi_degree = doc.get("phi_degree", 1)
    if not isinstance(phi_degree, int) or phi_degree < 1:
        raise MalformedInput("field 'phi_degree' must be a positive integer")
    precision = doc.get("precision", n_max + k)
    if not isinstance(precision, int) or precision < n_max + k:
        raise MalformedInput(
            f"field 'precision' must be an integer >= n_max + k = {n_max + k}")
    try:
        ctx = PrecisionContext(ell, precision)
    except ValueError as exc:
        raise MalformedInput(f"field 'ell': {exc}") from exc
    h = doc.get("h")
    ring = CoefRing(ctx, tuple(h)) if h else CoefRing(ctx, find_irreducible(ell, phi_degree))
    rho = _require(doc, "rho", int)
    f_list = []
    for coeffs in doc.get("f_list", []):
        poly = _poly_from_json(ring, coeffs)
        try:
            f_list.append(DistinguishedPoly(poly))
        except ValueError as exc:
            raise MalformedInput(f"field 'f_list': {exc}") from exc
    m_list = doc.get("m_list", [])
    if not all(isinstance(m, int) for m in m_list):
        raise MalformedInput("field 'm_list' must hold integers")
    try:
        return ElementaryModuleSpec(ring, rho, tuple(f_list), tuple(m_list))
    except ValueError as exc:
        raise MalformedInput(str(exc)) from exc


def cmd_order(args) -> int:
    doc, digest = _read_input(args.input)
    n_max, k = args.n_max, args.k
    if n_max < 0 or k < 1:
        raise MalformedInput("need n_max >= 0 and k >= 1")
    spec = load_module_spec(doc, n_max, k)
    X = elementary_to_presentation(spec)
    levels = []
    for n in range(n_max + 1):
        rep = quotient_order_nk(X, n, k)
        levels.append({
            "n": n,
            "order_exponent": rep.order_exponent,
            "elementary_divisor_valuations": list(rep.elementary_divisor_valuations),
        })
    cf = closed_form_order(spec, n_max, k)
    report = {
        "schema": "iwatool/order-report/1",
        "input_digest": digest,
        "ell": spec.ring.ell,
        "phi_degree": spec.ring.degree,
        "k": k,
        "levels": levels,
        "closed_form": {
            "free_and_l_power_exponent_at_n_max": cf.exponent,
            "exact": cf.exact,
            "lambda_slope": cf.lambda_slope,
        },
    }
    _emit(report, args)
    return EXIT_OK


# ---------------------------------------------------------------------------
# fit
# ---------------------------------------------------------------------------

def cmd_fit(args) -> int:
    doc, digest = _read_input(args.input)
    if doc.get("schema") != "iwatool/sequence/1":
        raise MalformedInput("expected schema 'iwatool/sequence/1'")
    ell = _require(doc, "ell", int)
    points = _require(doc, "points", list)
    try:
        pts = [(int(n), int(x)) for n, x in points]
    except (TypeError, ValueError) as exc:
        raise MalformedInput("field 'points' must hold [n, x] pairs") from exc
    window = args.window if args.window is not None else doc.get("window", 3)
    res = fit_sequence(ell, pts, window)
    report = {
        "schema": "iwatool/fit-report/1",
        "input_digest": digest,
        "ell": ell,
        "window": window,
    }
    if isinstance(res, Unstable):
        report["unstable"] = True
        report["reason"] = res.reason
        _emit(report, args)
        return EXIT_UNSTABLE
    report.update({
        "rho": res.rho, "mu": res.mu, "lambda": res.lam, "nu": res.nu,
        "stable_from": res.stable_from,
    })
    _emit(report, args)
    return EXIT_OK


# ---------------------------------------------------------------------------
# arith
# ---------------------------------------------------------------------------

def _charmap_to_vc(table: CharacterTable, charmap: dict) -> VirtualCharacter:
    coeffs = {}
    for label, c in charmap.items():
        try:
            key = tuple(int(v) for v in str(label).split(","))
        except ValueError as exc:
            raise MalformedInput(f"bad character label {label!r}") from exc
        if not isinstance(c, int):
            raise MalformedInput(f"coefficient for {label!r} must be an integer")
        coeffs[key] = c
    try:
        return VirtualCharacter(table, coeffs)
    except IwatoolError as exc:
        raise MalformedInput(str(exc)) from exc


def _vc_to_charmap(chi: VirtualCharacter) -> dict:
    return {",".join(str(v) for v in label): c
            for label, c in sorted(chi.coeffs.items())}


def load_tower(doc: dict) -> tuple:
    if doc.get("schema") != "iwatool/tower/1":
        raise MalformedInput("expected schema 'iwatool/tower/1'")
    orders = _require(doc, "cyclic_orders", list)
    ell = _require(doc, "ell", int)
    group = AbelianGroupSpec(tuple(orders))
    try:
        table = CharacterTable(group, ell)
        ctx = MirrorContext(table, tuple(_require(doc, "tau", list)),
                            tuple(_require(doc, "omega", list)))
    except (IwatoolError, ValueError) as exc:
        raise MalformedInput(str(exc)) from exc
    S = set(map(str, doc.get("S", [])))
    T = set(map(str, doc.get("T", [])))
    if S & T:
        raise MalformedInput(f"disjointness violated: S and T share {sorted(S & T)}")
    places = []
    for p in _require(doc, "places", list):
        pid = str(_require(p, "id"))
        membership = "S" if pid in S else "T" if pid in T else "none"
        places.append(PlaceSpec(
            id=pid,
            subgroup_generators=tuple(tuple(g) for g in _require(p, "subgroup_generators", list)),
            wild=bool(_require(p, "wild")),
            local_degree=p.get("local_degree"),
            multiplicity=p.get("multiplicity", 1),
            membership=membership,
        ))
    known = {p.id for p in places}
    for pid in (S | T) - known:
        raise MalformedInput(f"set membership references unknown place {pid!r}")
    tower = TowerInput(table, ctx, _require(doc, "F_degree", int), tuple(places))
    entries = {}
    for subset_key, entry in _require(doc, "referents", dict).items():
        ids = tuple(s for s in subset_key.split(",") if s)
        entries[frozenset(ids)] = (
            _charmap_to_vc(table, _require(entry, "mu_plus", dict)),
            _charmap_to_vc(table, _require(entry, "lambda_plus", dict)),
        )
    try:
        referents = ReferentTable(ctx, entries)
    except IwatoolError as exc:
        raise MalformedInput(str(exc)) from exc
    return tower, referents


def cmd_arith(args) -> int:
    doc, digest = _read_input(args.input)
    tower, referents = load_tower(doc)
    result = compute_params(tower, referents, args.assume_leopoldt)
    report = {
        "schema": "iwatool/arith-report/1",
        "input_digest": digest,
        "ell": tower.table.ell,
        "assume_leopoldt": bool(args.assume_leopoldt),
        "assume_iwasawa_mu_zero": bool(args.assume_iwasawa_mu_zero),
        "rho": _vc_to_charmap(result.rho),
        "mu": _vc_to_charmap(result.mu),
        "lambda": _vc_to_charmap(result.lam),
        "special_case": result.special_case,
        "notes": list(result.notes),
    }
    if args.assume_iwasawa_mu_zero and any(result.mu.coeffs.values()):
        report["notes"].append(
            "warning: mu is nonzero although the vanishing conjecture flag is set")
    try:
        mi = check_mirror_identities(tower, referents, args.assume_leopoldt)
        report["mirror_identities"] = {
            "rho": mi.identity_rho, "mu": mi.identity_mu,
            "lambda": mi.identity_lambda, "details": list(mi.details),
        }
    except PreconditionSUnionT as exc:
        report["mirror_identities"] = {"skipped": str(exc)}
    duality = check_lambda_referent_duality(tower, referents)
    report["lambda_referent_duality"] = {
        ",".join(subset): ok for subset, ok in sorted(duality.items())}
    holds, violator, note = check_mu_bound(tower, referents)
    report["mu_bound"] = {
        "holds": holds,
        "first_violation": ",".join(str(v) for v in violator) if violator else None,
        "note": note,
    }
    _emit(report, args)
    return EXIT_OK


# ---------------------------------------------------------------------------
# selfcheck
# ---------------------------------------------------------------------------

def _selfcheck_suites(inject_fault: str | None):
    """Yield (name, callable) pairs; each callable raises on failure."""
    from . import selfcheck as sc
    yield "coefficient-ring arithmetic", sc.suite_padic
    yield "tower polynomials and witness", sc.suite_iwasawa
    if inject_fault == "snf":
        yield "elementary-divisor consistency", sc.suite_snf_faulty
    else:
        yield "elementary-divisor consistency", sc.suite_snf
    yield "quotient orders vs closed forms", sc.suite_orders
    yield "growth-law fitting round trip", sc.suite_fit
    yield "character ring invariants", sc.suite_characters
    yield "mirror parameter identities", sc.suite_params
    yield "arith suite at ell=2", sc.suite_ell_two


def cmd_selfcheck(args) -> int:
    failed = 0
    for name, fn in _selfcheck_suites(getattr(args, "inject_fault", None)):
        try:
            verdict = fn()
        except Exception as exc:  # noqa: BLE001 - verdict reporting
            print(f"FAIL  {name}: {exc}")
            failed += 1
            continue
        skipped = isinstance(verdict, str) and verdict.startswith("skipped")
        print(f"{'SKIP' if skipped else 'ok':4}  {name}"
              + (f" ({verdict})" if isinstance(verdict, str) else ""))
    if failed:
        print(f"{failed} suite(s) failed")
        return EXIT_SELFCHECK
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="iwatool",
        description="Exact quotient orders, growth-law fitting, character "
                    "calculus and mirror identities for modules over Z_l[[T]].")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("--input", required=True, help="input JSON file")
        p.add_argument("--output", help="write the report here instead of stdout")
        p.add_argument("--format", choices=["json", "table"], default="json")

    p = sub.add_parser("order", help="level-quotient order table of a module")
    common(p)
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--k", type=int, default=1)
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("fit", help="recover (rho, mu, lambda, nu) from a sequence")
    common(p)
    p.add_argument("--window", type=int, default=None,
                   help="confirmation window (default: file value or 3)")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("arith", help="(S, T) parameter calculus and checks")
    common(p)
    p.add_argument("--assume-leopoldt", action="store_true")
    p.add_argument("--assume-iwasawa-mu-zero", action="store_true")
    p.set_defaults(func=cmd_arith)

    p = sub.add_parser("selfcheck", help="run the built-in invariant suites")
    common(p, needs_input=False)
    p.add_argument("--inject-fault", choices=["snf"], help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_selfcheck)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (MalformedInput, TooFewPoints) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except DegreeCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except LeopoldtNotAssumed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_FLAG
    except IwatoolError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
