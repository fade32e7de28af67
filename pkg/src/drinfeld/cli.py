"""Command-line surface: coefficient-family computation, pairing
evaluation, torsion inspection, and verification runs.

Exit codes: 0 success, 1 at least one verification FAIL, 2 malformed
input or config, 3 domain errors (non-monic operator, points outside
torsion, operator divisible by the characteristic), 4 a search cap or
evaluation budget was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .core import DrinfeldModule, GaloisElement, ResidueRing, galois_action_matrix, torsion
from .errors import (
    ConfigurationTooLarge,
    DrinfeldError,
    InseparableTorsion,
    NonMonic,
    NotSquarefree,
    NotTorsionPoint,
    SearchBudget,
    SearchCapExceeded,
)
from .fields import dim_between, make_field
from .pairing import f_chain_sum, f_recursive, weil_evaluate, weil_polynomial
from .polynomials import UniPoly
from .verify import (
    SUITE_NAMES,
    BundleEntry,
    VerificationConfig,
    default_bundle,
    run_suites,
)

_BUDGET_ERRORS = (ConfigurationTooLarge, SearchCapExceeded, SearchBudget)
_DOMAIN_ERRORS = (NonMonic, NotTorsionPoint, InseparableTorsion, NotSquarefree)


def _parse_ranks(text):
    try:
        return tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise SystemExit(_fail(2, f"cannot parse coefficient list {text!r}"))


def _load_json_arg(text):
    if text.startswith("@"):
        with open(text[1:], "r", encoding="utf-8") as fh:
            return json.load(fh)
    return json.loads(text)


def _fail(code, message):
    print(f"error: {message}", file=sys.stderr)
    return code


def _emit(obj):
    print(json.dumps(obj, indent=2, sort_keys=True))


def cmd_fa(args):
    base = make_field(args.q_char, args.q_deg)
    a = UniPoly.from_ranks(base, _parse_ranks(args.a))
    route = args.route
    if route == "both":
        chain = f_chain_sum(a, args.r)
        rec = f_recursive(a, args.r)
        match = chain == rec
        if args.json:
            _emit(
                {
                    "chain": chain.to_json(),
                    "recursive": rec.to_json(),
                    "match": match,
                }
            )
        else:
            print(chain.render())
            print(rec.render())
            print("match" if match else "MISMATCH")
        return 0 if match else 1
    fa = f_recursive(a, args.r) if route == "recursive" else f_chain_sum(a, args.r)
    if args.json:
        _emit(fa.to_json())
    else:
        print(fa.render())
    return 0


def _parse_point(level, spec):
    if isinstance(spec, int):
        return level.element_of_rank(spec % level.order)
    return level.element_from_json(spec)


def cmd_weil(args):
    module = DrinfeldModule.from_json(_load_json_arg(args.module))
    a = UniPoly.from_ranks(module.base, _parse_ranks(args.a))
    if args.eval is None:
        poly = weil_polynomial(module, a)
        if args.json:
            _emit(poly.to_json())
        else:
            print(poly.render())
        return 0
    tm = torsion(module, a, cap=args.cap)
    specs = _load_json_arg(args.eval)
    points = [_parse_point(tm.level, s) for s in specs]
    value = weil_evaluate(module, a, points)
    in_torsion = module.det_module().phi(a)(value).is_zero()
    if args.json:
        _emit(
            {
                "value": value.to_json(),
                "rank": value.rank(),
                "level": tm.level.descriptor(),
                "in_det_module_torsion": in_torsion,
            }
        )
    else:
        print(value.rank())
        print(f"value lies in the determinant-module torsion: {in_torsion}")
    return 0


def _config_from_file(path, seed=None, budget=None):
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    cfgs = []
    if "configs" in obj:
        for entry in obj["configs"]:
            suites = tuple(entry.pop("suites", ()))
            label = entry.pop("label", f"config-{len(cfgs)}")
            cfgs.append((label, VerificationConfig.from_json(entry), suites))
    else:
        suites = tuple(obj.pop("suites", ()))
        cfgs.append((obj.pop("label", "config-0"), VerificationConfig.from_json(obj), suites))
    out = []
    for label, cfg, suites in cfgs:
        if seed is not None or budget is not None:
            patch = cfg.to_json()
            if seed is not None:
                patch["seed"] = seed
            if budget is not None:
                patch["budget"] = budget
            cfg = VerificationConfig.from_json(patch)
        if not suites:
            suites = (
                ("pairing", "compatibility", "leading", "det")
                if cfg.theta is not None
                else ("f", "congruence")
            )
        out.append((label, cfg, suites))
    return out


def cmd_torsion(args):
    entries = _config_from_file(args.config, seed=args.seed)
    code = 0
    for label, cfg, _ in entries:
        module = cfg.module()
        if module is None:
            return _fail(2, f"config {label!r} declares no Drinfeld module")
        for a in cfg.a_polys():
            tm = torsion(module, a, cap=cfg.extension_cap)
            if args.json:
                out = tm.to_json()
                out["module"] = module.to_json()
                out["point_count"] = tm.count()
                _emit(out)
            else:
                print(f"{label}: a = {a.render()}")
                print(f"  extension degree over K: {tm.m}")
                print(f"  point count: {tm.count()}")
                for b in tm.fq_basis:
                    print(f"  basis: {json.dumps(b.to_json())}")
    return code


def cmd_galois_det(args):
    entries = _config_from_file(args.config, seed=args.seed)
    for label, cfg, _ in entries:
        module = cfg.module()
        if module is None:
            return _fail(2, f"config {label!r} declares no Drinfeld module")
        psi = module.det_module()
        for a in cfg.a_polys():
            tm = torsion(module, a, cap=cfg.extension_cap)
            tpsi = torsion(psi, a, cap=cfg.extension_cap)
            basis = tm.a_basis(seed=cfg.seed)
            gen = tpsi.a_basis(seed=cfg.seed)[0]
            ring = ResidueRing(a)
            rows = []
            order = tm.m * tpsi.m // _gcd(tm.m, tpsi.m)
            for k in range(order):
                sigma = GaloisElement(k)
                det = ring.det(galois_action_matrix(tm, sigma, basis))
                scalar = tpsi.coordinates(tpsi.apply_galois(gen, sigma))[0]
                rows.append(
                    {
                        "k": k,
                        "det_rho_phi": det.render(),
                        "rho_psi": scalar.render(),
                        "equal": det == scalar,
                    }
                )
            if args.json:
                _emit({"label": label, "a": [c.rank() for c in a.coeffs], "powers": rows})
            else:
                print(f"{label}: a = {a.render()}")
                for row in rows:
                    mark = "==" if row["equal"] else "!="
                    print(
                        f"  sigma^{row['k']}: det = {row['det_rho_phi']} "
                        f"{mark} psi-scalar = {row['rho_psi']}"
                    )
            if not all(row["equal"] for row in rows):
                return 1
    return 0


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def cmd_verify(args):
    if args.config:
        entries = [
            BundleEntry(label, cfg, suites)
            for label, cfg, suites in _config_from_file(
                args.config, seed=args.seed, budget=args.budget
            )
        ]
    else:
        entries = default_bundle(
            seed=args.seed if args.seed is not None else 0,
            budget=args.budget if args.budget is not None else 10_000_000,
        )
    if args.suite:
        wanted = set(args.suite)
        entries = [
            BundleEntry(e.label, e.config, tuple(s for s in e.suites if s in wanted))
            for e in entries
        ]
        entries = [e for e in entries if e.suites]
    results = []
    for entry in entries:
        report = run_suites(entry.config, entry.suites)
        results.append((entry.label, report))
    ok = all(report.ok() for _, report in results)
    if args.json:
        _emit(
            {
                "ok": ok,
                "reports": [
                    {"label": label, **report.to_json()} for label, report in results
                ],
            }
        )
    else:
        for label, report in results:
            print(f"== {label}")
            print(report.render())
        print("ALL SUITES PASS" if ok else "VERIFICATION FAILURES PRESENT")
    return 0 if ok else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="drinfeld",
        description="Exact Drinfeld-module pairing computations over finite fields",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_fa = sub.add_parser("fa", help="compute the symmetric coefficient polynomial")
    p_fa.add_argument("--q", dest="q_char", type=int, required=True,
                      help="characteristic of the coefficient field")
    p_fa.add_argument("--q-deg", type=int, default=1,
                      help="base extension degree (field has q = p**e elements)")
    p_fa.add_argument("--a", required=True,
                      help="little-endian coefficient ranks, e.g. 1,1,1")
    p_fa.add_argument("--r", type=int, required=True, help="number of variables")
    p_fa.add_argument("--route", choices=("chain", "recursive", "both"),
                      default="chain")
    p_fa.add_argument("--json", action="store_true")
    p_fa.set_defaults(func=cmd_fa)

    p_weil = sub.add_parser("weil", help="pairing polynomial or pairing value")
    p_weil.add_argument("--module", required=True,
                        help="Drinfeld module JSON (inline or @file)")
    p_weil.add_argument("--a", required=True, help="little-endian coefficient ranks")
    p_weil.add_argument("--eval", default=None,
                        help="JSON list of torsion points (ranks or nested arrays)")
    p_weil.add_argument("--cap", type=int, default=64,
                        help="extension-degree search cap for torsion")
    p_weil.add_argument("--json", action="store_true")
    p_weil.set_defaults(func=cmd_weil)

    p_tor = sub.add_parser("torsion", help="inspect a torsion module")
    p_tor.add_argument("--config", required=True)
    p_tor.add_argument("--seed", type=int, default=None)
    p_tor.add_argument("--json", action="store_true")
    p_tor.set_defaults(func=cmd_torsion)

    p_ver = sub.add_parser("verify", help="run verification suites")
    p_ver.add_argument("--config", default=None,
                       help="config file; omitted = bundled default grid")
    p_ver.add_argument("--suite", action="append", choices=SUITE_NAMES,
                       help="restrict to these suites (repeatable)")
    p_ver.add_argument("--seed", type=int, default=None)
    p_ver.add_argument("--budget", type=int, default=None)
    p_ver.add_argument("--json", action="store_true")
    p_ver.set_defaults(func=cmd_verify)

    p_gd = sub.add_parser("galois-det", help="determinant of the Galois action "
                          "against the rank-1 scalar, per Frobenius power")
    p_gd.add_argument("--config", required=True)
    p_gd.add_argument("--seed", type=int, default=None)
    p_gd.add_argument("--json", action="store_true")
    p_gd.set_defaults(func=cmd_galois_det)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _BUDGET_ERRORS as exc:
        return _fail(4, str(exc))
    except _DOMAIN_ERRORS as exc:
        return _fail(3, str(exc))
    except DrinfeldError as exc:
        return _fail(2, str(exc))
    except (json.JSONDecodeError, KeyError, ValueError, OSError) as exc:
        return _fail(2, f"{type(exc).__name__}: {exc}")


if __name__ == "__main__":
    sys.exit(main())
