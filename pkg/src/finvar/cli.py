"""Command-line front end.

Subcommands: ``beta`` (generator ledger), ``eta`` (nilpotence degree of
the null cone), ``verify`` (theorem suites over the catalog), and
``polarize`` (rewrite certificates with replay).  Structured output is
JSON; ``--json-out FILE`` writes it to a file while stdout carries a
short human-readable summary.  ``--stable`` drops runtimes so repeated
runs are byte-identical.

Exit codes: 0 success, 1 failed verdict, 2 modular group order without
--modular-ok, 3 dimension overflow, 4 rewrite degree out of range.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import catalog, verify
from .errors import CapExhausted, DegreeOutOfRange, DimensionOverflow, FinvarError, ModularGroupOrder
from .invariants import minimal_generators_up_to
from .nullcone import eta
from .polyring import parse_polynomial
from .rewrite import rewrite_monomial

EXIT_OK = 0
EXIT_FAILED_VERDICT = 1
EXIT_MODULAR = 2
EXIT_OVERFLOW = 3
EXIT_DEGREE = 4


def _emit(payload: dict, args) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if args.json_out:
        with open(args.json_out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load_instance(name: str) -> catalog.Instance:
    if name.endswith(".json"):
        return catalog.load_instance_file(name)
    return catalog.instance(name)


def cmd_beta(args) -> int:
    inst = _load_instance(args.instance)
    modular = inst.modular
    if modular and not args.modular_ok:
        print(
            f"error: characteristic {inst.field.p} divides |G| = {inst.group.order}; "
            "re-run with --modular-ok and an explicit --cap",
            file=sys.stderr,
        )
        return EXIT_MODULAR
    cap = args.cap if args.cap else max(inst.group.order, 1)
    try:
        ledger = minimal_generators_up_to(inst.rep, cap)
    except DimensionOverflow as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    payload = ledger.to_json()
    payload["instance"] = inst.name
    payload["group_order"] = inst.group.order
    if modular:
        payload["beta_is_lower_bound"] = bool(ledger.per_degree.get(cap))
        payload["note"] = (
            "modular case: invariant generator degrees admit no finite bound "
            "(Richman's unboundedness theorem); beta is reported up to the cap"
        )
    _emit(payload, args)
    print(f"# beta({inst.name}) = {payload['beta']} (cap {cap}, complete={payload['complete']})",
          file=sys.stderr)
    return EXIT_OK


def cmd_eta(args) -> int:
    inst = _load_instance(args.instance)
    gens = None
    if args.gens_file:
        with open(args.gens_file) as fh:
            data = json.load(fh)
        if data.get("builtin") == "char2":
            gens = catalog.char2_generators(inst, int(data.get("cap", args.cap or 4)))
        else:
            gens = [
                parse_polynomial(s, inst.field, inst.rep.layout)
                for s in data["generators"]
            ]
    try:
        report = eta(inst.rep, gens=gens, cap=args.cap)
    except ModularGroupOrder:
        print(
            "error: characteristic divides |G|; supply --gens-file and --cap",
            file=sys.stderr,
        )
        return EXIT_MODULAR
    except DimensionOverflow as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except CapExhausted as exc:
        payload = {
            "instance": inst.name,
            "eta": None,
            "eta_exceeds_cap": True,
            "cap": exc.cap,
        }
        _emit(payload, args)
        print(f"# eta({inst.name}) > cap {exc.cap}", file=sys.stderr)
        return EXIT_OK
    payload = report.to_json()
    payload["instance"] = inst.name
    _emit(payload, args)
    print(f"# eta({inst.name}) = {report.eta} (cap {report.cap_used})", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    options = {}
    if args.grid:
        options["grid"] = verify.parse_weyl_grid(args.grid)
    try:
        rows = verify.run_suite(args.suite, options)
    except DimensionOverflow as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    table = [r.to_json(stable=args.stable) for r in rows]
    payload = {"suite": args.suite, "rows": table}
    if args.json_out:
        _emit(payload, args)
    n_fail = 0
    for r in rows:
        gating = verify.suite_is_gating(r.theorem)
        status = "ok" if r.holds else ("FAIL" if gating else "info")
        if not r.holds and gating:
            n_fail += 1
        line = f"[{status:4}] {r.theorem:22} {r.instance:32} lhs={r.lhs} rhs={r.rhs}"
        print(line)
        if not r.holds and gating:
            print(f"       detail: {r.detail}")
    print(f"# {len(rows)} rows, {n_fail} failures")
    return EXIT_FAILED_VERDICT if n_fail else EXIT_OK


def cmd_polarize(args) -> int:
    from .rewrite import certificate_from_json

    if args.replay:
        with open(args.replay) as fh:
            cert = certificate_from_json(json.load(fh))
    else:
        if args.p is None or args.target is None:
            print("error: --p and --target are required (or use --replay FILE)", file=sys.stderr)
            return EXIT_FAILED_VERDICT
        try:
            target = tuple(tuple(int(x) for x in row) for row in json.loads(args.target))
        except (ValueError, TypeError):
            print("error: --target must be a JSON exponent matrix like [[1,2]]", file=sys.stderr)
            return EXIT_FAILED_VERDICT
        try:
            cert = rewrite_monomial(target, args.p)
        except DegreeOutOfRange as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_DEGREE
    from .polyring import render_polynomial

    payload = cert.to_json()
    replayed = cert.replay()
    payload["replay"] = {
        "reproduced": replayed == cert.target_polynomial(),
        "monomial": render_polynomial(replayed),
        "steps": cert.step_count(),
        "sources": [[list(r) for r in m] for m in cert.source_terms()],
    }
    _emit(payload, args)
    print(
        f"# certificate for {[list(r) for r in cert.target]} over GF({cert.p}): "
        f"{cert.step_count()} steps, replay reproduced = {payload['replay']['reproduced']}",
        file=sys.stderr,
    )
    return EXIT_OK if payload["replay"]["reproduced"] else EXIT_FAILED_VERDICT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="finvar",
        description="Exact invariant-theory bounds for finite matrix groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_beta = sub.add_parser("beta", help="minimal generator ledger and beta")
    p_beta.add_argument("--instance", required=True, help="catalog name or instance JSON path")
    p_beta.add_argument("--cap", type=int, default=None, help="degree cap (default |G|)")
    p_beta.add_argument("--modular-ok", action="store_true")
    p_beta.add_argument("--json-out", default=None)
    p_beta.add_argument("--stable", action="store_true")
    p_beta.set_defaults(fn=cmd_beta)

    p_eta = sub.add_parser("eta", help="nilpotence degree of the null cone")
    p_eta.add_argument("--instance", required=True)
    p_eta.add_argument("--gens-file", default=None, help="JSON with generator polynomials")
    p_eta.add_argument("--cap", type=int, default=None)
    p_eta.add_argument("--json-out", default=None)
    p_eta.add_argument("--stable", action="store_true")
    p_eta.set_defaults(fn=cmd_eta)

    p_verify = sub.add_parser("verify", help="run a theorem suite (or 'all')")
    p_verify.add_argument("suite")
    p_verify.add_argument("--grid", default=None, help="e.g. 'l=1,2 p=3,5 nmax=+2'")
    p_verify.add_argument("--json-out", default=None)
    p_verify.add_argument("--stable", action="store_true")
    p_verify.set_defaults(fn=cmd_verify)

    p_pol = sub.add_parser("polarize", help="rewrite certificate for a monomial")
    p_pol.add_argument("--p", type=int, help="field characteristic")
    p_pol.add_argument("--target", help="exponent matrix, e.g. [[1,2]]")
    p_pol.add_argument("--replay", default=None, help="replay a serialized certificate file")
    p_pol.add_argument("--json-out", default=None)
    p_pol.add_argument("--stable", action="store_true")
    p_pol.set_defaults(fn=cmd_polarize)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except FinvarError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED_VERDICT


if __name__ == "__main__":
    sys.exit(main())
