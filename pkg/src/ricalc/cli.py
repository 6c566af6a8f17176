"""Command-line entry point ``ricalc``.

Exit codes: 0 on success, 1 when a check fails, 2 on usage or format
errors. Machine-readable results go to stdout as JSON (or CSV for
curves); the seed and other run metadata are logged to stderr as a JSON
line. ``RI_CALC_THREADS`` caps the BLAS thread pool.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .algebra import GRAMMAR_HELP, format_ri
from .errors import RICalcError

OK, FAILED, USAGE = 0, 1, 2
SIM_TOL = 1e-10
SIM_PROTOCOLS = ("TP", "SD", "ED", "coherent-SD", "coherent-TP", "coherent-round-trip",
                 "absolutize")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse with exit code 2 and the expression grammar in the error text."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}\n", file=sys.stderr)
        print("Resource expression grammar:", file=sys.stderr)
        print(GRAMMAR_HELP, file=sys.stderr)
        raise SystemExit(USAGE)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _log(**fields):
    print(json.dumps(fields, sort_keys=True), file=sys.stderr)


def _write(text: str, out: str):
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


# -- ri ----------------------------------------------------------------------

def cmd_list_axioms(args) -> int:
    from .derivation import axiom_db

    axioms = axiom_db()
    if args.json:
        print(_dump([{"name": a.name, "ri": format_ri(a.ri),
                      "side_conditions": list(a.side_conditions), "source": a.source}
                     for a in axioms]))
    else:
        width = max(len(a.name) for a in axioms)
        for a in axioms:
            print(f"{a.name:<{width}}  {format_ri(a.ri)}")
    return OK


def cmd_derive(args) -> int:
    from .derivation import builtin, builtin_derivations, check_proof, format_proof_tree

    if args.name is None:
        for name in builtin_derivations():
            print(name)
        return OK
    try:
        proof = builtin(args.name)
    except KeyError as e:
        raise UsageError(f"{e.args[0]}; run `ricalc ri derive` for the list") from None
    result = check_proof(proof)
    print(proof.to_json() if args.json else format_proof_tree(proof))
    if not args.json:
        print(f"check: {result}")
    return OK if result.ok else FAILED


def cmd_check(args) -> int:
    from .derivation import check_proof, proof_from_json

    try:
        with open(args.file) as fh:
            text = fh.read()
        proof = proof_from_json(text)
    except OSError as e:
        raise UsageError(f"cannot read {args.file}: {e}") from None
    except (RICalcError, KeyError, TypeError, ValueError) as e:
        raise UsageError(f"malformed proof file: {type(e).__name__}: {e}") from None
    result = check_proof(proof)
    print(f"{proof.name or args.file}: {result}")
    return OK if result.ok else FAILED


# -- qi ----------------------------------------------------------------------

def _groups(text: str) -> list[list[str]]:
    """``A+X,B`` -> [["A", "X"], ["B"]]: commas separate groups, ``+`` joins labels."""
    groups = [[l for l in g.split("+") if l] for g in text.split(",")]
    if not groups or any(not g for g in groups):
        raise UsageError(f"bad --groups value {text!r}")
    return groups


def cmd_entropy(args) -> int:
    from .info import report_for_groups
    from .quantum import load_state

    s = load_state(args.state)
    groups = _groups(args.groups) if args.groups else [[l] for l in s.labels]
    print(_dump([r.to_dict() for r in report_for_groups(s, groups)]))
    return OK


def cmd_identities(args) -> int:
    from .info import run_identity_suite

    _log(command="qi identities", seed=args.seed, samples=args.samples)
    report = run_identity_suite(args.samples, args.seed)
    print(_dump(report.to_dict()))
    return OK if report.passed else FAILED


# -- tradeoff ------------------------------------------------------------------

def _noisy_object(args):
    from .quantum import load_channel, load_state, named_channel

    if (args.state is None) == (args.channel is None):
        raise UsageError("give exactly one of --state or --channel")
    if args.state is not None:
        return load_state(args.state)
    if args.channel.endswith(".json"):
        return load_channel(args.channel)
    return named_channel(args.channel)


def cmd_tradeoff(args) -> int:
    from .tradeoff import TradeoffEstimator

    obj = _noisy_object(args)
    est = TradeoffEstimator(args.family, grid=args.grid, restarts=args.restarts,
                            seed=args.seed, max_budget=args.max_budget)
    est.fit(obj)
    _log(command="tradeoff", **est.curve_.metadata())
    _write(est.to_csv(), args.out)
    return OK


# -- sim -----------------------------------------------------------------------

def _haar_inputs(n: int, n_payload: int, rng):
    from .quantum import SystemLayout
    from .quantum.random import random_pure_state

    labels = ("R",) + tuple(f"A{i + 1}" for i in range(n_payload))
    lay = SystemLayout(labels, (2 ** n_payload,) + (2,) * n_payload)
    return [random_pure_state(lay, rng) for _ in range(n)]


def _sim_units(args, rng) -> tuple[dict, bool]:
    from .protocols import coherent_round_trip, run_unit

    name = args.protocol
    runs = []
    if name == "SD":
        runs = [run_unit("SD", message=m, keep_env=args.keep_env) for m in range(4)]
    elif name == "ED":
        runs = [run_unit("ED", keep_env=args.keep_env)]
    else:
        payload = 2 if name == "coherent-TP" else 1
        for s in _haar_inputs(args.trials, payload, rng):
            runs.append(coherent_round_trip(s) if name == "coherent-round-trip"
                        else run_unit(name, s, keep_env=args.keep_env))
    worst = max(r.accuracy for r in runs)
    ledger = all(r.ledger_matches for r in runs)
    summary = {"protocol": name, "runs": len(runs), "worst_accuracy": float(worst),
               "ledger_matches": ledger, "consumed": str(runs[0].consumed),
               "created": str(runs[0].declared_created)}
    ok = worst < SIM_TOL and ledger
    if name == "SD":
        decoded = [r.details["decoded"] for r in runs]
        summary["decoded"] = decoded
        ok = ok and decoded == [0, 1, 2, 3]
    return summary, ok


def _sim_absolutize(args, rng) -> tuple[dict, bool]:
    from .protocols import KEY_A, KEY_B, check_decoupling, run_absolutize
    from .quantum import StateSpec, SystemLayout
    from .quantum.random import random_pure_state
    from .quantum.standard import max_entangled_vector

    d = args.dim
    kinds = [args.kind] if args.kind else ["id", "coherent", "classical"]
    lay = SystemLayout(("R", "A'"), (d, d))
    inputs = [StateSpec.from_vector(lay, max_entangled_vector(d))]
    inputs += [random_pure_state(lay, rng) for _ in range(max(0, args.trials - 1))]
    out, ok = [], True
    for kind in kinds:
        worst = {"input_distance": 0.0, "accuracy": 0.0, "incoherent_residual": 0.0,
                 "coherent_residual": 0.0}
        for s in inputs:
            r = run_absolutize(kind, d, s, keep_env=True)
            worst["input_distance"] = max(worst["input_distance"], r.details["input_distance"])
            worst["accuracy"] = max(worst["accuracy"], r.accuracy)
            for mode in ("incoherent", "coherent"):
                res = check_decoupling(r, (KEY_A, KEY_B), mode)
                worst[f"{mode}_residual"] = max(worst[f"{mode}_residual"], res)
        entry = {"kind": kind, "dim": d, "inputs": len(inputs),
                 **{k: float(v) for k, v in worst.items()}}
        entry["coherently_decoupled"] = worst["coherent_residual"] < SIM_TOL
        out.append(entry)
        ok = ok and worst["input_distance"] < 1e-12 and worst["accuracy"] < SIM_TOL
    return {"protocol": "absolutize", "results": out}, ok


def cmd_sim(args) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    rng = np.random.default_rng(args.seed)
    _log(command="sim", protocol=args.protocol, seed=args.seed, trials=args.trials)
    if args.protocol == "absolutize":
        summary, ok = _sim_absolutize(args, rng)
    else:
        summary, ok = _sim_units(args, rng)
    summary.update(seed=args.seed, passed=ok)
    print(_dump(summary))
    return OK if ok else FAILED


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ricalc", description="Resource calculus for quantum Shannon theory.")
    sub = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    ri = sub.add_parser("ri", help="axioms and derivations").add_subparsers(
        dest="command", required=True, parser_class=_Parser)
    la = ri.add_parser("list-axioms", help="print the axiom database")
    la.add_argument("--json", action="store_true")
    la.set_defaults(func=cmd_list_axioms)
    de = ri.add_parser("derive", help="print and check a builtin derivation")
    de.add_argument("name", nargs="?", help="builtin name (omit to list them)")
    de.add_argument("--json", action="store_true", help="emit the proof as JSON")
    de.set_defaults(func=cmd_derive)
    ch = ri.add_parser("check", help="check a JSON proof file")
    ch.add_argument("file")
    ch.set_defaults(func=cmd_check)

    qi = sub.add_parser("qi", help="entropies and invariant suites").add_subparsers(
        dest="command", required=True, parser_class=_Parser)
    en = qi.add_parser("entropy", help="entropic quantities of a JSON state")
    en.add_argument("state")
    en.add_argument("--groups", help="comma-separated groups, '+' joins labels (e.g. A+X,B)")
    en.set_defaults(func=cmd_entropy)
    idn = qi.add_parser("identities", help="run the seeded invariant suite")
    idn.add_argument("--samples", type=int, default=200)
    idn.add_argument("--seed", type=int, default=0)
    idn.set_defaults(func=cmd_identities)

    tr = sub.add_parser("tradeoff", help="compute a trade-off curve as CSV")
    tr.add_argument("family", type=str.upper,
                    choices=["NSD", "MOTHER", "NTP", "ED", "FATHER", "EAC"])
    tr.add_argument("--state", help="JSON state file (static families)")
    tr.add_argument("--channel", help="name:param (depolarizing, dephasing, erasure, "
                                      "amplitude-damping, identity) or a JSON channel file")
    tr.add_argument("--grid", type=int, default=17)
    tr.add_argument("--restarts", type=int, default=64)
    tr.add_argument("--seed", type=int, default=0)
    tr.add_argument("--max-budget", type=float, default=None)
    tr.add_argument("--out", default="-", help="output path, '-' for stdout")
    tr.set_defaults(func=cmd_tradeoff)

    si = sub.add_parser("sim", help="simulate a unit protocol or absolutization")
    si.add_argument("protocol", choices=SIM_PROTOCOLS)
    si.add_argument("--trials", type=int, default=50)
    si.add_argument("--seed", type=int, default=0)
    si.add_argument("--keep-env", action="store_true")
    si.add_argument("--dim", type=int, default=2, choices=[2, 3], help="absolutize only")
    si.add_argument("--kind", choices=["id", "coherent", "classical"], help="absolutize only")
    si.set_defaults(func=cmd_sim)
    return p


def _thread_limit():
    raw = os.environ.get("RI_CALC_THREADS")
    if raw is None:
        return None
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"RI_CALC_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise UsageError(f"RI_CALC_THREADS must be a positive integer, got {raw!r}")
    return n


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        limit = _thread_limit()
        if limit is None:
            return args.func(args)
        from threadpoolctl import threadpool_limits

        with threadpool_limits(limits=limit):
            return args.func(args)
    except UsageError as e:
        print(f"ricalc: error: {e}", file=sys.stderr)
        return USAGE
    except (RICalcError, OSError, json.JSONDecodeError) as e:
        print(f"ricalc: error: {type(e).__name__}: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
