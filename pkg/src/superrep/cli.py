"""Command-line driver: ``superrep <subcommand> [flags] <target>``.

Targets are builtin names (see ``BUILTIN_HELP``) or paths to JSON files in
the algebra, representation or Hopf-model schema.  Exit codes: 0 on
success, 1 on malformed input, 2 when a verification fails.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import List, Optional, Sequence

from . import hopfmodel, reductivity
from .liesuper import (
    LieSuperalgebra, SupergroupTriple, abelian, affine2, algebra_from_json, algebra_to_json,
    build_gl_super, build_sl, build_so, build_sp, build_spo, check_axioms, direct_sum, even_part,
    sl2_adjoint_q0,
)
from .repcat import (
    NotSemisimpleError, Representation, decompose, even_invariants, frobenius_dims, induce,
    invariants, parity_shift, rep_from_json, restrict_to_even, rep_to_json, standard_rep_spo, sym_power_rep,
    trivial_rep,
)

BUILTIN_HELP = (
    "spo:r", "glsuper:p:q", "counterexample:sl2adj", "counterexample:aff", "sp:r", "sl:n",
    "so:n", "torus:n", "A+B (direct sum of builtins)", "hopf:gamma:s (gamma in trivial, z2, z3, s3)",
)
REPS = ("induced-trivial", "trivial", "standard", "pi-standard", "sym:n", "path to a JSON file")


class InputError(ValueError):
    """Malformed input or unknown builtin (exit code 1)."""


class VerificationError(RuntimeError):
    """A verification step failed (exit code 2)."""


# ---------------------------------------------------------------------------
# resolving targets

def _ints(parts: Sequence[str], n: int, name: str) -> List[int]:
    if len(parts) != n:
        raise InputError(f"{name} expects {n} integer parameter(s)")
    try:
        vals = [int(p) for p in parts]
    except ValueError:
        raise InputError(f"{name}: parameters must be integers") from None
    return vals


def _unknown(name: str) -> InputError:
    return InputError(f"unknown builtin {name!r}; builtins: " + ", ".join(BUILTIN_HELP))


def _builtin_algebra(name: str) -> LieSuperalgebra:
    head, *rest = name.split(":")
    try:
        if head == "spo":
            (r,) = _ints(rest, 1, head)
            if r < 1:
                raise InputError("spo:r needs r >= 1")
            return build_spo(r).algebra
        if head == "glsuper":
            p, q = _ints(rest, 2, head)
            if p < 0 or q < 0 or p + q == 0:
                raise InputError("glsuper:p:q needs p, q >= 0 and p + q > 0")
            return build_gl_super(p, q).algebra
        if head == "sp":
            (r,) = _ints(rest, 1, head)
            return build_sp(r)
        if head == "sl":
            (n,) = _ints(rest, 1, head)
            return build_sl(n)
        if head == "so":
            (n,) = _ints(rest, 1, head)
            return build_so(n)
        if head == "torus":
            (n,) = _ints(rest, 1, head)
            if n < 1:
                raise InputError("torus:n needs n >= 1")
            return abelian(n)
    except (ValueError, AssertionError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"{name}: {exc}") from exc
    if name == "counterexample:sl2adj":
        return sl2_adjoint_q0()
    if name in ("counterexample:aff", "aff2"):
        return affine2()
    raise _unknown(name)


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def resolve(target: str):
    """Algebra, Representation or FiniteSuperHopf named by ``target``."""
    if os.path.isfile(target):
        data = _load_json(target)
        if not isinstance(data, dict):
            raise InputError("JSON input must be an object")
        try:
            if "group" in data:
                return hopfmodel.model_from_json(data)
            if "algebra" in data and "action" in data:
                return rep_from_json(data)
            if "basis" in data:
                return algebra_from_json(data)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed {target}: {exc}") from exc
        raise InputError(f"{target}: not an algebra, representation or hopf model")
    if target.startswith("hopf:"):
        parts = target.split(":")
        if len(parts) != 3 or parts[1] not in hopfmodel.BUILTIN_GROUPS:
            raise _unknown(target)
        (s,) = _ints(parts[2:], 1, "hopf")
        try:
            return hopfmodel.builtin_model(parts[1], s)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    pieces = target.split("+")
    if any(not p for p in pieces):
        raise InputError(f"malformed sum {target!r}")
    algs = [_builtin_algebra(p) for p in pieces]
    return algs[0] if len(algs) == 1 else direct_sum(*algs)


def _algebra_of(obj) -> LieSuperalgebra:
    if isinstance(obj, LieSuperalgebra):
        return obj
    if isinstance(obj, Representation):
        return obj.algebra
    raise InputError("this subcommand needs a Lie superalgebra, not a hopf model")


def _spo_rank(g: LieSuperalgebra) -> int:
    r2 = g.odd_dim
    if not g.name.startswith("spo") or r2 % 2:
        raise InputError("--rep standard / pi-standard / sym:n need an spo:r algebra")
    return r2 // 2


def build_rep(obj, spec: str, max_degree: int) -> Representation:
    if isinstance(obj, Representation) and spec == "given":
        return obj
    g = _algebra_of(obj)
    if os.path.isfile(spec):
        data = _load_json(spec)
        try:
            return rep_from_json(data)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed representation {spec}: {exc}") from exc
    if spec in ("induced-trivial", "given"):
        return induce(g)
    if spec == "trivial":
        return trivial_rep(g)
    if spec in ("standard", "pi-standard"):
        V = standard_rep_spo(_spo_rank(g), g)
        return V if spec == "standard" else parity_shift(V)
    if spec.startswith("sym:"):
        (n,) = _ints(spec.split(":")[1:], 1, "sym")
        if n < 0:
            raise InputError("sym:n needs n >= 0")
        if n > max_degree:
            raise InputError(f"sym:{n} exceeds --max-degree {max_degree}")
        return sym_power_rep(standard_rep_spo(_spo_rank(g), g), n)
    raise InputError(f"unknown representation {spec!r}; choose from " + ", ".join(REPS))


# ---------------------------------------------------------------------------
# subcommands; each returns (report dict, table text, ok flag)

def cmd_construct(obj, args):
    if isinstance(obj, hopfmodel.FiniteSuperHopf):
        data = hopfmodel.model_to_json(obj)
        e, o = obj.space.dims
        return data, f"{obj.name}: |Gamma| = {obj.order}, s = {obj.s}, dim {e}|{o}", True
    if isinstance(obj, Representation):
        data = rep_to_json(obj)
        e, o = obj.dims
        return data, f"{obj.name or 'representation'} of {obj.algebra.name}: dim {e}|{o}", True
    g = obj
    data = algebra_to_json(g)
    e, o = g.dims
    lines = [f"{g.name}: dim {e}|{o}"]
    lines += [f"  {lab}  {par}" for lab, par in zip(g.space.labels, g.space.parities)]
    return data, "\n".join(lines), True


def _spot_qvv(triple: SupergroupTriple, seed: int, count: int = 8) -> bool:
    g = triple.algebra
    rng = random.Random(seed)
    for _ in range(count):
        v = {j: rng.randint(-3, 3) for j in g.odd_indices}
        v = {j: x for j, x in v.items() if x}
        if triple.qvv(v):
            return False
    return True


def cmd_check(obj, args):
    if isinstance(obj, hopfmodel.FiniteSuperHopf):
        rep = hopfmodel.check_hopf(obj)
        B = hopfmodel.quotient_by_radical(obj)
        com = hopfmodel.check_comodule(B)
        ok = rep.ok and com.ok
        data = {"hopf_axioms": dict(sorted(rep.checks.items())),
                "comodule_axioms": dict(sorted(com.checks.items())),
                "failures": rep.failures + com.failures, "ok": ok}
        text = f"hopf axioms: {'ok' if rep.ok else 'FAIL'}, comodule axioms: {'ok' if com.ok else 'FAIL'}"
        return data, text, ok
    if isinstance(obj, Representation):
        from .repcat import check_rep
        bad = check_rep(obj)
        ok = not bad
        data = {"representation": "ok" if ok else "fail", "violations": [list(p) for p in bad]}
        return data, f"representation: {'ok' if ok else 'FAIL'}", ok
    g = obj
    viol = check_axioms(g)
    triple = SupergroupTriple(g)
    cubic = triple.cubic_violations()
    spot = _spot_qvv(triple, args.seed)
    ax_ok, q_ok = not viol, not cubic and spot
    data = {
        "algebra": g.name,
        "axioms": "ok" if ax_ok else "fail",
        "violations": [{"kind": v.kind, "indices": list(v.indices), "detail": v.detail} for v in viol[:20]],
        "Qvv": "ok" if q_ok else "fail",
        "Qvv_violations": [list(t) for t in cubic[:20]],
        "Qvv_spot_checks": "ok" if spot else "fail",
        "seed": args.seed,
    }
    text = f"axioms: {'ok' if ax_ok else 'FAIL'}, Qvv: {'ok' if q_ok else 'FAIL'}"
    return data, text, ax_ok and q_ok


def cmd_reduce(obj, args):
    g = _algebra_of(obj)
    direct = reductivity.test_direct(g)
    structural = reductivity.test_structural(g)
    agree = direct.verdict == structural.verdict
    data = {"algebra": g.name, "verdict": direct.verdict, "agree": agree,
            "direct": direct.to_json(), "structural": structural.to_json()}
    lines = [f"algebra: {g.name}",
             f"verdict: {str(direct.verdict).lower()}",
             f"direct: even part reductive = {direct.even_part_reductive}, invariant reaches k = {direct.b_prime_holds}",
             f"structural: factors = {', '.join(str(x) for x in structural.structural_factors)}",
             f"tests agree: {agree}"]
    if "counterexample_factor" in structural.witnesses:
        f = structural.witnesses["counterexample_factor"]
        lines.append(f"witness: factor {f['label']} of dims {f['dims'][0]}|{f['dims'][1]} ({f['reason']})")
    imgs = direct.witnesses["adjunction_images"]
    lines.append(f"witness: invariants of I(k) map to {', '.join(imgs) if imgs else 'nothing'} in k")
    return data, "\n".join(lines), agree


def cmd_induce(obj, args):
    """I(V) = U(g) ⊗_{U(g_+)} V; V is the trivial g_+-module unless --rep
    (or a representation file) supplies a g-module to restrict."""
    g = _algebra_of(obj)
    if args.rep or isinstance(obj, Representation):
        V = restrict_to_even(build_rep(obj, args.rep or "given", args.max_degree))
    else:
        V = None
    I = induce(g, V)
    inv = invariants(I).dim
    even_inv = even_invariants(I).dim
    lhs, rhs = frobenius_dims(g, trivial_rep(even_part(g)), I)
    e, o = I.dims
    vname = V.name if V is not None else "k"
    data = {"algebra": g.name, "module": vname, "dims": [e, o], "invariants": inv,
            "even_invariants": even_inv, "frobenius": [lhs, rhs], "representation": rep_to_json(I)}
    text = "\n".join([f"I({vname}) over {g.name}: dim {e}|{o}",
                      f"invariants: {inv}", f"even-part invariants: {even_inv}",
                      f"frobenius: {lhs} = {rhs}"])
    return data, text, lhs == rhs


def cmd_decompose(obj, args):
    spec = args.rep or ("given" if isinstance(obj, Representation) else "induced-trivial")
    R = build_rep(obj, spec, args.max_degree)
    try:
        rep = decompose(R)
    except NotSemisimpleError as exc:
        raise VerificationError(f"not semisimple: {exc}") from exc
    data = rep.to_json()
    data["module"] = R.name
    return data, rep.to_table(), True


def cmd_hopf(obj, args):
    if not isinstance(obj, hopfmodel.FiniteSuperHopf):
        raise InputError("hopf needs a hopf:gamma:s builtin or a model file")
    rep = hopfmodel.euler_split(obj)
    data = rep.to_json()
    lines = [f"{k}: {json.dumps(v, sort_keys=True)}" for k, v in data.items()]
    return data, "\n".join(lines), rep.ok


COMMANDS = {
    "construct": cmd_construct,
    "check": cmd_check,
    "reduce": cmd_reduce,
    "induce": cmd_induce,
    "decompose": cmd_decompose,
    "hopf": cmd_hopf,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="superrep", description="Exact computations with Lie superalgebras and super Hopf models.",
                epilog="builtins: " + ", ".join(BUILTIN_HELP))
    p.add_argument("subcommand", choices=sorted(COMMANDS))
    p.add_argument("target", help="builtin name or JSON file")
    p.add_argument("--format", choices=("json", "table"), default="table")
    p.add_argument("--threads", type=int, default=1, help="accepted for compatibility; results never depend on it")
    p.add_argument("--max-degree", type=int, default=8, help="cap on symmetric powers")
    p.add_argument("--seed", type=int, default=0, help="seed for Qvv spot checks")
    p.add_argument("--rep", default=None, help="module: " + ", ".join(REPS))
    return p


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = make_parser().parse_args(list(sys.argv[1:] if argv is None else argv))
        if args.threads < 1 or args.max_degree < 0:
            raise InputError("--threads must be >= 1 and --max-degree >= 0")
        obj = resolve(args.target)
        data, text, ok = COMMANDS[args.subcommand](obj, args)
    except InputError as exc:
        print(f"error: {exc}", file=err)
        return 1
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=err)
        return 1
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=err)
        return 2
    if args.format == "json":
        print(json.dumps(data, sort_keys=True, indent=2), file=out)
    else:
        print(text, file=out)
    if not ok:
        print("verification failed", file=err)
        return 2
    return 0


def main() -> None:
    sys.exit(run())

