"""The ``coha-workbench`` command line.

    coha-workbench quiver --quiver Q.json [--triple] [--psi [FORM.json]]
    coha-workbench check {dimred,serre,current,pbw} ...
    coha-workbench count {preproj,kac,integrality,nilpotent,dn} ...

A one-line summary per suite goes to stdout (count rows are streamed as JSON
lines); the full JSON report goes to ``--out``.  Exit codes: 0 every check
passed, 1 a check failed, 2 bad input, 3 budget exceeded.
"""
import argparse
import json
import os
import sys
import time
from typing import List, Optional

from . import __version__
from .characters import character_of_lie, pbw_character_check
from .current import TwistWeights, current_algebra_suite, rescaling_check
from .lie import CutoffTooSmall, LiePresentation, PresentationError, check_lie_axioms, serre_quotient, simple_presentation
from .paths import (InhomogeneousRelation, PathError, Potential, canonical_cubic, jacobi_relations, preprojective_components, solve_positive_weight,
                    truncated_quotient_dims, verify_dimensional_reduction_relations)
from .quiver import (ModTwoBilinearForm, NonBilinear, Quiver, QuiverError, build_double, build_triple, euler_form,
                     named_quiver, psi_witness, solve_psi, symmetrized_euler, tau_form, verify_psi)
from .reports import SCHEMA_VERSION, CheckReport, dumps, jsonable
from .replab import (BudgetExceeded, DegenerateSampling, count_nilpotent, count_preprojective, dn_singularity_check,
                     integrality_shadow, kac_bruteforce, kac_hua, poly_eval, stack_count)
from .replab.kac import poly_str

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(Exception):
    pass


# ---------------------------------------------------------------- parsing helpers

def int_list(text: str) -> List[int]:
    try:
        out = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not out:
        raise argparse.ArgumentTypeError("empty list")
    return out


def nonneg_list(text: str) -> List[int]:
    out = int_list(text)
    if any(x < 0 for x in out):
        raise argparse.ArgumentTypeError(f"negative entry in {text!r}")
    return out


def load_quiver(source: Optional[str]) -> Quiver:
    if not source:
        raise InputError("--quiver is required")
    if os.path.exists(source):
        return Quiver.load(source)
    try:
        return named_quiver(source)
    except (KeyError, ValueError):
        raise InputError(f"no quiver file or built-in quiver named {source!r}")


def load_presentation(args) -> LiePresentation:
    if args.presentation:
        return LiePresentation.load(args.presentation)
    if args.quiver:
        return simple_presentation(load_quiver(args.quiver))
    raise InputError("--presentation or --quiver is required")


def dim_for(Q: Quiver, d: Optional[List[int]], flag="--dim"):
    if d is None:
        raise InputError(f"{flag} is required")
    if len(d) == 1 and Q.n > 1:
        d = d * Q.n
    if len(d) != Q.n:
        raise InputError(f"{flag} needs {Q.n} entries")
    return tuple(d)


def cutoff_for(p: LiePresentation, cutoff):
    n = len(p.generators[0].degree) if p.generators else 0
    if cutoff is None:
        return (2,) * n
    if len(cutoff) == 1 and n > 1:
        return tuple(cutoff) * n
    if len(cutoff) != n:
        raise InputError(f"--cutoff needs {n} entries")
    return tuple(cutoff)


# ---------------------------------------------------------------- subcommands

def cmd_quiver(args, emit) -> List[CheckReport]:
    Q = load_quiver(args.quiver)
    rep = CheckReport("quiver")
    rep.data["quiver"] = Q.to_dict()
    rep.data["euler"] = euler_form(Q).to_list()
    rep.data["symmetrized"] = symmetrized_euler(Q).to_list()
    if args.triple or args.psi is not None:
        T = build_triple(Q)
        rep.data["triple"] = T.to_dict()
        try:
            tau = tau_form(T)
            rep.add("tau is bilinear mod 2", True, {})
        except NonBilinear as exc:
            rep.add("tau is bilinear mod 2", False, {}, witness=[list(x) for x in exc.witness])
            return [rep]
        rep.data["tau"] = tau.to_list()
        if args.psi is not None:
            if args.psi == "solve":
                psi = solve_psi(T)
            else:
                with open(args.psi) as fh:
                    psi = ModTwoBilinearForm(T.vertices, tuple(tuple(int(x) for x in r) for r in json.load(fh)))
            rep.data["psi"] = psi.to_list()
            w = psi_witness(T, psi)
            rep.add("psi + psi^T = tau", w is None, {"source": args.psi},
                    witness=None if w is None else {"pair": [T.vertices[w[0]], T.vertices[w[1]]]})
            eul = ModTwoBilinearForm(T.vertices, euler_form(Q).matrix)
            rep.add("Euler form of the base quiver is a valid psi", verify_psi(T, eul), {},
                    witness={"pair": psi_witness(T, eul)})
    emit(rep.summary())
    return [rep]


def cmd_check_dimred(args, emit):
    Q = load_quiver(args.quiver)
    rep = verify_dimensional_reduction_relations(Q)
    L = args.cutoff[0] if args.cutoff else 6
    T = build_triple(Q)
    jac = truncated_quotient_dims(T, jacobi_relations(canonical_cubic(Q)), L)
    D = build_double(Q)
    pi = truncated_quotient_dims(D, list(preprojective_components(Q).values()), L)
    conv = [sum(pi[j] for j in range(k + 1)) for k in range(L + 1)]
    # the loops carry length 1, so dim_k Jac = sum_j dim_{k-j} Pi
    bad = next(({"k": k, "jacobi": jac[k], "sum": conv[k]} for k in range(L + 1) if jac[k] != conv[k]), None)
    rep.add("dim_k Jac = sum_j dim_(k-j) Pi", bad is None, {"max_length": L}, witness=bad)
    rep.data["jacobi_dims"] = jac
    rep.data["preprojective_dims"] = pi
    if args.potential:
        W = Potential.load(T, args.potential)
        rep.data["potential"] = W.to_list()
        try:
            rep.data["potential_quotient_dims"] = truncated_quotient_dims(T, jacobi_relations(W), L)
        except InhomogeneousRelation as exc:
            rep.data["potential_quotient_dims"] = f"skipped: {exc}"
        wt = solve_positive_weight(W)
        rep.add("potential admits a positive quasi-homogeneous weight", wt is not None, {},
                witness={"potential": W.to_list()})
        rep.data["weight"] = None if wt is None else {k: list(v) for k, v in sorted(wt.items())}
    emit(rep.summary())
    return [rep]


def cmd_check_serre(args, emit):
    p = load_presentation(args)
    cutoff = cutoff_for(p, args.cutoff)
    g = serre_quotient(p, cutoff, strict=not args.lenient)
    rep = check_lie_axioms(g)
    rep.suite = "serre"
    rep.data["dims"] = {",".join(map(str, d)): n for d, n in sorted(g.dims().items())}
    rep.data["lie"] = g.to_dict()
    emit(rep.summary())
    return [rep]


def cmd_check_current(args, emit):
    p = load_presentation(args)
    cutoff = cutoff_for(p, args.cutoff)
    g = serre_quotient(p, cutoff, strict=not args.lenient)
    r = args.r or [1] * len(cutoff)
    if len(r) != len(cutoff):
        raise InputError(f"--r needs {len(cutoff)} entries")
    w = TwistWeights(r)
    rep = current_algebra_suite(g, w, args.upow)
    rep.extend(rescaling_check(g, w, args.upow))
    rep.suite = "current"
    emit(rep.summary())
    return [rep]


def cmd_check_pbw(args, emit):
    p = load_presentation(args)
    cutoff = cutoff_for(p, args.cutoff)
    g = serre_quotient(p, cutoff, strict=not args.lenient)
    band = (0, args.band)
    rep = pbw_character_check(character_of_lie(g, band), cutoff)
    emit(rep.summary())
    return [rep]


def _primes(args):
    if not args.q:
        raise InputError("--q is required")
    return args.q


def cmd_count_preproj(args, emit):
    Q = load_quiver(args.quiver)
    d = dim_for(Q, args.dim)
    rep = CheckReport("preproj")
    rows = []
    for q in _primes(args):
        row = stack_count(Q, d, q, mode=args.mode, jobs=args.jobs, budget=args.budget)
        rows.append(row)
        emit(json.dumps(jsonable(row), sort_keys=True))
        rep.add(f"stack * gl = raw at q={q}", row["stack"] * row["gl"] == row["raw"], {"q": q, "d": list(d)})
    rep.data["rows"] = rows
    return [rep]


def cmd_count_kac(args, emit):
    Q = load_quiver(args.quiver)
    d = dim_for(Q, args.dim)
    poly = kac_hua(Q, d)
    rep = CheckReport("kac")
    rep.data["polynomial"] = poly
    rep.data["polynomial_str"] = poly_str(poly)
    rows = []
    for q in _primes(args):
        b = kac_bruteforce(Q, d, q)
        h = poly_eval(poly, q)
        rows.append({"q": q, "d": list(d), "bruteforce": b, "hua": h})
        emit(json.dumps(rows[-1], sort_keys=True))
        rep.add(f"Kac oracles agree at q={q}", b == h, {"q": q, "d": list(d)}, witness=rows[-1])
    rep.data["rows"] = rows
    return [rep]


def _parse_with(items):
    out = []
    for k, text in enumerate(items or []):
        parts = text.split(":")
        if len(parts) != 3:
            raise InputError(f"--with expects QUIVER:DMAX:PRIMES, got {text!r}")
        Q = load_quiver(parts[0])
        dmax = dim_for(Q, nonneg_list(parts[1]), "--with")
        out.append((os.path.splitext(os.path.basename(parts[0]))[0] or f"case{k}", Q, dmax, int_list(parts[2])))
    return out


def cmd_count_integrality(args, emit):
    Q = load_quiver(args.quiver)
    dmax = dim_for(Q, args.dmax, "--dmax")
    name = os.path.splitext(os.path.basename(args.quiver))[0]
    rep = integrality_shadow(Q, dmax, _primes(args), also=_parse_with(args.with_), name=name,
                             jobs=args.jobs, budget=args.budget)
    for case, rows in rep.data["rows"].items():
        for row in rows:
            emit(json.dumps(jsonable(dict(row, case=case)), sort_keys=True))
    emit("fit: " + "; ".join(f"{f['placement']} c={f['c']} e={f['e']} den={f['den']}" for f in rep.data["fit"]))
    emit(rep.summary())
    return [rep]


def cmd_count_nilpotent(args, emit):
    Q = load_quiver(args.quiver)
    d = dim_for(Q, args.dim)
    rep = CheckReport("nilpotent")
    rows = []
    for q in _primes(args):
        nil = count_nilpotent(Q, d, q, mode=args.mode, budget=args.budget)
        full = count_preprojective(Q, d, q, jobs=args.jobs, budget=args.budget)
        row = {"q": q, "d": list(d), "nilpotent": nil, "raw": full}
        rows.append(row)
        emit(json.dumps(row, sort_keys=True))
        rep.add(f"nilpotent <= all at q={q}", nil <= full, {"q": q, "d": list(d)}, witness=row)
    rep.data["rows"] = rows
    return [rep]


def cmd_count_dn(args, emit):
    if args.seed is None:
        raise InputError("--seed is required for randomized checks")
    rep = dn_singularity_check(args.n, args.samples, args.seed)
    emit(f"third singular value ratio {rep.data['ratio']:.3e}, numerical rank {rep.data['numerical_rank']}")
    emit(rep.summary())
    return [rep]


CHECKS = {"dimred": cmd_check_dimred, "serre": cmd_check_serre, "current": cmd_check_current, "pbw": cmd_check_pbw}
COUNTS = {"preproj": cmd_count_preproj, "kac": cmd_count_kac, "integrality": cmd_count_integrality,
          "nilpotent": cmd_count_nilpotent, "dn": cmd_count_dn}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiver", help="quiver JSON file or built-in name (jordan, kronecker, aN, dN)")
    common.add_argument("--out", help="write the full JSON report here")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--budget", type=int, default=None, help="max enumerated configurations")

    ap = argparse.ArgumentParser(prog="coha-workbench", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    pq = sub.add_parser("quiver", parents=[common], help="forms, triple quiver and psi")
    pq.add_argument("--triple", action="store_true")
    pq.add_argument("--psi", nargs="?", const="solve", default=None,
                    help="solve for psi, or verify the mod-2 matrix in the given JSON file")

    pc = sub.add_parser("check", parents=[common], help="exact check suites")
    pc.add_argument("suite", choices=sorted(CHECKS))
    pc.add_argument("--potential")
    pc.add_argument("--presentation")
    pc.add_argument("--cutoff", type=nonneg_list)
    pc.add_argument("--band", type=int, default=8)
    pc.add_argument("--upow", type=int, default=3)
    pc.add_argument("--r", type=int_list)
    pc.add_argument("--lenient", action="store_true", help="allow cutoffs that truncate Serre relators")

    pn = sub.add_parser("count", parents=[common], help="finite-field counts and numeric checks")
    pn.add_argument("job", choices=sorted(COUNTS))
    pn.add_argument("--dim", type=nonneg_list)
    pn.add_argument("--dmax", type=nonneg_list)
    pn.add_argument("--q", type=int_list)
    pn.add_argument("--mode", choices=["fast", "naive"], default=None)
    pn.add_argument("--with", dest="with_", action="append",
                    help="extra QUIVER:DMAX:PRIMES case fitted jointly (integrality)")
    pn.add_argument("--n", type=int, default=4)
    pn.add_argument("--samples", type=int, default=25)
    pn.add_argument("--seed", type=int)
    return ap


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k != "out"}


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "mode", None) is None and args.command == "count":
        args.mode = "naive" if args.job == "nilpotent" else "fast"

    def emit(line):
        print(line, file=stdout)

    t0 = time.perf_counter()
    status = EXIT_OK
    error = None
    reports: List[CheckReport] = []
    try:
        if args.command == "quiver":
            reports = cmd_quiver(args, emit)
        elif args.command == "check":
            reports = CHECKS[args.suite](args, emit)
        else:
            reports = COUNTS[args.job](args, emit)
        if not all(r.passed for r in reports):
            status = EXIT_FAIL
            for r in reports:
                for rec in r.failures():
                    emit(f"FAIL {r.suite}: {rec.name} witness={json.dumps(jsonable(rec.witness), sort_keys=True)}")
    except BudgetExceeded as exc:
        status, error = EXIT_BUDGET, {"type": "BudgetExceeded", "message": str(exc), "estimated": exc.estimated,
                                      "budget": exc.budget}
    except (InputError, QuiverError, PathError, PresentationError, CutoffTooSmall, DegenerateSampling,
            json.JSONDecodeError, OSError, ValueError, KeyError) as exc:
        status, error = EXIT_INPUT, {"type": type(exc).__name__, "message": str(exc)}
    if error:
        print(f"error: {error['message']}", file=sys.stderr)
    report = {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "config": _config(args),
        "exit_code": status,
        "reports": [r.to_dict() for r in reports],
        "timing": {"seconds": round(time.perf_counter() - t0, 6)},
    }
    if error:
        report["error"] = error
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(dumps(report) + "\n")
    return status


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
