"""Command-line front end: ``ty <subcommand> ...``.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on bad usage
or unreadable input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import fixtures
from .coeffs import (CoeffError, bundle_for_even, bundle_for_pair, export_bundle,
                     verify_proof_identities)
from .exact_tensor import SparseTensor, TensorError
from .lie_core import (AlgebraError, LieAlgebraData, classical_constructor, sl3_chevalley,
                       structure_report)
from .report import Report
from .symmetric_pair import (PairError, SymmetricPairData, bialgebra_report, decompose,
                             involution_from_images, verify_pair_identities)

SUITES = ("classical", "proof-identities", "lemmas", "coideal", "hopf")


class UsageError(Exception):
    pass


def threads() -> int:
    try:
        return max(1, int(os.environ.get("TY_THREADS", "1")))
    except ValueError:
        raise UsageError("TY_THREADS must be a positive integer")


def run_parallel(suite: str, jobs) -> Report:
    """Run ``(prefix, thunk)`` jobs on the TY_THREADS pool; merge in job order."""
    rep = Report(suite)
    jobs = list(jobs)
    with ThreadPoolExecutor(max_workers=threads()) as pool:
        futures = [(prefix, pool.submit(fn)) for prefix, fn in jobs]
        results = [(prefix, fut.result()) for prefix, fut in futures]
    for prefix, sub in results:
        rep.extend(sub, prefix)
    return rep.finish()


# input resolution

def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, ValueError) as e:
        raise UsageError(f"cannot read {path}: {e}")


def load_algebra(spec: str, form: str | None = None) -> LieAlgebraData:
    """A named algebra (sl3, sl4) or a lie_algebra JSON file."""
    if spec in fixtures.ALGEBRAS:
        if spec == "sl3":
            if form not in (None, "trace"):
                # the Chevalley fixture carries the trace form; killing = 6 * trace
                return fixtures.sl3().rescaled(6)
            return fixtures.sl3()
        return fixtures.sl4(form or "killing")
    if spec in fixtures.PAIRS:
        return fixtures.PAIRS[spec]().parent
    return LieAlgebraData.from_json_obj(_read_json(spec))


def load_pair(spec: str) -> SymmetricPairData:
    """A named pair (sl3-so3, sl3-gl2, sl3-even, sl4-diag) or a symmetric_pair JSON file."""
    if spec in fixtures.PAIRS:
        return fixtures.PAIRS[spec]()
    return SymmetricPairData.from_json_obj(_read_json(spec))


def load_involution(L: LieAlgebraData, path: str) -> SparseTensor:
    """Involution JSON: a tensor, {"theta": tensor, ...} or {"images": {label: {label: c}}}."""
    obj = _read_json(path)
    if "images" in obj:
        return involution_from_images(L, obj["images"])
    if "theta" in obj:
        obj = obj["theta"]
    return SparseTensor.from_json_obj(obj)


def _context(args):
    """(L, P) from --pair / --algebra; at least one is required."""
    P = load_pair(args.pair) if args.pair else None
    if args.algebra:
        L = load_algebra(args.algebra, args.form)
    elif P is not None:
        L = P.parent
    else:
        raise UsageError("verify needs --algebra or --pair")
    return L, P


# subcommands

def cmd_algebra(args) -> tuple[Report, dict | None]:
    if args.named:
        L = load_algebra(args.named, args.form)
    else:
        if not (args.family and args.n):
            raise UsageError("algebra build needs --family and --n, or --named")
        if args.family == "sl" and args.n == 3 and args.chevalley:
            L = sl3_chevalley() if args.form == "trace" else sl3_chevalley().rescaled(6)
        else:
            L = classical_constructor(args.family, args.n, args.form)
    rep = Report("algebra")
    rep.extend(structure_report(L))
    rep.values["dim"] = L.dim
    return rep.finish(), L.to_json_obj()


def cmd_pair(args) -> tuple[Report, dict | None]:
    if args.named:
        P = load_pair(args.named)
    else:
        if not (args.algebra and args.involution):
            raise UsageError("pair build needs --algebra and --involution, or --named")
        L = load_algebra(args.algebra, args.form)
        P = decompose(L, load_involution(L, args.involution), name=Path(args.involution).stem)
    rep = Report("pair")
    rep.extend(verify_pair_identities(P))
    rep.extend(bialgebra_report(P.parent, P if P.is_proper else None))
    rep.values.update({"dim_h": P.nh, "dim_m": P.nm, "c_g": P.casimir})
    return rep.finish(), P.to_json_obj()


def cmd_coeffs(args) -> tuple[Report, dict | None]:
    rep = Report("coeffs")
    if args.even:
        if not args.algebra:
            raise UsageError("coeffs --even needs --algebra")
        L = load_algebra(args.algebra, args.form)
        bundle = bundle_for_even(L)
    else:
        if not args.pair:
            raise UsageError("coeffs needs --pair, or --algebra with --even")
        bundle = bundle_for_pair(load_pair(args.pair))
    for k, t in bundle.tensors.items():
        rep.values[f"entries.{k}"] = len(t)
    rep.values["digest"] = bundle.digest()
    if args.out:
        export_bundle(bundle, args.out)
    return rep.finish(), None


def cmd_verify(args) -> tuple[Report, dict | None]:
    from . import hopf
    from .loop import check_classical_relations

    L, P = _context(args)
    s = args.suite
    if s == "classical":
        ctx = P if P is not None else L
        jobs = [("", lambda: check_classical_relations(ctx, args.max_degree))]
    elif s == "proof-identities":
        jobs = [("", lambda: verify_proof_identities(L, P if P is not None and P.is_proper else None))]
    elif s == "lemmas":
        jobs = [("L1.", lambda: hopf.check_lemma_L1(L)), ("L2.", hopf.check_lemma_L2)]
    elif s == "coideal":
        if P is not None and P.is_proper:
            jobs = [("", lambda: hopf.check_coideal(hopf.ProperCoideal(P)))]
        else:
            jobs = [("", lambda: hopf.check_coideal(hopf.EvenCoideal(L)))]
    else:
        jobs = [("", lambda: hopf.check_coproduct(L)),
                ("", lambda: hopf.check_antipode_counit(L, P))]
    rep = run_parallel(s, jobs)
    return rep, None


def cmd_golden(args) -> tuple[Report, dict | None]:
    from .golden import run_golden
    return run_golden(), None


# argument parsing

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ty", description="Exact checks for Yangians and twisted Yangians.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--report", help="write the JSON report here")
        p.add_argument("--form", choices=("killing", "trace"), default=None)
        p.add_argument("--quiet", action="store_true", help="do not print the summary")

    p = sub.add_parser("algebra", help="build a Lie algebra")
    p.add_argument("action", choices=("build",))
    p.add_argument("--family", choices=("sl", "so", "sp"))
    p.add_argument("--n", type=int)
    p.add_argument("--chevalley", action="store_true", help="sl3 only: the Chevalley basis e1,e2,e3,f1,...")
    p.add_argument("--named", choices=sorted(fixtures.ALGEBRAS))
    p.add_argument("--out")
    common(p)
    p.set_defaults(func=cmd_algebra)

    p = sub.add_parser("pair", help="decompose an algebra under an involution")
    p.add_argument("action", choices=("build",))
    p.add_argument("--algebra")
    p.add_argument("--involution")
    p.add_argument("--named", choices=sorted(fixtures.PAIRS))
    p.add_argument("--out")
    common(p)
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("coeffs", help="compute and export coefficient tensors")
    p.add_argument("--pair")
    p.add_argument("--algebra")
    p.add_argument("--even", action="store_true")
    p.add_argument("--out")
    common(p)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--pair")
    p.add_argument("--algebra")
    p.add_argument("--max-degree", type=int, default=5)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sl3-golden", help="reproduce the sl3 coefficient tables")
    common(p)
    p.set_defaults(func=cmd_golden)
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    if getattr(args, "max_degree", 1) is not None and getattr(args, "max_degree", 1) < 1:
        print("ty: --max-degree must be at least 1", file=sys.stderr)
        return 2
    try:
        rep, export = args.func(args)
    except (UsageError, AlgebraError, PairError, TensorError, CoeffError, KeyError) as e:
        print(f"ty: {e}", file=sys.stderr)
        return 2
    if export is not None and getattr(args, "out", None):
        Path(args.out).write_text(json.dumps(export, indent=1, sort_keys=True))
    if args.report:
        Path(args.report).write_text(rep.to_json() + "\n")
    if not args.quiet:
        print(rep.summary())
    return 0 if rep.passed else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
