"""Command-line entry point: ``wcw <subcommand> --p P --ell L ...``.

Exit status: 0 when every check the subcommand makes comes out as
predicted, 1 when one does not, 2 on usage errors (including a
non-prime p), 3 when the character lies outside the treated regime.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import cache as _cache
from .classify import UnsupportedRegime, UnknownScenario, classify
from .gf import Field, FieldMismatch, NonPrime, NotSplit, format_element, parse_element, pth_root
from .modtools import TooLarge, hom_space, intertwiner_candidate, is_irreducible
from .verma import (HypothesisViolated, build_height_r, build_verma, lambda_set,
                    strade_elements)
from .witt import Infeasible, OutOfRange, PChar, WittShape, height, scenario_chi

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_REGIME = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, required=True, help="characteristic (prime > 3)")
    common.add_argument("--ell", type=int, default=0, help="truncation degree l of W_l")
    common.add_argument("--chi", help="p-character: JSON file or inline JSON object")
    common.add_argument("--scenario", help="scenario tag, e.g. height0 or heightr(2)")
    common.add_argument("--seed", type=int, default=0, help="seed for scenario values and Norton sampling")
    common.add_argument("--field-degree", type=int, default=None, metavar="M",
                        help="work over F_{p^M} from the start")
    common.add_argument("--cache-dir", default=None, help="action-matrix cache (default $WCW_CACHE_DIR)")
    common.add_argument("--format", choices=("json", "text"), default="text")

    ap = argparse.ArgumentParser(prog="wcw", description="Simple modules of truncated current Witt algebras")
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("classify", parents=[common], help="full classification driver")
    v = sub.add_parser("verma", parents=[common], help="build chi-reduced Verma modules")
    v.add_argument("--lambda", dest="lam", help="weight (default: every lambda in Lambda(chi))")
    sub.add_parser("induce", parents=[common], help="build the height-r induced module")
    h = sub.add_parser("hom", parents=[common], help="hom space and intertwiner for a Verma pair")
    h.add_argument("--lambda", dest="lam", required=True)
    h.add_argument("--mu", required=True)
    c = sub.add_parser("check-lemma", parents=[common], help="check the y_{k,j} conditions")
    c.add_argument("--k", type=int, default=None, help="only this k (default 0..s)")
    s = sub.add_parser("selftest", help="module-axiom and field property checks")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--format", choices=("json", "text"), default="text")
    return ap


def _load_chi(args) -> PChar:
    if (args.chi is None) == (args.scenario is None):
        raise UsageError("give exactly one of --chi and --scenario")
    field = Field(args.p, args.field_degree or 1)
    if args.scenario is not None:
        return scenario_chi(WittShape(field, args.ell), args.scenario, args.seed)
    text = args.chi
    if not text.lstrip().startswith("{"):
        text = Path(text).read_text()
    data = json.loads(text)
    data.setdefault("p", args.p)
    data.setdefault("ell", args.ell)
    if int(data["p"]) != args.p or int(data["ell"]) != args.ell:
        raise UsageError(f"chi is for p={data['p']}, ell={data['ell']}; flags say p={args.p}, ell={args.ell}")
    fd = data.get("field")
    if fd is None or args.field_degree:
        return PChar.from_json(data, field)
    return PChar.from_json(data)


def _cache_dir(args):
    return args.cache_dir if args.cache_dir is not None else _cache.default_dir()


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


def cmd_classify(args) -> int:
    chi = _load_chi(args)
    report = classify(args.p, args.ell, chi, args.seed, field_degree=args.field_degree,
                      cache_dir=_cache_dir(args))
    if args.format == "json":
        print(report.dumps())
    else:
        print(report.to_text())
    return EXIT_OK if report.match else EXIT_MISMATCH


def _verma_chi(chi: PChar, lam_text: str | None) -> tuple[PChar, list]:
    try:
        lams = lambda_set(chi)
    except NotSplit:
        if lam_text is None or chi.shape.field.m == 1:
            chi = chi.with_field(Field(chi.shape.p, chi.shape.field.m * chi.shape.p))
            lams = lambda_set(chi)
        else:
            raise
    if lam_text is not None:
        lam = parse_element(chi.shape.field, lam_text)
        if lam not in lams:
            raise UsageError(f"lambda={lam_text} is not in Lambda(chi)")
        lams = [lam]
    return chi, lams


def cmd_verma(args) -> int:
    chi, lams = _verma_chi(_load_chi(args), args.lam)
    rows = []
    for lam in lams:
        M = build_verma(chi, lam, _cache_dir(args))
        v = is_irreducible(M, args.seed)
        rows.append({"lambda": format_element(lam), "dim": M.dim, **v.to_json()})
    payload = {"p": args.p, "ell": args.ell, "field": chi.shape.field.describe(), "modules": rows}
    text = "\n".join(f"Z({r['lambda']}): dim {r['dim']}, {r['verdict']}" for r in rows)
    _emit(args, payload, text)
    return EXIT_OK if all(r["verdict"] != "Inconclusive" for r in rows) else EXIT_MISMATCH


def cmd_induce(args) -> int:
    chi = _load_chi(args)
    M = build_height_r(chi, _cache_dir(args))
    r = height(chi)
    s = r // 2
    predicted = args.p ** ((args.ell + 1) * (s + 1))
    v = is_irreducible(M, args.seed)
    payload = {"r": r, "s": s, "dim": M.dim, "predicted_dim": predicted, **v.to_json()}
    payload.pop("witness_basis", None)
    _emit(args, payload, f"r={r} s={s}: dim {M.dim} (predicted {predicted}), {v.tag}")
    return EXIT_OK if M.dim == predicted and v.irreducible else EXIT_MISMATCH


def cmd_hom(args) -> int:
    chi, lams = _verma_chi(_load_chi(args), None)
    F = chi.shape.field
    lam, mu = parse_element(F, args.lam), parse_element(F, args.mu)
    for x, name in ((lam, "lambda"), (mu, "mu")):
        if x not in lams:
            raise UsageError(f"{name}={format_element(x)} is not in Lambda(chi)")
    A = build_verma(chi, lam, _cache_dir(args))
    B = build_verma(chi, mu, _cache_dir(args))
    cand = intertwiner_candidate(A, B)
    payload = {"lambda": format_element(lam), "mu": format_element(mu),
               "intertwiner": "valid" if cand else cand.reason}
    try:
        d = hom_space(B, A).dimension
        payload["hom_dimension"] = d
        agree = (d > 0) == bool(cand)
    except TooLarge as exc:
        payload["hom_dimension"] = None
        payload["note"] = str(exc)
        agree = True
    payload["agree"] = agree
    _emit(args, payload, f"Hom(Z({payload['mu']}), Z({payload['lambda']})): dim {payload['hom_dimension']}; "
                         f"intertwiner: {payload['intertwiner']}")
    return EXIT_OK if agree else EXIT_MISMATCH


def cmd_check_lemma(args) -> int:
    chi = _load_chi(args)
    r = height(chi)
    s = r // 2
    ks = [args.k] if args.k is not None else list(range(s + 1))
    rows = []
    for k in ks:
        rec = strade_elements(chi, k, strict=False)
        rows.append({
            "k": k,
            "y": [repr(y) for y in rec.y],
            "diagonal": [format_element(d) for d in rec.diagonal],
            "expected_diagonal": format_element(rec.expected_diagonal),
            "conditions": rec.conditions,
            "diagonal_ok": all(d == rec.expected_diagonal for d in rec.diagonal),
            "failures": rec.failures[:10],
        })
    ok = all(all(r_["conditions"].values()) and r_["diagonal_ok"] for r_ in rows)
    text = "\n".join(
        f"k={r_['k']}: conditions {' '.join(f'({n})' + ('ok' if v else 'FAIL') for n, v in r_['conditions'].items())}, "
        f"diagonal {r_['diagonal']} expected {r_['expected_diagonal']}"
        for r_ in rows)
    _emit(args, {"r": r, "s": s, "lemma": rows, "ok": ok}, text)
    return EXIT_OK if ok else EXIT_MISMATCH


def selftest(seed: int = 0) -> list[tuple[str, bool]]:
    """Field axioms on random samples and module axioms on small modules."""
    rng = np.random.Generator(np.random.Philox(seed))
    out: list[tuple[str, bool]] = []
    for p, m in ((5, 1), (7, 1), (5, 2), (5, 5)):
        F = Field(p, m)
        ok = True
        for _ in range(200):
            a, b, c = (F.random_element(rng) for _ in range(3))
            ok &= (a + b) * c == a * c + b * c
            ok &= (a * b) ** p == a ** p * b ** p
            ok &= (a + b) ** p == a ** p + b ** p
            if a:
                ok &= a * a.inv() == F.one
            ok &= pth_root(a) ** p == a
        out.append((f"field F_{p}^{m} axioms", bool(ok)))
    F = Field(5)
    for ell, tag in ((0, "height-minus-one"), (0, "height0"), (1, "height0"), (1, "height1-b")):
        chi, lams = _verma_chi(scenario_chi(WittShape(F, ell), tag, seed), None)
        ok = True
        for lam in lams:
            M = build_verma(chi, lam, check=False)
            ok &= not M.bracket_failures() and not M.pmap_failures()
        out.append((f"module axioms ell={ell} {tag}", bool(ok)))
    chi = scenario_chi(WittShape(Field(7), 0), "heightr(3)", seed)
    M = build_height_r(chi, check=False)
    out.append(("module axioms p=7 ell=0 heightr(3)", not M.bracket_failures() and not M.pmap_failures()))
    return out


def cmd_selftest(args) -> int:
    results = selftest(args.seed)
    payload = {"checks": [{"name": n, "ok": ok} for n, ok in results]}
    _emit(args, payload, "\n".join(f"{'PASS' if ok else 'FAIL'}  {n}" for n, ok in results))
    return EXIT_OK if all(ok for _, ok in results) else EXIT_MISMATCH


COMMANDS = {
    "classify": cmd_classify,
    "verma": cmd_verma,
    "induce": cmd_induce,
    "hom": cmd_hom,
    "check-lemma": cmd_check_lemma,
    "selftest": cmd_selftest,
}


def run(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UnsupportedRegime, HypothesisViolated) as exc:
        print(f"unsupported regime: {exc}", file=sys.stderr)
        return EXIT_REGIME
    except (UsageError, NonPrime, UnknownScenario, Infeasible, OutOfRange, FieldMismatch,
            NotSplit, OSError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
