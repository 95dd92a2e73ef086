"""Command line front end; every subcommand prints one JSON document.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 on invalid input.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from fractions import Fraction
from typing import Sequence

from . import cubic, daha, hochschild, weyl
from .core import Field, format_rational, parse_rational

log = logging.getLogger("dahacubic")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(ValueError):
    pass


def _rationals(text: str, n: int | None = None) -> list[Fraction]:
    try:
        vals = [parse_rational(x) for x in text.split(",")]
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if n is not None and len(vals) != n:
        raise InputError(f"expected {n} comma-separated rationals, got {len(vals)}")
    return vals


def _params(text: str) -> daha.Params:
    vals = _rationals(text, 4)
    if any(v == 0 for v in vals):
        raise InputError("parameters must be nonzero")
    return daha.Params(*vals)


def _fr(x) -> str:
    return format_rational(Fraction(x))


def _source(args, allowed: Sequence[str]) -> str:
    given = [name for name in ("t", "s", "p", "random") if getattr(args, name, None) is not None]
    given = [g for g in given if g in allowed]
    if len(given) != 1:
        raise InputError("give exactly one parameter source: " + ", ".join(f"--{a}" for a in allowed))
    return given[0]


def _trial_params(args, smooth: bool = False) -> list[daha.Params]:
    if args.t is not None:
        return [_params(args.t)]
    if args.random <= 0:
        raise InputError("--random needs a positive count")
    rng = random.Random(args.seed)
    out = []
    while len(out) < args.random:
        p = daha.random_params(rng)
        if smooth and weyl.classify(weyl.theta(p)).types:
            continue
        out.append(p)
    return out


# ---------------------------------------------------------------------------
# subcommands


def _verify_one(p: daha.Params) -> dict:
    sym = daha.ld_generators(p)
    at1 = daha.ld_generators(p, Field.specialized(1))
    recs = []
    recs += daha.check_presentation(sym)
    recs += daha.check_centrality(at1)
    recs += daha.verify_cubic_relation(p, at1)
    recs += daha.verify_bracket_table(p, sym)
    recs += daha.verify_generator_brackets(p, sym)
    recs += daha.verify_symmetrizer(p)
    for name in ("sigma", "tau", "eta"):
        recs += daha.check_automorphism(name, p)
        got = daha.center_images(name, p)
        exp = daha.expected_center_images(name, p)
        for i, (a, b) in enumerate(zip(got, exp), 1):
            recs.append(daha._record(f"{name}(X{i}) matches Vieta transport", a - b,
                                     "center images"))
    recs += daha.check_composites(p)
    recs += [cubic.verify_equivariance(n, p) for n in cubic.WORD_LETTERS]
    notes = []
    if (sym.V1 - daha.TorusOp.s(sym.field)).is_zero():
        notes.append("degenerate parameters: T1 = s")
    return {"t": [_fr(x) for x in p.t], "checks": [r.to_dict() for r in recs],
            "passed": all(r.passed for r in recs), "notes": notes}


def cmd_verify(args) -> tuple[int, dict]:
    _source(args, ("t", "random"))
    trials = [_verify_one(p) for p in _trial_params(args)]
    ok = all(t["passed"] for t in trials)
    failed = sorted({c["relation_name"] for t in trials for c in t["checks"]
                     if c["status"] != "pass"})
    out = {"command": "verify", "seed": args.seed if args.random else None,
           "trials": trials, "all_passed": ok, "failed_relations": failed}
    return (EXIT_OK if ok else EXIT_FAIL), out


def _classify_one(S: cubic.CubicSurface, s: weyl.TorusPointS | None, t=None) -> dict:
    rep = cubic.analyze(S, s)
    out = rep.to_dict()
    if t is not None:
        out["t"] = [_fr(x) for x in t.t]
    if s is not None:
        out["s_point"] = s.to_dict()
    return out


def cmd_classify(args) -> tuple[int, dict]:
    src = _source(args, ("t", "s", "p", "random"))
    results = []
    if src in ("t", "random"):
        for p in _trial_params(args, smooth=src == "random"):
            results.append(_classify_one(cubic.coeffs_from_params(p), weyl.theta(p), p))
    elif src == "s":
        if args.delta is None:
            raise InputError("--s needs --delta")
        try:
            s = weyl.TorusPointS(tuple(_rationals(args.s, 4)), _rationals(args.delta, 1)[0])
        except ValueError as exc:
            raise InputError(str(exc)) from None
        results.append(_classify_one(cubic.CubicSurface.of(weyl.pi(s)), s))
    else:
        results.append(_classify_one(cubic.CubicSurface.of(_rationals(args.p, 4)), None))
    ok = all(r["prediction_agrees"] in (None, True) and r["total_milnor"] <= 4 for r in results)
    out = {"command": "classify", "seed": args.seed if args.random else None, "results": results}
    return (EXIT_OK if ok else EXIT_FAIL), out


def _poly_str(f) -> str:
    return str(cubic._raw(f))


def cmd_surface(args) -> tuple[int, dict]:
    src = _source(args, ("t", "p"))
    S = cubic.coeffs_from_params(_params(args.t)) if src == "t" else \
        cubic.CubicSurface.of(_rationals(args.p, 4))
    X = cubic.X1, cubic.X2, cubic.X3
    table = {}
    for i, j in ((0, 1), (1, 2), (2, 0)):
        br = cubic.poisson_bracket(X[i], X[j], S)
        table[f"{{X{i + 1},X{j + 1}}}"] = {"expr": _poly_str(br), "poly": cubic.poly_to_json(br)}
    signs = {f"g{i}": cubic.poisson_sign(i, S) for i in (1, 2, 3)}
    out = {"command": "surface", "surface": S.to_dict(), "R": _poly_str(S.R),
           "R_poly": cubic.poly_to_json(S.R), "poisson": table,
           "vieta_poisson_sign": signs}
    return EXIT_OK, out


def cmd_act(args) -> tuple[int, dict]:
    if args.word is None or args.poly is None:
        raise InputError("act needs --word and --poly")
    src = _source(args, ("t", "p"))
    try:
        word = [cubic._letter(w) for w in args.word.split(",") if w.strip()]
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None
    try:
        f = cubic.parse_poly(args.poly)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    t = _params(args.t) if src == "t" else None
    S = cubic.coeffs_from_params(t) if t else cubic.CubicSurface.of(_rationals(args.p, 4))
    if t is None and any(not w.startswith("g") for w in word):
        raise InputError("sigma, tau and eta need --t")
    img, T, tt = cubic.k_action(word, f, S, t)
    out = {"command": "act", "word": word, "input": _poly_str(f), "source_surface": S.to_dict(),
           "image": _poly_str(img), "image_poly": cubic.poly_to_json(img),
           "target_surface": T.to_dict(),
           "target_t": [_fr(x) for x in tt.t] if tt is not None else None}
    return EXIT_OK, out


def cmd_hochschild(args) -> tuple[int, dict]:
    try:
        q = parse_rational(args.q) if args.q is not None else Fraction(2)
        w = hochschild.Window(args.N, q)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    try:
        rep = hochschild.z2_combine(w)
    except hochschild.StabilizationError as exc:
        return EXIT_FAIL, {"command": "hochschild", "error": str(exc)}
    checks = hochschild.check_chain_maps(w) + hochschild.image_characterization_check(w)
    out = {"command": "hochschild", **rep.to_dict(),
           "checks": [c.to_dict() for c in checks]}
    ok = rep.stabilized and all(c.passed for c in checks)
    return (EXIT_OK if ok else EXIT_FAIL), out


COMMANDS = {"verify": cmd_verify, "classify": cmd_classify, "surface": cmd_surface,
            "act": cmd_act, "hochschild": cmd_hochschild}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dahacubic", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--t", help="parameters k0,k1,u0,u1 as rationals a/b")
        sp.add_argument("--s", help="torus point s1,s2,s3,s4")
        sp.add_argument("--delta", help="square root delta of s1 s2 s3 s4")
        sp.add_argument("--p", help="surface coefficients p1,p2,p3,p0")
        sp.add_argument("--random", type=int, help="number of random trials")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--q", help="value of q for hochschild")
        sp.add_argument("--N", type=int, default=10, help="window radius for hochschild")
        sp.add_argument("--word", help="comma-separated letters from g1,g2,g3,sigma,tau,eta")
        sp.add_argument("--poly", help="polynomial in X1, X2, X3")
        sp.add_argument("--out", help="write JSON here instead of stdout")
        sp.add_argument("-v", "--verbose", action="count", default=0)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(message)s")
    try:
        code, out = COMMANDS[args.command](args)
    except InputError as exc:
        code, out = EXIT_INPUT, {"command": args.command, "error": str(exc)}
    text = json.dumps(out, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if code == EXIT_INPUT:
        log.error(out.get("error"))
    return code


if __name__ == "__main__":
    sys.exit(main())
