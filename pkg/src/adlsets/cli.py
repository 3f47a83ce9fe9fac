"""Command-line driver.

Exit codes: 0 for a clean run, 1 when a scan or suite produced a
mathematical finding (a counterexample or a failed property), 2 for
operational failures (bad input, budget, precision).  Reports are JSON
with sorted keys and contain no timestamps, so identical configurations
give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Sequence

from .errors import BudgetExceeded, HypothesisViolated, PrecisionExhausted, RootDatumError
from .mu_sets import DEFAULT_BUDGET, enumerate_Pmu, pmu_image
from .newton import (
    BasicClass,
    converse_scan,
    hn_hypothesis,
    mazur_check,
    newton_point,
    newton_point_of_basic,
    nonempty,
)
from .orders import validate_sigma
from .root_datum import levi, root_datum_from_json

EXIT_OK, EXIT_FINDING, EXIT_ERROR = 0, 1, 2


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    datum: dict | None
    sigma: list | None
    levi: list | None
    mu: list | None
    kappa: list | None
    seed: int
    budget: int
    precision: int
    q: int
    s: int
    height: str | None
    radius: int
    n: int
    samples: int
    suite: str | None
    w: list | None
    matrix: list | None
    blocks: list | None
    pmu_cache_dir: str | None


def _int_list(text: str | None) -> list[int] | None:
    if text is None:
        return None
    text = text.strip().strip("[]()")
    if not text:
        return []
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError as exc:
        raise UsageError(f"expected a comma-separated integer list, got {text!r}") from exc


def _load_datum(arg: str | None) -> dict:
    if arg is None:
        raise UsageError("--datum is required for this command")
    try:
        if arg.lstrip().startswith("{"):
            doc = json.loads(arg)
        else:
            with open(arg) as fh:
                doc = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read datum file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"datum file is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise UsageError("datum file must contain a JSON object")
    return doc


def _setup(cfg: RunConfig):
    datum = root_datum_from_json(cfg.datum)
    sigma = validate_sigma(datum, cfg.sigma)
    subset = datum.indices if cfg.levi is None else cfg.levi
    return datum, sigma, levi(datum, subset)


def _need(value, flag: str):
    if value is None:
        raise UsageError(f"{flag} is required for this command")
    return value


def _frac(v) -> list[str]:
    return [str(Fraction(x)) for x in v]


# -- commands -------------------------------------------------------------------


def cmd_nonempty(cfg: RunConfig) -> tuple[int, dict]:
    datum, sigma, lv = _setup(cfg)
    mu = _need(cfg.mu, "--mu")
    b = BasicClass.from_coweight(lv, sigma, _need(cfg.kappa, "--kappa"))
    verdict = nonempty(lv, sigma, b, mu, budget=cfg.budget, cache_dir=cfg.pmu_cache_dir)
    size = len(pmu_image(lv, sigma, mu, budget=cfg.budget, cache_dir=cfg.pmu_cache_dir))
    return EXIT_OK, {"nonempty": verdict, "kappa": list(b.kappa.rep), "mu": list(mu), "pmuM_size": size}


def cmd_mazur(cfg: RunConfig) -> tuple[int, dict]:
    datum, sigma, lv = _setup(cfg)
    mu = _need(cfg.mu, "--mu")
    b = BasicClass.from_coweight(lv, sigma, _need(cfg.kappa, "--kappa"))
    return EXIT_OK, {"mazur": mazur_check(lv, sigma, b, mu), "kappa": list(b.kappa.rep), "mu": list(mu)}


def cmd_hn_hypothesis(cfg: RunConfig) -> tuple[int, dict]:
    datum, sigma, lv = _setup(cfg)
    mu = _need(cfg.mu, "--mu")
    b = BasicClass.from_coweight(lv, sigma, _need(cfg.kappa, "--kappa"))
    h = hn_hypothesis(lv, sigma, b, mu)
    return EXIT_OK, {**asdict(h), "bijection_predicted": h.bijection_predicted}


def cmd_pmu(cfg: RunConfig) -> tuple[int, dict]:
    datum, sigma, lv = _setup(cfg)
    mu = _need(cfg.mu, "--mu")
    pm = enumerate_Pmu(datum, mu, budget=cfg.budget, cache_dir=cfg.pmu_cache_dir)
    out = {"mu": list(mu), "size": len(pm), "elements": sorted(list(e) for e in pm.elements)}
    if cfg.levi is not None:
        img = pmu_image(lv, sigma, mu, budget=cfg.budget, cache_dir=cfg.pmu_cache_dir)
        out["image_size"] = len(img)
    return EXIT_OK, out


def cmd_converse_scan(cfg: RunConfig) -> tuple[int, dict]:
    datum, sigma, _ = _setup(cfg)
    height = Fraction(cfg.height) if cfg.height is not None else Fraction(4)
    levis = None if cfg.levi is None else [cfg.levi]
    try:
        rep = converse_scan(datum, sigma, levis, height, budget=cfg.budget, cache_dir=cfg.pmu_cache_dir)
    except BudgetExceeded as exc:
        partial = exc.partial.to_json() if exc.partial is not None else None
        return EXIT_ERROR, {"error": "BudgetExceeded", "message": str(exc), "partial": partial,
                            "table": f"{datum.cartan_type}: INCOMPLETE"}
    body = rep.to_json()
    body["table"] = (f"{datum.cartan_type}: {'PASS' if rep.passed else 'FAIL'} "
                     f"({len(rep.counterexamples)} counterexamples, {rep.triples_examined} triples)")
    return (EXIT_OK if rep.passed else EXIT_FINDING), body


def cmd_newton_point(cfg: RunConfig) -> tuple[int, dict]:
    datum, sigma, lv = _setup(cfg)
    if cfg.kappa is not None:
        b = BasicClass.from_coweight(lv, sigma, cfg.kappa)
        return EXIT_OK, {"kappa": list(cfg.kappa), "newton_point": _frac(newton_point_of_basic(b))}
    mu = _need(cfg.mu, "--mu")
    w = cfg.w or []
    return EXIT_OK, {"mu": list(mu), "w": w, "newton_point": _frac(newton_point(datum, sigma, mu, w))}


def cmd_oracle(cfg: RunConfig) -> tuple[int, dict]:
    from .dvr import suites

    name = _need(cfg.suite, "--suite")
    if name == "matrix":
        return EXIT_OK, _matrix_report(cfg)
    if name not in suites.SUITES:
        raise UsageError(f"unknown suite {name!r}; choose from {sorted(suites.SUITES) + ['matrix']}")
    kw = {"seed": cfg.seed, "q": cfg.q}
    if name in ("retractions", "levi", "hn-witness"):
        kw.update(n=cfg.n, samples=cfg.samples, s=cfg.s)
        if name == "hn-witness" and cfg.blocks:
            kw["blocks"] = tuple(cfg.blocks)
        if name == "levi" and cfg.blocks:
            kw["levis"] = (tuple(cfg.blocks),)
    else:
        kw.update(max_s=cfg.s, radius=cfg.radius)
    rep = suites.SUITES[name](**kw)
    return (EXIT_OK if rep.passed else EXIT_FINDING), rep.to_json()


def _matrix_report(cfg: RunConfig) -> dict:
    from .dvr.field import get_field
    from .dvr.matrix import LaurentMatrix
    from .dvr.retraction import all_borels, cartan_invariants, iwasawa_retraction, km_membership

    rows = _need(cfg.matrix, "--matrix")
    g = LaurentMatrix.parse(get_field(cfg.q, cfg.s), rows)
    out = {
        "matrix": g.to_strings(),
        "cartan_invariants": list(cartan_invariants(g)),
        "retractions": {",".join(map(str, b.perm)): list(iwasawa_retraction(g, b)) for b in all_borels(g.n)},
    }
    if cfg.blocks:
        rec = km_membership(g, cfg.blocks)
        out["km_membership"] = {"by_retractions": rec.by_retractions, "by_witness": rec.by_witness}
    return out


COMMANDS = {
    "nonempty": cmd_nonempty,
    "mazur": cmd_mazur,
    "hn-hypothesis": cmd_hn_hypothesis,
    "pmu": cmd_pmu,
    "converse-scan": cmd_converse_scan,
    "newton-point": cmd_newton_point,
    "oracle": cmd_oracle,
}

HELP = {
    "nonempty": "decide non-emptiness of X_mu(b) for a basic b given by kappa",
    "mazur": "test the Mazur inequality kappa_M(b) <= mu in Y_M",
    "hn-hypothesis": "evaluate the Hodge-Newton hypotheses",
    "pmu": "enumerate P_mu (and its image in Y_M when --levi is given)",
    "converse-scan": "search for counterexamples to the converse of Mazur's inequality",
    "newton-point": "Newton point of w.sigma applied to mu, or of a basic class",
    "oracle": "run a GL_n oracle suite (retractions, levi, hn-witness, hodge-newton, adlv, matrix)",
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--datum", help="root datum JSON file (or an inline JSON object)")
    common.add_argument("--sigma", help="permutation of simple indices, e.g. 2,1,0")
    common.add_argument("--levi", help="simple indices of the standard Levi (empty for the torus)")
    common.add_argument("--mu", help="coweight, comma separated")
    common.add_argument("--kappa", help="coweight representing kappa_M(b)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    common.add_argument("--precision", type=int, default=16, help="relative precision N of the oracle")
    common.add_argument("--q", type=int, default=2)
    common.add_argument("--s", type=int, default=1)
    common.add_argument("--out", help="also write the JSON report here")
    common.add_argument("--pmu-cache-dir", help="directory for cached P_mu enumerations")
    common.add_argument("--height", help="height bound <rho, mu> for converse-scan")
    common.add_argument("--w", help="Weyl word for newton-point, comma separated")
    common.add_argument("--suite", help="oracle suite name")
    common.add_argument("--n", type=int, default=2)
    common.add_argument("--samples", type=int, default=200)
    common.add_argument("--radius", type=int, default=2)
    common.add_argument("--matrix", help="JSON array of rows of Laurent-series literals")
    common.add_argument("--blocks", help="GL_n Levi block sizes for the oracle, e.g. 2,1")

    parser = argparse.ArgumentParser(prog="adlsets", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=HELP[name])
    return parser


def _config(ns: argparse.Namespace) -> RunConfig:
    datum = None
    if ns.command != "oracle":
        datum = _load_datum(ns.datum)
    sigma = _int_list(ns.sigma)
    if sigma is None and datum is not None and "sigma" in datum:
        sigma = [int(x) for x in datum["sigma"]]
    matrix = None
    if ns.matrix is not None:
        try:
            matrix = json.loads(ns.matrix)
        except json.JSONDecodeError as exc:
            raise UsageError(f"--matrix is not valid JSON: {exc}") from exc
    if datum is not None:
        datum = {k: v for k, v in datum.items() if k != "sigma"}
    return RunConfig(
        command=ns.command, datum=datum, sigma=sigma, levi=_int_list(ns.levi), mu=_int_list(ns.mu),
        kappa=_int_list(ns.kappa), seed=ns.seed, budget=ns.budget, precision=ns.precision, q=ns.q, s=ns.s,
        height=ns.height, radius=ns.radius, n=ns.n, samples=ns.samples, suite=ns.suite, w=_int_list(ns.w),
        matrix=matrix, blocks=_int_list(ns.blocks), pmu_cache_dir=ns.pmu_cache_dir,
    )


def _emit(doc: dict, out: str | None) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2, default=str)
    print(text)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = _config(ns)
        if cfg.command == "oracle":
            from .dvr.series import set_default_precision

            set_default_precision(cfg.precision)
        code, body = COMMANDS[cfg.command](cfg)
        doc = {"config": asdict(cfg), "result": body, "exit_code": code}
        if "table" in body:
            print(body["table"], file=sys.stderr)
    except (UsageError, RootDatumError, HypothesisViolated, PrecisionExhausted, BudgetExceeded,
            ValueError, KeyError) as exc:
        code = EXIT_ERROR
        doc = {"config": {"command": ns.command}, "exit_code": code,
               "error": type(exc).__name__, "message": str(exc)}
    _emit(doc, ns.out)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
