"""Command-line front end.

Exit codes: 0 success, 2 malformed input (bad JSON, bad document shape, or
an out-of-range n), 3 semantic validation failure, 4 cross-route
verification mismatch (which would indicate an implementation bug).

stdout is byte-identical across runs and across --jobs settings for the
same input; timing goes to stderr so it cannot perturb that contract.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import cluster, conmatrix, jsonio, reliability
from .graphs import GraphError, Hypothesis2Error, validate_decomposition
from .linalg import fraction_free_determinant, smith_normal_form
from .partitions import MAX_GROUND_SET, ORDER_VARIANTS, coherent_order

EXIT_OK = 0
EXIT_FORMAT = 2
EXIT_SEMANTIC = 3
EXIT_VERIFY = 4

GRAPH_ROUTES = ("bruteforce", "factoring")
FACTOR_ROUTES = ("factorized", "joint", "n2")


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    input_path: str | None
    order_variant: str
    parallelism: int
    enumeration_bound: int
    output: str
    route: str | None = None
    n: int | None = None
    verify: bool = False

    def __post_init__(self) -> None:
        if self.enumeration_bound < 1:
            raise ValueError("enumeration bound must be at least 1")
        if self.parallelism < 1:
            raise ValueError("parallelism must be at least 1")


def _default_bound() -> int:
    env = os.environ.get("RELFACT_BOUND")
    if env is None:
        return reliability.DEFAULT_ENUMERATION_BOUND
    try:
        return int(env)
    except ValueError:
        raise SystemExit(f"RELFACT_BOUND must be an integer, got {env!r}")


def _jobs_count(spec: str) -> int:
    if spec == "auto":
        return os.cpu_count() or 1
    try:
        jobs = int(spec)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--jobs must be an integer or 'auto', got {spec!r}")
    if jobs < 1:
        raise argparse.ArgumentTypeError("--jobs must be at least 1")
    return jobs


def _load_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise jsonio.FormatError(f"cannot read {path}: {exc}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise jsonio.FormatError(f"{path}: malformed JSON: {exc}")


def _emit(cfg: RunConfig, payload: dict, text_lines: list[str]) -> None:
    if cfg.output == "json":
        sys.stdout.write(jsonio.dumps_canonical(payload))
    else:
        for line in text_lines:
            print(line)


def _frac(x: Fraction) -> str:
    return jsonio.fraction_to_str(x)


def cmd_reliability(cfg: RunConfig) -> int:
    g = jsonio.graph_from_obj(_load_json(cfg.input_path))
    if cfg.route == "bruteforce":
        value = reliability.reliability_bruteforce(g, bound=cfg.enumeration_bound)
    else:
        value = reliability.reliability_factoring(g)
    if value == 0 and not reliability.is_k_connected(g):
        print(
            "warning: some terminal reaches no other terminal; reliability is 0",
            file=sys.stderr,
        )
    payload = {"reliability": _frac(value), "route": cfg.route}
    _emit(cfg, payload, [f"reliability = {_frac(value)}", f"route = {cfg.route}"])
    return EXIT_OK


def cmd_factor(cfg: RunConfig) -> int:
    d = jsonio.decomposition_from_obj(_load_json(cfg.input_path))
    route = cfg.route
    payload: dict = {"route": route, "n": d.n}
    lines: list[str] = []
    try:
        union = validate_decomposition(d)
    except Hypothesis2Error as exc:
        # unreachable terminals: reliability is 0, not an input error
        print(f"warning: {exc}", file=sys.stderr)
        payload["reliability"] = _frac(Fraction(0))
        _emit(cfg, payload, [f"reliability = {_frac(Fraction(0))}"])
        return EXIT_OK
    if route == "factorized":
        detail = reliability.factorization_detail(
            d, variant=cfg.order_variant, jobs=cfg.parallelism
        )
        value = detail.value
        side1, side2 = detail.side_reliabilities()
        payload["reliability"] = _frac(value)
        payload["side_reliabilities"] = {
            "g1": {str(p): _frac(v) for p, v in side1.items()},
            "g2": {str(p): _frac(v) for p, v in side2.items()},
        }
        payload["b_matrix"] = [[_frac(x) for x in row] for row in detail.bundle.A_inv]
        lines.append(f"reliability = {_frac(value)}")
        lines.append(f"n = {d.n}  order = {cfg.order_variant}")
        lines.append("b matrix (inverse connectivity matrix):")
        for row in detail.bundle.A_inv:
            lines.append("  " + "  ".join(_frac(x) for x in row))
        for name, side in (("g1", side1), ("g2", side2)):
            parts = ", ".join(
                f"{p} -> {_frac(v)}" for p, v in sorted(side.items(), key=lambda kv: str(kv[0]))
            )
            lines.append(f"side {name}: {parts}")
    elif route == "joint":
        off_cut = sorted(union.terminals - set(d.boundary))
        if off_cut:
            raise GraphError(
                f"the joint route needs every terminal on the boundary; {off_cut} are not"
            )
        d1 = reliability.state_distribution(d.g1, d.boundary, bound=cfg.enumeration_bound)
        d2 = reliability.state_distribution(d.g2, d.boundary, bound=cfg.enumeration_bound)
        value = reliability.joint_reliability(d1, d2)
        payload["reliability"] = _frac(value)
        payload["side_distributions"] = {
            "g1": {str(p): _frac(v) for p, v in d1.probs.items()},
            "g2": {str(p): _frac(v) for p, v in d2.probs.items()},
        }
        lines.append(f"reliability = {_frac(value)}")
    else:  # n2
        value = reliability.n2_closed_form(d)
        payload["reliability"] = _frac(value)
        lines.append(f"reliability = {_frac(value)}")

    if cfg.verify:
        oracle = reliability.reliability_bruteforce(union, bound=cfg.enumeration_bound)
        payload["verified_against"] = _frac(oracle)
        if oracle != value:
            print(
                f"verification mismatch: route {route} gave {_frac(value)}, "
                f"enumeration gave {_frac(oracle)}",
                file=sys.stderr,
            )
            return EXIT_VERIFY
        lines.append(f"verified against enumeration: {_frac(oracle)}")
    _emit(cfg, payload, lines)
    return EXIT_OK


def cmd_conmatrix(cfg: RunConfig) -> int:
    if not 1 <= cfg.n <= MAX_GROUND_SET:
        print(f"n must be in 1..{MAX_GROUND_SET}, got {cfg.n}", file=sys.stderr)
        return EXIT_FORMAT
    order = coherent_order(cfg.n, cfg.order_variant)
    bundle = conmatrix.invert_connectivity_matrix(order)
    det = fraction_free_determinant(bundle.A)
    factors = smith_normal_form(bundle.A)
    payload = jsonio.conmatrix_to_obj(bundle, det, factors)
    lines = [
        f"n = {cfg.n}  states = {len(order.states)}  order = {cfg.order_variant}",
        "order: " + " ".join(str(p) for p in order.states),
        f"det = {det}",
        "invariant factors: " + " ".join(str(x) for x in factors.snf_diagonal),
        "torsion prime powers (p, k, multiplicity): "
        + " ".join(str(t) for t in factors.torsion_prime_powers),
    ]
    _emit(cfg, payload, lines)
    return EXIT_OK


def cmd_polynomial(cfg: RunConfig) -> int:
    g = jsonio.graph_from_obj(_load_json(cfg.input_path))
    poly = reliability.reliability_polynomial(g, bound=cfg.enumeration_bound)
    payload = {
        "edge_count": poly.edge_count,
        "coefficients": list(poly.coefficients),
        "monomial_coefficients": poly.monomial_coefficients(),
    }
    lines = [
        f"edge count = {poly.edge_count}",
        "pathset counts by operative edges: " + " ".join(str(c) for c in poly.coefficients),
        "monomial coefficients: " + " ".join(str(c) for c in poly.monomial_coefficients()),
    ]
    _emit(cfg, payload, lines)
    return EXIT_OK


def cmd_distribution(cfg: RunConfig) -> int:
    d = jsonio.decomposition_from_obj(_load_json(cfg.input_path))
    validate_decomposition(d)
    d1 = reliability.state_distribution(d.g1, d.boundary, bound=cfg.enumeration_bound)
    d2 = reliability.state_distribution(d.g2, d.boundary, bound=cfg.enumeration_bound)
    payload = {
        "n": d.n,
        "g1": {str(p): _frac(v) for p, v in d1.probs.items()},
        "g2": {str(p): _frac(v) for p, v in d2.probs.items()},
    }
    lines = [f"n = {d.n}"]
    for name, dist in (("g1", d1), ("g2", d2)):
        parts = ", ".join(
            f"{p} -> {_frac(v)}" for p, v in sorted(dist.probs.items(), key=lambda kv: str(kv[0]))
        )
        lines.append(f"{name}: {parts}")
    _emit(cfg, payload, lines)
    return EXIT_OK


def cmd_rcm(cfg: RunConfig) -> int:
    g = jsonio.graph_from_obj(_load_json(cfg.input_path))
    z = cluster.partition_function(g, bound=cfg.enumeration_bound)
    w1 = cluster.dq_at_zero(z)
    payload = {
        "Z": {str(k): _frac(w) for k, w in sorted(z.coeffs.items())},
        "dZdq_at_0": _frac(w1),
    }
    lines = ["Z coefficients by cluster count:"]
    for k, w in sorted(z.coeffs.items()):
        lines.append(f"  q^{k}: {_frac(w)}")
    lines.append(f"dZ/dq at q=0: {_frac(w1)}")
    _emit(cfg, payload, lines)
    return EXIT_OK


def _verify_one(d, bound: int, jobs: int) -> tuple[bool, list[str], Fraction]:
    union = validate_decomposition(d)
    failures: list[str] = []
    brute = reliability.reliability_bruteforce(union, bound=bound)
    factored = reliability.reliability_factoring(union)
    if factored != brute:
        failures.append("factoring != enumeration")
    for variant in ORDER_VARIANTS:
        fact = reliability.factorized_reliability(d, variant=variant, jobs=jobs)
        if fact != brute:
            failures.append(f"factorized[{variant}] != enumeration")
    if union.terminals <= set(d.boundary):
        # the boundary-state sum equals the reliability only when every
        # terminal sits on the cut
        d1 = reliability.state_distribution(d.g1, d.boundary, bound=bound)
        d2 = reliability.state_distribution(d.g2, d.boundary, bound=bound)
        if reliability.joint_reliability(d1, d2) != brute:
            failures.append("joint-state sum != enumeration")
    if d.n == 2 and reliability.n2_closed_form(d) != brute:
        failures.append("two-node closed form != enumeration")
    if union.terminals == union.nodes:
        w1 = cluster.dq_at_zero(cluster.partition_function(union, bound=bound))
        if w1 != brute:
            failures.append("cluster-model q-linear weight != enumeration")
        if cluster.factorized_dq(d, jobs=jobs, bound=bound) != w1:
            failures.append("factorized cluster derivative != direct")
    return (not failures, failures, brute)


def cmd_verify(cfg: RunConfig) -> int:
    root = Path(cfg.input_path)
    files = sorted(root.glob("*.json")) if root.is_dir() else [root]
    if not files:
        print(f"no fixtures found under {root}", file=sys.stderr)
        return EXIT_FORMAT
    results = []
    all_ok = True
    for path in files:
        d = jsonio.decomposition_from_obj(_load_json(str(path)))
        ok, failures, value = _verify_one(d, cfg.enumeration_bound, cfg.parallelism)
        all_ok &= ok
        results.append(
            {"file": path.name, "ok": ok, "reliability": _frac(value), "failures": failures}
        )
    payload = {"ok": all_ok, "results": results}
    lines = []
    for r in results:
        status = "OK" if r["ok"] else "FAIL " + "; ".join(r["failures"])
        lines.append(f"{r['file']}: {status} (R = {r['reliability']})")
    lines.append("all routes agree" if all_ok else "MISMATCHES FOUND")
    _emit(cfg, payload, lines)
    return EXIT_OK if all_ok else EXIT_VERIFY


COMMANDS = {
    "reliability": cmd_reliability,
    "factor": cmd_factor,
    "conmatrix": cmd_conmatrix,
    "polynomial": cmd_polynomial,
    "distribution": cmd_distribution,
    "rcm": cmd_rcm,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relfact",
        description="Exact K-terminal network reliability with boundary-cut factorization",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, *, needs_input=True):
        if needs_input:
            p.add_argument("--input", required=True, help="input file (or directory for verify)")
        p.add_argument("--order", choices=ORDER_VARIANTS, default="canonical")
        p.add_argument("--jobs", type=_jobs_count, default=1, metavar="N|auto")
        p.add_argument("--bound", type=int, default=_default_bound(), metavar="E")
        p.add_argument("--output", choices=("json", "text"), default="text")

    p = sub.add_parser("reliability", help="exact reliability of a graph")
    common(p)
    p.add_argument("--route", choices=GRAPH_ROUTES, default="factoring")

    p = sub.add_parser("factor", help="reliability of a decomposition via the cut theorem")
    common(p)
    p.add_argument("--route", choices=FACTOR_ROUTES, default="factorized")
    p.add_argument("--verify", action="store_true", help="cross-check against enumeration")

    p = sub.add_parser("conmatrix", help="connectivity matrix, inverse, and invariants")
    common(p, needs_input=False)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("polynomial", help="equal-probability reliability polynomial")
    common(p)

    p = sub.add_parser("distribution", help="boundary state distributions of both sides")
    common(p)

    p = sub.add_parser("rcm", help="random cluster model partition function")
    common(p)

    p = sub.add_parser("verify", help="run every route on a directory of fixtures")
    common(p)

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        subcommand=args.subcommand,
        input_path=getattr(args, "input", None),
        order_variant=args.order,
        parallelism=args.jobs,
        enumeration_bound=args.bound,
        output=args.output,
        route=getattr(args, "route", None),
        n=getattr(args, "n", None),
        verify=getattr(args, "verify", False),
    )


def main(argv=None) -> int:
    cfg = config_from_args(build_parser().parse_args(argv))
    started = time.perf_counter()
    try:
        code = COMMANDS[cfg.subcommand](cfg)
    except jsonio.FormatError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        code = EXIT_FORMAT
    except (
        GraphError,
        reliability.EnumerationBoundError,
        cluster.DisconnectedGraphError,
        ValueError,
    ) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        code = EXIT_SEMANTIC
    finally:
        elapsed_ms = (time.perf_counter() - started) * 1000.0
        print(f"timing_ms={elapsed_ms:.3f}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
