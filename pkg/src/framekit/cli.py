"""Command-line frontend.

Every verb reads JSON, writes exactly one JSON report to stdout, and keeps
diagnostics on stderr.  Exit codes: 0 all checks passed, 1 an assertion-style
verification failed, 2 malformed or invalid input.  Randomized verbs take
their default seed from the FRAMEKIT_SEED environment variable.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import math
import os
import sys
import time

import numpy as np

from .errors import FramekitError
from .frame_core import optimal_bounds, system_from_json, system_to_json
from .numerics import Tolerance, operator_from_json, operator_to_json
from .operator_theory import douglas_check, hyponormality
from .registry import run_case
from .signal_space import (
    Grid,
    TruncatedSequenceSpace,
    operator_of,
    signal_from_json,
)
from .suites import run_suite
from .theta_frame import (
    check_k_frame,
    check_theta_frame,
    pseudoinverse_bound_chain,
)
from .wavepacket import (
    FiniteSumSpec,
    PartitionCombination,
    WavePacketParams,
    finite_sum_criterion_check,
    generate_system,
    partition_combination,
    partition_domination_check,
)


def to_jsonable(obj):
    """Recursively convert reports, arrays, and numerics into JSON-safe values.

    JSON has no literal for infinities or NaN, so those are encoded as the
    strings "inf", "-inf", and "nan"; complex data splits into re/im parts.
    """
    if obj is None or isinstance(obj, (bool, str, int)):
        return obj
    if isinstance(obj, float):
        if math.isnan(obj):
            return "nan"
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return to_jsonable(float(obj))
    if isinstance(obj, np.ndarray):
        if obj.ndim == 2:
            return operator_to_json(obj)
        arr = obj.astype(np.complex128).reshape(-1)
        return {"re": arr.real.tolist(), "im": arr.imag.tolist()}
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {
            f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)
        }
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _digest(payload) -> str:
    canonical = json.dumps(to_jsonable(payload), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def _complex_list(doc) -> np.ndarray:
    re = np.asarray(doc.get("re", []), dtype=float)
    im = np.asarray(doc.get("im", np.zeros_like(re)), dtype=float)
    if re.shape != im.shape:
        raise ValueError("re/im lists must have equal length")
    return re + 1j * im


def _operator_from_any(doc) -> np.ndarray:
    """Accept a raw matrix document or a named grid operator description."""
    if "kind" in doc:
        grid_doc = doc["grid"]
        grid = Grid(int(grid_doc["q"]), int(grid_doc["P"]))
        return operator_of(grid, doc["kind"], doc["value"])
    return operator_from_json(doc)


def _params_from_json(doc) -> WavePacketParams:
    grid = Grid(int(doc["grid"]["q"]), int(doc["grid"]["P"]))
    psi = signal_from_json(doc["psi"])
    return WavePacketParams(
        grid=grid,
        psi=psi,
        a_list=tuple(doc.get("a_list", [1])),
        b=float(doc["b"]),
        k_range=tuple(doc["k_range"]),
        c_list=tuple(doc.get("c_list", [0.0])),
        dedupe=bool(doc.get("dedupe", True)),
    )


def _margin_basis(arg: int | None, n: int):
    if arg is None:
        return None
    return TruncatedSequenceSpace(n, arg).margin_basis()


def _tolerance(args) -> Tolerance:
    return Tolerance(
        psd_floor=args.tol_psd, rank_rel=args.tol_rank, verdict_rel=args.tol_verdict
    )


# ---------------------------------------------------------------------------
# Verb handlers: each returns (verdicts, inputs_for_digest, exit_code).


def _cmd_gen(args, tol):
    doc = _load_json(args.params)
    params = _params_from_json(doc)
    if params.b == 0.0 and params.dedupe:
        print(
            "warning: translation step 0 collapses the multiplier range to k = 0",
            file=sys.stderr,
        )
    if float(np.linalg.norm(params.psi.values)) <= 1e-14:
        print("warning: degenerate window (zero signal)", file=sys.stderr)
    system = generate_system(params)
    payload = system_to_json(system)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            json.dump(payload, handle, indent=2, sort_keys=True)
        verdicts = {"written": args.out, "vectors": len(system), "dimension": system.n}
    else:
        verdicts = {"vectors": len(system), "dimension": system.n, "system": payload}
    return verdicts, {"params": doc}, 0


def _cmd_check_frame(args, tol):
    doc = _load_json(args.system)
    system = system_from_json(doc)
    bounds = optimal_bounds(system, tol)
    is_frame = bounds.lower > tol.psd_floor * max(1.0, bounds.upper)
    verdicts = {
        "lower": bounds.lower,
        "upper": bounds.upper,
        "tight": bounds.tight,
        "is_frame": bool(is_frame),
    }
    return verdicts, {"system": doc}, 0


def _cmd_check_theta(args, tol):
    sys_doc = _load_json(args.system)
    theta_doc = _load_json(args.theta)
    system = system_from_json(sys_doc)
    theta = _operator_from_any(theta_doc)
    basis = _margin_basis(args.margin, system.n)
    rep = check_theta_frame(system, theta, tol, subspace=basis)
    verdicts = {
        "alpha_opt": to_jsonable(rep.alpha_opt),
        "beta_opt": to_jsonable(rep.beta_opt),
        "lower_ok": rep.lower_ok,
        "upper_ok": rep.upper_ok,
        "lower_degenerate": rep.lower_degenerate,
        "witnesses": {
            "lower": to_jsonable(rep.lower_witness),
            "upper": to_jsonable(rep.upper_witness),
            "kernel": to_jsonable(rep.kernel_obstruction),
        },
    }
    return verdicts, {"system": sys_doc, "theta": theta_doc, "margin": args.margin}, 0


def _cmd_check_k(args, tol):
    sys_doc = _load_json(args.system)
    k_doc = _load_json(args.k)
    system = system_from_json(sys_doc)
    k = _operator_from_any(k_doc)
    basis = _margin_basis(args.margin, system.n)
    rep = check_k_frame(system, k, tol, subspace=basis)
    return to_jsonable(rep), {"system": sys_doc, "k": k_doc, "margin": args.margin}, 0


def _cmd_check_hypo(args, tol):
    doc = _load_json(args.operator)
    op = _operator_from_any(doc)
    basis = _margin_basis(args.margin, op.shape[0])
    rep = hyponormality(op, tol, test_subspace=basis)
    return to_jsonable(rep), {"operator": doc, "margin": args.margin}, 0


def _cmd_douglas(args, tol):
    doc1 = _load_json(args.t1)
    doc2 = _load_json(args.t2)
    rep = douglas_check(_operator_from_any(doc1), _operator_from_any(doc2), tol)
    return to_jsonable(rep), {"t1": doc1, "t2": doc2}, 0


def _cmd_pinv(args, tol):
    sys_doc = _load_json(args.system)
    theta_doc = _load_json(args.theta)
    system = system_from_json(sys_doc)
    theta = _operator_from_any(theta_doc)
    rng = np.random.default_rng(args.seed)
    rep = pseudoinverse_bound_chain(system, theta, tol, rng=rng)
    code = 0 if rep.chain_ok else 1
    if code:
        print("bound chain failed; see report for margins", file=sys.stderr)
    return to_jsonable(rep), {"system": sys_doc, "theta": theta_doc}, code


def _cmd_check_comb(args, tol):
    doc = _load_json(args.spec)
    params = _params_from_json(doc["params"])
    theta = _operator_from_any(doc["theta"])
    kind = doc.get("kind", "partition")
    if kind == "partition":
        base = generate_system(params)
        cells = tuple(tuple(int(i) for i in cell) for cell in doc["cells"])
        if "coefficients" in doc:
            coeffs = _complex_list(doc["coefficients"])
        else:
            coeffs = np.ones(len(base), dtype=np.complex128)
        pc = PartitionCombination(cells=cells, coefficients=coeffs)
        phi = partition_combination(base, pc)
        rep = partition_domination_check(phi, base, theta, tol, combination=pc)
        agrees = rep.agrees
    elif kind == "finite-sum":
        alphas = tuple(_complex_list(doc["alphas"]))
        if "psis" in doc:
            psis = tuple(signal_from_json(d) for d in doc["psis"])
        else:
            psis = tuple(params.psi for _ in alphas)
        spec = FiniteSumSpec(alphas=alphas, psis=psis)
        rep = finite_sum_criterion_check(spec, params, theta, tol)
        agrees = rep.agrees
    else:
        raise ValueError(f"unknown combination kind {kind!r}")
    code = 0 if agrees else 1
    if code:
        print("combination criterion disagreed with the frame verdict", file=sys.stderr)
    return to_jsonable(rep), {"spec": doc}, code


def _cmd_verify_example(args, tol):
    outcome = run_case(args.case)
    code = 0 if outcome.passed else 1
    if code:
        failure = outcome.first_failure()
        if failure is not None:
            print(
                f"assertion failed: {failure.label} (observed {failure.observed}; "
                f"expected {failure.expected})",
                file=sys.stderr,
            )
    return to_jsonable(outcome), {"case": args.case}, code


def _cmd_prop_run(args, tol):
    result = run_suite(args.suite, args.trials, args.seed, tol)
    code = 0 if result.passed else 1
    for failure in result.failures:
        print(
            f"trial {failure.index} failed (seed {failure.seed}): {failure.message}",
            file=sys.stderr,
        )
    verdicts = to_jsonable(result)
    return verdicts, {"suite": args.suite, "trials": args.trials}, code


def _build_parser(default_seed: int) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol-psd", type=float, default=1e-9, help="positivity floor")
    common.add_argument("--tol-rank", type=float, default=1e-10, help="relative rank cutoff")
    common.add_argument(
        "--tol-verdict", type=float, default=1e-8, help="relative verdict slack"
    )
    common.add_argument(
        "--seed",
        type=int,
        default=default_seed,
        help="seed for randomized work (default: FRAMEKIT_SEED or 0)",
    )
    common.add_argument("--out", default=None, help="write the primary payload here")

    parser = argparse.ArgumentParser(
        prog="framekit",
        description="Window-controlled frame inequalities on cyclic sample grids",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate a wave-packet system")
    p.add_argument("params", help="WavePacketParams JSON file")
    p.set_defaults(handler=_cmd_gen)

    p = sub.add_parser("check-frame", parents=[common], help="classical optimal bounds")
    p.add_argument("system", help="FrameSystem JSON file")
    p.set_defaults(handler=_cmd_check_frame)

    p = sub.add_parser("check-theta", parents=[common], help="two-sided window bounds")
    p.add_argument("system")
    p.add_argument("theta", help="window operator JSON file")
    p.add_argument("--margin", type=int, default=None, help="margin width to compress onto")
    p.set_defaults(handler=_cmd_check_theta)

    p = sub.add_parser("check-k", parents=[common], help="windowed lower bound only")
    p.add_argument("system")
    p.add_argument("k", help="lower-window operator JSON file")
    p.add_argument("--margin", type=int, default=None)
    p.set_defaults(handler=_cmd_check_k)

    p = sub.add_parser("check-hypo", parents=[common], help="self-commutator positivity")
    p.add_argument("operator")
    p.add_argument("--margin", type=int, default=None)
    p.set_defaults(handler=_cmd_check_hypo)

    p = sub.add_parser("douglas", parents=[common], help="range inclusion three ways")
    p.add_argument("t1")
    p.add_argument("t2")
    p.set_defaults(handler=_cmd_douglas)

    p = sub.add_parser("pinv", parents=[common], help="pseudoinverse bound chain")
    p.add_argument("system")
    p.add_argument("theta")
    p.set_defaults(handler=_cmd_pinv)

    p = sub.add_parser("check-comb", parents=[common], help="combined-system criteria")
    p.add_argument("spec", help="partition or finite-sum spec JSON file")
    p.set_defaults(handler=_cmd_check_comb)

    p = sub.add_parser("verify-example", parents=[common], help="run a pinned case model")
    p.add_argument("case", help="case name or short code")
    p.set_defaults(handler=_cmd_verify_example)

    p = sub.add_parser("prop-run", parents=[common], help="randomized invariant suite")
    p.add_argument("suite")
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(handler=_cmd_prop_run)

    return parser


def main(argv=None) -> int:
    try:
        default_seed = int(os.environ.get("FRAMEKIT_SEED", "0"))
    except ValueError:
        print("FRAMEKIT_SEED must be an integer", file=sys.stderr)
        return 2
    parser = _build_parser(default_seed)
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        tol = _tolerance(args)
        verdicts, inputs, code = args.handler(args, tol)
        digest = _digest(inputs)
    except FramekitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        verdicts, digest, code = {"error": str(exc)}, "", 2
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        verdicts, digest, code = {"error": str(exc)}, "", 2
    report = {
        "command": args.command,
        "inputs_digest": digest,
        "verdicts": verdicts,
        "seed": getattr(args, "seed", default_seed),
        "duration_ms": int((time.perf_counter() - started) * 1000),
    }
    print(json.dumps(report, indent=2, sort_keys=True))
    return code


__all__ = ["main", "to_jsonable"]
