"""Command-line front end.

Subcommands: ``detect``, ``classify``, ``verify-theorem`` and ``gen``.
Reports are JSON. Exit codes: 0 for a positive verdict (correlation
detected, map classified, theorem branch found), 1 for a negative verdict,
2 for bad input.

Tolerances come from ``--tol-NAME`` flags, then ``ENCE_TOL_NAME``
environment variables, then built-in defaults; the seed likewise from
``--seed``, ``ENCE_SEED``, default 0. Every report echoes the values used.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import matfile
from .detect import MAX_CHEN_DIM, TOL_COMMUTE, chen_test, pcc_test, pt_detect
from .maps import Superoperator, superop_conjugation, superop_transpose, superop_transpose_conjugation
from .matcore import TOL_HERM, TOL_PSD, TOL_SPECTRA, TOL_TRACE, BipartiteDims, check_density
from .preserver import (
    TOL_CLASSIFY,
    Branch,
    MapKind,
    NotEPError,
    check_ep_on_density,
    classify_preserver,
    verify_main_theorem,
)
from .states import (
    RNG_ALGORITHM,
    PccSpec,
    bell_state,
    onewcc_state,
    pcc_state,
    random_density,
    random_invertible,
    random_onewcc_spec,
    random_unitary,
    rho_p,
    rng_from,
)

DEFAULT_TOLS = {
    "spectra": TOL_SPECTRA,
    "herm": TOL_HERM,
    "trace": TOL_TRACE,
    "psd": TOL_PSD,
    "commute": TOL_COMMUTE,
    "classify": TOL_CLASSIFY,
}
EXIT_POSITIVE, EXIT_NEGATIVE, EXIT_INPUT = 0, 1, 2


@dataclass
class RunConfig:
    tols: dict = field(default_factory=lambda: dict(DEFAULT_TOLS))
    seed: int = 0
    trials: int = 200
    output_path: Path | None = None

    def as_dict(self) -> dict:
        return {"tolerances": dict(self.tols), "seed": self.seed, "trials": self.trials, "rng": RNG_ALGORITHM}


def _env_float(name: str):
    raw = os.environ.get(name)
    return None if raw in (None, "") else float(raw)


def build_config(args: argparse.Namespace) -> RunConfig:
    tols = {}
    for name, default in DEFAULT_TOLS.items():
        value = getattr(args, f"tol_{name}", None)
        if value is None:
            value = _env_float(f"ENCE_TOL_{name.upper()}")
        tols[name] = default if value is None else value
        if not tols[name] > 0:
            raise ValueError(f"tolerance {name} must be positive, got {tols[name]}")
    seed = args.seed if args.seed is not None else os.environ.get("ENCE_SEED", "0")
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ValueError("seed must be an unsigned 64-bit integer")
    trials = args.trials if getattr(args, "trials", None) is not None else 200
    if trials < 1:
        raise ValueError("trials must be >= 1")
    out = getattr(args, "out", None)
    return RunConfig(tols, seed, trials, Path(out) if out else None)


def parse_dims(text: str) -> BipartiteDims:
    try:
        a, b = text.lower().split("x")
        dims = BipartiteDims(int(a), int(b))
    except ValueError as exc:
        raise ValueError(f"dims must look like 2x3, got {text!r}") from exc
    if dims.d_a < 1 or dims.d_b < 1:
        raise ValueError(f"dims must be positive, got {text!r}")
    return dims


def _spectrum_json(values) -> list:
    return [[float(z.real), float(z.imag)] for z in np.asarray(values, dtype=complex)]


def _emit(report: dict, config: RunConfig) -> None:
    text = json.dumps(report, indent=1) + "\n"
    if config.output_path is None:
        sys.stdout.write(text)
    else:
        config.output_path.write_text(text, encoding="utf-8")


def _load_state(path: str, dims_text: str | None, config: RunConfig):
    mf = matfile.load(path)
    mat = check_density(mf.mat, config.tols["herm"], config.tols["trace"], config.tols["psd"])
    dims = parse_dims(dims_text) if dims_text else mf.dims
    if dims is None:
        raise ValueError("bipartite dims unknown: pass --dims AxB or store dims in the file")
    dims.check(mat)
    return mat, dims


def _load_superop(path: str) -> Superoperator:
    mf = matfile.load(path)
    if mf.kind not in ("superoperator", "general"):
        raise ValueError(f"expected a superoperator file, got kind {mf.kind!r}")
    return Superoperator.from_matrix(mf.mat)


def cmd_detect(args, config: RunConfig) -> int:
    rho, dims = _load_state(args.state_file, args.dims, config)
    report = {"command": "detect", "method": args.method, "dims": list(dims), "config": config.as_dict()}
    if args.method == "pt":
        r = pt_detect(rho, dims, args.side, config.tols["spectra"])
        positive = r.detected
        report.update(
            side=r.side,
            verdict="detected" if r.detected else "not detected",
            detected=r.detected,
            deviation=r.deviation,
            spectrum_before=_spectrum_json(r.spectrum_before),
            spectrum_after=_spectrum_json(r.spectrum_after),
        )
    elif args.method == "chen":
        r = chen_test(rho, dims, args.side, config.tols["commute"], args.max_dim)
        positive = not r.passes
        report.update(
            side=r.classical_side,
            verdict="passes" if r.passes else "ncc",
            passes=r.passes,
            max_commutator_norm=r.max_commutator_norm,
            pairs_tested=r.pairs_tested,
            cons=r.cons,
        )
    else:
        passes = pcc_test(rho, dims, config.tols["commute"], args.max_dim)
        positive = not passes
        report.update(side="Both", verdict="passes" if passes else "ncc", passes=passes)
    _emit(report, config)
    return EXIT_POSITIVE if positive else EXIT_NEGATIVE


def cmd_classify(args, config: RunConfig) -> int:
    l = _load_superop(args.superop_file)
    ep = check_ep_on_density(l, config.trials, config.seed, config.tols["spectra"])
    form = classify_preserver(l, config.tols["classify"])
    report = {
        "command": "classify",
        "d": l.d,
        "config": config.as_dict(),
        "unital": ep.unital,
        "det_trace_preserving": ep.det_trace_preserving,
        "ep_on_samples": ep.ep_on_samples,
        "ep_verdict": "no counterexample found" if ep.ep_on_samples else "counterexample found",
        "worst_spectrum_deviation": ep.worst_spectrum_deviation,
        "samples_tested": ep.samples_tested,
        "kind": form.kind.value,
        "residual": form.residual,
        "s": None if form.s is None else matfile.to_dict(form.s, "general"),
    }
    _emit(report, config)
    return EXIT_NEGATIVE if form.kind is MapKind.NOT_EP else EXIT_POSITIVE


def cmd_verify_theorem(args, config: RunConfig) -> int:
    l = _load_superop(args.superop_file)
    r = verify_main_theorem(l, args.d_a, config.trials, config.seed, config.tols["spectra"])
    report = {
        "command": "verify-theorem",
        "d_a": args.d_a,
        "d_b": l.d,
        "config": config.as_dict(),
        "branch": r.branch.value,
        "trials": r.trials,
        "max_deviation": r.max_deviation,
        "identity_deviation": r.identity_deviation,
        "transpose_deviation": r.transpose_deviation,
    }
    _emit(report, config)
    return EXIT_NEGATIVE if r.branch is Branch.VIOLATED else EXIT_POSITIVE


def _generate(args, config: RunConfig):
    rng = rng_from(config.seed)
    family = args.family
    if family == "bell":
        return bell_state(), "density", BipartiteDims(2, 2)
    if family == "rho_p":
        if args.p is None:
            raise ValueError("rho_p needs --p")
        return rho_p(args.p), "density", BipartiteDims(2, 2)
    if family in ("transpose", "similarity", "transpose-similarity"):
        if args.d is None:
            raise ValueError(f"{family} needs --d")
        if family == "transpose":
            return superop_transpose(args.d).mat, "superoperator", None
        s = random_unitary(args.d, rng) if args.unitary else random_invertible(args.d, rng, args.max_cond)
        build = superop_conjugation if family == "similarity" else superop_transpose_conjugation
        return build(s).mat, "superoperator", None
    if args.dims is None:
        raise ValueError(f"{family} needs --dims AxB")
    dims = parse_dims(args.dims)
    if family == "pcc":
        if args.weights:
            weights = np.array([float(w) for w in args.weights.split(",")]).reshape(dims)
        else:
            weights = rng.dirichlet(np.ones(dims.total)).reshape(dims)
        if args.computational:
            spec = PccSpec(weights, np.eye(dims.d_a), np.eye(dims.d_b))
        else:
            spec = PccSpec(weights, random_unitary(dims.d_a, rng), random_unitary(dims.d_b, rng))
        return pcc_state(spec), "density", dims
    if family == "onewcc":
        return onewcc_state(random_onewcc_spec(dims.d_a, dims.d_b, rng)), "density", dims
    rank = args.rank if args.rank is not None else dims.total
    return random_density(dims.total, rank, rng), "density", dims


def cmd_gen(args, config: RunConfig) -> int:
    mat, kind, dims = _generate(args, config)
    text = matfile.dumps(mat, kind, dims)
    if config.output_path is None:
        sys.stdout.write(text)
    else:
        config.output_path.write_text(text, encoding="utf-8")
    return EXIT_POSITIVE


def _common(p: argparse.ArgumentParser, trials: bool = True) -> None:
    p.add_argument("--seed", type=int, default=None, help="RNG seed (env ENCE_SEED, default 0)")
    if trials:
        p.add_argument("--trials", type=int, default=None, help="samples or trials (default 200)")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--format", choices=["json"], default="json")
    for name, default in DEFAULT_TOLS.items():
        p.add_argument(f"--tol-{name}", type=float, default=None, help=f"default {default:g}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ence", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", help="run a nonclassical-correlation detector on a state file")
    p.add_argument("state_file")
    p.add_argument("--dims", default=None, help="AxB, overrides dims stored in the file")
    p.add_argument("--method", choices=["pt", "chen", "pcc"], default="pt")
    p.add_argument("--side", choices=["A", "B"], default="B")
    p.add_argument("--max-dim", type=int, default=MAX_CHEN_DIM, help="per-side cap for chen/pcc")
    _common(p, trials=False)
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("classify", help="check and classify a superoperator file")
    p.add_argument("superop_file")
    _common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify-theorem", help="check the spectral action of I (x) map")
    p.add_argument("superop_file")
    p.add_argument("--d-a", type=int, default=2)
    _common(p)
    p.set_defaults(func=cmd_verify_theorem)

    p = sub.add_parser("gen", help="write a state or superoperator file")
    p.add_argument(
        "family",
        choices=["pcc", "onewcc", "bell", "rho_p", "random", "transpose", "similarity", "transpose-similarity"],
    )
    p.add_argument("--dims", default=None)
    p.add_argument("--weights", default=None, help="comma-separated pcc weights, row-major over (i, j)")
    p.add_argument("--computational", action="store_true", help="pcc: use computational bases")
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--rank", type=int, default=None)
    p.add_argument("--d", type=int, default=None, help="matrix size for superoperator families")
    p.add_argument("--unitary", action="store_true", help="similarity families: use a Haar unitary S")
    p.add_argument("--max-cond", type=float, default=100.0)
    _common(p, trials=False)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = build_config(args)
        return args.func(args, config)
    except NotEPError as exc:
        print(f"ence: precondition failed: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, OSError) as exc:
        print(f"ence: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
