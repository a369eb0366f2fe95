"""Command-line entry point.

Exit codes: 0 success, 2 parse error, 3 invariant violation,
4 non-unit-modulus amplitude, 5 unsupported dimension.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .concurrence import GHZM1_FULL, GHZM1_PAPER, ConcurrenceReport, NormalizationPolicy, classify
from .entangler import Branch, apply_entangler, audit_separability, build_entangler, verify_entangler
from .errors import (
    DegenerateInputError,
    DomainError,
    NonUnitaryAmplitudeError,
    QgentError,
    ShapeError,
    UnsupportedDimensionError,
)
from .povm import PhaseSpec, delta, povm_resolution_check
from .state import parse_complex_list, state_from_json, state_to_json
from .tensor import format_matrix

log = logging.getLogger("qgent")

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INVARIANT = 3
EXIT_AMPLITUDE = 4
EXIT_UNSUPPORTED = 5


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class RunConfig:
    tolerance: float = 1e-10
    normalization: str = "canonical"
    ghz_m1_enumeration: str = GHZM1_PAPER
    output: str = "json"
    seed: int = 0

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")
        if self.output not in ("json", "text"):
            raise ValueError(f"output must be json or text, got {self.output!r}")

    @property
    def policy(self) -> NormalizationPolicy:
        mode = "raw" if self.normalization == "raw" else "canonical"
        return NormalizationPolicy(mode, self.ghz_m1_enumeration)


def _round(obj):
    """Round every float to 12 significant digits for byte-stable JSON."""
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return obj
        return float(f"{obj:.12g}") + 0.0
    if isinstance(obj, (np.floating,)):
        return _round(float(obj))
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


def dump_json(obj) -> str:
    return json.dumps(_round(obj), indent=2, ensure_ascii=False)


def _g(x: float) -> str:
    return f"{x:.12g}"


def report_table(report: ConcurrenceReport) -> str:
    lines = [f"state {report.state_id or '-'}  m={report.m}  tol={_g(report.tolerance)}  norm={report.policy.mode}"]
    if report.gate is not None:
        g = report.gate
        lines.append(f"gate  dim={g['dimension']}  branch={g['branch']}  unitary={g['unitary']}")
    rows = [("class", "term", "operator", "value")]
    for c in report.classes:
        for t in c.to_dict()["terms"]:
            rows.append((c.tag.name, t["label"], t["operator"], _g(t["value"])))
        rows.append((c.tag.name, "aggregate", "", _g(c.aggregate) + ("  nonzero" if c.nonzero else "  zero")))
    widths = [max(len(r[i]) for r in rows) for i in range(4)]
    for r in rows:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip())
    lines.append(f"oracle: {'separable' if report.oracle_separable else 'entangled'}")
    lines.append(f"consistent: {report.consistent}")
    if report.target is not None:
        lines.append(f"condition {report.target} != 0: {report.condition_holds}")
    for note in report.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines)


def _load_json(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_PARSE) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}: malformed JSON: {exc}", EXIT_PARSE) from exc


def cmd_classify(state_file: str, config: RunConfig, out=sys.stdout) -> int:
    obj = _load_json(state_file)
    try:
        state = state_from_json(obj)
    except DegenerateInputError as exc:
        raise CliError(f"{state_file}: {exc}", EXIT_INVARIANT) from exc
    except ShapeError as exc:
        raise CliError(f"{state_file}: schema error: {exc}", EXIT_PARSE) from exc
    report = classify(state, config.tolerance, config.policy, state_id=Path(state_file).name)
    if config.output == "json":
        out.write(dump_json(report.to_dict()) + "\n")
    else:
        out.write(report_table(report) + "\n")
    return EXIT_OK


def _parse_entangler(obj, path: str):
    if not isinstance(obj, dict) or "m" not in obj or "alphas" not in obj:
        raise CliError(f'{path}: entangler JSON needs keys "m" and "alphas"', EXIT_PARSE)
    m = obj["m"]
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise CliError(f'{path}: "m" must be a positive integer', EXIT_PARSE)
    try:
        alphas = parse_complex_list(obj["alphas"], "alphas")
    except ShapeError as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE) from exc
    if len(alphas) != 2**m:
        raise CliError(f"{path}: m={m} needs {2**m} alphas, got {len(alphas)}", EXIT_PARSE)
    try:
        branch = Branch(obj.get("branch", "diag"))
    except ValueError as exc:
        raise CliError(f'{path}: "branch" must be "diag" or "antidiag"', EXIT_PARSE) from exc
    return m, alphas, branch


def cmd_build_entangler(
    alphas_file: str, config: RunConfig, raw: bool = False, show_matrix: bool = False, out=sys.stdout
) -> int:
    m, alphas, branch = _parse_entangler(_load_json(alphas_file), alphas_file)
    try:
        z = build_entangler(m, alphas, branch, strict=not raw)
        state = apply_entangler(z)
        report = verify_entangler(m, alphas, None, config.tolerance, config.policy, branch, strict=not raw)
    except NonUnitaryAmplitudeError as exc:
        raise CliError(f"{alphas_file}: {exc}", EXIT_AMPLITUDE) from exc
    except DegenerateInputError as exc:
        raise CliError(f"{alphas_file}: {exc}", EXIT_INVARIANT) from exc
    report.state_id = Path(alphas_file).name
    if config.output == "json":
        payload = {"gate": report.gate, "state": state_to_json(state), "report": report.to_dict()}
        if show_matrix:
            payload["matrix"] = format_matrix(z.matrix)
        out.write(dump_json(payload) + "\n")
    else:
        out.write(report_table(report) + "\n")
        if show_matrix:
            out.write(format_matrix(z.matrix) + "\n")
    return EXIT_OK


def cmd_povm_check(n: int, grid: int, config: RunConfig, out=sys.stdout) -> int:
    try:
        residual = povm_resolution_check(n, grid)
    except UnsupportedDimensionError as exc:
        raise CliError(str(exc), EXIT_UNSUPPORTED) from exc
    except DomainError as exc:
        raise CliError(str(exc), EXIT_PARSE) from exc
    herm = 0.0
    psd = 0.0
    for k in range(grid):
        d = delta(PhaseSpec.qubit(2 * np.pi * k / grid))
        herm = max(herm, float(np.max(np.abs(d - d.conj().T))))
        psd = max(psd, max(0.0, -float(np.min(np.linalg.eigvalsh(d)))))
    ok = max(residual, herm, psd) <= config.tolerance
    result = {
        "n": n,
        "grid": grid,
        "resolution_residual": residual,
        "hermiticity_residual": herm,
        "psd_residual": psd,
        "tolerance": config.tolerance,
        "ok": ok,
    }
    if config.output == "json":
        out.write(dump_json(result) + "\n")
    else:
        for key, val in result.items():
            out.write(f"{key:<22}{_g(val) if isinstance(val, float) else val}\n")
    return EXIT_OK if ok else EXIT_INVARIANT


def cmd_audit(ms: list[int], samples: int, config: RunConfig, out=sys.stdout) -> int:
    results = [
        audit_separability(m, samples, config.seed, config.tolerance, config.policy).to_dict() for m in ms
    ]
    discrepancy = results[0]["w_class_discrepancy"] if results else None
    for r in results:
        r.pop("w_class_discrepancy")
    payload = {"audits": results, "w_class_discrepancy": discrepancy}
    if config.output == "json":
        out.write(dump_json(payload) + "\n")
    else:
        for r in results:
            out.write(
                f"m={r['m']}  samples={r['samples']}  seed={r['seed']}  "
                f"agreement={r['agreements']}/{r['samples']} ({_g(r['agreement_rate'])})\n"
            )
            for d in r["disagreements"]:
                out.write(f"  disagreement: {d}\n")
        if discrepancy is not None:
            out.write(
                f"{discrepancy['class']} on {discrepancy['state']}: max term {_g(discrepancy['max_term'])}, "
                f"oracle {'separable' if discrepancy['oracle_separable'] else 'entangled'}, "
                f"reproduced={discrepancy['reproduced']}\n"
            )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-10, help="zero tolerance (default 1e-10)")
    common.add_argument("--norm", choices=["raw", "canonical"], default="canonical")
    common.add_argument("--ghzm1", choices=[GHZM1_PAPER, GHZM1_FULL], default=GHZM1_PAPER)
    common.add_argument("--output", choices=["json", "text"], default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="qgent", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="classify a pure state from a JSON file")
    p.add_argument("state_file")

    p = sub.add_parser("build-entangler", parents=[common], help="build an entangler and classify its output")
    p.add_argument("alphas_file")
    p.add_argument("--raw", action="store_true", help="allow alphas without unit modulus")
    p.add_argument("--show-matrix", action="store_true", help="include the matrix in debug text form")

    p = sub.add_parser("povm-check", parents=[common], help="check phase-POVM normalization on a grid")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--grid", type=int, default=8)

    p = sub.add_parser("audit", parents=[common], help="separability-consistency sweep over random entanglers")
    p.add_argument("--m", type=int, nargs="+", default=[2, 3, 4])
    p.add_argument("--samples", type=int, default=500)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        config = RunConfig(args.tol, args.norm, args.ghzm1, args.output, args.seed)
    except ValueError as exc:
        print(f"qgent: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        if args.command == "classify":
            return cmd_classify(args.state_file, config, out)
        if args.command == "build-entangler":
            return cmd_build_entangler(args.alphas_file, config, args.raw, args.show_matrix, out)
        if args.command == "povm-check":
            return cmd_povm_check(args.n, args.grid, config, out)
        return cmd_audit(args.m, args.samples, config, out)
    except CliError as exc:
        print(f"qgent: {exc}", file=sys.stderr)
        return exc.code
    except QgentError as exc:
        log.debug("unexpected library error", exc_info=True)
        print(f"qgent: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
