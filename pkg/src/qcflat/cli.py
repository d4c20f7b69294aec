"""Command-line front end: analyze a structure file or a builtin model and
emit a text or JSON report.

Exit codes: 0 all checks pass, 1 some identity failed, 2 unusable input
(syntax error, Jacobi violation, incompatible qc data, unreadable file).
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from .biquard import (
    BiquardSolveError,
    compute_torsion,
    solve_connection,
    verify_axioms,
    verify_torsion_properties,
)
from .builtins import builtin_names, get_builtin
from .conformal import covariance_suite, rotation_suite
from .curvature import (
    compute_curvature,
    flatness_R,
    verify_bianchi,
    verify_div_identity,
    verify_ricci_formulas,
    verify_sp1_part,
)
from .qc import QcValidationError, build_qc
from .report import (
    VERDICT_CONFORMALLY_FLAT,
    VERDICT_FLAT_CONNECTION,
    VERDICT_NOT_CONFORMALLY_FLAT,
    AnalysisReport,
    checks_to_entries,
    format_scalar,
)
from .scalars import EXACT, ScalarMode
from .structure import NotALieAlgebraError, StructureFile, StructureSyntaxError, parse, to_lie_frame
from .verify import Check
from .wqc import (
    check_integrability,
    check_integrability_vertical,
    compute_B,
    compute_WR,
    flatness_verdict,
    verify_B_traces,
    verify_WR_properties,
)


def _norm_sq(arr):
    return sum(v * v for v in np.asarray(arr).ravel())


def analyze(
    sf: StructureFile,
    input_name: str = "",
    mode: ScalarMode = EXACT,
    check_level: str = "basic",
    conformal_trials: int = 25,
    seed: int = 0,
) -> AnalysisReport:
    """Run the whole pipeline on a parsed structure and summarize it."""
    t_start = time.perf_counter()
    frame = to_lie_frame(sf)
    qc = build_qc(frame, mode=mode)

    t0 = time.perf_counter()
    conn = solve_connection(qc)
    checks = list(verify_axioms(qc, conn))
    td = compute_torsion(qc, conn)
    checks += verify_torsion_properties(td, qc)
    t_conn = time.perf_counter() - t0

    t0 = time.perf_counter()
    cp = compute_curvature(qc, conn)
    checks += verify_sp1_part(cp, qc)
    checks += verify_ricci_formulas(cp, td, qc)
    checks += verify_div_identity(cp, td, qc, conn)
    level = "extended" if check_level == "full" else "basic"
    checks += verify_bianchi(cp, td, qc, conn, level=level)

    wrd = compute_WR(cp, td, qc)
    checks += verify_WR_properties(wrd, cp, td, qc)
    wr_flat = flatness_verdict(wrd, qc)
    if check_level == "full":
        bd = compute_B(wrd, qc, conn)
        inte = check_integrability(bd, qc, conn)
        inte += check_integrability_vertical(bd, wrd, qc, conn)
        if wr_flat:
            checks += verify_B_traces(bd, wrd, qc)
            checks += inte
        else:
            # outside the flat case these residuals are informative only
            for c in inte:
                checks.append(
                    Check(
                        name=c.name + " (reported, no assertion)",
                        residual=c.residual,
                        scale=c.scale,
                        worst=c.worst,
                        passed=True,
                    )
                )
    t_curv = time.perf_counter() - t0

    t0 = time.perf_counter()
    conformal = covariance_suite(wrd, cp, qc, trials=conformal_trials, seed=seed)
    if check_level == "full":
        checks += rotation_suite(wrd, qc, trials=10, seed=seed)
    t_conf = time.perf_counter() - t0

    conn_flat, full_flat = flatness_R(cp, qc)
    if full_flat:
        verdict = VERDICT_FLAT_CONNECTION
    elif wr_flat:
        verdict = VERDICT_CONFORMALLY_FLAT
    else:
        verdict = VERDICT_NOT_CONFORMALLY_FLAT

    hdim = qc.hdim
    alpha_h_zero = all(mode.is_zero(v) for v in conn.alpha[:, :hdim].ravel())
    report = AnalysisReport(
        input_name=input_name or sf.name or "<anonymous>",
        n=sf.n,
        scalar_mode="exact" if mode.exact else "float",
        connection_summary={
            "gamma_nonzero": int(sum(0 if mode.is_zero(v) else 1 for v in conn.gamma.ravel())),
            "alpha_horizontal_zero": bool(alpha_h_zero),
        },
        torsion_summary={
            "T0_norm_sq": format_scalar(_norm_sq(td.T0), mode),
            "U_norm_sq": format_scalar(_norm_sq(td.U), mode),
            "u_zero": bool(all(mode.is_zero(v) for v in td.u.ravel())),
        },
        curvature_summary={
            "Scal": format_scalar(cp.Scal, mode),
            "R_norm_sq": format_scalar(_norm_sq(cp.RH), mode),
            "flat": bool(full_flat),
        },
        wqc_summary={
            "WR_norm_sq": format_scalar(wrd.norm_sq(), mode),
            "verdict": verdict,
        },
        identity_suite=checks_to_entries(checks),
        conformal_suite={
            "trials": int(conformal_trials),
            "max_residual": max((c.residual for c in conformal), default=0.0),
            "passed": bool(all(c.passed for c in conformal)),
        },
        timings={
            "connection_s": t_conn,
            "curvature_s": t_curv,
            "conformal_s": t_conf,
            "total_s": time.perf_counter() - t_start,
        },
    )
    return report


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qcflat",
        description="Analyze a left-invariant quaternionic contact structure: "
        "canonical connection, torsion, curvature, conformal tensor, verdict.",
    )
    src = p.add_mutually_exclusive_group()
    src.add_argument("file", nargs="?", help="structure file in the DSL format")
    src.add_argument("--builtin", choices=builtin_names(), help="named builtin model")
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    p.add_argument("--check-level", choices=("basic", "full"), default="basic")
    p.add_argument("--conformal-trials", type=int, default=25, metavar="K")
    p.add_argument("--seed", type=int, default=0, metavar="S")
    p.add_argument("--out", metavar="FILE", help="write the report to FILE instead of stdout")
    p.add_argument("--format", choices=("text", "json"), default=None,
                   help="report format (default: text to stdout, json with --out)")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.file is None and args.builtin is None:
        print("error: provide a structure file or --builtin NAME", file=sys.stderr)
        return 2
    try:
        if args.builtin:
            sf = get_builtin(args.builtin)
            name = args.builtin
        else:
            with open(args.file, encoding="utf-8") as fh:
                sf = parse(fh.read())
            name = sf.name or args.file
    except OSError as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return 2
    except StructureSyntaxError as exc:
        print(f"error: {args.file}: {exc}", file=sys.stderr)
        return 2

    mode = EXACT if args.mode == "exact" else ScalarMode(exact=False)
    try:
        report = analyze(
            sf,
            input_name=name,
            mode=mode,
            check_level=args.check_level,
            conformal_trials=args.conformal_trials,
            seed=args.seed,
        )
    except (NotALieAlgebraError, QcValidationError, BiquardSolveError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    fmt = args.format or ("json" if args.out else "text")
    text = report.to_json() + "\n" if fmt == "json" else report.to_text()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report.all_passed() else 1


if __name__ == "__main__":
    sys.exit(main())
