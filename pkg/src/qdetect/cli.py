"""Command-line front end.

Subcommands map one-to-one onto the library verifiers:

* ghsz       build and verify the four-qubit no-go scenario
* detect     run a detection check between two named observables of a file
* example44  verify the two-state sum-rule counterexample at an angle
* c3         evaluate the complement sum rule for a named pair of a file
* simulate   sample a specimen ensemble for a commuting family, write CSV

Exit codes: 0 all checks matched expectations, 1 at least one check failed,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import Optional, Sequence

from .assignment import (
    assignment_probs,
    check_C1,
    joint_distribution,
    simulation_equalities,
)
from .detection import (
    complement_lemma_check,
    detects,
    detects_via_probability,
)
from .ensemble import check_support_statements, detection_frequency_audit, sample_ensemble
from .errors import ToolkitError
from .numerics import Tolerance
from .observables import commutes
from .reporting import Report
from .scenarios import (
    DetectionClaim,
    build_ghsz,
    load_scenario,
    verify_example_44,
    verify_ghsz,
)

DEFAULT_THETA = math.pi / 6.0


def cmd_ghsz(tol: Tolerance) -> Report:
    report = verify_ghsz(build_ghsz(), tol)
    report.inputs.update({"tol": tol.atol, "eig_cut": tol.eig_cut})
    return report


def cmd_detect(path: str, t_name: str, e_name: str, tol: Tolerance) -> Report:
    scn = load_scenario(path, tol)
    t = scn.observable(t_name)
    e = scn.observable(e_name)
    rho = scn.state
    gate = tol.gate(scn.dim)
    report = Report(
        command="detect",
        inputs={
            "scenario": scn.name,
            "t": t_name,
            "e": e_name,
            "tol": tol.atol,
            "eig_cut": tol.eig_cut,
        },
    )
    check = detects(t, e, rho, tol)
    report.add(
        name="commutation",
        passed=check.commutes,
        residual=check.commutator_defect,
        ref="detection:commutation",
    )
    report.add(
        name="state-equality",
        passed=check.state_equal_defect <= gate,
        residual=check.state_equal_defect,
        ref="detection:state-equality",
    )
    if check.commutes:
        report.add(
            name="discordance-10",
            passed=check.discord_10 <= gate,
            residual=check.discord_10,
            ref="detection:discordance",
        )
        report.add(
            name="discordance-01",
            passed=check.discord_01 <= gate,
            residual=check.discord_01,
            ref="detection:discordance",
        )
        via = detects_via_probability(t, e, rho, tol)
        report.add(
            name="probability-route-agrees",
            passed=via == check.holds,
            ref="detection:route-equivalence",
        )
    report.add(
        name="detection-holds",
        passed=check.holds,
        residual=check.state_equal_defect,
        ref="detection:holds",
        detail=check.note,
    )
    lemma = complement_lemma_check(t, e, rho, tol)
    report.add(
        name="complement-lemma",
        passed=lemma == check.holds,
        ref="detection:complement-lemma",
    )
    if check.holds:
        compatible = [
            p
            for name, p in scn.observables.items()
            if name not in (t_name, e_name)
            and commutes(p, t, tol)
            and commutes(p, e, tol)
        ]
        for sim in simulation_equalities(t, e, rho, compatible, tol):
            defined = [
                d
                for d in (sim.defect_outcome1, sim.defect_outcome0)
                if d is not None
            ]
            report.add(
                name=f"simulation:{sim.f_name}",
                passed=sim.passed,
                residual=max(defined) if defined else None,
                ref="detection:simulation",
                detail=sim.note,
            )
    return report


def cmd_example44(theta: float, tol: Tolerance) -> Report:
    report = verify_example_44(theta, tol)
    report.inputs.update({"tol": tol.atol, "eig_cut": tol.eig_cut})
    return report


def cmd_c3(path: str, e_name: str, f_name: str, tol: Tolerance) -> Report:
    scn = load_scenario(path, tol)
    e = scn.observable(e_name)
    f = scn.observable(f_name)
    gate = tol.gate(scn.dim)
    report = Report(
        command="c3",
        inputs={
            "scenario": scn.name,
            "e": e_name,
            "f": f_name,
            "tol": tol.atol,
            "eig_cut": tol.eig_cut,
        },
    )
    probs = assignment_probs(e, f, scn.state, tol)
    report.add(
        name="sum-rule",
        passed=probs.c3_residual <= gate,
        residual=probs.c3_residual,
        ref="claim:sum-rule",
        detail=(
            f"p(E&F)={probs.p_e_and_f!r} p(E'&F)={probs.p_eprime_and_f!r} "
            f"Tr(rho.F)={probs.tr_rho_f!r}"
        ),
    )
    if commutes(e, f, tol):
        report.add(
            name="extension",
            passed=check_C1(e, f, scn.state, tol),
            ref="claim:extension",
            detail="commuting pair: sandwich reduces to the plain joint trace",
        )
    return report


def cmd_simulate(
    path: str,
    family: Sequence[str],
    samples: int,
    seed: int,
    tol: Tolerance,
    workers: int = 1,
    csv_out: str = "ensemble.csv",
    z: float = 3.0,
) -> Report:
    scn = load_scenario(path, tol)
    projections = [scn.observable(name) for name in family]
    dist = joint_distribution(projections, scn.state, tol)
    ens = sample_ensemble(
        dist, samples, seed, rho_name=scn.name, workers=workers
    )
    ens.to_csv(csv_out)
    report = check_support_statements(ens, dist, z)
    report.command = "simulate"
    report.inputs.update(
        {
            "scenario": scn.name,
            "family": list(family),
            "samples": int(samples),
            "workers": int(workers),
            "csv": str(csv_out),
            "tol": tol.atol,
            "eig_cut": tol.eig_cut,
        }
    )
    for claim in scn.declared_claims:
        if not isinstance(claim, DetectionClaim):
            continue
        if claim.t not in family or claim.e not in family:
            continue
        discordant, concordant = detection_frequency_audit(claim.t, claim.e, ens)
        report.add(
            name=f"discordant:{claim.t}~{claim.e}",
            passed=discordant == 0,
            residual=float(discordant),
            ref="support:detection",
            detail=f"{concordant} concordant records",
        )
    return report


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdetect",
        description="Verify detection relations, value-assignment consistency, "
        "and the associated no-go construction.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--tol",
        type=float,
        default=1e-10,
        help="absolute tolerance floor (default 1e-10)",
    )
    common.add_argument(
        "--eig-cut",
        type=float,
        default=1e-8,
        help="eigenvalue cutoff for kernel projectors (default 1e-8)",
    )
    common.add_argument(
        "--output",
        choices=("json", "csv", "text"),
        default="text",
        help="report format (default text)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser(
        "ghsz",
        parents=[common],
        help="verify the four-qubit no-go scenario end to end",
    )

    p_detect = sub.add_parser(
        "detect",
        parents=[common],
        help="check whether observable T detects observable E at the scenario state",
    )
    p_detect.add_argument("scenario", help="scenario JSON file")
    p_detect.add_argument("t", help="detector observable name")
    p_detect.add_argument("e", help="detected observable name")

    p_ex = sub.add_parser(
        "example44",
        parents=[common],
        help="verify the two-state sum-rule counterexample",
    )
    p_ex.add_argument(
        "--theta",
        type=float,
        default=DEFAULT_THETA,
        help=f"angle in (0, pi/4) (default {DEFAULT_THETA:.10f})",
    )

    p_c3 = sub.add_parser(
        "c3",
        parents=[common],
        help="evaluate the complement sum rule for a pair of observables",
    )
    p_c3.add_argument("scenario", help="scenario JSON file")
    p_c3.add_argument("e", help="conditioning observable name")
    p_c3.add_argument("f", help="target observable name")

    p_sim = sub.add_parser(
        "simulate",
        parents=[common],
        help="sample a specimen ensemble for a commuting family",
    )
    p_sim.add_argument("scenario", help="scenario JSON file")
    p_sim.add_argument("family", nargs="+", help="observable names to measure jointly")
    p_sim.add_argument(
        "--samples", type=int, default=10000, help="ensemble size (default 10000)"
    )
    p_sim.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    p_sim.add_argument(
        "--workers", type=int, default=1, help="parallel samplers (default 1)"
    )
    p_sim.add_argument(
        "--csv-out",
        default="ensemble.csv",
        help="where to write the ensemble CSV (default ensemble.csv)",
    )
    p_sim.add_argument(
        "--z",
        type=float,
        default=3.0,
        help="width of the frequency acceptance band in sigmas (default 3.0)",
    )
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        tol = Tolerance(atol=args.tol, eig_cut=args.eig_cut)
        if args.command == "ghsz":
            report = cmd_ghsz(tol)
        elif args.command == "detect":
            report = cmd_detect(args.scenario, args.t, args.e, tol)
        elif args.command == "example44":
            report = cmd_example44(args.theta, tol)
        elif args.command == "c3":
            report = cmd_c3(args.scenario, args.e, args.f, tol)
        else:
            report = cmd_simulate(
                args.scenario,
                args.family,
                args.samples,
                args.seed,
                tol,
                workers=args.workers,
                csv_out=args.csv_out,
                z=args.z,
            )
    except ToolkitError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    rendered = {
        "json": report.to_json,
        "csv": report.to_csv_text,
        "text": report.to_text,
    }[args.output]()
    sys.stdout.write(rendered if rendered.endswith("\n") else rendered + "\n")
    return report.exit_code
