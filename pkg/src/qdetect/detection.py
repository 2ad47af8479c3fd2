"""The detection relation between a detector property and a detected one.

A projection T detects a projection E at the state rho when the two commute
and E.rho = T.rho. Equivalently (for commuting pairs) the joint outcomes
(1,0) and (0,1) both carry zero probability. This module implements both
routes, the lemma that detection transfers to complements, the theorem that
detection survives convex refinement of the state, and the constructive
search for a rank-one detector shared by two non-commuting projections.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (
    CoMeasurabilityError,
    DimensionError,
    LemmaViolationError,
    PreconditionError,
)
from .numerics import CMatrix, DEFAULT_TOL, Tolerance, dist, eigh, trace
from .observables import (
    DensityOperator,
    Projection,
    commutator_defect,
    complement,
)


@dataclass(frozen=True)
class DetectionCheck:
    """Outcome of a single detection test.

    state_equal_defect is the max-abs distance between E.rho and T.rho; the
    discordance fields are the probabilities of the mismatched outcome pairs
    (1,0) and (0,1). When the pair fails to commute those joint outcomes have
    no meaning, and the magnitudes of the corresponding traces are reported
    purely as diagnostics.
    """

    commutes: bool
    commutator_defect: float
    state_equal_defect: float
    discord_10: float
    discord_01: float
    outcome1_probability: float
    holds: bool
    note: str = ""


def detects(
    t: Projection,
    e: Projection,
    rho: DensityOperator,
    tol: Tolerance = DEFAULT_TOL,
) -> DetectionCheck:
    """Operator-level detection test: commutation plus E.rho = T.rho."""
    if not (t.dim == e.dim == rho.dim):
        raise DimensionError(
            f"dimension mismatch: t={t.dim}, e={e.dim}, rho={rho.dim}"
        )
    gate = tol.gate(t.dim)
    c_defect = commutator_defect(t.matrix, e.matrix)
    commutes = c_defect <= gate
    s_defect = dist(e.matrix @ rho.matrix, t.matrix @ rho.matrix)
    holds = commutes and s_defect <= gate

    raw_10 = trace(rho.matrix @ t.matrix @ (complement(e).matrix))
    raw_01 = trace(rho.matrix @ (complement(t).matrix) @ e.matrix)
    if commutes:
        # Traces of rho against genuine projections: real up to float noise.
        if max(abs(raw_10.imag), abs(raw_01.imag)) > gate:
            raise LemmaViolationError(
                "discordance trace of a commuting pair has a large imaginary "
                f"part ({raw_10.imag:.3e}, {raw_01.imag:.3e})"
            )
        d10 = min(max(raw_10.real, 0.0), 1.0)
        d01 = min(max(raw_01.real, 0.0), 1.0)
    else:
        d10 = abs(raw_10)
        d01 = abs(raw_01)

    p1 = trace(rho.matrix @ t.matrix).real
    note = ""
    if holds and p1 <= gate:
        note = "outcome 1 has probability ~0; the probability reading is vacuous on that side"
    return DetectionCheck(
        commutes=commutes,
        commutator_defect=c_defect,
        state_equal_defect=s_defect,
        discord_10=d10,
        discord_01=d01,
        outcome1_probability=min(max(p1, 0.0), 1.0),
        holds=holds,
        note=note,
    )


def detects_via_probability(
    t: Projection,
    e: Projection,
    rho: DensityOperator,
    tol: Tolerance = DEFAULT_TOL,
) -> bool:
    """Probability-level detection test: both discordance traces vanish.

    Only defined for commuting pairs, where the joint outcomes exist.
    """
    check = detects(t, e, rho, tol)
    if not check.commutes:
        raise CoMeasurabilityError(
            "joint outcome probabilities are undefined for a non-commuting "
            f"pair (commutator defect {check.commutator_defect:.3e})"
        )
    gate = tol.gate(t.dim)
    return check.discord_10 <= gate and check.discord_01 <= gate


def complement_lemma_check(
    t: Projection,
    e: Projection,
    rho: DensityOperator,
    tol: Tolerance = DEFAULT_TOL,
) -> bool:
    """Detection holds for (T, E) exactly when it holds for (T', E').

    Returns the shared truth value; a disagreement between the two sides
    would be a numerics bug and raises instead of returning.
    """
    direct = detects(t, e, rho, tol).holds
    complemented = detects(complement(t), complement(e), rho, tol).holds
    if direct != complemented:
        raise LemmaViolationError(
            f"complement lemma violated: (T,E) gives {direct}, "
            f"(T',E') gives {complemented}"
        )
    return direct


def refinement_check(
    t: Projection,
    e: Projection,
    rho1: DensityOperator,
    rho2: DensityOperator,
    lambda1: float,
    tol: Tolerance = DEFAULT_TOL,
) -> bool:
    """Detection at a mixture persists at its components.

    Verifies detects(t, e, rho1).holds given that detection holds at
    lambda1*rho1 + (1-lambda1)*rho2. The theorem says the result is always
    true; returning it rather than asserting keeps counterexample hunting
    honest.
    """
    if not (0.0 < lambda1 <= 1.0):
        raise PreconditionError(f"lambda1 must lie in (0, 1], got {lambda1}")
    mixture = DensityOperator(
        lambda1 * rho1.matrix + (1.0 - lambda1) * rho2.matrix,
        name="mixture",
        tol=tol,
    )
    at_mixture = detects(t, e, mixture, tol)
    if not at_mixture.holds:
        raise PreconditionError(
            "refinement check needs a detecting mixture; state-equality "
            f"defect {at_mixture.state_equal_defect:.3e}, "
            f"commutes={at_mixture.commutes}"
        )
    return detects(t, e, rho1, tol).holds


def rank_one_detector(
    e: Projection,
    f: Projection,
    tol: Tolerance = DEFAULT_TOL,
) -> Optional[Projection]:
    """Rank-one projection detecting both e and f at its own pure state.

    Looks for a unit vector inside range(e) & range(f) by diagonalizing
    e + f and keeping eigenvalue-2 eigenvectors (the spectrum lives in
    [0, 2] and the top cluster is exactly the intersection). Returns the
    projector onto one such vector, or None when the ranges meet trivially.
    The construction works whether or not e and f commute.
    """
    if e.dim != f.dim:
        raise DimensionError(f"dimension mismatch: {e.dim} vs {f.dim}")
    w, v = eigh(e.matrix + f.matrix, tol)
    top = np.flatnonzero(w >= 2.0 - tol.eig_cut)
    if top.size == 0:
        return None
    psi = v[:, int(top[-1])]
    name = f"[{e.name}&{f.name}]" if e.name and f.name else "rank-one detector"
    return Projection(CMatrix(np.outer(psi, psi.conj())), name=name, tol=tol)
