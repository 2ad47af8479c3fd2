"""Conditional probabilities and consistent joint value assignment.

For a projection E and any projection F (commuting or not), the sandwich
value Tr(rho.E.F.E) is the unique consistent probability for "E and F both
hold". This module computes those assignment probabilities, the conditional
probabilities they induce, the consistency conditions tying them together
(extension of the commuting case, additivity over orthogonal families, and
the complement sum rule), the simulation equalities that make a detector
statistically indistinguishable from what it detects, and a brute-force
joint-outcome distribution for commuting families that serves as an
independent oracle for all of the above.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import product as cartesian
from typing import Mapping, Optional, Sequence

import numpy as np

from .errors import (
    CoMeasurabilityError,
    DimensionError,
    LemmaViolationError,
    PreconditionError,
    UndefinedConditionalError,
    ValidationError,
)
from .numerics import CMatrix, DEFAULT_TOL, Tolerance, identity, trace
from .observables import (
    DensityOperator,
    Projection,
    commutator_defect,
    commutes,
    complement,
    orthogonal_sum,
)
from .detection import detects

# Hard cap on commuting-family size: the atom count is 2**n.
MAX_FAMILY = 12


def _real_trace(m: CMatrix, gate: float, what: str) -> float:
    """Trace that must be real up to float noise; raises if it is not."""
    value = trace(m)
    if abs(value.imag) > gate:
        raise LemmaViolationError(
            f"{what} has imaginary part {value.imag:.3e}; "
            "this trace is real by construction, so something upstream broke"
        )
    return value.real


def _assert_probability(p: float, gate: float, what: str) -> float:
    """Range-check a would-be probability, then clamp it to [0, 1]."""
    if p < -gate or p > 1.0 + gate:
        raise LemmaViolationError(f"{what} = {p!r} lies outside [0, 1]")
    return min(max(p, 0.0), 1.0)


@dataclass(frozen=True)
class AssignmentProbabilities:
    """The two sandwich probabilities for F against E and its complement.

    c3_residual measures how far Tr(rho.F) is from the sum of the two, and is
    computed from the raw values before any clamping.
    """

    p_e_and_f: float
    p_eprime_and_f: float
    tr_rho_f: float
    c3_residual: float


def assignment_probs(
    e: Projection,
    f: Projection,
    rho: DensityOperator,
    tol: Tolerance = DEFAULT_TOL,
) -> AssignmentProbabilities:
    """Sandwich probabilities Tr(rho.E.F.E) and Tr(rho.E'.F.E').

    f need not commute with e; that is the whole point.
    """
    if not (e.dim == f.dim == rho.dim):
        raise DimensionError(
            f"dimension mismatch: e={e.dim}, f={f.dim}, rho={rho.dim}"
        )
    gate = tol.gate(e.dim)
    ep = complement(e)
    raw_ef = _real_trace(
        rho.matrix @ e.matrix @ f.matrix @ e.matrix, gate, "Tr(rho.E.F.E)"
    )
    raw_epf = _real_trace(
        rho.matrix @ ep.matrix @ f.matrix @ ep.matrix, gate, "Tr(rho.E'.F.E')"
    )
    raw_f = _real_trace(rho.matrix @ f.matrix, gate, "Tr(rho.F)")
    residual = abs(raw_f - raw_ef - raw_epf)
    return AssignmentProbabilities(
        p_e_and_f=_assert_probability(raw_ef, gate, "Tr(rho.E.F.E)"),
        p_eprime_and_f=_assert_probability(raw_epf, gate, "Tr(rho.E'.F.E')"),
        tr_rho_f=_assert_probability(raw_f, gate, "Tr(rho.F)"),
        c3_residual=residual,
    )


def cond_prob(
    f: Projection,
    g: Projection,
    rho: DensityOperator,
    tol: Tolerance = DEFAULT_TOL,
) -> float:
    """Conditional probability P(F | G) = Tr(rho.F.G) / Tr(rho.G)."""
    if f.dim != g.dim or f.dim != rho.dim:
        raise DimensionError(
            f"dimension mismatch: f={f.dim}, g={g.dim}, rho={rho.dim}"
        )
    gate = tol.gate(f.dim)
    if not commutes(f, g, tol):
        raise CoMeasurabilityError(
            f"P({f.name or 'F'} | {g.name or 'G'}) needs a commuting pair"
        )
    den = _real_trace(rho.matrix @ g.matrix, gate, "Tr(rho.G)")
    if den <= gate:
        raise UndefinedConditionalError(
            f"conditioning on {g.name or 'G'} with probability {den!r}"
        )
    num = _real_trace(rho.matrix @ f.matrix @ g.matrix, gate, "Tr(rho.F.G)")
    return _assert_probability(num / den, gate, "P(F|G)")


@dataclass(frozen=True)
class SimulationEquality:
    """Comparison of conditionals given the detector vs. the detected.

    A defect of None means both conditionals in that pairing were undefined
    (probability-zero conditioning event), so there is nothing to compare.
    """

    f_name: str
    defect_outcome1: Optional[float]
    defect_outcome0: Optional[float]
    passed: bool
    note: str = ""


def simulation_equalities(
    t: Projection,
    e: Projection,
    rho: DensityOperator,
    f_list: Sequence[Projection],
    tol: Tolerance = DEFAULT_TOL,
) -> tuple[SimulationEquality, ...]:
    """P(F|T) = P(F|E) and P(F|T') = P(F|E') for every F compatible with both.

    Requires the detection to hold; each F must commute with t and with e.
    Under detection, Tr(rho.T) = Tr(rho.E), so each pairing is either defined
    on both sides or undefined on both.
    """
    check = detects(t, e, rho, tol)
    if not check.holds:
        raise PreconditionError(
            "simulation equalities are only claimed under detection; "
            f"commutes={check.commutes}, "
            f"state defect={check.state_equal_defect:.3e}"
        )
    gate = tol.gate(t.dim)
    results = []
    for i, f in enumerate(f_list):
        label = f.name or f"F{i}"
        for other, side in ((t, "detector"), (e, "detected")):
            defect = commutator_defect(f.matrix, other.matrix)
            if defect > gate:
                raise PreconditionError(
                    f"{label} does not commute with the {side} "
                    f"(defect {defect:.3e})"
                )
        notes = []
        defects: list[Optional[float]] = []
        for a, b in ((t, e), (complement(t), complement(e))):
            try:
                lhs = cond_prob(f, a, rho, tol)
                rhs = cond_prob(f, b, rho, tol)
                defects.append(abs(lhs - rhs))
            except UndefinedConditionalError:
                defects.append(None)
                which = "1" if a is t else "0"
                notes.append(f"conditionals given outcome {which} undefined")
        passed = all(d <= gate for d in defects if d is not None)
        results.append(
            SimulationEquality(
                f_name=label,
                defect_outcome1=defects[0],
                defect_outcome0=defects[1],
                passed=passed,
                note="; ".join(notes),
            )
        )
    return tuple(results)


def check_C1(
    e: Projection,
    f: Projection,
    rho: DensityOperator,
    tol: Tolerance = DEFAULT_TOL,
) -> bool:
    """For commuting pairs the sandwich extends the plain joint trace."""
    if not commutes(e, f, tol):
        raise CoMeasurabilityError(
            "the extension condition only speaks about commuting pairs"
        )
    gate = tol.gate(e.dim)
    sandwich = _real_trace(
        rho.matrix @ e.matrix @ f.matrix @ e.matrix, gate, "Tr(rho.E.F.E)"
    )
    plain = _real_trace(rho.matrix @ e.matrix @ f.matrix, gate, "Tr(rho.E.F)")
    return abs(sandwich - plain) <= gate


def check_C2(
    e: Projection,
    f_family: Sequence[Projection],
    rho: DensityOperator,
    tol: Tolerance = DEFAULT_TOL,
) -> bool:
    """Additivity over an orthogonal family: p(E & sum F_j) = sum p(E & F_j)."""
    if not f_family:
        raise ValidationError("additivity check needs a nonempty family")
    total = reduce(lambda a, b: orthogonal_sum(a, b, tol), f_family)
    gate = tol.gate(e.dim) * max(1, len(f_family))
    whole = assignment_probs(e, total, rho, tol).p_e_and_f
    parts = sum(assignment_probs(e, f, rho, tol).p_e_and_f for f in f_family)
    return abs(whole - parts) <= gate


def check_C3(
    e: Projection,
    f: Projection,
    rho: DensityOperator,
    tol: Tolerance = DEFAULT_TOL,
) -> bool:
    """Complement sum rule: Tr(rho.F) = p(E & F) + p(E' & F)."""
    return assignment_probs(e, f, rho, tol).c3_residual <= tol.gate(e.dim)


def detection_form_equality(
    t: Projection,
    e: Projection,
    f: Projection,
    rho: DensityOperator,
    tol: Tolerance = DEFAULT_TOL,
) -> bool:
    """Under detection, the sandwich against E equals the joint trace with T.

    Asserts |Tr(rho.E.F.E) - Tr(rho.F.T)| <= gate for F commuting with T.
    """
    check = detects(t, e, rho, tol)
    if not check.holds:
        raise PreconditionError("the equality is only claimed under detection")
    gate = tol.gate(t.dim)
    defect = commutator_defect(f.matrix, t.matrix)
    if defect > gate:
        raise PreconditionError(
            f"F must commute with the detector (defect {defect:.3e})"
        )
    lhs = _real_trace(
        rho.matrix @ e.matrix @ f.matrix @ e.matrix, gate, "Tr(rho.E.F.E)"
    )
    rhs = _real_trace(rho.matrix @ f.matrix @ t.matrix, gate, "Tr(rho.F.T)")
    return abs(lhs - rhs) <= gate


def cz_property_check(
    t: Projection,
    e: Projection,
    rho: DensityOperator,
    sample_f: Sequence[Projection],
    tol: Tolerance = DEFAULT_TOL,
) -> bool:
    """Defining properties of the conditional functional P(F|E).

    With P(F|E) = Tr(rho.E.F.E) / Tr(rho.E), checks normalization P(I|E) = 1,
    additivity over the orthogonal pairs found inside sample_f, and the ratio
    form P(F|E) = Tr(rho.F)/Tr(rho.E) for members with F <= E. Every sampled
    F must commute with the detector t.
    """
    gate = tol.gate(e.dim)
    den = _real_trace(rho.matrix @ e.matrix, gate, "Tr(rho.E)")
    if den <= gate:
        raise PreconditionError(
            f"conditional functional undefined: Tr(rho.E) = {den!r}"
        )
    for i, f in enumerate(sample_f):
        defect = commutator_defect(f.matrix, t.matrix)
        if defect > gate:
            raise PreconditionError(
                f"sample member {f.name or i} does not commute with the "
                f"detector (defect {defect:.3e})"
            )

    def conditional(fm: CMatrix) -> float:
        num = _real_trace(
            rho.matrix @ e.matrix @ fm @ e.matrix, gate, "Tr(rho.E.F.E)"
        )
        return num / den

    ok = abs(conditional(identity(e.dim)) - 1.0) <= gate
    mats = [f.matrix for f in sample_f]
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            overlap = float(np.max(np.abs((mats[i] @ mats[j]).array)))
            if overlap > gate:
                continue
            joint = conditional(mats[i] + mats[j])
            ok = ok and abs(joint - conditional(mats[i]) - conditional(mats[j])) <= gate
    for f in sample_f:
        # F <= E means E absorbs F on the left.
        if float(np.max(np.abs((e.matrix @ f.matrix - f.matrix).array))) > gate:
            continue
        ratio = _real_trace(rho.matrix @ f.matrix, gate, "Tr(rho.F)") / den
        ok = ok and abs(conditional(f.matrix) - ratio) <= gate
    return ok


@dataclass(frozen=True)
class JointDistribution:
    """Joint outcome distribution of a commuting projection family.

    Atom keys are outcome bit vectors in the order of `observables`, listed
    lexicographically with the first observable most significant. Atoms whose
    raw probability sits within eig_cut of zero are clamped to exactly zero
    and the rest renormalized; `renormalization` records the divisor (1.0
    when nothing was clamped).
    """

    observables: tuple[Projection, ...]
    names: tuple[str, ...]
    atoms: dict[tuple[int, ...], float]
    renormalization: float

    @property
    def n(self) -> int:
        return len(self.observables)

    def prob(self, omega: Sequence[int]) -> float:
        return self.atoms[tuple(int(w) for w in omega)]

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ValidationError(f"no observable named {name!r}") from None

    def mass(self, fixed: Mapping[str | int, int]) -> float:
        """Total probability of atoms matching the fixed coordinates."""
        pinned = {}
        for key, bit in fixed.items():
            idx = key if isinstance(key, int) else self.index_of(key)
            if not 0 <= idx < self.n:
                raise ValidationError(f"observable index {idx} out of range")
            pinned[idx] = int(bit)
        return sum(
            p
            for omega, p in self.atoms.items()
            if all(omega[i] == b for i, b in pinned.items())
        )


def joint_distribution(
    observables: Sequence[Projection],
    rho: DensityOperator,
    tol: Tolerance = DEFAULT_TOL,
) -> JointDistribution:
    """Brute-force joint distribution over all 2^n outcome vectors.

    The atom for outcome vector omega is Tr(rho . prod_i E_i^(omega_i)) with
    E^1 = E and E^0 = I - E. Everything must commute pairwise, so the product
    order is immaterial and each atom is a genuine probability.
    """
    if not observables:
        raise PreconditionError("joint distribution needs at least one observable")
    if len(observables) > MAX_FAMILY:
        raise PreconditionError(
            f"family of {len(observables)} observables would need "
            f"2^{len(observables)} atoms; the limit is {MAX_FAMILY}"
        )
    dim = rho.dim
    for p in observables:
        if p.dim != dim:
            raise DimensionError(
                f"dimension mismatch: {p.name or '?'}={p.dim}, rho={dim}"
            )
    gate = tol.gate(dim)
    for i in range(len(observables)):
        for j in range(i + 1, len(observables)):
            defect = commutator_defect(
                observables[i].matrix, observables[j].matrix
            )
            if defect > gate:
                raise CoMeasurabilityError(
                    f"observables {observables[i].name or i} and "
                    f"{observables[j].name or j} do not commute "
                    f"(defect {defect:.3e}); no joint outcomes exist"
                )
    names = tuple(
        p.name if p.name else f"obs{i}" for i, p in enumerate(observables)
    )
    if len(set(names)) != len(names):
        raise ValidationError(f"observable names must be unique, got {names}")

    one = [p.matrix for p in observables]
    zero = [complement(p).matrix for p in observables]
    raw: dict[tuple[int, ...], float] = {}
    total = 0.0
    # cartesian((0, 1)) enumerates outcome vectors in ascending lexicographic
    # order with the first observable most significant.
    for omega in cartesian((0, 1), repeat=len(observables)):
        m = rho.matrix
        for i, w in enumerate(omega):
            m = m @ (one[i] if w else zero[i])
        p = _real_trace(m, gate * (2 ** len(observables)), "joint atom")
        if p < -gate:
            raise LemmaViolationError(f"joint atom {omega} came out {p!r}")
        raw[omega] = p
        total += p
    if abs(total - 1.0) > gate * (2 ** len(observables)):
        raise LemmaViolationError(f"joint atoms sum to {total!r}, not 1")

    clamped = {
        omega: (0.0 if abs(p) <= tol.eig_cut else p) for omega, p in raw.items()
    }
    mass = sum(clamped.values())
    if mass <= 0.0:
        raise LemmaViolationError("all joint atoms were clamped to zero")
    atoms = {omega: p / mass for omega, p in clamped.items()}
    return JointDistribution(
        observables=tuple(observables),
        names=names,
        atoms=atoms,
        renormalization=mass,
    )
