"""Named concrete constructions and scenario files.

Three built-in scenarios:

* a four-qubit GHSZ-style setup whose four detection relations, combined
  with an exhaustively enumerable set of sign constraints, rule out reading
  detector outcomes as pre-existing measured values;
* a two-dimensional counterexample where the complement sum rule fails for
  two pure states yet holds for their even mixture;
* a four-dimensional pair of non-commuting rank-two projections sharing a
  common unit eigenvector, giving a rank-one detector for both.

Scenarios serialize to a small JSON format; loading re-validates everything.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass
from itertools import combinations, product as cartesian
from typing import Optional, Sequence, Union

import numpy as np

from .errors import (
    DimensionError,
    PreconditionError,
    ScenarioFormatError,
    UnknownObservableError,
    ValidationError,
)
from .numerics import CMatrix, DEFAULT_TOL, Tolerance, kron, outer
from .observables import (
    DensityOperator,
    PMObservable,
    Projection,
    commutator_defect,
    derived_projection,
)
from .detection import detects
from .assignment import assignment_probs
from .reporting import Report

# The seven outcome symbols of the sign-constraint system, in display order.
CONSTRAINT_SYMBOLS = (
    "a_alpha",
    "a_beta",
    "b",
    "c_alpha",
    "c_beta",
    "d_alpha",
    "d_beta",
)


@dataclass(frozen=True)
class SignAssignment:
    """One choice of +-1 value for every constraint symbol."""

    values: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        for symbol, value in self.values:
            if value not in (1, -1):
                raise ValidationError(
                    f"sign for {symbol} must be +1 or -1, got {value}"
                )
        names = [s for s, _ in self.values]
        if len(set(names)) != len(names):
            raise ValidationError("duplicate symbol in sign assignment")

    def __getitem__(self, symbol: str) -> int:
        for s, v in self.values:
            if s == symbol:
                return v
        raise UnknownObservableError(f"no sign recorded for {symbol!r}")

    def as_dict(self) -> dict[str, int]:
        return dict(self.values)


@dataclass(frozen=True)
class SignEquation:
    """left product = sign * right product, over +-1 symbols."""

    left: tuple[str, ...]
    right: tuple[str, ...]
    sign: int

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValidationError(f"equation sign must be +1 or -1, got {self.sign}")
        if not self.left or not self.right:
            raise ValidationError("equation monomials must be nonempty")

    def satisfied_by(self, assignment: SignAssignment) -> bool:
        lhs = math.prod(assignment[s] for s in self.left)
        rhs = math.prod(assignment[s] for s in self.right)
        return lhs == self.sign * rhs


@dataclass(frozen=True)
class ConstraintSet:
    """A conjunction of sign equations over a fixed symbol list."""

    symbols: tuple[str, ...]
    equations: tuple[SignEquation, ...]

    def __post_init__(self) -> None:
        known = set(self.symbols)
        for eq in self.equations:
            for s in eq.left + eq.right:
                if s not in known:
                    raise ValidationError(f"equation uses undeclared symbol {s!r}")

    def satisfied_by(self, assignment: SignAssignment) -> bool:
        return all(eq.satisfied_by(assignment) for eq in self.equations)


def ghsz_sign_constraints() -> ConstraintSet:
    """The four product constraints of the GHSZ-style scenario."""
    def eq(left, right, sign):
        return SignEquation(tuple(left), tuple(right), sign)

    return ConstraintSet(
        symbols=CONSTRAINT_SYMBOLS,
        equations=(
            eq(("a_alpha", "b"), ("c_alpha", "d_alpha"), -1),
            eq(("a_beta", "b"), ("c_beta", "d_alpha"), -1),
            eq(("a_beta", "b"), ("c_alpha", "d_beta"), -1),
            eq(("a_alpha", "b"), ("c_beta", "d_beta"), 1),
        ),
    )


def enumerate_constraints(
    cs: ConstraintSet,
) -> tuple[list[SignAssignment], int]:
    """Exhaustive check of every +-1 assignment against the constraint set.

    Returns the satisfying assignments and the total number tried (2^k for
    k symbols).
    """
    satisfying = []
    total = 0
    for signs in cartesian((1, -1), repeat=len(cs.symbols)):
        total += 1
        assignment = SignAssignment(tuple(zip(cs.symbols, signs)))
        if cs.satisfied_by(assignment):
            satisfying.append(assignment)
    return satisfying, total


@dataclass(frozen=True)
class CommutationClaim:
    a: str
    b: str
    expected: bool = True


@dataclass(frozen=True)
class DetectionClaim:
    t: str
    e: str


@dataclass(frozen=True)
class ConstraintClaim:
    constraints: ConstraintSet
    satisfiable: bool = False


Claim = Union[CommutationClaim, DetectionClaim, ConstraintClaim]


class Scenario:
    """A named state, named projections, and the claims made about them.

    Immutable after construction. Equality compares the scenario name, the
    dimension, the state and observable matrices bit for bit, and the claims;
    display names of individual operators are not part of equality.
    """

    __slots__ = ("name", "dim", "state", "observables", "declared_claims", "state_vector")

    def __init__(
        self,
        name: str,
        dim: int,
        state: DensityOperator,
        observables: dict[str, Projection],
        declared_claims: Sequence[Claim] = (),
        state_vector: Optional[np.ndarray] = None,
    ) -> None:
        if state.dim != dim:
            raise DimensionError(
                f"state dimension {state.dim} does not match scenario dim {dim}"
            )
        for key, p in observables.items():
            if p.dim != dim:
                raise DimensionError(
                    f"observable {key!r} has dimension {p.dim}, expected {dim}"
                )
        if state_vector is not None:
            vec = np.array(state_vector, dtype=np.complex128, copy=True).reshape(-1)
            if vec.shape[0] != dim:
                raise DimensionError(
                    f"state vector length {vec.shape[0]} does not match dim {dim}"
                )
            vec.setflags(write=False)
        else:
            vec = None
        referenced = set()
        for claim in declared_claims:
            if isinstance(claim, CommutationClaim):
                referenced.update((claim.a, claim.b))
            elif isinstance(claim, DetectionClaim):
                referenced.update((claim.t, claim.e))
        missing = sorted(referenced - set(observables))
        if missing:
            raise UnknownObservableError(
                f"claims reference undeclared observables: {', '.join(missing)}"
            )
        object.__setattr__(self, "name", str(name))
        object.__setattr__(self, "dim", int(dim))
        object.__setattr__(self, "state", state)
        object.__setattr__(self, "observables", dict(observables))
        object.__setattr__(self, "declared_claims", tuple(declared_claims))
        object.__setattr__(self, "state_vector", vec)

    def __setattr__(self, key, value) -> None:
        raise AttributeError("Scenario is immutable")

    def observable(self, name: str) -> Projection:
        try:
            return self.observables[name]
        except KeyError:
            known = ", ".join(sorted(self.observables))
            raise UnknownObservableError(
                f"no observable named {name!r}; scenario declares: {known}"
            ) from None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Scenario):
            return NotImplemented
        if (
            self.name != other.name
            or self.dim != other.dim
            or self.declared_claims != other.declared_claims
            or set(self.observables) != set(other.observables)
        ):
            return False
        if not np.array_equal(self.state.matrix.array, other.state.matrix.array):
            return False
        for key, p in self.observables.items():
            if not np.array_equal(p.matrix.array, other.observables[key].matrix.array):
                return False
        if (self.state_vector is None) != (other.state_vector is None):
            return False
        if self.state_vector is not None and not np.array_equal(
            self.state_vector, other.state_vector
        ):
            return False
        return True

    def __repr__(self) -> str:
        return (
            f"Scenario({self.name!r}, dim={self.dim}, "
            f"observables={sorted(self.observables)})"
        )


def _unit_vector(entries) -> np.ndarray:
    v = np.array(entries, dtype=np.complex128, copy=True).reshape(-1)
    norm = float(np.linalg.norm(v))
    if norm == 0.0:
        raise ValidationError("state vector must be nonzero")
    # Do not renormalize an already-unit vector: keeps round trips bit-exact.
    if abs(norm - 1.0) > 1e-12:
        v = v / norm
    v.setflags(write=False)
    return v


# Single-qubit blocks: projectors onto (|0>+|1>)/sqrt(2) and (|0>+i|1>)/sqrt(2).
_HALF_ONES = CMatrix([[0.5, 0.5], [0.5, 0.5]])
_HALF_I = CMatrix([[0.5, -0.5j], [0.5j, 0.5]])
_I2 = CMatrix([[1.0, 0.0], [0.0, 1.0]])


def _one_qubit_lift(block: CMatrix, factor: int, name: str) -> Projection:
    """Place a 2x2 block on one of four qubits, identity elsewhere."""
    factors = [_I2, _I2, _I2, _I2]
    factors[factor] = block
    return Projection(kron(*factors), name=name)


def build_ghsz() -> Scenario:
    """The four-qubit no-go scenario.

    Seven single-qubit projections (two orientations on qubits 1, 3, 4 and
    one on qubit 2), the singlet-like state across qubits (1,2) vs (3,4),
    four derived projections built from signed products of the associated
    +-1 observables, the detection claims tying each derived projection to a
    single-qubit one, and the sign-constraint system those detections imply.
    """
    e_alpha = _one_qubit_lift(_HALF_ONES, 0, "E_alpha")
    e_beta = _one_qubit_lift(_HALF_I, 0, "E_beta")
    f = _one_qubit_lift(_HALF_ONES, 1, "F")
    g_alpha = _one_qubit_lift(_HALF_ONES, 2, "G_alpha")
    g_beta = _one_qubit_lift(_HALF_I, 2, "G_beta")
    l_alpha = _one_qubit_lift(_HALF_ONES, 3, "L_alpha")
    l_beta = _one_qubit_lift(_HALF_I, 3, "L_beta")

    a_alpha = PMObservable(e_alpha, "A_alpha")
    a_beta = PMObservable(e_beta, "A_beta")
    b = PMObservable(f, "B")
    c_alpha = PMObservable(g_alpha, "C_alpha")
    c_beta = PMObservable(g_beta, "C_beta")
    d_alpha = PMObservable(l_alpha, "D_alpha")
    d_beta = PMObservable(l_beta, "D_beta")

    m = derived_projection(-1, [a_alpha, b, d_alpha], name="M")
    n = derived_projection(-1, [b, c_beta, d_alpha], name="N")
    r = derived_projection(-1, [a_beta, b, c_alpha], name="R")
    s = derived_projection(+1, [a_alpha, b, c_beta], name="S")

    # |0011> - |1100>, qubit 1 most significant: indices 3 and 12.
    raw = np.zeros(16, dtype=np.complex128)
    raw[3] = 1.0
    raw[12] = -1.0
    psi0 = _unit_vector(raw)
    rho0 = DensityOperator(outer(psi0), name="rho0")

    quadruple = ("E_alpha", "F", "G_beta", "L_alpha")
    claims: list[Claim] = [
        CommutationClaim(x, y) for x, y in combinations(quadruple, 2)
    ]
    pairs = (("M", "G_alpha"), ("N", "E_beta"), ("R", "L_beta"), ("S", "L_beta"))
    claims.extend(CommutationClaim(t, e) for t, e in pairs)
    claims.extend(DetectionClaim(t, e) for t, e in pairs)
    claims.append(ConstraintClaim(ghsz_sign_constraints(), satisfiable=False))

    return Scenario(
        name="ghsz",
        dim=16,
        state=rho0,
        observables={
            "E_alpha": e_alpha,
            "E_beta": e_beta,
            "F": f,
            "G_alpha": g_alpha,
            "G_beta": g_beta,
            "L_alpha": l_alpha,
            "L_beta": l_beta,
            "M": m,
            "N": n,
            "R": r,
            "S": s,
        },
        declared_claims=claims,
        state_vector=psi0,
    )


def verify_scenario(scn: Scenario, tol: Tolerance = DEFAULT_TOL) -> Report:
    """Check every declared claim of a scenario; one report entry per claim."""
    report = Report(command="verify", inputs={"scenario": scn.name})
    gate = tol.gate(scn.dim)
    for claim in scn.declared_claims:
        if isinstance(claim, CommutationClaim):
            defect = commutator_defect(
                scn.observable(claim.a).matrix, scn.observable(claim.b).matrix
            )
            observed = defect <= gate
            report.add(
                name=f"commutation:{claim.a}~{claim.b}",
                passed=observed == claim.expected,
                residual=defect,
                ref="claim:commute",
                detail="" if claim.expected else "expected non-commuting",
            )
        elif isinstance(claim, DetectionClaim):
            check = detects(
                scn.observable(claim.t), scn.observable(claim.e), scn.state, tol
            )
            report.add(
                name=f"detection:{claim.t}->{claim.e}",
                passed=check.holds,
                residual=max(check.commutator_defect, check.state_equal_defect),
                ref="claim:detect",
                detail=check.note,
            )
        elif isinstance(claim, ConstraintClaim):
            satisfying, total = enumerate_constraints(claim.constraints)
            observed = len(satisfying) > 0
            report.add(
                name="constraints:satisfiable",
                passed=observed == claim.satisfiable,
                residual=float(len(satisfying)),
                ref="claim:constraints",
                detail=f"{len(satisfying)} of {total} sign assignments satisfy",
            )
        else:
            raise ValidationError(f"unknown claim type {type(claim).__name__}")
    return report


def verify_ghsz(scn: Scenario, tol: Tolerance = DEFAULT_TOL) -> Report:
    """Verify the no-go scenario's claims and draw the combined conclusion.

    All commutation and detection claims must pass, and the sign-constraint
    system must have no satisfying assignment; together these rule out
    identifying the detector outcomes with jointly assigned measured values.
    """
    if not scn.declared_claims:
        raise PreconditionError("scenario declares no claims to verify")
    if not any(isinstance(c, DetectionClaim) for c in scn.declared_claims):
        raise PreconditionError("scenario declares no detection claims")
    report = verify_scenario(scn, tol)
    report.command = "ghsz"
    constraint_checks = [
        c for c in report.checks if c.ref == "claim:constraints"
    ]
    physics = [c for c in report.checks if c.ref != "claim:constraints"]
    no_go = (
        all(c.passed for c in physics)
        and len(constraint_checks) > 0
        and all(c.passed and c.residual == 0.0 for c in constraint_checks)
    )
    report.add(
        name="no-go:identification",
        passed=no_go,
        residual=None,
        ref="conclusion",
        detail=(
            "detections hold but no joint sign assignment satisfies the "
            "constraints; outcome identification is inconsistent"
        ),
    )
    return report


def build_example_44(theta: float) -> Scenario:
    """Two-dimensional hidden-inconsistency counterexample at angle theta.

    E projects onto (|0>+|1>)/sqrt(2); F projects onto cos(theta)|0> +
    i sin(theta)|1>. The scenario state is the even mixture of |0><0| and
    |1><1| (the two pure states for which the complement sum rule fails).
    """
    theta = float(theta)
    if not 0.0 < theta < math.pi / 4.0:
        warnings.warn(
            f"theta={theta!r} lies outside the open interval (0, pi/4); "
            "the construction still works but the sum-rule failure may vanish",
            stacklevel=2,
        )
    e = Projection(_HALF_ONES, name="E")
    f_vec = _unit_vector([math.cos(theta), 1j * math.sin(theta)])
    f = Projection(outer(f_vec), name="F")
    p1 = Projection(CMatrix([[1.0, 0.0], [0.0, 0.0]]), name="P1")
    p2 = Projection(CMatrix([[0.0, 0.0], [0.0, 1.0]]), name="P2")
    mixture = DensityOperator(
        CMatrix([[0.5, 0.0], [0.0, 0.5]]), name="mixture"
    )
    return Scenario(
        name=f"example44-theta={theta!r}",
        dim=2,
        state=mixture,
        observables={"E": e, "F": f, "P1": p1, "P2": p2},
        declared_claims=[CommutationClaim("E", "F", expected=False)],
    )


def verify_example_44(theta: float, tol: Tolerance = DEFAULT_TOL) -> Report:
    """Check the predicted sum-rule residuals at angle theta.

    The complement sum rule for (E, F) must miss by |cos^2(theta) - 1/2| at
    the first pure state, by |sin^2(theta) - 1/2| at the second, and must
    hold exactly at their even mixture.
    """
    scn = build_example_44(theta)
    e = scn.observable("E")
    f = scn.observable("F")
    rho1 = DensityOperator(scn.observable("P1").matrix, name="rho1")
    rho2 = DensityOperator(scn.observable("P2").matrix, name="rho2")
    gate = tol.gate(scn.dim)

    report = Report(command="example44", inputs={"theta": float(theta)})
    predicted = {
        "rho1": abs(math.cos(theta) ** 2 - 0.5),
        "rho2": abs(math.sin(theta) ** 2 - 0.5),
    }
    measured = {}
    for label, rho in (("rho1", rho1), ("rho2", rho2), ("mixture", scn.state)):
        residual = assignment_probs(e, f, rho, tol).c3_residual
        measured[label] = residual
        if label == "mixture":
            report.add(
                name="sum-rule:mixture",
                passed=residual <= gate,
                residual=residual,
                ref="claim:sum-rule",
                detail="must hold at the even mixture",
            )
        else:
            deviation = abs(residual - predicted[label])
            report.add(
                name=f"sum-rule-residual:{label}",
                passed=deviation <= gate,
                residual=residual,
                ref="claim:sum-rule",
                detail=f"predicted residual {predicted[label]!r}",
            )
    predicted_hidden = predicted["rho1"] > gate and predicted["rho2"] > gate
    observed_hidden = (
        measured["rho1"] > gate
        and measured["rho2"] > gate
        and measured["mixture"] <= gate
    )
    report.add(
        name="hidden-inconsistency",
        passed=predicted_hidden == observed_hidden,
        residual=None,
        ref="conclusion",
        detail=(
            "sum rule fails for both pure components yet holds for their "
            "mixture"
            if observed_hidden
            else "no hidden-inconsistency pattern at this angle"
        ),
    )
    return report


def build_rt_analogue() -> Scenario:
    """Non-commuting rank-two projections with a designed common eigenvector.

    In dimension four: E spans {psi, u}, F spans {psi, v}, with u and v unit
    vectors orthogonal to psi and overlapping by 1/2. The scenario state is
    |psi><psi|, which is detected by the rank-one T = |psi><psi| for both.
    """
    psi = _unit_vector([1.0, 0.0, 0.0, 0.0])
    u = np.array([0.0, 1.0, 0.0, 0.0], dtype=np.complex128)
    v = np.array([0.0, 0.5, math.sqrt(3.0) / 2.0, 0.0], dtype=np.complex128)
    e = Projection(outer(psi) + outer(u), name="E")
    f = Projection(outer(psi) + outer(v), name="F")
    t = Projection(outer(psi), name="T")
    state = DensityOperator(outer(psi), name="psi")
    return Scenario(
        name="rt-analogue",
        dim=4,
        state=state,
        observables={"E": e, "F": f, "T": t},
        declared_claims=[
            CommutationClaim("E", "F", expected=False),
            DetectionClaim("T", "E"),
            DetectionClaim("T", "F"),
        ],
        state_vector=psi,
    )


# ---------------------------------------------------------------------------
# Serialization


def _complex_to_pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _matrix_to_json(m: CMatrix) -> list[list[list[float]]]:
    return [[_complex_to_pair(z) for z in row] for row in m.array.tolist()]


def _vector_to_json(v: np.ndarray) -> list[list[float]]:
    return [_complex_to_pair(z) for z in v.tolist()]


def _claim_to_json(claim: Claim) -> dict:
    if isinstance(claim, CommutationClaim):
        return {"kind": "commute", "a": claim.a, "b": claim.b, "expected": claim.expected}
    if isinstance(claim, DetectionClaim):
        return {"kind": "detect", "t": claim.t, "e": claim.e}
    if isinstance(claim, ConstraintClaim):
        return {
            "kind": "constraints",
            "symbols": list(claim.constraints.symbols),
            "equations": [
                {"left": list(eq.left), "right": list(eq.right), "sign": eq.sign}
                for eq in claim.constraints.equations
            ],
            "satisfiable": claim.satisfiable,
        }
    raise ValidationError(f"unknown claim type {type(claim).__name__}")


def save_scenario(scn: Scenario, path) -> None:
    """Write a scenario as JSON; floats serialize round-trip exactly."""
    if scn.state_vector is not None:
        state_json = {"type": "pure", "vector": _vector_to_json(scn.state_vector)}
    else:
        state_json = {"type": "density", "matrix": _matrix_to_json(scn.state.matrix)}
    doc = {
        "name": scn.name,
        "dim": scn.dim,
        "state": state_json,
        "observables": {
            key: _matrix_to_json(p.matrix) for key, p in scn.observables.items()
        },
        "claims": [_claim_to_json(c) for c in scn.declared_claims],
    }
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(doc, handle, indent=2)
        handle.write("\n")


def _reject_duplicate_keys(pairs):
    seen = {}
    for key, value in pairs:
        if key in seen:
            raise ScenarioFormatError(f"duplicate key {key!r} in scenario file")
        seen[key] = value
    return seen


def _parse_pair(entry, where: str) -> complex:
    if (
        not isinstance(entry, list)
        or len(entry) != 2
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in entry)
    ):
        raise ScenarioFormatError(
            f"{where}: expected a [re, im] number pair, got {entry!r}"
        )
    return complex(float(entry[0]), float(entry[1]))


def _parse_matrix(rows, dim: int, where: str) -> CMatrix:
    if not isinstance(rows, list) or not rows:
        raise ScenarioFormatError(f"{where}: expected a nested matrix array")
    parsed = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != len(rows):
            raise ScenarioFormatError(f"{where}: row {i} is not square")
        parsed.append([_parse_pair(z, f"{where}[{i}]") for z in row])
    if len(parsed) != dim:
        raise DimensionError(
            f"{where}: matrix is {len(parsed)}x{len(parsed)}, scenario dim is {dim}"
        )
    return CMatrix(parsed)


def _parse_claim(entry, index: int) -> Claim:
    if not isinstance(entry, dict):
        raise ScenarioFormatError(f"claims[{index}]: expected an object")
    kind = entry.get("kind")
    if kind == "commute":
        try:
            return CommutationClaim(
                a=str(entry["a"]),
                b=str(entry["b"]),
                expected=bool(entry.get("expected", True)),
            )
        except KeyError as missing:
            raise ScenarioFormatError(
                f"claims[{index}]: commute claim missing {missing}"
            ) from None
    if kind == "detect":
        try:
            return DetectionClaim(t=str(entry["t"]), e=str(entry["e"]))
        except KeyError as missing:
            raise ScenarioFormatError(
                f"claims[{index}]: detect claim missing {missing}"
            ) from None
    if kind == "constraints":
        try:
            symbols = tuple(str(s) for s in entry["symbols"])
            equations = tuple(
                SignEquation(
                    left=tuple(str(s) for s in eq["left"]),
                    right=tuple(str(s) for s in eq["right"]),
                    sign=int(eq["sign"]),
                )
                for eq in entry["equations"]
            )
            satisfiable = bool(entry.get("satisfiable", False))
        except (KeyError, TypeError) as bad:
            raise ScenarioFormatError(
                f"claims[{index}]: malformed constraints claim ({bad})"
            ) from None
        return ConstraintClaim(ConstraintSet(symbols, equations), satisfiable)
    raise ScenarioFormatError(f"claims[{index}]: unknown claim kind {kind!r}")


def load_scenario(path, tol: Tolerance = DEFAULT_TOL) -> Scenario:
    """Read and fully validate a scenario file.

    Every matrix is re-validated as a Projection or DensityOperator, so a
    hand-edited file with a broken invariant fails here with the invariant
    named, not deep inside a later computation.
    """
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as err:
        raise ScenarioFormatError(f"cannot read scenario file {path}: {err}") from err
    try:
        doc = json.loads(text, object_pairs_hook=_reject_duplicate_keys)
    except json.JSONDecodeError as err:
        raise ScenarioFormatError(f"scenario file {path} is not valid JSON: {err}") from err
    if not isinstance(doc, dict):
        raise ScenarioFormatError("scenario file must contain a JSON object")
    for key in ("name", "dim", "state", "observables", "claims"):
        if key not in doc:
            raise ScenarioFormatError(f"scenario file missing required key {key!r}")
    name = str(doc["name"])
    dim = doc["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ScenarioFormatError(f"dim must be a positive integer, got {dim!r}")

    state_doc = doc["state"]
    if not isinstance(state_doc, dict) or "type" not in state_doc:
        raise ScenarioFormatError("state must be an object with a 'type' field")
    if state_doc["type"] == "pure":
        entries = state_doc.get("vector")
        if not isinstance(entries, list):
            raise ScenarioFormatError("pure state needs a 'vector' array")
        vec = np.array(
            [_parse_pair(z, "state.vector") for z in entries], dtype=np.complex128
        )
        if vec.shape[0] != dim:
            raise DimensionError(
                f"state vector length {vec.shape[0]} does not match dim {dim}"
            )
        vec = _unit_vector(vec)
        state = DensityOperator(outer(vec), name="state", tol=tol)
        state_vector: Optional[np.ndarray] = vec
    elif state_doc["type"] == "density":
        matrix = _parse_matrix(state_doc.get("matrix"), dim, "state.matrix")
        state = DensityOperator(matrix, name="state", tol=tol)
        state_vector = None
    else:
        raise ScenarioFormatError(
            f"state type must be 'pure' or 'density', got {state_doc['type']!r}"
        )

    obs_doc = doc["observables"]
    if not isinstance(obs_doc, dict):
        raise ScenarioFormatError("observables must be a name->matrix object")
    observables = {}
    for key, rows in obs_doc.items():
        matrix = _parse_matrix(rows, dim, f"observables[{key}]")
        observables[str(key)] = Projection(matrix, name=str(key), tol=tol)

    claims_doc = doc["claims"]
    if not isinstance(claims_doc, list):
        raise ScenarioFormatError("claims must be an array")
    claims = [_parse_claim(entry, i) for i, entry in enumerate(claims_doc)]

    return Scenario(
        name=name,
        dim=dim,
        state=state,
        observables=observables,
        declared_claims=claims,
        state_vector=state_vector,
    )
