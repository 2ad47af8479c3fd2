"""Projections, density operators, and two-valued observables.

A yes/no property is an orthogonal projection; a state is a density operator;
a +-1 valued observable is carried by the projection onto its +1 eigenspace.
This module owns the algebra on those objects: complements, commutators, the
projector measuring where two properties are jointly decided, orthogonal sums,
and the half-sum construction that turns a signed product of +-1 observables
back into a projection.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    OrthogonalityError,
    PreconditionError,
    ValidationError,
)
from .numerics import (
    DEFAULT_TOL,
    CMatrix,
    Tolerance,
    dist,
    hermiticity_defect,
    identity,
    kernel_projector,
    trace,
)


@dataclass(frozen=True)
class Projection:
    """An orthogonal projection with an optional display name.

    Validation measures both defining defects (Hermiticity and idempotency)
    and reports whichever exceed the gate, so a broken input names every
    violated invariant at once.
    """

    matrix: CMatrix
    name: str = ""
    tol: Tolerance = field(default=DEFAULT_TOL, compare=False)

    def __post_init__(self) -> None:
        gate = self.tol.gate(self.matrix.dim)
        herm = hermiticity_defect(self.matrix)
        idem = dist(self.matrix @ self.matrix, self.matrix)
        problems = []
        if herm > gate:
            problems.append(f"hermiticity defect {herm:.3e}")
        if idem > gate:
            problems.append(f"idempotency defect {idem:.3e}")
        if problems:
            label = self.name or "projection"
            raise ValidationError(f"{label}: " + ", ".join(problems))

    @property
    def dim(self) -> int:
        return self.matrix.dim

    def rank(self) -> int:
        # Eigenvalues of a valid projection cluster at 0 and 1.
        return int(round(trace(self.matrix).real))

    def __repr__(self) -> str:
        label = self.name or "?"
        return f"Projection({label}, dim={self.dim}, rank={self.rank()})"


@dataclass(frozen=True)
class DensityOperator:
    """A state: Hermitian, unit-trace, positive semidefinite.

    Eigenvalues may dip below zero by at most the gate; anything worse is
    rejected rather than silently clipped.
    """

    matrix: CMatrix
    name: str = ""
    tol: Tolerance = field(default=DEFAULT_TOL, compare=False)

    def __post_init__(self) -> None:
        gate = self.tol.gate(self.matrix.dim)
        problems = []
        herm = hermiticity_defect(self.matrix)
        if herm > gate:
            problems.append(f"hermiticity defect {herm:.3e}")
        tr_defect = abs(trace(self.matrix) - 1.0)
        if tr_defect > gate:
            problems.append(f"trace defect {tr_defect:.3e}")
        if herm <= gate:
            lo = float(np.min(np.linalg.eigvalsh(self.matrix.array)))
            if lo < -gate:
                problems.append(f"negative eigenvalue {lo:.3e}")
        if problems:
            label = self.name or "state"
            raise ValidationError(f"{label}: " + ", ".join(problems))

    @property
    def dim(self) -> int:
        return self.matrix.dim

    @classmethod
    def pure(
        cls, vector, name: str = "", tol: Tolerance = DEFAULT_TOL
    ) -> "DensityOperator":
        """Rank-one state |v><v| from a vector, normalized first."""
        v = np.asarray(vector, dtype=np.complex128).reshape(-1)
        norm = float(np.linalg.norm(v))
        if norm == 0.0:
            raise ValidationError("pure state vector must be nonzero")
        v = v / norm
        return cls(CMatrix(np.outer(v, v.conj())), name=name, tol=tol)

    def expectation(self, p: Projection) -> float:
        """Probability the property p holds in this state."""
        value = trace(self.matrix @ p.matrix)
        return float(value.real)

    def __repr__(self) -> str:
        label = self.name or "?"
        return f"DensityOperator({label}, dim={self.dim})"


@dataclass(frozen=True)
class PMObservable:
    """A +-1 valued observable, stored by its +1 eigenprojection.

    The operator itself is 2P - 1; its square is the identity by construction,
    so no extra validation is needed beyond P being a projection.
    """

    plus: Projection
    name: str = ""

    @property
    def dim(self) -> int:
        return self.plus.dim

    @property
    def operator(self) -> CMatrix:
        return 2.0 * self.plus.matrix - identity(self.dim)

    @property
    def minus(self) -> Projection:
        return complement(self.plus)

    def __repr__(self) -> str:
        label = self.name or "?"
        return f"PMObservable({label}, dim={self.dim})"


def complement(p: Projection) -> Projection:
    """The negation 1 - P of a property."""
    name = f"{p.name}'" if p.name else ""
    return Projection(identity(p.dim) - p.matrix, name=name, tol=p.tol)


def commutator(a: CMatrix, b: CMatrix) -> CMatrix:
    return a @ b - b @ a


def commutator_defect(a: CMatrix, b: CMatrix) -> float:
    """Max-abs size of [a, b]; zero means the pair is compatible."""
    return float(np.max(np.abs(commutator(a, b).array)))


def commutes(a: Projection, b: Projection, tol: Tolerance = DEFAULT_TOL) -> bool:
    return commutator_defect(a.matrix, b.matrix) <= tol.gate(a.dim)


def commutation_projection(
    a: Projection, b: Projection, tol: Tolerance = DEFAULT_TOL
) -> Projection:
    """Projector onto the subspace where the two properties are co-decided.

    This is the kernel projector of i[A, B] (Hermitian, same kernel as the
    commutator). It equals the identity exactly when the pair commutes, and is
    the zero matrix for maximally incompatible pairs.
    """
    c = 1j * commutator(a.matrix, b.matrix)
    name = ""
    if a.name and b.name:
        name = f"C({a.name},{b.name})"
    return Projection(kernel_projector(c, tol), name=name, tol=tol)


def orthogonal_sum(f: Projection, g: Projection, tol: Tolerance = DEFAULT_TOL) -> Projection:
    """Sum of two orthogonal projections, which is again a projection.

    Orthogonality means the outcomes never co-occur: F.G must vanish.
    """
    overlap = float(np.max(np.abs((f.matrix @ g.matrix).array)))
    if overlap > tol.gate(f.dim):
        raise OrthogonalityError(
            f"projections {f.name or 'F'} and {g.name or 'G'} overlap "
            f"by {overlap:.3e}, cannot form an orthogonal sum"
        )
    name = f"{f.name}+{g.name}" if f.name and g.name else ""
    return Projection(f.matrix + g.matrix, name=name, tol=tol)


def derived_projection(
    coeff: int,
    pms: Sequence[PMObservable],
    tol: Tolerance = DEFAULT_TOL,
    name: str = "",
) -> Projection:
    """Projection (1 + coeff * A_1 ... A_k) / 2 from commuting +-1 observables.

    The product of commuting +-1 observables is again a +-1 observable, so the
    half-sum is a projection. coeff must be +1 or -1; the factors must commute
    pairwise or the half-sum would not even be Hermitian.
    """
    if coeff not in (1, -1):
        raise ValidationError(f"coefficient must be +1 or -1, got {coeff}")
    if not pms:
        raise ValidationError("derived_projection needs at least one observable")
    dim = pms[0].dim
    for i, x in enumerate(pms):
        for y in pms[i + 1 :]:
            defect = commutator_defect(x.operator, y.operator)
            if defect > tol.gate(dim):
                raise PreconditionError(
                    f"observables {x.name or i} and {y.name or '?'} do not "
                    f"commute (defect {defect:.3e})"
                )
    product = pms[0].operator
    for x in pms[1:]:
        product = product @ x.operator
    matrix = 0.5 * (identity(dim) + float(coeff) * product)
    if not name:
        sign = "+" if coeff == 1 else "-"
        body = "*".join(x.name or "?" for x in pms)
        name = f"(1{sign}{body})/2"
    return Projection(matrix, name=name, tol=tol)


def projection_from_plus_eigenspace(op: CMatrix, name: str = "", tol: Tolerance = DEFAULT_TOL) -> PMObservable:
    """Wrap a +-1 operator (square equal to identity) as a PMObservable."""
    sq_defect = dist(op @ op, identity(op.dim))
    if sq_defect > tol.gate(op.dim):
        raise ValidationError(
            f"operator square differs from identity by {sq_defect:.3e}"
        )
    if hermiticity_defect(op) > tol.gate(op.dim):
        raise ValidationError("a +-1 observable must be Hermitian")
    plus = Projection(0.5 * (identity(op.dim) + op), name=f"[{name}=+1]" if name else "", tol=tol)
    return PMObservable(plus, name=name)
