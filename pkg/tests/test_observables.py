import numpy as np
import pytest

from qdetect import (
    CMatrix,
    DensityOperator,
    OrthogonalityError,
    PMObservable,
    PreconditionError,
    Projection,
    ValidationError,
    commutation_projection,
    commutator,
    commutes,
    complement,
    derived_projection,
    dist,
    identity,
    orthogonal_sum,
    zeros,
)
from qdetect.observables import commutator_defect, projection_from_plus_eigenspace

from support import (
    _I2,
    _P_I,
    _P_PLUS,
    _SX,
    _SY,
    haar_unitary,
    projection_in_basis,
    random_commuting_pair,
    random_density,
    random_projection,
    tensor4,
)


def test_projection_accepts_valid():
    Projection(CMatrix(_P_PLUS))
    Projection(identity(3))
    Projection(zeros(3))


def test_projection_reports_idempotency_defect():
    with pytest.raises(ValidationError) as err:
        Projection(CMatrix([[0.5, 0.0], [0.0, 1.0]]), name="bad")
    assert "idempotency" in str(err.value)
    assert "bad" in str(err.value)


def test_projection_reports_both_defects_at_once():
    with pytest.raises(ValidationError) as err:
        Projection(CMatrix([[0.0, 1.0], [0.0, 0.0]]))
    message = str(err.value)
    assert "hermiticity" in message and "idempotency" in message


def test_projection_rank():
    assert Projection(CMatrix(np.diag([1.0, 1.0, 0.0]))).rank() == 2


def test_density_operator_validation():
    DensityOperator(CMatrix(np.diag([0.5, 0.5])))
    with pytest.raises(ValidationError) as err:
        DensityOperator(CMatrix(np.diag([0.45, 0.45])))
    assert "trace" in str(err.value)
    with pytest.raises(ValidationError) as err:
        DensityOperator(CMatrix(np.diag([1.5, -0.5])))
    assert "negative eigenvalue" in str(err.value)
    with pytest.raises(ValidationError):
        DensityOperator(CMatrix([[0.5, 0.5], [0.0, 0.5]]))


def test_density_pure_normalizes():
    rho = DensityOperator.pure([2.0, 0.0])
    assert dist(rho.matrix, CMatrix(np.diag([1.0, 0.0]))) == 0.0
    with pytest.raises(ValidationError):
        DensityOperator.pure([0.0, 0.0])


def test_expectation():
    rho = DensityOperator.pure([1.0, 0.0])
    assert rho.expectation(Projection(CMatrix(_P_PLUS))) == pytest.approx(0.5)


def test_complement_matches_bit_index_oracle(ghsz):
    got = complement(ghsz.observable("E_alpha"))
    oracle = tensor4([np.eye(2) - _P_PLUS, _I2, _I2, _I2])
    assert np.max(np.abs(got.matrix.array - oracle)) < 1e-14
    assert got.name == "E_alpha'"


def test_complement_involution():
    rng = np.random.default_rng(3)
    for _ in range(20):
        p = random_projection(rng, 6)
        assert dist(complement(complement(p)).matrix, p.matrix) < 1e-12
        assert dist(complement(p).matrix + p.matrix, identity(6)) < 6e-10


def test_commutes_on_scenario_pairs(ghsz):
    assert commutes(ghsz.observable("E_alpha"), ghsz.observable("F"))
    assert not commutes(ghsz.observable("E_alpha"), ghsz.observable("E_beta"))
    assert commutes(ghsz.observable("M"), ghsz.observable("G_alpha"))


def test_disjoint_factor_commutators_vanish_exactly(ghsz):
    c = commutator(ghsz.observable("E_alpha").matrix, ghsz.observable("F").matrix)
    assert float(np.max(np.abs(c.array))) == 0.0


def test_commutation_projection_self_is_identity():
    p = Projection(CMatrix(_P_PLUS))
    assert dist(commutation_projection(p, p).matrix, identity(2)) < 1e-12


def test_commutation_projection_of_conjugate_orientations_is_zero():
    # The two single-qubit orientations are maximally incompatible: the
    # commutator has eigenvalues +-1/2 and an empty kernel.
    cp = commutation_projection(Projection(CMatrix(_P_PLUS)), Projection(CMatrix(_P_I)))
    assert cp.rank() == 0
    assert dist(cp.matrix, zeros(2)) < 1e-12


def test_commutation_projection_lifted_pair_still_zero(ghsz):
    # Lifting with identities scales the commutator's eigenvalue multiplicity
    # but adds nothing to its kernel.
    cp = commutation_projection(ghsz.observable("E_alpha"), ghsz.observable("E_beta"))
    assert cp.rank() == 0
    assert dist(cp.matrix, zeros(16)) < 1e-12


def test_commutation_projection_is_identity_iff_commuting():
    rng = np.random.default_rng(17)
    for _ in range(25):
        dim = int(rng.integers(2, 9))
        e, f = random_commuting_pair(rng, dim)
        cp = commutation_projection(e, f)
        assert dist(cp.matrix, identity(dim)) < 1e-8 * dim
    for _ in range(25):
        dim = int(rng.integers(2, 9))
        e = random_projection(rng, dim)
        f = random_projection(rng, dim)
        if commutes(e, f):
            continue
        cp = commutation_projection(e, f)
        assert dist(cp.matrix, identity(dim)) > 1e-6


def test_orthogonal_sum_cases():
    e = Projection(CMatrix(np.diag([1.0, 0.0, 0.0])))
    f = Projection(CMatrix(np.diag([0.0, 1.0, 0.0])))
    assert dist(orthogonal_sum(e, f).matrix, CMatrix(np.diag([1.0, 1.0, 0.0]))) == 0.0
    p = Projection(CMatrix(_P_PLUS))
    assert dist(orthogonal_sum(p, complement(p)).matrix, identity(2)) < 1e-12
    with pytest.raises(OrthogonalityError):
        orthogonal_sum(p, p)


def test_derived_projection_reproduces_scenario_operators(ghsz):
    # M = (1 - sx x sx x 1 x sx)/2 and S = (1 + sx x sx x sy x 1)/2 in the
    # four-qubit layout, checked against the independent tensor build.
    m_oracle = 0.5 * (np.eye(16) - tensor4([_SX, _SX, _I2, _SX]))
    s_oracle = 0.5 * (np.eye(16) + tensor4([_SX, _SX, _SY, _I2]))
    assert np.max(np.abs(ghsz.observable("M").matrix.array - m_oracle)) < 1e-14
    assert np.max(np.abs(ghsz.observable("S").matrix.array - s_oracle)) < 1e-14


def test_derived_projection_single_factor_gives_complement():
    e = Projection(CMatrix(_P_PLUS), name="E")
    got = derived_projection(-1, [PMObservable(e, "A")])
    assert dist(got.matrix, complement(e).matrix) < 1e-12


def test_derived_projection_rejects_bad_coefficient():
    e = PMObservable(Projection(CMatrix(_P_PLUS)))
    with pytest.raises(ValidationError):
        derived_projection(2, [e])
    with pytest.raises(ValidationError):
        derived_projection(1, [])


def test_derived_projection_rejects_non_commuting_factors():
    a = PMObservable(Projection(CMatrix(_P_PLUS)), "A")
    b = PMObservable(Projection(CMatrix(_P_I)), "B")
    with pytest.raises(PreconditionError):
        derived_projection(1, [a, b])


def test_derived_projection_commutes_with_factors():
    rng = np.random.default_rng(23)
    for _ in range(20):
        dim = int(rng.integers(2, 9))
        v = haar_unitary(rng, dim)
        pms = [
            PMObservable(projection_in_basis(v, rng.integers(0, 2, dim)), f"X{i}")
            for i in range(3)
        ]
        coeff = int(rng.choice([1, -1]))
        p = derived_projection(coeff, pms)
        assert dist(p.matrix @ p.matrix, p.matrix) < 1e-10 * dim
        for x in pms:
            assert commutator_defect(p.matrix, x.operator) < 1e-10 * dim


def test_pm_observable_squares_to_identity():
    rng = np.random.default_rng(29)
    for _ in range(10):
        dim = int(rng.integers(2, 9))
        x = PMObservable(random_projection(rng, dim))
        assert dist(x.operator @ x.operator, identity(dim)) < 1e-12 * dim


def test_pm_observable_wrap_round_trip():
    e = Projection(CMatrix(_P_PLUS), name="E")
    wrapped = projection_from_plus_eigenspace(PMObservable(e).operator, "A")
    assert dist(wrapped.plus.matrix, e.matrix) < 1e-12
    with pytest.raises(ValidationError):
        projection_from_plus_eigenspace(CMatrix([[2.0, 0.0], [0.0, 1.0]]))


def test_affine_images_share_spectral_projectors():
    # A +-1 observable pushed through an affine map keeps the same spectral
    # projectors; the degenerate map collapses them to the full identity.
    rng = np.random.default_rng(31)
    for _ in range(25):
        dim = int(rng.integers(2, 9))
        e = random_projection(rng, dim)
        a = float(rng.uniform(0.5, 2.0))
        b = float(rng.normal())
        op = 2.0 * e.matrix - identity(dim)
        image = CMatrix(a * op.array + b * np.eye(dim))
        w, v = np.linalg.eigh(image.array)
        top = v[:, w > b]
        proj_top = top @ top.conj().T
        assert np.max(np.abs(proj_top - e.matrix.array)) < 1e-9 * dim
    # a = 0: the image is b*I and its single spectral projector is E + E'.
    e = Projection(CMatrix(_P_PLUS))
    degenerate = CMatrix(0.0 * (2.0 * e.matrix - identity(2)).array + 1.5 * np.eye(2))
    w, _ = np.linalg.eigh(degenerate.array)
    assert np.allclose(w, [1.5, 1.5])
    assert dist(CMatrix(e.matrix.array + complement(e).matrix.array), identity(2)) < 1e-12
