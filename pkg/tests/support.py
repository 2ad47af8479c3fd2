"""Shared random constructors and independent oracles.

Everything here deliberately avoids the package's own linear algebra where
an oracle is needed: tensor products are built by explicit bit indexing and
joint distributions by direct spectral decomposition, so agreement between
these values and the package is evidence, not tautology.
"""

from __future__ import annotations

import numpy as np

from qdetect import CMatrix, DensityOperator, Projection


def haar_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    phases = np.diag(r).copy()
    phases /= np.abs(phases)
    return q * phases


def projection_in_basis(v: np.ndarray, bits: np.ndarray, name: str = "") -> Projection:
    cols = v[:, np.flatnonzero(bits)]
    if cols.shape[1] == 0:
        return Projection(CMatrix(np.zeros((v.shape[0], v.shape[0]))), name=name)
    return Projection(CMatrix(cols @ cols.conj().T), name=name)


def random_projection(
    rng: np.random.Generator, dim: int, rank: int | None = None
) -> Projection:
    if rank is None:
        rank = int(rng.integers(1, dim))
    v = haar_unitary(rng, dim)
    bits = np.zeros(dim, dtype=int)
    bits[:rank] = 1
    return projection_in_basis(v, bits)


def random_density(
    rng: np.random.Generator, dim: int, rank: int | None = None
) -> DensityOperator:
    if rank is None:
        rank = int(rng.integers(1, dim + 1))
    v = haar_unitary(rng, dim)
    w = rng.dirichlet(np.ones(rank))
    cols = v[:, :rank]
    return DensityOperator(CMatrix((cols * w) @ cols.conj().T))


def random_commuting_pair(
    rng: np.random.Generator, dim: int
) -> tuple[Projection, Projection]:
    """Two projections diagonal in one shared Haar basis."""
    v = haar_unitary(rng, dim)
    be = rng.integers(0, 2, dim)
    bf = rng.integers(0, 2, dim)
    return projection_in_basis(v, be), projection_in_basis(v, bf)


def random_detecting_triple(
    rng: np.random.Generator, dim: int
) -> tuple[Projection, Projection, DensityOperator]:
    """Commuting (T, E) with rho supported where their eigenvalues agree."""
    t, e, rho, _ = random_detecting_quad(rng, dim)
    return t, e, rho


def random_detecting_quad(
    rng: np.random.Generator, dim: int
) -> tuple[Projection, Projection, DensityOperator, np.ndarray]:
    """Like random_detecting_triple, plus the shared eigenbasis.

    The basis lets callers build further observables compatible with both
    members of the pair.
    """
    v = haar_unitary(rng, dim)
    bt = rng.integers(0, 2, dim)
    be = bt.copy()
    flips = rng.random(dim) < 0.35
    be[flips] ^= 1
    agree = np.flatnonzero(bt == be)
    if agree.size == 0:
        be[0] = bt[0]
        agree = np.array([0])
    t = projection_in_basis(v, bt)
    e = projection_in_basis(v, be)
    w = rng.dirichlet(np.ones(agree.size))
    cols = v[:, agree]
    rho = DensityOperator(CMatrix((cols * w) @ cols.conj().T))
    return t, e, rho, v


def random_commuting_nondetecting_triple(
    rng: np.random.Generator, dim: int
) -> tuple[Projection, Projection, DensityOperator]:
    """Commuting (T, E) with rho giving weight to a disagreement direction."""
    v = haar_unitary(rng, dim)
    bt = rng.integers(0, 2, dim)
    be = bt.copy()
    k = int(rng.integers(0, dim))
    be[k] ^= 1
    t = projection_in_basis(v, bt)
    e = projection_in_basis(v, be)
    w = rng.dirichlet(np.ones(dim)) + 0.01
    w /= w.sum()
    rho = DensityOperator(CMatrix((v * w) @ v.conj().T))
    return t, e, rho


def refine_inside(
    rng: np.random.Generator, t: Projection, rank: int | None = None
) -> Projection:
    """A projection commuting with t (block-rotated inside t's eigenspaces)."""
    dim = t.dim
    w, v = np.linalg.eigh(t.matrix.array)
    bits = np.zeros(dim, dtype=int)
    for value in (0.0, 1.0):
        idx = np.flatnonzero(np.abs(w - value) < 0.5)
        if idx.size:
            u = haar_unitary(rng, idx.size)
            v[:, idx] = v[:, idx] @ u
            bits[idx] = rng.integers(0, 2, idx.size)
    if rank is not None:
        order = rng.permutation(dim)
        bits[:] = 0
        bits[order[:rank]] = 1
    return projection_in_basis(v, bits)


def sub_projection(
    rng: np.random.Generator, e: Projection, rank: int
) -> Projection:
    """A projection f with f <= e, spanned inside range(e)."""
    w, v = np.linalg.eigh(e.matrix.array)
    inside = np.flatnonzero(w > 0.5)
    assert rank <= inside.size
    u = haar_unitary(rng, inside.size)
    cols = v[:, inside] @ u[:, :rank]
    return Projection(CMatrix(cols @ cols.conj().T))


def random_decomposition(
    rng: np.random.Generator, rho: DensityOperator
) -> tuple[DensityOperator, DensityOperator, float]:
    """rho = lam1*rho1 + (1-lam1)*rho2 with both components genuine states."""
    dim = rho.dim
    w, v = np.linalg.eigh(rho.matrix.array)
    # Noise-level eigenvalues must become exactly zero: sqrt turns a 1e-16
    # residue into 1e-8 of support outside range(rho), ruining refinement.
    w[w < 1e-12] = 0.0
    b = (v * np.sqrt(w)) @ v.conj().T
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    big_w = g @ g.conj().T
    x = b @ big_w @ b.conj().T
    s = float(np.real(np.trace(x)))
    rho1 = DensityOperator(CMatrix(x / s))
    # rho - lam1*rho1 stays PSD for lam1 up to s / max-eig of the weight.
    cap = s / float(np.max(np.linalg.eigvalsh(big_w)))
    lam1 = float(min(0.9, rng.uniform(0.15, 0.95) * cap))
    rho2 = DensityOperator(
        CMatrix((rho.matrix.array - lam1 * rho1.matrix.array) / (1.0 - lam1))
    )
    return rho1, rho2, lam1


# ---------------------------------------------------------------------------
# Independent oracles


_SX = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_SY = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
_I2 = np.eye(2, dtype=np.complex128)
_P_PLUS = 0.5 * np.array([[1, 1], [1, 1]], dtype=np.complex128)
_P_I = 0.5 * np.array([[1, -1j], [1j, 1]], dtype=np.complex128)


def tensor4(blocks) -> np.ndarray:
    """16x16 four-factor tensor product by explicit bit indexing (no kron)."""
    assert len(blocks) == 4
    out = np.zeros((16, 16), dtype=np.complex128)
    for i in range(16):
        for j in range(16):
            value = 1.0 + 0.0j
            for q in range(4):
                bi = (i >> (3 - q)) & 1
                bj = (j >> (3 - q)) & 1
                value *= blocks[q][bi, bj]
            out[i, j] = value
    return out


def ghz_vector() -> np.ndarray:
    """(|0011> - |1100>)/sqrt(2), qubit 1 most significant."""
    psi = np.zeros(16, dtype=np.complex128)
    psi[0b0011] = 1.0 / np.sqrt(2.0)
    psi[0b1100] = -1.0 / np.sqrt(2.0)
    return psi


def outer_oracle_state() -> np.ndarray:
    """Density matrix of ghz_vector, built directly with np.outer."""
    psi = ghz_vector()
    return np.outer(psi, psi.conj())


def spectral_atoms(mats, rho, bit_tol: float = 1e-6) -> dict:
    """Joint outcome distribution via one simultaneous eigenbasis.

    Diagonalizes sum_i 3^i E_i; distinct outcome vectors land on distinct
    integer eigenvalues, so every eigenvector of the sum is a simultaneous
    eigenvector and its bit pattern can be read off one projection at a time.
    """
    total = sum((3.0**i) * m for i, m in enumerate(mats))
    _, v = np.linalg.eigh(total)
    atoms: dict = {}
    for k in range(v.shape[1]):
        vec = v[:, k]
        bits = []
        for m in mats:
            x = float(np.real(vec.conj() @ (m @ vec)))
            assert x < bit_tol or x > 1.0 - bit_tol, f"ambiguous eigenbit {x}"
            bits.append(1 if x > 0.5 else 0)
        p = float(np.real(vec.conj() @ (rho @ vec)))
        key = tuple(bits)
        atoms[key] = atoms.get(key, 0.0) + p
    return atoms
