"""Concrete specimen ensembles sampled from a joint outcome distribution.

Each record stands for one specimen that actually underwent a joint
measurement of a commuting family; its outcomes are drawn i.i.d. from the
clamped atom distribution. Because zero-probability atoms are exactly zero
after clamping, statements like "a detecting pair never disagrees" hold
exactly in every sample, not just statistically.

Sampling is counter-based: record i consumes the first draw of Philox
counter block i, so any partition of the index range across workers
reproduces the single-worker ensemble bit for bit.
"""

from __future__ import annotations

import csv
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import sqrt
from typing import Sequence

import numpy as np

from .assignment import JointDistribution
from .errors import PreconditionError, UnknownObservableError, ValidationError
from .reporting import Report

# Philox-4x64 emits 4 raw uint64 words per counter block; Generator.random
# consumes one word per double. Using only the first word of each block keys
# every record to its own block index.
_WORDS_PER_BLOCK = 4

# An existential "some record lands in this atom" is only asserted when the
# expected count is at least this large; below it absence is plausible noise.
MIN_EXPECTED_COUNT = 10.0


@dataclass(frozen=True)
class SpecimenRecord:
    """One measured specimen: an id and a 0/1 outcome per family member."""

    id: int
    outcomes: dict[str, int]


@dataclass(frozen=True)
class Ensemble:
    """An ordered collection of specimen records for one measured family."""

    rho_name: str
    seed: int
    family: tuple[str, ...]
    records: tuple[SpecimenRecord, ...]

    @property
    def n(self) -> int:
        return len(self.records)

    def count_outcome(self, name: str, bit: int) -> int:
        if name not in self.family:
            raise UnknownObservableError(
                f"{name!r} is not in the measured family {self.family}"
            )
        return sum(1 for r in self.records if r.outcomes[name] == bit)

    def count_atom(self, omega: Sequence[int]) -> int:
        key = tuple(int(w) for w in omega)
        if len(key) != len(self.family):
            raise ValidationError(
                f"outcome vector length {len(key)} does not match family size "
                f"{len(self.family)}"
            )
        return sum(
            1
            for r in self.records
            if tuple(r.outcomes[name] for name in self.family) == key
        )

    def to_csv(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["id", *self.family])
            for r in self.records:
                writer.writerow([r.id, *(r.outcomes[name] for name in self.family)])


def _uniforms(seed: int, start: int, count: int) -> np.ndarray:
    """Uniform doubles for record indices [start, start + count)."""
    bits = np.random.Philox(key=seed)
    bits.advance(start)
    return np.random.Generator(bits).random(_WORDS_PER_BLOCK * count)[
        ::_WORDS_PER_BLOCK
    ]


def sample_ensemble(
    dist: JointDistribution,
    n: int,
    seed: int,
    *,
    rho_name: str = "rho",
    workers: int = 1,
) -> Ensemble:
    """Draw n i.i.d. joint outcomes from the atom distribution.

    The result depends only on (dist, n, seed); the worker count changes the
    internal partitioning but never the records.
    """
    if n < 1:
        raise PreconditionError(f"ensemble size must be at least 1, got {n}")
    if workers < 1:
        raise PreconditionError(f"worker count must be at least 1, got {workers}")
    if not (0 <= int(seed) < 2**64):
        raise PreconditionError(f"seed must be a 64-bit unsigned integer, got {seed}")
    seed = int(seed)

    keys = list(dist.atoms.keys())
    probs = np.array([dist.atoms[k] for k in keys], dtype=np.float64)
    cum = np.cumsum(probs)
    if abs(cum[-1] - 1.0) > 1e-9:
        raise ValidationError(f"atom distribution sums to {cum[-1]!r}, not 1")
    # Close the last bin exactly so u ~ U[0,1) can never fall off the end.
    cum[-1] = 1.0

    def draw(start: int, stop: int) -> np.ndarray:
        u = _uniforms(seed, start, stop - start)
        # side='right': u strictly below a bin edge picks that bin, so bins
        # of width zero (clamped atoms) are unreachable.
        return np.searchsorted(cum, u, side="right")

    if workers == 1 or n < 2 * workers:
        indices = draw(0, n)
    else:
        bounds = np.linspace(0, n, workers + 1, dtype=int)
        chunks = [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if a < b]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda ab: draw(*ab), chunks))
        indices = np.concatenate(parts)

    records = tuple(
        SpecimenRecord(
            id=i,
            outcomes={name: int(bit) for name, bit in zip(dist.names, keys[idx])},
        )
        for i, idx in enumerate(indices)
    )
    return Ensemble(
        rho_name=rho_name, seed=seed, family=dist.names, records=records
    )


def check_support_statements(
    ens: Ensemble, dist: JointDistribution, z: float = 3.0
) -> Report:
    """Certify the ensemble against the distribution it was drawn from.

    Exact checks: outcomes partition each extension (every record has a 0/1
    value for every family member), zero-probability atoms are unpopulated,
    and mutually exclusive pairs never co-occur. Statistical checks: every
    sufficiently expected atom is populated, and all atom frequencies sit
    within z standard deviations of their probabilities.
    """
    if ens.family != dist.names:
        raise ValidationError(
            f"ensemble family {ens.family} does not match distribution "
            f"family {dist.names}"
        )
    report = Report(
        command="support",
        inputs={"n": ens.n, "seed": ens.seed, "z": float(z), "rho": ens.rho_name},
    )
    n = ens.n
    # One pass over the records; every count below comes from this matrix.
    outcome_rows = np.array(
        [[r.outcomes.get(name, -1) for name in ens.family] for r in ens.records],
        dtype=np.int64,
    ).reshape(n, len(ens.family))

    for col, name in enumerate(ens.family):
        column = outcome_rows[:, col]
        well_formed = bool(np.all((column == 0) | (column == 1))) and all(
            len(r.outcomes) == len(ens.family) for r in ens.records
        )
        split = int(np.sum(column == 1)) + int(np.sum(column == 0))
        report.add(
            name=f"partition:{name}",
            passed=well_formed and split == n,
            residual=float(n - split),
            ref="support:partition",
            detail="every specimen lies in exactly one extension",
        )

    weights = 1 << np.arange(len(ens.family) - 1, -1, -1, dtype=np.int64)
    codes = outcome_rows @ weights
    atom_counts = np.bincount(
        codes[(codes >= 0) & (codes < 2 ** len(ens.family))],
        minlength=2 ** len(ens.family),
    )

    for omega, p in dist.atoms.items():
        label = "".join(str(w) for w in omega)
        count = int(atom_counts[int(label, 2)])
        if p == 0.0:
            report.add(
                name=f"atom-empty:{label}",
                passed=count == 0,
                residual=float(count),
                ref="support:zero-mass",
                detail="zero-probability outcome must never occur",
            )
            continue
        if n * p >= MIN_EXPECTED_COUNT:
            report.add(
                name=f"atom-populated:{label}",
                passed=count > 0,
                residual=float(count),
                ref="support:nonempty",
                detail=f"expected count {n * p:.1f}",
            )
        freq = count / n if n else 0.0
        sigma = sqrt(p * (1.0 - p) / n) if n else 0.0
        report.add(
            name=f"frequency:{label}",
            passed=abs(freq - p) <= z * sigma,
            residual=abs(freq - p),
            ref="support:frequency",
            detail=f"p={p!r} band={z * sigma:.3e}",
        )

    for i in range(len(ens.family)):
        for j in range(i + 1, len(ens.family)):
            if dist.mass({i: 1, j: 1}) != 0.0:
                continue
            both = int(
                np.sum((outcome_rows[:, i] == 1) & (outcome_rows[:, j] == 1))
            )
            report.add(
                name=f"exclusive:{ens.family[i]}~{ens.family[j]}",
                passed=both == 0,
                residual=float(both),
                ref="support:exclusive",
                detail="outcome-1 pair carries zero joint mass",
            )
    return report


def detection_frequency_audit(
    t_name: str, e_name: str, ens: Ensemble
) -> tuple[int, int]:
    """Count records where the two outcomes disagree vs. agree.

    For a genuine detection pair the discordant count is exactly zero: the
    sampler never draws from the clamped zero-mass atoms.
    """
    for name in (t_name, e_name):
        if name not in ens.family:
            raise UnknownObservableError(
                f"{name!r} is not in the measured family {ens.family}"
            )
    discordant = 0
    concordant = 0
    for r in ens.records:
        if r.outcomes[t_name] == r.outcomes[e_name]:
            concordant += 1
        else:
            discordant += 1
    return discordant, concordant
