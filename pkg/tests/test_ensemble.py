import numpy as np
import pytest

from qdetect import (
    PreconditionError,
    UnknownObservableError,
    ValidationError,
    check_support_statements,
    complement,
    detection_frequency_audit,
    joint_distribution,
    sample_ensemble,
)
from qdetect.ensemble import _uniforms
from qdetect.numerics import outer
from qdetect.observables import DensityOperator


@pytest.fixture(scope="module")
def pair_dist(ghsz):
    return joint_distribution([ghsz.observable("E_alpha"), ghsz.observable("F")], ghsz.state)


@pytest.fixture(scope="module")
def detect_dist(ghsz):
    return joint_distribution([ghsz.observable("M"), ghsz.observable("G_alpha")], ghsz.state)


def test_uniforms_partition_is_seamless():
    whole = _uniforms(seed=123, start=0, count=100)
    parts = np.concatenate(
        [_uniforms(123, 0, 37), _uniforms(123, 37, 40), _uniforms(123, 77, 23)]
    )
    np.testing.assert_array_equal(whole, parts)
    assert not np.array_equal(whole, _uniforms(seed=124, start=0, count=100))


def test_uniforms_block_alignment():
    # Record k must consume the first word of counter block k: skipping ahead
    # by advance(k) and reading every fourth double from the start agree.
    seed, k = 99, 17
    gen = np.random.Generator(np.random.Philox(key=seed))
    stream = gen.random(4 * (k + 1))[::4]
    assert _uniforms(seed, k, 1)[0] == stream[k]


def test_sample_ensemble_deterministic(pair_dist):
    a = sample_ensemble(pair_dist, 500, seed=7)
    b = sample_ensemble(pair_dist, 500, seed=7)
    assert a == b
    assert a.n == 500
    assert a.family == ("E_alpha", "F")
    c = sample_ensemble(pair_dist, 500, seed=8)
    assert a != c


def test_worker_count_never_changes_records(pair_dist):
    base = sample_ensemble(pair_dist, 997, seed=3, workers=1)
    for workers in (2, 3, 8):
        again = sample_ensemble(pair_dist, 997, seed=3, workers=workers)
        assert again.records == base.records


def test_sample_matches_manual_inverse_cdf(pair_dist):
    n, seed = 300, 11
    ens = sample_ensemble(pair_dist, n, seed=seed)
    u = np.random.Generator(np.random.Philox(key=seed)).random(4 * n)[::4]
    keys = list(pair_dist.atoms)
    cum = np.cumsum([pair_dist.atoms[k] for k in keys])
    cum[-1] = 1.0
    expect = [keys[i] for i in np.searchsorted(cum, u, side="right")]
    got = [tuple(r.outcomes[name] for name in ens.family) for r in ens.records]
    assert got == expect
    assert [r.id for r in ens.records] == list(range(n))


def test_zero_mass_atoms_never_sampled(detect_dist):
    ens = sample_ensemble(detect_dist, 20000, seed=0)
    assert ens.count_atom((1, 0)) == 0
    assert ens.count_atom((0, 1)) == 0
    assert ens.count_atom((1, 1)) + ens.count_atom((0, 0)) == 20000
    discordant, concordant = detection_frequency_audit("M", "G_alpha", ens)
    assert discordant == 0
    assert concordant == 20000


def test_count_helpers(pair_dist):
    ens = sample_ensemble(pair_dist, 64, seed=5)
    assert ens.count_outcome("F", 0) + ens.count_outcome("F", 1) == 64
    with pytest.raises(UnknownObservableError):
        ens.count_outcome("nope", 1)
    with pytest.raises(ValidationError):
        ens.count_atom((1,))
    with pytest.raises(UnknownObservableError):
        detection_frequency_audit("M", "F", ens)


def test_sample_validations(pair_dist):
    with pytest.raises(PreconditionError):
        sample_ensemble(pair_dist, 0, seed=0)
    with pytest.raises(PreconditionError):
        sample_ensemble(pair_dist, 10, seed=0, workers=0)
    with pytest.raises(PreconditionError):
        sample_ensemble(pair_dist, 10, seed=-1)
    with pytest.raises(PreconditionError):
        sample_ensemble(pair_dist, 10, seed=2**64)


def test_to_csv_worker_invariant(pair_dist, tmp_path):
    one = tmp_path / "one.csv"
    four = tmp_path / "four.csv"
    sample_ensemble(pair_dist, 101, seed=2, workers=1).to_csv(one)
    sample_ensemble(pair_dist, 101, seed=2, workers=4).to_csv(four)
    assert one.read_bytes() == four.read_bytes()
    lines = one.read_text().splitlines()
    assert lines[0] == "id,E_alpha,F"
    assert len(lines) == 102
    head = lines[1].split(",")
    assert head[0] == "0" and set(head[1:]) <= {"0", "1"}


def test_support_statements_pass(pair_dist):
    ens = sample_ensemble(pair_dist, 5000, seed=13)
    report = check_support_statements(ens, pair_dist)
    assert report.all_passed
    names = [c.name for c in report.checks]
    assert "partition:E_alpha" in names
    assert "partition:F" in names
    assert "atom-populated:11" in names
    assert "frequency:00" in names
    # All four atoms carry mass 1/4, so no emptiness or exclusivity checks.
    assert not any(n.startswith("atom-empty") for n in names)
    assert not any(n.startswith("exclusive") for n in names)


def test_support_statements_detecting_pair(detect_dist):
    ens = sample_ensemble(detect_dist, 5000, seed=17)
    report = check_support_statements(ens, detect_dist)
    assert report.all_passed
    by_name = {c.name: c for c in report.checks}
    assert by_name["atom-empty:10"].residual == 0.0
    assert by_name["atom-empty:01"].residual == 0.0


def test_support_statements_exclusive_pair(ghsz):
    f = ghsz.observable("F")
    dist = joint_distribution([f, complement(f)], ghsz.state)
    ens = sample_ensemble(dist, 2000, seed=19)
    report = check_support_statements(ens, dist)
    assert report.all_passed
    by_name = {c.name: c for c in report.checks}
    assert by_name["exclusive:F~F'"].passed
    assert by_name["atom-empty:11"].passed
    assert by_name["atom-empty:00"].passed


def test_support_statements_family_mismatch(pair_dist, detect_dist):
    ens = sample_ensemble(pair_dist, 50, seed=23)
    with pytest.raises(ValidationError):
        check_support_statements(ens, detect_dist)


def test_support_statements_flag_biased_distribution(ghsz, pair_dist):
    # Negative control: audit a fair sample against the distribution of a
    # tilted state. The frequency bands must catch the 0.25 vs 0.40 gap.
    raw = np.zeros(16, dtype=np.complex128)
    raw[0b0000] = np.sqrt(0.9)
    raw[0b1000] = np.sqrt(0.1)
    tilted = DensityOperator(outer(raw))
    biased = joint_distribution(
        [ghsz.observable("E_alpha"), ghsz.observable("F")], tilted
    )
    ens = sample_ensemble(pair_dist, 5000, seed=29)
    report = check_support_statements(ens, biased)
    assert not report.all_passed
    assert report.exit_code == 1
    failed = [c.name for c in report.checks if not c.passed]
    assert any(n.startswith("frequency") for n in failed)


def test_small_samples_skip_existence_checks(pair_dist):
    # n*p = 5 per atom: too small to insist the atom shows up.
    ens = sample_ensemble(pair_dist, 20, seed=31)
    report = check_support_statements(ens, pair_dist)
    assert not any(c.name.startswith("atom-populated") for c in report.checks)
    assert any(c.name.startswith("frequency") for c in report.checks)


def test_singleton_family(ghsz):
    dist = joint_distribution([ghsz.observable("E_alpha")], ghsz.state)
    ens = sample_ensemble(dist, 400, seed=37)
    assert ens.family == ("E_alpha",)
    assert ens.count_atom((1,)) == ens.count_outcome("E_alpha", 1)
    assert check_support_statements(ens, dist).all_passed
