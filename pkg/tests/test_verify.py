import itertools
import math

import numpy as np
import pytest

from csgeom.embed import iota
from csgeom.liecore import FlagSpec
from csgeom.models import Disc, Grassmann, ProjSpace, UnsupportedModelError, fixed_points
from csgeom.verify import (
    CheckReport,
    EnergyFunction,
    check_anandan_aharonov,
    check_bargmann_bounds,
    check_cauchy,
    check_diastasis,
    check_geodesic_additivity,
    check_injectivity,
    check_two_point_homogeneity,
    matching_flag,
    max_clique,
    max_orthogonal_set,
    minimal_N,
    morse_count,
    morse_search,
    seven_numbers,
)


def assert_consistent(rep: CheckReport):
    assert rep.passed == (rep.max_abs_error <= rep.tolerance)
    assert rep.passed == (not rep.witnesses)


@pytest.mark.parametrize("model", [ProjSpace(1, 3), Grassmann(2, 4)], ids=lambda m: m.spec)
def test_cauchy_campaign(model):
    rep = check_cauchy(model, trials=1000, seed=1, tol=1e-10)
    assert rep.passed and rep.trials == 1000
    assert_consistent(rep)


def test_cauchy_coincident_pair():
    z = np.array([0.3 + 0.4j])
    rep = check_cauchy(ProjSpace(1, 2), pairs=[(z, z)])
    assert rep.trials == 1 and rep.max_abs_error == pytest.approx(0.0, abs=1e-15)


def test_cauchy_failure_reports_witnesses():
    rep = check_cauchy(ProjSpace(2, 2), trials=20, seed=0, tol=-1.0)
    assert not rep.passed and len(rep.witnesses) == 10
    assert_consistent(rep)


def test_cauchy_rejects_disc():
    with pytest.raises(UnsupportedModelError):
        check_cauchy(Disc(1), trials=1)


@pytest.mark.parametrize("model", [ProjSpace(2, 1), Disc(2), Disc(1)], ids=lambda m: m.spec)
def test_diastasis_campaign(model):
    rep = check_diastasis(model, trials=300, seed=3, tol=1e-9)
    assert rep.passed
    assert_consistent(rep)


def test_reports_are_reproducible_and_thread_independent():
    a = check_cauchy(Grassmann(2, 4), trials=200, seed=7)
    b = check_cauchy(Grassmann(2, 4), trials=200, seed=7, threads=4)
    assert a == b
    c = check_cauchy(Grassmann(2, 4), trials=200, seed=8)
    assert c.max_abs_error != a.max_abs_error


@pytest.mark.parametrize("model", [ProjSpace(1, 2), ProjSpace(2, 1)], ids=lambda m: m.spec)
def test_homogeneity_rank_one(model):
    rep = check_two_point_homogeneity(model, trials=10_000, seed=0)
    assert rep.passed and rep.max_abs_error < 1e-6
    coarse = check_two_point_homogeneity(model, trials=10_000, seed=0, bin_width=1e-2)
    assert coarse.max_abs_error > rep.max_abs_error


def test_homogeneity_grassmann_witness():
    rep = check_two_point_homogeneity(Grassmann(2, 4), trials=2000, seed=0)
    assert not rep.passed
    w = [x for x in rep.witnesses if x["kind"] == "constructed"][0]
    assert abs(w["distance_a"] - w["distance_b"]) <= 1e-12
    assert w["overlap_gap"] > 0.01
    assert w["overlap_gap"] == pytest.approx(abs(math.cos(0.8) - math.cos(0.8 / math.sqrt(2)) ** 2))


def test_geodesic_campaign_and_skips():
    rep = check_geodesic_additivity(dim=4, trials=100, seed=0)
    assert rep.passed and rep.skipped == 0
    equator = (np.array([1, 0], dtype=complex), np.array([0, 1], dtype=complex))
    near = (np.array([1, 0], dtype=complex), np.array([1, 1], dtype=complex))
    rep = check_geodesic_additivity(dim=2, pairs=[equator, near])
    assert rep.skipped == 1 and rep.passed


def test_anandan_and_bargmann():
    assert check_anandan_aharonov(dim=3, trials=2000, seed=1).passed
    assert check_bargmann_bounds(dim=3, trials=2000, seed=1).passed


def test_injectivity():
    rep = check_injectivity(ProjSpace(2, 1), trials=100, seed=0)
    assert rep.passed and rep.max_abs_error == 0
    assert_consistent(rep)


# --- energy function ------------------------------------------------------------------------

def test_energy_function_validation():
    with pytest.raises(ValueError):
        EnergyFunction(ProjSpace(2, 1), [1, 1, 2])
    with pytest.raises(ValueError):
        EnergyFunction(ProjSpace(2, 1), [1, 2])
    with pytest.raises(UnsupportedModelError):
        EnergyFunction.default(Disc(1))


def test_energy_through_embedding_matches_base_rayleigh():
    rng = np.random.default_rng(0)
    cp = ProjSpace(2, 3)
    ef = EnergyFunction(cp, [0.5, 1.0, 4.0])
    z = cp.sample(rng)
    x = np.concatenate([[1], z])
    rayleigh = np.vdot(x, ef.h * x).real / np.vdot(x, x).real
    assert ef(iota(cp, z)) == pytest.approx(3 * rayleigh)


def test_morse_projective_plane_against_eigen_oracle():
    ef = EnergyFunction(ProjSpace(2, 1), [1, 2, 3])
    search = morse_search(ef, seed=0)
    eig = np.linalg.eigvalsh(np.diag(ef.h))
    assert search.count == len(np.unique(np.round(eig, 12))) == 3
    np.testing.assert_allclose(search.values, eig, atol=1e-9)


def test_morse_examples():
    assert morse_count(EnergyFunction.default(ProjSpace(1, 3))) == 2
    search = morse_search(EnergyFunction(Grassmann(2, 4), [1, 2, 4, 8]))
    assert search.count == 6 and search.discarded == 0
    # critical values are the sums over coordinate planes
    sums = sorted(a + b for a, b in itertools.combinations([1, 2, 4, 8], 2))
    np.testing.assert_allclose(search.values, sums, atol=1e-9)


def test_morse_stable_over_reseeding():
    for model in (ProjSpace(1, 1), ProjSpace(2, 1), Grassmann(2, 4)):
        counts = {morse_count(EnergyFunction.default(model), seed=s) for s in range(5)}
        assert len(counts) == 1


def test_morse_finds_points_from_random_starts_alone():
    # without the fixed-point seeds the unitary recentering still reaches every level
    ef = EnergyFunction(Grassmann(2, 4), [1, 2, 4, 8])
    from csgeom import verify

    original = verify._fixed_base_points
    verify._fixed_base_points = lambda model: []
    try:
        assert morse_search(ef, starts=120, seed=3).count == 6
    finally:
        verify._fixed_base_points = original


# --- orthogonal sets, span, seven numbers ----------------------------------------------------

def test_max_clique_small_graphs():
    triangle_plus = {0: {1, 2}, 1: {0, 2}, 2: {0, 1, 3}, 3: {2}}
    assert max_clique(triangle_plus) == {0, 1, 2}
    assert len(max_clique({i: set() for i in range(4)})) == 1


def test_max_orthogonal_examples():
    assert max_orthogonal_set(ProjSpace(1, 1), augment_trials=5) == 2
    assert max_orthogonal_set(Grassmann(2, 4), augment_trials=5) == 6
    assert max_orthogonal_set(ProjSpace(1, 2), augment_trials=10) == 2


def test_veronese_orthogonality_oracle():
    # brute force over a polar grid: the squared overlaps with the two fixed points never drop below 1/2
    cp = ProjSpace(1, 2)
    fp = np.array([p.vec for p in fixed_points(cp)])
    best = math.inf
    for r in np.linspace(0, 5, 201):
        for phi in np.linspace(0, 2 * math.pi, 24, endpoint=False):
            w = iota(cp, [r * np.exp(1j * phi)]).vec
            best = min(best, float(np.sum(np.abs(fp @ w) ** 2) / np.vdot(w, w).real))
    assert best == pytest.approx(0.5, abs=1e-12)


def test_minimal_N_examples():
    assert minimal_N(ProjSpace(1, 1)) == 2
    assert minimal_N(ProjSpace(1, 3)) == 4
    assert minimal_N(Grassmann(2, 4)) == 6
    with pytest.raises(ValueError):
        minimal_N(ProjSpace(1, 3), samples=5)


def test_matching_flag():
    assert matching_flag(ProjSpace(3, 2)) == FlagSpec.single("A", 3, 1, 2)
    assert matching_flag(Grassmann(2, 5)) == FlagSpec.single("A", 4, 2)
    with pytest.raises(ValueError):
        seven_numbers(ProjSpace(1, 1), FlagSpec.single("A", 2, 1))


def test_seven_numbers_divergent_level():
    rep = seven_numbers(ProjSpace(1, 2))
    assert rep.numbers == (2, 3, 3, 3, 2, 2, 2)
    assert not rep.all_equal
    assert rep.n4_minimal_N <= rep.n2_sections
    assert rep.n1_max_orthogonal <= rep.n4_minimal_N


def test_seven_numbers_grassmann_2_5():
    rep = seven_numbers(Grassmann(2, 5), augment_trials=3)
    assert rep.numbers == (10,) * 7
