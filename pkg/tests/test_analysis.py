import numpy as np
import pytest

from families import ALL_FAMILIES, random_model
from oracles import char_roots_stable
from qubit_structure.analysis import (Purity, SteadyStateError, UnphysicalState,
                                      bae_channels, char_poly, df_subspace,
                                      is_hurwitz, purity, qnd_variables,
                                      steady_states)
from qubit_structure.feedback import FeedbackParams, close_loop
from qubit_structure.model import ModelParams, SystemMatrices, build_model
from qubit_structure.structure import CaseLabel, Family, classify, structure_report
from qubit_structure.transform import construct_transformation


def decompose(p):
    m = build_model(p)
    return construct_transformation(p, m, classify(p, m))


def test_steady_state_scenario1():
    m = build_model(close_loop(FeedbackParams(alpha2=1.0, gamma=4.0)))
    ss = steady_states(m)
    assert ss.unique
    # elimination by hand: a1 = a3, -6 a3 = 4
    np.testing.assert_allclose(ss.point, [-2 / 3, 0, -2 / 3], atol=1e-12)


def test_steady_state_vacuum_drive():
    m = build_model(close_loop(FeedbackParams(alpha2=0.0, gamma=4.0)))
    np.testing.assert_allclose(steady_states(m).point, [0, 0, -1], atol=1e-12)


def test_steady_state_family_scenario2():
    g = 4.0
    m = build_model(close_loop(FeedbackParams(alpha2=0.0, gamma=g, lam=-np.sqrt(g) / 2)))
    ss = steady_states(m)
    assert ss.kind == "affine_family" and len(ss.directions) == 1
    np.testing.assert_allclose(ss.point, 0, atol=1e-12)
    np.testing.assert_allclose(np.abs(ss.directions[0]), [1, 0, 0], atol=1e-12)
    assert ss.physical_segment == pytest.approx((-1.0, 1.0))
    members = sorted(ss.pure_members(), key=lambda v: v[0])
    np.testing.assert_allclose(members, [[-1, 0, 0], [1, 0, 0]], atol=1e-12)


def test_steady_state_residual_invariant(rng):
    for fam, sub in ALL_FAMILIES * 10:
        m = build_model(random_model(fam, rng, sub))
        ss = steady_states(m)
        assert np.linalg.norm(m.A @ ss.point + m.A0) <= 1e-9
        for d in ss.directions:
            assert np.linalg.norm(m.A @ d) <= 1e-9


def test_inconsistent_system_raises():
    m = SystemMatrices(A0=np.array([0, 0, 1.0]), A=np.diag([-1.0, -1.0, 0.0]),
                       B=np.zeros((3, 6)), C=np.zeros((2, 3)))
    with pytest.raises(SteadyStateError):
        steady_states(m)


def test_unique_for_case_i_and_origin_for_case_ii(rng):
    for _ in range(100):
        assert steady_states(build_model(random_model("SpecialI", rng))).unique
        assert steady_states(build_model(random_model("GeneralI", rng))).unique
        ss = steady_states(build_model(random_model("SpecialII", rng)))
        assert ss.unique and np.max(np.abs(ss.point)) <= 1e-9


def test_char_poly_against_numpy(rng):
    for _ in range(50):
        A = rng.normal(size=(3, 3))
        np.testing.assert_allclose([1, *char_poly(A)], np.poly(A), atol=1e-10)


def test_is_hurwitz_examples():
    assert is_hurwitz(-np.eye(3))
    assert not is_hurwitz(np.eye(3))
    g = 4.0
    A2 = build_model(close_loop(FeedbackParams(alpha2=0.0, gamma=g, lam=-1.0))).A
    assert not is_hurwitz(A2)
    A1 = build_model(close_loop(FeedbackParams(alpha2=1.0, gamma=g))).A
    # det(sI - A1) = s^3 + 8 s^2 + 24 s + 24 by cofactor expansion
    assert char_poly(A1) == pytest.approx((8.0, 24.0, 24.0))
    assert is_hurwitz(A1)


def test_hurwitz_matches_eigenvalues(rng):
    for _ in range(300):
        A = rng.normal(size=(3, 3))
        if np.min(np.abs(np.linalg.eigvals(A).real)) < 1e-6:
            continue
        assert is_hurwitz(A) == char_roots_stable(A)


def test_controllable_iff_hurwitz_across_families(rng):
    for fam, sub in ALL_FAMILIES * 20:
        m = build_model(random_model(fam, rng, sub))
        assert structure_report(m).controllable == is_hurwitz(m.A)


VERDICTS = {
    "SpecialI": ([], set()),
    "SpecialII": ([], {(1, 2)}),
    "SpecialIII": ([3], {(1, 2), (2, 1)}),
    "GeneralII": ([], set()),
    "GeneralIIIa": ([], set()),
    "GeneralIIIb": ([], set()),
    "GeneralIIIc": ([3], {(1, 2), (2, 1)}),
}


@pytest.mark.parametrize("fam", sorted(VERDICTS))
def test_qnd_bae_verdicts(fam, rng):
    qnd, bae = VERDICTS[fam]
    for _ in range(40):
        d = decompose(random_model(fam, rng))
        assert qnd_variables(d) == qnd
        assert {c.pair for c in bae_channels(d)} == bae


def test_closed_system_qnd():
    d = decompose(ModelParams([0, 0, 0], [0, 0, 0], [0, 0, 0]))
    assert qnd_variables(d) == [1, 2, 3]


def test_scenario3_bae():
    d = decompose(close_loop(FeedbackParams(alpha2=1.0, gamma=4.0, lam=-1.0)))
    assert (1, 2) in {c.pair for c in bae_channels(d)}


def test_bae_matches_brute_force_transfer(rng):
    """Markov parameters vanish iff the impulse response c exp(At) B is zero."""
    from scipy.linalg import expm
    for fam, sub in ALL_FAMILIES:
        d = decompose(random_model(fam, rng, sub))
        found = {c.pair for c in bae_channels(d) if not c.trivial}
        for i, j in ((1, 2), (2, 1)):
            Bi = d.Bt[:, 3 * (i - 1):3 * i]
            cj = d.Ct[j - 1]
            if np.max(np.abs(Bi)) == 0 or np.max(np.abs(cj)) == 0:
                continue
            resp = max(np.max(np.abs(cj @ expm(d.At * t) @ Bi))
                       for t in (0.0, 0.3, 0.9, 2.0))
            assert ((i, j) in found) == (resp <= 1e-8)


def test_df_subspace():
    assert df_subspace(CaseLabel(Family.SPECIAL_III, mu=0.0)).dark_states
    assert df_subspace(CaseLabel(Family.GENERAL_IIIC, mu=1.0, nu=0.0)) is not None
    assert df_subspace(CaseLabel(Family.SPECIAL_I)) is None
    assert df_subspace(CaseLabel(Family.GENERAL_II)) is None
    assert df_subspace(CaseLabel(Family.CLOSED_SYSTEM)).full_space


def test_purity():
    assert purity([0, 0, -1])[0] is Purity.PURE
    assert purity([0, 0, 0])[0] is Purity.COMPLETELY_MIXED
    label, r2 = purity([-2 / 3, 0, -2 / 3])
    assert label is Purity.MIXED and r2 == pytest.approx(8 / 9)
    with pytest.raises(UnphysicalState):
        purity([1, 1, 0])
