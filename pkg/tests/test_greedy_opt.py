from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sparsegreedy import (
    Adaptive,
    Fixed,
    carleson_certificate,
    carleson_exact,
    gen_dyadic,
    gen_line_family,
    good_set,
    mu,
    run_opt,
    select_opt,
    verify_sparse_witness,
    weak_height,
    witness_from_trace,
)
from sparsegreedy.errors import NoQualifyingSet, UnknownSetId, ValidationError

from conftest import collections, copies, disjoint, naive_carleson

HALF = Fraction(1, 2)


def test_good_set(f1):
    assert good_set(f1, 1, 1).atom_ids == [1]
    assert good_set(f1, 1, 4) == f1[1]
    assert not good_set(copies(3), 0, 2)
    with pytest.raises(UnknownSetId):
        good_set(f1, 9, 1)


def test_modes_validate():
    with pytest.raises(ValidationError):
        Adaptive(1)
    with pytest.raises(ValidationError):
        Adaptive(0)
    with pytest.raises(ValidationError):
        Fixed(Fraction(1, 2), HALF)


def test_select_opt_f1(f1):
    assert select_opt(f1, Adaptive(HALF)) == (1, 1)
    sid, T = select_opt(f1, Fixed(2, HALF))
    assert (sid, T) == (1, 4)
    assert good_set(f1, sid, T) == f1[1]


def test_select_opt_line_family_fails_fixed():
    c = gen_line_family(10, 1000)
    with pytest.raises(NoQualifyingSet) as info:
        select_opt(c, Fixed(1, HALF))
    assert info.value.threshold == 2 * weak_height(c)


def test_run_opt_f1(f1):
    t = run_opt(f1, Adaptive(HALF))
    assert t.removal_order == [1, 2, 3]
    assert [t.thresholds[s] for s in (1, 2, 3)] == [1, 1, 1]
    assert [t.E[s].atom_ids for s in (1, 2, 3)] == [[1], [2], [3, 4]]
    assert t.A == 1


@pytest.mark.parametrize("mode", [Adaptive(HALF), Fixed(2, HALF), Fixed(1, Fraction(1, 3))])
def test_run_opt_disjoint(mode):
    c = disjoint(4)
    t = run_opt(c, mode)
    assert t.A == 1
    assert all(t.E[sid] == s for sid, s in c)
    if isinstance(mode, Adaptive):
        assert set(t.thresholds.values()) == {1}


@pytest.mark.parametrize("n", [1, 2, 5])
def test_run_opt_copies(n):
    c = copies(n)
    t = run_opt(c, Adaptive(HALF))
    for pos, sid in enumerate(t.removal_order, start=1):
        assert t.thresholds[sid] == n - pos + 1
        assert t.E[sid] == c[sid]


def test_witness_and_certificate_f1(f1):
    t = run_opt(f1, Adaptive(HALF))
    w = witness_from_trace(t, f1)
    assert t.max_threshold == 1
    assert w.achieved_eta == HALF
    atoms = [t.E[s].atoms for s in (1, 2, 3)]
    assert not (atoms[0] & atoms[1] or atoms[0] & atoms[2] or atoms[1] & atoms[2])
    assert carleson_certificate(t, HALF) == 2 >= carleson_exact(f1).value


def test_witness_and_certificate_disjoint():
    c = disjoint(3)
    t = run_opt(c, Adaptive(HALF))
    assert witness_from_trace(t, c).achieved_eta == 1
    assert carleson_certificate(t) == 2


@pytest.mark.parametrize("n", [2, 4])
def test_witness_and_certificate_copies(n):
    c = copies(n)
    t = run_opt(c, Adaptive(HALF))
    w = witness_from_trace(t, c)
    assert all(set(f.values()) == {Fraction(1, n)} for f in w.phi.values())
    assert w.achieved_eta == Fraction(1, n) == 1 / carleson_exact(c).value
    assert carleson_certificate(t) == 2 * n


etas = st.sampled_from([Fraction(1, 4), Fraction(1, 3), HALF, Fraction(2, 3)])


@settings(max_examples=150, deadline=None)
@given(collections(), etas)
def test_opt_trace_invariants(c, eta):
    t = run_opt(c, Adaptive(eta))
    count: dict[int, int] = {}
    for sid, s in c:
        E = t.E[sid]
        assert E <= s
        assert mu(c.space, E) >= (1 - eta) * mu(c.space, s)
        for a in E.atoms:
            count[a] = count.get(a, 0) + 1
    assert max(count.values()) <= t.max_threshold
    w = witness_from_trace(t, c)
    assert verify_sparse_witness(c, w) == w.achieved_eta
    assert w.achieved_eta >= (1 - eta) / max(1, t.max_threshold)
    car = naive_carleson(c)
    assert t.A <= car <= carleson_certificate(t)
    assert w.achieved_eta <= 1 / car


@settings(max_examples=100, deadline=None)
@given(collections(), etas, st.sampled_from([1, 2, 3, Fraction(5, 2)]))
def test_adaptive_never_above_fixed(c, eta, M):
    """On every collection met by the adaptive run, its threshold is at most the fixed one."""
    t = run_opt(c, Adaptive(eta))
    rest = c
    for sid in t.removal_order:
        assert select_opt(rest, Adaptive(eta)) == (sid, t.thresholds[sid])
        assert weak_height(rest) == t.lambdas[sid]
        try:
            _, T_fixed = select_opt(rest, Fixed(M, eta))
        except NoQualifyingSet:
            pass
        else:
            assert t.thresholds[sid] <= T_fixed
        rest = rest.without(sid)


@settings(max_examples=60, deadline=None)
@given(collections(), etas, st.sampled_from([1, 2, 4]))
def test_fixed_run_matches_stepwise(c, eta, M):
    try:
        t = run_opt(c, Fixed(M, eta))
    except NoQualifyingSet:
        return
    rest = c
    for sid in t.removal_order:
        assert select_opt(rest, Fixed(M, eta)) == (sid, t.thresholds[sid])
        assert t.E[sid] == good_set(rest, sid, t.thresholds[sid])
        rest = rest.without(sid)


@pytest.mark.parametrize("eta", [Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)])
@pytest.mark.parametrize("seed", range(12))
def test_sandwich_on_dyadic_intervals(eta, seed):
    """Dyadic intervals satisfy the restricted weak-type bound with M = 1/eta."""
    c = gen_dyadic("intervals", 1, 1 + seed % 4, 2 + seed % 11, seed)
    M = 1 / eta
    t = run_opt(c, Fixed(M, eta))
    car = carleson_exact(c).value
    assert t.A <= car <= 2 / (1 - eta) * M * t.A
    ad = run_opt(c, Adaptive(eta))
    assert all(ad.thresholds[s] <= 2 * M * ad.lambdas[s] for s in ad.removal_order)
    assert carleson_certificate(ad) <= carleson_certificate(t)
