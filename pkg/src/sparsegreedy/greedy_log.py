"""Greedy construction with a logarithmic loss, valid for arbitrary families.

Each round looks at the average height ``L`` of what is left and, for every
remaining set ``R``, the function ``g_R = 1_R / h`` cut off where ``h > 2L``.
Some ``R`` always has ``integral(g_R) >= mu(R) / (2L)``; the first such set
(by id) is removed and keeps ``g_R`` as its function ``f_R``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .collection import SetCollection, avg_height, height
from .errors import EmptyCollection, SelectionImpossible
from .measure import mu
from .witness import AtomFunction, SparseWitness, integral


@dataclass(frozen=True)
class LogTrace:
    A: Fraction
    removal_order: list[int]
    lambdas: dict[int, Fraction]
    f: dict[int, AtomFunction]


def harmonic(n: int) -> Fraction:
    return sum((Fraction(1, k) for k in range(1, n + 1)), Fraction(0))


def _g(R, h, cutoff) -> AtomFunction:
    return {a: Fraction(1, h[a]) for a in sorted(R.atoms) if h[a] <= cutoff}


def candidate_g(c: SetCollection, R: int) -> AtomFunction:
    s = c[R]
    return _g(s, height(c), 2 * avg_height(c))


def select_log(c: SetCollection) -> int:
    lam = avg_height(c)
    h = height(c)
    for sid, s in sorted(c.entries, key=lambda e: e[0]):
        if integral(_g(s, h, 2 * lam), c.space) * 2 * lam >= mu(c.space, s):
            return sid
    raise SelectionImpossible(f"no set qualifies at average height {lam}")


def run_log(c: SetCollection) -> LogTrace:
    if not len(c):
        raise EmptyCollection("the collection has no sets")
    space = c.space
    weights = {a.id: a.weight for a in space}
    h = height(c)
    remaining = dict(sorted(c.entries, key=lambda e: e[0]))
    set_mass = {sid: mu(space, s) for sid, s in remaining.items()}
    total = sum(set_mass.values(), Fraction(0))
    shadow = sum((weights[a] for a, k in h.items() if k), Fraction(0))

    A = Fraction(1)
    order: list[int] = []
    lambdas: dict[int, Fraction] = {}
    fs: dict[int, AtomFunction] = {}
    while remaining:
        lam = total / shadow
        A = max(A, lam)
        cutoff = 2 * lam
        for sid, s in remaining.items():
            g = _g(s, h, cutoff)
            if sum((v * weights[a] for a, v in g.items()), Fraction(0)) * 2 * lam >= set_mass[sid]:
                break
        else:
            raise SelectionImpossible(f"no set qualifies at average height {lam}")
        del remaining[sid]
        order.append(sid)
        lambdas[sid] = lam
        fs[sid] = g
        total -= set_mass[sid]
        for a in s.atoms:
            h[a] -= 1
            if h[a] == 0:
                shadow -= weights[a]
    return LogTrace(A, order, lambdas, fs)


def normalize_witness(t: LogTrace, c: SetCollection) -> SparseWitness:
    """Divide every ``f_R`` by the largest pointwise sum so the total is at most 1."""
    S = max_atom_sum(t)
    phi = {sid: {a: v / S for a, v in t.f[sid].items()} for sid in c.ids}
    eta = min(integral(phi[sid], c.space) / mu(c.space, s) for sid, s in c.entries)
    return SparseWitness(phi, eta)


def max_atom_sum(t: LogTrace) -> Fraction:
    sums: dict[int, Fraction] = {}
    for f in t.f.values():
        for a, v in f.items():
            sums[a] = sums.get(a, Fraction(0)) + v
    return max(sums.values())
