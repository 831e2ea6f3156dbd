"""Greedy construction without the logarithmic loss.

Each round picks a set ``R`` that keeps at least ``(1 - eta) mu(R)`` of its
mass where the current height is at most a threshold ``T``, records
``E(R) = {x in R : h(x) <= T}`` and removes ``R``. When the family's maximal
operator satisfies ``mu({M(1_B) > eta}) <= M mu(B)``, the threshold
``T = 2 M * weak_height`` always admits a set. The removal order and the
thresholds certify ``Carleson <= max(T) / (1 - eta)``.

Two threshold policies are provided:

``Fixed(M, eta)``
    ``T = 2 M weak_height`` exactly; raises :class:`NoQualifyingSet` when no
    set qualifies, which proves the bound above fails for this ``M``.
``Adaptive(eta)``
    the smallest height value at which some set qualifies. Never larger than
    the fixed threshold for any valid ``M``, so no knowledge of ``M`` is needed.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .collection import SetCollection, height, level_measures
from .errors import EmptyCollection, NoQualifyingSet, ValidationError
from .measure import MSet, mu
from .witness import SparseWitness


def _check_eta(eta) -> Fraction:
    eta = Fraction(eta)
    if not 0 < eta < 1:
        raise ValidationError(f"eta must lie in (0, 1), got {eta}")
    return eta


@dataclass(frozen=True)
class Fixed:
    M: Fraction
    eta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "eta", _check_eta(self.eta))
        M = Fraction(self.M)
        if M < 1:
            raise ValidationError(f"M must be at least 1, got {M}")
        object.__setattr__(self, "M", M)

    name = "fixed"


@dataclass(frozen=True)
class Adaptive:
    eta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "eta", _check_eta(self.eta))

    name = "adaptive"


ThresholdMode = Union[Fixed, Adaptive]


@dataclass(frozen=True)
class OptTrace:
    mode: ThresholdMode
    A: Fraction
    removal_order: list[int]
    thresholds: dict[int, Fraction]
    E: dict[int, MSet]
    # weak height of the family still present when the set was removed
    lambdas: dict[int, Fraction]

    @property
    def max_threshold(self) -> Fraction:
        return max(self.thresholds.values())


def good_set(c: SetCollection, R: int, T) -> MSet:
    s = c[R]
    h = height(c)
    return MSet._trusted(c.space, frozenset(a for a in s.atoms if h[a] <= T))


class _State:
    """Decremental height and level-set bookkeeping for one greedy run."""

    def __init__(self, c: SetCollection):
        if not len(c):
            raise EmptyCollection("the collection has no sets")
        self.space = c.space
        self.w = {a.id: a.weight for a in c.space}
        self.h = height(c)
        levels = level_measures(c.space, self.h)
        self.levels = levels  # levels[k] = mu({h >= k})
        self.remaining = dict(sorted(c.entries, key=lambda e: e[0]))
        self.mass = {sid: mu(c.space, s) for sid, s in self.remaining.items()}

    def weak_height(self) -> Fraction:
        L = self.levels
        best = max(k * L[k] for k in range(1, len(L)))
        return best / L[1]

    def remove(self, sid: int) -> None:
        s = self.remaining.pop(sid)
        for a in s.atoms:
            k = self.h[a]
            self.levels[k] -= self.w[a]
            self.h[a] = k - 1
        while len(self.levels) > 2 and self.levels[-1] == 0:
            self.levels.pop()

    def good_mass(self, s: MSet, T) -> Fraction:
        h, w = self.h, self.w
        return sum((w[a] for a in s.atoms if h[a] <= T), Fraction(0))

    def min_threshold(self, sid: int, eta: Fraction) -> int:
        """Smallest height value ``t`` with ``mu({h <= t} & R) >= (1 - eta) mu(R)``."""
        s = self.remaining[sid]
        need = (1 - eta) * self.mass[sid]
        by_height: dict[int, Fraction] = {}
        for a in s.atoms:
            by_height[self.h[a]] = by_height.get(self.h[a], Fraction(0)) + self.w[a]
        acc = Fraction(0)
        for t in sorted(by_height):
            acc += by_height[t]
            if acc >= need:
                return t
        raise AssertionError("the full set always qualifies")

    def select(self, mode: ThresholdMode, wh: Fraction) -> tuple[int, Fraction]:
        eta = mode.eta
        if isinstance(mode, Fixed):
            T = 2 * mode.M * wh
            for sid, s in self.remaining.items():
                if self.good_mass(s, T) >= (1 - eta) * self.mass[sid]:
                    return sid, T
            raise NoQualifyingSet(T, len(self.remaining))
        best = None
        for sid in self.remaining:
            t = self.min_threshold(sid, eta)
            if best is None or t < best[1]:
                best = (sid, t)
        return best[0], Fraction(best[1])


def select_opt(c: SetCollection, mode: ThresholdMode) -> tuple[int, Fraction]:
    st = _State(c)
    return st.select(mode, st.weak_height())


def run_opt(c: SetCollection, mode: ThresholdMode) -> OptTrace:
    st = _State(c)
    A = Fraction(1)
    order: list[int] = []
    thresholds: dict[int, Fraction] = {}
    E: dict[int, MSet] = {}
    lambdas: dict[int, Fraction] = {}
    while st.remaining:
        wh = st.weak_height()
        A = max(A, wh)
        sid, T = st.select(mode, wh)
        s = st.remaining[sid]
        E[sid] = MSet._trusted(c.space, frozenset(a for a in s.atoms if st.h[a] <= T))
        order.append(sid)
        thresholds[sid] = T
        lambdas[sid] = wh
        st.remove(sid)
    return OptTrace(mode, A, order, thresholds, E, lambdas)


def witness_from_trace(t: OptTrace, c: SetCollection) -> SparseWitness:
    """``phi_R = 1_{E(R)} / max(1, max T)``.

    An atom lies in ``E(R)`` for at most ``max T`` sets: if ``R`` is the first
    of them to be removed, all of them were still present at that moment and
    the atom's height was at most ``T_R``.
    """
    scale = max(Fraction(1), t.max_threshold)
    phi = {sid: {a: 1 / scale for a in sorted(t.E[sid].atoms)} for sid in c.ids}
    eta = min(mu(c.space, t.E[sid]) / (scale * mu(c.space, s)) for sid, s in c.entries)
    return SparseWitness(phi, eta)


def carleson_certificate(t: OptTrace, eta=None) -> Fraction:
    """Certified upper bound ``max T / (1 - eta)`` on the Carleson constant."""
    eta = t.mode.eta if eta is None else Fraction(eta)
    return t.max_threshold / (1 - eta)
