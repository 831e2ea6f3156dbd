"""First-fit splitting of a family into sparse buckets.

Sets are inserted in a given order; a set joins the first bucket whose
current shadow covers at most ``(1 - gamma)`` of its mass, and a new bucket
is opened when none does. The part of the set outside the bucket's shadow
(its *new mass*) is disjoint from the new mass of every earlier set in the
bucket, so ``phi_R = 1_{new mass}`` witnesses that each bucket is
``gamma``-sparse.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .collection import SetCollection
from .errors import BadOrder, BucketLimitExceeded, GammaOutOfRange, SpaceMismatch, ValidationError
from .measure import MSet, mu
from .witness import SparseWitness, indicator


@dataclass(frozen=True)
class PartitionResult:
    buckets: list[list[int]]
    gamma: Fraction
    new_mass: dict[int, MSet]
    insertion_order: list[int]

    def bucket_of(self) -> dict[int, int]:
        return {sid: i for i, b in enumerate(self.buckets) for sid in b}


@dataclass(frozen=True)
class PartitionReport:
    disjoint: bool
    mass_ok: bool
    count_ok: bool
    bucket_count: int
    count_bound: Fraction

    @property
    def passed(self) -> bool:
        return self.disjoint and self.mass_ok and self.count_ok


def split(
    c: SetCollection,
    order: Sequence[int],
    gamma,
    max_buckets: int | None = None,
) -> PartitionResult:
    gamma = Fraction(gamma)
    if not 0 < gamma < 1:
        raise ValidationError(f"gamma must lie in (0, 1), got {gamma}")
    order = list(order)
    if sorted(order) != sorted(c.ids) or len(set(order)) != len(order):
        raise BadOrder("order must be a permutation of the collection's set ids")

    space = c.space
    w = {a.id: a.weight for a in space}
    buckets: list[list[int]] = []
    shadows: list[set[int]] = []
    new_mass: dict[int, MSet] = {}
    for sid in order:
        s = c[sid]
        m = mu(space, s)
        for i, sh in enumerate(shadows):
            overlap = sum((w[a] for a in s.atoms & sh), Fraction(0))
            if overlap <= (1 - gamma) * m:
                break
        else:
            if max_buckets is not None and len(buckets) >= max_buckets:
                raise BucketLimitExceeded(
                    f"set {sid} fits none of the {max_buckets} allowed buckets"
                )
            buckets.append([])
            shadows.append(set())
            i = len(buckets) - 1
        new_mass[sid] = MSet._trusted(space, frozenset(s.atoms - shadows[i]))
        buckets[i].append(sid)
        shadows[i] |= s.atoms
    return PartitionResult(buckets, gamma, new_mass, order)


def bucket_count_bound(M, eta, gamma, car_upper) -> Fraction:
    """``1 + 2 M (1 - eta) / (1 - eta - gamma) * car_upper``."""
    M, eta, gamma = Fraction(M), Fraction(eta), Fraction(gamma)
    if not gamma < 1 - eta:
        raise GammaOutOfRange(f"gamma = {gamma} must be below 1 - eta = {1 - eta}")
    return 1 + 2 * M * (1 - eta) / (1 - eta - gamma) * Fraction(car_upper)


def verify_partition(p: PartitionResult, c: SetCollection, M, eta, car_upper) -> PartitionReport:
    bound = bucket_count_bound(M, eta, p.gamma, car_upper)
    disjoint = True
    for b in p.buckets:
        seen: set[int] = set()
        for sid in b:
            atoms = p.new_mass[sid].atoms
            if seen & atoms:
                disjoint = False
            seen |= atoms
    mass_ok = all(
        p.new_mass[sid] <= s and mu(c.space, p.new_mass[sid]) >= p.gamma * mu(c.space, s)
        for sid, s in c.entries
    )
    return PartitionReport(disjoint, mass_ok, len(p.buckets) <= bound, len(p.buckets), bound)


def bucket_witnesses(p: PartitionResult, c: SetCollection) -> list[tuple[SetCollection, SparseWitness]]:
    """Per bucket: the subcollection and the witness ``phi_R = 1_{new mass of R}``."""
    out = []
    for b in p.buckets:
        sub = c.subcollection(b)
        phi = {sid: indicator(p.new_mass[sid].atoms) for sid in sub.ids}
        eta = min(mu(c.space, p.new_mass[sid]) / mu(c.space, c[sid]) for sid in b)
        out.append((sub, SparseWitness(phi, eta)))
    return out


def is_p1(sets: Sequence[MSet]) -> bool:
    """Each set keeps at least half its mass outside the union of its predecessors."""
    if not sets:
        raise ValidationError("is_p1 needs at least one set")
    space = sets[0].space
    seen: set[int] = set()
    for s in sets:
        if s.space != space:
            raise SpaceMismatch("sets live on different ground spaces")
        fresh = MSet._trusted(space, frozenset(s.atoms - seen))
        if 2 * mu(space, fresh) < mu(space, s):
            return False
        seen |= s.atoms
    return True
