"""Exact brute-force ground truth.

Everything here enumerates: every non-empty subfamily for the Carleson and
weak-Carleson constants, every candidate set for the maximal-operator lower
bound. Results are exact Fractions.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .collection import SetCollection
from .errors import (
    EmptyCollection,
    NoCandidates,
    SpaceMismatch,
    SumExceedsOne,
    SupportViolation,
    TooLarge,
    ValidationError,
)
from .measure import MSet, mu
from .rng import Stream
from .witness import SparseWitness

MAX_SETS = 20


@dataclass(frozen=True)
class OracleReport:
    value: Fraction
    witness_subfamily: list[int]
    enumerated_count: int


def _guard(c: SetCollection, max_sets: int) -> None:
    if not len(c):
        raise EmptyCollection("the collection has no sets")
    limit = min(max_sets, MAX_SETS)
    if len(c) > limit:
        raise TooLarge(f"{len(c)} sets exceeds the exhaustive-search limit of {limit}")


def _cells(c: SetCollection):
    """Merge atoms with identical membership into cells with integer weights.

    Returns ``(cells_of_set, cell_weight, set_mass, scale)`` where weights are
    the true weights multiplied by ``scale``.
    """
    index = {sid: i for i, sid in enumerate(c.ids)}
    signature: dict[int, int] = {}
    for sid, s in c.entries:
        bit = 1 << index[sid]
        for a in s.atoms:
            signature[a] = signature.get(a, 0) | bit
    merged: dict[int, Fraction] = {}
    for a, sig in signature.items():
        merged[sig] = merged.get(sig, Fraction(0)) + c.space.weight(a)
    scale = 1
    for wt in merged.values():
        scale = scale * wt.denominator // math.gcd(scale, wt.denominator)
    sigs = sorted(merged)
    cell_weight = [int(merged[sig] * scale) for sig in sigs]
    n = len(c)
    cells_of_set = [[j for j, sig in enumerate(sigs) if sig >> i & 1] for i in range(n)]
    set_mass = [sum(cell_weight[j] for j in cells_of_set[i]) for i in range(n)]
    return cells_of_set, cell_weight, set_mass, scale


def _scan(args):
    """Enumerate the masks ``prefix | g`` for every ``g`` over the low bits.

    Returns ``(num, den, mask)`` of the best ratio, ties to the smallest mask.
    ``weak`` selects the weak-type numerator ``max_k k * mu(h >= k)`` instead
    of the plain sum of set masses.
    """
    cells_of_set, cell_weight, set_mass, n, low, prefix, weak = args
    cnt = [0] * len(cell_weight)
    levels = [0] * (n + 2)
    total = 0
    size = 0

    def toggle(i, on):
        nonlocal total, size
        if on:
            total += set_mass[i]
            size += 1
            for j in cells_of_set[i]:
                k = cnt[j] + 1
                cnt[j] = k
                levels[k] += cell_weight[j]
        else:
            total -= set_mass[i]
            size -= 1
            for j in cells_of_set[i]:
                k = cnt[j]
                levels[k] -= cell_weight[j]
                cnt[j] = k - 1

    def value():
        if weak:
            return max(k * levels[k] for k in range(1, size + 1)), levels[1]
        return total, levels[1]

    for i in range(low, n):
        if prefix >> i & 1:
            toggle(i, True)
    best = None
    if prefix:
        num, den = value()
        best = (num, den, prefix)
    gray = 0
    for step in range(1, 1 << low):
        bit = (step & -step).bit_length() - 1
        gray ^= 1 << bit
        toggle(bit, bool(gray >> bit & 1))
        num, den = value()
        mask = prefix | gray
        if best is None:
            best = (num, den, mask)
            continue
        lhs, rhs = num * best[1], best[0] * den
        if lhs > rhs or (lhs == rhs and mask < best[2]):
            best = (num, den, mask)
    return best


def _exhaustive(c: SetCollection, weak: bool, max_sets: int, jobs: int) -> OracleReport:
    _guard(c, max_sets)
    cells_of_set, cell_weight, set_mass, _ = _cells(c)
    n = len(c)
    split = 0
    if jobs > 1 and n > 10:
        split = min(n - 8, max(1, (4 * jobs - 1).bit_length()))
    low = n - split
    tasks = [
        (cells_of_set, cell_weight, set_mass, n, low, p << low, weak)
        for p in range(1 << split)
    ]
    if split:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_scan, tasks))
    else:
        results = [_scan(t) for t in tasks]
    best = None
    for r in results:
        if r is None:
            continue
        if best is None:
            best = r
            continue
        lhs, rhs = r[0] * best[1], best[0] * r[1]
        if lhs > rhs or (lhs == rhs and r[2] < best[2]):
            best = r
    num, den, mask = best
    ids = c.ids
    return OracleReport(
        Fraction(num, den),
        [ids[i] for i in range(n) if mask >> i & 1],
        (1 << n) - 1,
    )


def carleson_exact(c: SetCollection, max_sets: int = MAX_SETS, jobs: int = 1) -> OracleReport:
    """Max over non-empty subfamilies of ``sum mu(R) / mu(shadow)``."""
    return _exhaustive(c, False, max_sets, jobs)


def weak_carleson_exact(c: SetCollection, max_sets: int = MAX_SETS, jobs: int = 1) -> OracleReport:
    """Max over non-empty subfamilies of ``||h_F||_{1,inf} / mu(shadow)``."""
    return _exhaustive(c, True, max_sets, jobs)


def verify_sparse_witness(c: SetCollection, w: SparseWitness) -> Fraction:
    """Largest eta the witness certifies, after checking it is admissible.

    Raises :class:`SupportViolation` for ids that do not match the collection,
    negative values or values outside the owning set, and
    :class:`SumExceedsOne` at the first atom where the functions add past 1.
    """
    if set(w.phi) != set(c.ids):
        raise SupportViolation("witness set ids do not match the collection")
    sums: dict[int, Fraction] = {}
    for sid, s in c.entries:
        for a, v in w.phi[sid].items():
            if v < 0:
                raise SupportViolation(f"phi[{sid}] is negative at atom {a}")
            if v and a not in s.atoms:
                raise SupportViolation(f"phi[{sid}] is nonzero at atom {a} outside the set")
            sums[a] = sums.get(a, Fraction(0)) + v
    for a in sorted(sums):
        if sums[a] > 1:
            raise SumExceedsOne(a, sums[a])
    space = c.space
    return min(
        sum((v * space.weight(a) for a, v in w.phi[sid].items()), Fraction(0)) / mu(space, s)
        for sid, s in c.entries
    )


def maximal_levelset(c: SetCollection, B: MSet, eta) -> MSet:
    """``{x : M(1_B)(x) > eta}``: the union of sets with ``mu(R & B) > eta mu(R)``."""
    eta = Fraction(eta)
    if B.space != c.space:
        raise SpaceMismatch("B is not over the collection's space")
    if not B:
        raise ValidationError("B must be non-empty")
    atoms: set[int] = set()
    for _, s in c.entries:
        if mu(c.space, s & B) > eta * mu(c.space, s):
            atoms |= s.atoms
    return MSet._trusted(c.space, frozenset(atoms))


def _candidates(c: SetCollection, strategy: str, sets, max_size: int, samples: int, seed: int):
    space = c.space
    if strategy == "atoms":
        return [MSet._trusted(space, frozenset([a])) for a in space.ids]
    if strategy == "shadows":
        members = [s for _, s in c.entries]
        out = []
        for k in range(1, max_size + 1):
            for combo in itertools.combinations(members, k):
                out.append(MSet._trusted(space, frozenset().union(*(s.atoms for s in combo))))
        return out
    if strategy == "list":
        return [s if isinstance(s, MSet) else MSet(space, s) for s in (sets or [])]
    if strategy == "random":
        pool = sorted(c.shadow().atoms)
        rng = Stream(seed)
        out = []
        for _ in range(samples):
            chosen = frozenset(a for a in pool if rng.coin())
            if chosen:
                out.append(MSet._trusted(space, chosen))
        return out
    raise ValidationError(f"unknown candidate strategy {strategy!r}")


def m_eta_lower_bound(
    c: SetCollection,
    eta,
    strategy: str = "atoms",
    *,
    sets: Iterable | None = None,
    max_size: int = 2,
    samples: int = 64,
    seed: int = 0,
) -> Fraction:
    """Lower bound for the best ``M`` in ``mu({M(1_B) > eta}) <= M mu(B)``.

    Takes the worst ratio over candidate sets ``B`` chosen by ``strategy``:
    ``"atoms"`` (every singleton), ``"shadows"`` (unions of up to
    ``max_size`` members), ``"list"`` (the given ``sets``) or ``"random"``
    (``samples`` seeded random subsets of the shadow). Never claimed tight.
    """
    cands = [b for b in _candidates(c, strategy, sets, max_size, samples, seed) if b]
    if not cands:
        raise NoCandidates(f"strategy {strategy!r} produced no non-empty candidate")
    return max(mu(c.space, maximal_levelset(c, b, eta)) / mu(c.space, b) for b in cands)


def subfamily_values(c: SetCollection, ids: Sequence[int]) -> tuple[Fraction, Fraction]:
    """(sum of masses, shadow mass) of one subfamily; used for report checks."""
    sub = c.subcollection(ids)
    return sum((mu(c.space, s) for _, s in sub), Fraction(0)), mu(c.space, sub.shadow())
