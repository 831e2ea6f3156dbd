"""Finite families of sets: height function, average height and weak height."""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .errors import EmptyCollection, SpaceMismatch, UnknownSetId, ValidationError, ZeroMeasureSet
from .measure import GroundSpace, MSet, mu


class SetCollection:
    """Ordered family of ``(set_id, MSet)`` entries over one space.

    Repeated sets are allowed; set ids are not.
    """

    __slots__ = ("space", "entries", "_by_id")

    def __init__(self, space: GroundSpace, entries: Iterable[tuple[int, MSet]]):
        entries = tuple(entries)
        by_id: dict[int, MSet] = {}
        for sid, s in entries:
            if isinstance(sid, bool) or not isinstance(sid, int):
                raise ValidationError(f"set id must be an integer, got {sid!r}")
            if sid in by_id:
                raise ValidationError(f"set id {sid} appears twice")
            if s.space != space:
                raise SpaceMismatch(f"set {sid} is not over this space")
            if not s:
                raise ZeroMeasureSet(f"set {sid} has measure zero")
            by_id[sid] = s
        self.space = space
        self.entries: tuple[tuple[int, MSet], ...] = entries
        self._by_id = by_id

    @classmethod
    def from_atom_lists(cls, space: GroundSpace, sets: Mapping[int, Iterable[int]]) -> SetCollection:
        return cls(space, [(sid, space.subset(atoms)) for sid, atoms in sets.items()])

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[tuple[int, MSet]]:
        return iter(self.entries)

    def __contains__(self, sid) -> bool:
        return sid in self._by_id

    def __repr__(self) -> str:
        return f"SetCollection({len(self.entries)} sets over {len(self.space)} atoms)"

    def __eq__(self, other) -> bool:
        if not isinstance(other, SetCollection):
            return NotImplemented
        return self.space == other.space and self.entries == other.entries

    @property
    def ids(self) -> list[int]:
        return [sid for sid, _ in self.entries]

    def __getitem__(self, sid: int) -> MSet:
        try:
            return self._by_id[sid]
        except KeyError:
            raise UnknownSetId(f"set id {sid} is not in the collection") from None

    def subcollection(self, ids: Iterable[int]) -> SetCollection:
        """Entries whose id is in ``ids``, kept in collection order."""
        wanted = set(ids)
        for sid in wanted:
            self[sid]
        return SetCollection(self.space, [(sid, s) for sid, s in self.entries if sid in wanted])

    def without(self, sid: int) -> SetCollection:
        self[sid]
        return SetCollection(self.space, [(i, s) for i, s in self.entries if i != sid])

    def shadow(self) -> MSet:
        atoms: set[int] = set()
        for _, s in self.entries:
            atoms |= s.atoms
        return MSet._trusted(self.space, frozenset(atoms))


def _require_nonempty(c: SetCollection) -> None:
    if not len(c):
        raise EmptyCollection("the collection has no sets")


def height(c: SetCollection) -> dict[int, int]:
    """Per-atom multiplicity of the family. Atoms outside the shadow are 0."""
    _require_nonempty(c)
    counts = Counter()
    for _, s in c.entries:
        counts.update(s.atoms)
    return {a: counts.get(a, 0) for a in c.space.ids}


def avg_height(c: SetCollection) -> Fraction:
    """Sum of the set measures divided by the measure of the shadow."""
    _require_nonempty(c)
    total = sum((mu(c.space, s) for _, s in c.entries), Fraction(0))
    return total / mu(c.space, c.shadow())


def level_measures(space: GroundSpace, h: Mapping[int, int]) -> list[Fraction]:
    """``out[k] = mu({h >= k})`` for ``k = 0 .. max(h)``."""
    top = max(h.values(), default=0)
    exact = [Fraction(0)] * (top + 2)
    for a, k in h.items():
        exact[k] += space.weight(a)
    out = [Fraction(0)] * (top + 1)
    running = Fraction(0)
    for k in range(top, -1, -1):
        running += exact[k]
        out[k] = running
    return out


def weak_norm(space: GroundSpace, h: Mapping[int, int]) -> Fraction:
    """``sup_{t>0} t * mu({h > t})`` for an integer-valued ``h``.

    The supremum is approached as ``t`` rises to an integer level ``k``, so it
    equals ``max_k k * mu({h >= k})``.
    """
    levels = level_measures(space, h)
    return max((k * levels[k] for k in range(1, len(levels))), default=Fraction(0))


def weak_height(c: SetCollection) -> Fraction:
    _require_nonempty(c)
    h = height(c)
    return weak_norm(c.space, h) / mu(c.space, c.shadow())
