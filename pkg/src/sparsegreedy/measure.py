"""Exact finitely-atomized measure spaces.

A :class:`GroundSpace` is a finite list of atoms with positive rational
weights. Sets are :class:`MSet` values: immutable collections of atom ids
bound to one space. All arithmetic is done with :class:`fractions.Fraction`
so every inequality can be checked with zero tolerance.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import (
    DuplicateAtomId,
    NonpositiveWeight,
    SpaceMismatch,
    UnknownAtom,
    ValidationError,
    ZeroMeasureSet,
)

_FRACTION_RE = re.compile(r"^\s*(\d+)\s*(?:/\s*(\d+))?\s*$")


def as_fraction(value) -> Fraction:
    """Coerce ``value`` to a Fraction without ever going through floats.

    Accepts Fractions, ints and strings of the form ``"p"`` or ``"p/q"``.
    """
    if isinstance(value, bool):
        raise ValidationError(f"not a rational number: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        m = _FRACTION_RE.match(value)
        if m is None:
            raise ValidationError(f"not an exact fraction string: {value!r}")
        num, den = int(m.group(1)), int(m.group(2) or 1)
        if den == 0:
            raise ValidationError(f"zero denominator: {value!r}")
        return Fraction(num, den)
    raise ValidationError(f"not a rational number: {value!r}")


def fraction_str(x: Fraction) -> str:
    """Canonical ``"p/q"`` rendering, used in every serialized scalar."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Atom:
    id: int
    weight: Fraction
    label: str | None = None


class GroundSpace:
    """Finite measure space given by weighted atoms, kept in id order."""

    __slots__ = ("atoms", "_weights", "_hash")

    def __init__(self, atoms: Iterable[Atom]):
        atoms = sorted(atoms, key=lambda a: a.id)
        if not atoms:
            raise ValidationError("a ground space needs at least one atom")
        weights: dict[int, Fraction] = {}
        for a in atoms:
            if a.id in weights:
                raise DuplicateAtomId(f"atom id {a.id} appears twice")
            if a.weight <= 0:
                raise NonpositiveWeight(f"atom {a.id} has weight {a.weight}")
            weights[a.id] = a.weight
        self.atoms: tuple[Atom, ...] = tuple(atoms)
        self._weights = weights
        self._hash = hash(tuple((a.id, a.weight) for a in self.atoms))

    def __len__(self) -> int:
        return len(self.atoms)

    def __iter__(self) -> Iterator[Atom]:
        return iter(self.atoms)

    def __contains__(self, atom_id) -> bool:
        return atom_id in self._weights

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, GroundSpace):
            return NotImplemented
        return self._weights == other._weights

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"GroundSpace({len(self.atoms)} atoms, total={self.total})"

    @property
    def ids(self) -> tuple[int, ...]:
        return tuple(a.id for a in self.atoms)

    @property
    def total(self) -> Fraction:
        return sum(self._weights.values(), Fraction(0))

    def weight(self, atom_id: int) -> Fraction:
        try:
            return self._weights[atom_id]
        except KeyError:
            raise UnknownAtom(f"atom {atom_id} is not in this space") from None

    def subset(self, atom_ids: Iterable[int]) -> MSet:
        """Build a set of positive measure; empty input is rejected."""
        s = MSet(self, atom_ids)
        if not s:
            raise ZeroMeasureSet("sets of measure zero are not allowed")
        return s

    def empty(self) -> MSet:
        return MSet(self, ())

    def full(self) -> MSet:
        return MSet(self, self._weights)


def build_space(weights: Iterable[tuple], labels: dict[int, str] | None = None) -> GroundSpace:
    """Construct a space from ``(id, weight)`` or ``(id, weight, label)`` tuples."""
    labels = labels or {}
    atoms = []
    for item in weights:
        atom_id, w = item[0], item[1]
        label = item[2] if len(item) > 2 else labels.get(atom_id)
        if isinstance(atom_id, bool) or not isinstance(atom_id, int):
            raise ValidationError(f"atom id must be an integer, got {atom_id!r}")
        atoms.append(Atom(atom_id, as_fraction(w), label))
    return GroundSpace(atoms)


class MSet:
    """Immutable atom set over a fixed :class:`GroundSpace`.

    May be empty, which is allowed for intermediate results of set algebra.
    Collections only accept non-empty sets (see :meth:`GroundSpace.subset`).
    """

    __slots__ = ("space", "atoms")

    def __init__(self, space: GroundSpace, atom_ids: Iterable[int]):
        ids = frozenset(atom_ids)
        for a in ids:
            if a not in space:
                raise UnknownAtom(f"atom {a} is not in this space")
        self.space = space
        self.atoms: frozenset[int] = ids

    @classmethod
    def _trusted(cls, space: GroundSpace, atoms: frozenset[int]) -> MSet:
        s = cls.__new__(cls)
        s.space = space
        s.atoms = atoms
        return s

    def __repr__(self) -> str:
        return f"MSet({sorted(self.atoms)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, MSet):
            return NotImplemented
        return self.atoms == other.atoms and self.space == other.space

    def __hash__(self) -> int:
        return hash(self.atoms)

    def __bool__(self) -> bool:
        return bool(self.atoms)

    def __len__(self) -> int:
        return len(self.atoms)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.atoms))

    def __contains__(self, atom_id) -> bool:
        return atom_id in self.atoms

    @property
    def atom_ids(self) -> list[int]:
        return sorted(self.atoms)

    def measure(self) -> Fraction:
        return mu(self.space, self)

    def _check(self, other: MSet) -> None:
        if self.space != other.space:
            raise SpaceMismatch("sets live on different ground spaces")

    def __or__(self, other: MSet) -> MSet:
        return set_algebra(self, other, "union")

    def __and__(self, other: MSet) -> MSet:
        return set_algebra(self, other, "intersect")

    def __sub__(self, other: MSet) -> MSet:
        return set_algebra(self, other, "difference")

    def __le__(self, other: MSet) -> bool:
        self._check(other)
        return self.atoms <= other.atoms


def mu(space: GroundSpace, s: MSet) -> Fraction:
    if s.space != space:
        raise SpaceMismatch("set does not belong to this space")
    return sum((space.weight(a) for a in s.atoms), Fraction(0))


_OPS = {
    "union": frozenset.union,
    "intersect": frozenset.intersection,
    "difference": frozenset.difference,
}


def set_algebra(a: MSet, b: MSet, op: str) -> MSet:
    if op not in _OPS:
        raise ValueError(f"unknown set operation {op!r}")
    a._check(b)
    return MSet._trusted(a.space, _OPS[op](a.atoms, b.atoms))


def shadow(sets: Sequence[MSet], space: GroundSpace | None = None) -> MSet | frozenset:
    """Union of ``sets``.

    An empty list has no space to attach to; pass ``space`` to get an empty
    :class:`MSet`, otherwise an empty frozenset is returned.
    """
    if not sets:
        return space.empty() if space is not None else frozenset()
    first = sets[0]
    atoms: set[int] = set()
    for s in sets:
        first._check(s)
        atoms |= s.atoms
    return MSet._trusted(first.space, frozenset(atoms))
