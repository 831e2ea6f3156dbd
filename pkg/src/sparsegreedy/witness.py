"""Sparse witnesses: one non-negative atom function per set."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict

# sparse map atom_id -> value; absent atoms are 0
AtomFunction = Dict[int, Fraction]


@dataclass(frozen=True)
class SparseWitness:
    phi: dict[int, AtomFunction]
    achieved_eta: Fraction

    def atom_sums(self) -> dict[int, Fraction]:
        sums: dict[int, Fraction] = {}
        for f in self.phi.values():
            for a, v in f.items():
                sums[a] = sums.get(a, Fraction(0)) + v
        return sums


def integral(f: AtomFunction, space) -> Fraction:
    return sum((v * space.weight(a) for a, v in f.items()), Fraction(0))


def indicator(atoms, value: Fraction = Fraction(1)) -> AtomFunction:
    return {a: Fraction(value) for a in sorted(atoms)}
