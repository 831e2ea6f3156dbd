"""Reproducible instance families.

``line``
    ``R_m = [0, 1) u [m, m + 1/(L - 1))`` on the real line, reduced to one
    base atom of weight 1 plus one tail atom of weight ``1/(L - 1)`` per set.
``staircase``
    dyadic rectangles ``[0, 2^m) x [j, j + 2^-m)`` under a point-mass measure:
    a corner atom of weight 1 plus one atom of weight ``1/(1 + j)`` per
    rectangle, with ``j = L - 2``.
``dyadic_intervals``, ``dyadic_rectangles``
    random dyadic cubes or rectangles on a uniform grid.
``random``
    random subsets of a small space with random rational weights.

The reduced families keep every measure the arguments use (set masses,
shadow masses, disjoint parts), so all constants are exact.
"""
from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .collection import SetCollection
from .errors import GridTooLarge, ValidationError
from .measure import Atom, GroundSpace, fraction_str
from .rng import PRNG_NAME, Stream

MAX_GRID_ATOMS = 1 << 16


def gen_line_family(Lambda, M: int) -> SetCollection:
    Lambda = Fraction(Lambda)
    if Lambda < 2:
        raise ValidationError(f"Lambda must be at least 2, got {Lambda}")
    if M < 1:
        raise ValidationError("M must be at least 1")
    tail = 1 / (Lambda - 1)
    atoms = [Atom(0, Fraction(1), "[0,1)")]
    atoms += [Atom(m, tail, f"[{m},{m}+{fraction_str(tail)})") for m in range(1, M + 1)]
    space = GroundSpace(atoms)
    return SetCollection(space, [(m, space.subset([0, m])) for m in range(1, M + 1)])


def gen_staircase(Lambda: int, M: int, stairs: Sequence[int] | None = None) -> SetCollection:
    """Rectangles ``R_m^j`` for ``m = 0 .. M-1`` on stair ``j = Lambda - 2``.

    ``stairs`` replaces the single default stair with several values of ``j``;
    each gets its own corner atom and ``M`` rectangles.
    """
    if isinstance(Lambda, bool) or int(Lambda) != Lambda or Lambda < 2:
        raise ValidationError(f"Lambda must be an integer >= 2, got {Lambda}")
    if M < 1:
        raise ValidationError("M must be at least 1")
    Lambda = int(Lambda)
    stairs = [Lambda - 2] if stairs is None else list(stairs)
    atoms, sets = [], []
    for idx, j in enumerate(stairs):
        corner = idx * (M + 1)
        atoms.append(Atom(corner, Fraction(1), f"(0,{j})"))
        for m in range(M):
            # a point inside [2^(m-1), 2^m) x [j + 2^-(m+1), j + 2^-m)
            px = Fraction(3, 4) * Fraction(2) ** m
            py = j + Fraction(3, 4) * Fraction(2) ** -m
            aid = corner + 1 + m
            atoms.append(Atom(aid, Fraction(1, 1 + j), f"x[{m},{j}]=({px},{py})"))
            sets.append((idx * M + m, aid, corner))
    space = GroundSpace(atoms)
    return SetCollection(space, [(sid, space.subset([corner, aid])) for sid, aid, corner in sets])


def _dyadic_range(rng: Stream, depth: int, level: int) -> range:
    side = 1 << (depth - level)
    start = rng.below(1 << level) * side
    return range(start, start + side)


def gen_dyadic(kind: str, dimension: int, depth: int, count: int, seed: int) -> SetCollection:
    """Random dyadic cubes (``kind="intervals"``) or rectangles on a grid.

    The grid has ``2^depth`` cells per axis, each of weight
    ``2^(-depth * dimension)``. Cubes share one level across axes; rectangles
    draw an independent level per axis.
    """
    if kind not in ("intervals", "rectangles"):
        raise ValidationError(f"unknown dyadic kind {kind!r}")
    if dimension < 1 or depth < 0 or count < 1:
        raise ValidationError("need dimension >= 1, depth >= 0, count >= 1")
    if depth * dimension > 16:
        raise GridTooLarge(f"grid would have 2^{depth * dimension} > {MAX_GRID_ATOMS} atoms")
    side = 1 << depth
    weight = Fraction(1, side**dimension)
    atoms = [
        Atom(i, weight, "(" + ",".join(map(str, idx)) + ")")
        for i, idx in enumerate(itertools.product(range(side), repeat=dimension))
    ]
    space = GroundSpace(atoms)
    rng = Stream(seed)
    entries = []
    for sid in range(count):
        if kind == "intervals":
            level = rng.between(0, depth)
            ranges = [_dyadic_range(rng, depth, level) for _ in range(dimension)]
        else:
            ranges = [_dyadic_range(rng, depth, rng.between(0, depth)) for _ in range(dimension)]
        ids = []
        for idx in itertools.product(*ranges):
            flat = 0
            for coord in idx:
                flat = flat * side + coord
            ids.append(flat)
        entries.append((sid, space.subset(ids)))
    return SetCollection(space, entries)


def gen_random(atoms: int, count: int, seed: int, max_weight: int = 4) -> SetCollection:
    """Each set takes every atom independently with probability 1/2 (never empty)."""
    if atoms < 1 or count < 1 or max_weight < 1:
        raise ValidationError("need atoms >= 1, count >= 1, max_weight >= 1")
    rng = Stream(seed)
    space = GroundSpace(
        Atom(i, Fraction(rng.between(1, max_weight), rng.between(1, max_weight)))
        for i in range(atoms)
    )
    entries = []
    for sid in range(count):
        chosen = [i for i in range(atoms) if rng.coin()]
        if not chosen:
            chosen = [rng.below(atoms)]
        entries.append((sid, space.subset(chosen)))
    return SetCollection(space, entries)


def pigeonhole_bound(kind: str, Lambda, M: int, N: int) -> Fraction:
    """Average height forced on the largest part of any ``N``-way partition.

    Some part holds ``k >= ceil(M / N)`` sets, and ``k`` sets of either
    counterexample family have average height ``k L / (L - 1 + k)``, which
    increases with ``k``.
    """
    if kind not in ("line", "staircase"):
        raise ValidationError(f"unknown family kind {kind!r}")
    if M < 1 or N < 1:
        raise ValidationError("M and N must be at least 1")
    Lambda = Fraction(Lambda)
    k = -(-M // N)
    return k * Lambda / (Lambda - 1 + k)


def set_partitions(items: Sequence, n: int) -> Iterator[list[list]]:
    """All partitions of ``items`` into exactly ``n`` non-empty blocks."""
    items = list(items)
    if n < 1 or n > len(items):
        return
    labels = [0] * len(items)

    def rec(i: int, used: int):
        if i == len(items):
            if used == n:
                blocks = [[] for _ in range(n)]
                for item, b in zip(items, labels):
                    blocks[b].append(item)
                yield blocks
            return
        # not enough items left to open the missing blocks
        if n - used > len(items) - i:
            return
        for b in range(min(used + 1, n)):
            labels[i] = b
            yield from rec(i + 1, max(used, b + 1))

    yield from rec(0, 0)


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    Lambda: Fraction = Fraction(2)
    count: int = 1
    dimension: int = 1
    depth: int = 3
    seed: int = 0
    atoms: int = 8
    stairs: tuple[int, ...] | None = None

    def to_json(self) -> dict:
        d = asdict(self)
        d["Lambda"] = fraction_str(self.Lambda)
        if self.stairs is not None:
            d["stairs"] = list(self.stairs)
        return d


KINDS = ("line", "staircase", "dyadic_intervals", "dyadic_rectangles", "random")


def generate(spec: FamilySpec) -> SetCollection:
    if spec.kind == "line":
        return gen_line_family(spec.Lambda, spec.count)
    if spec.kind == "staircase":
        if spec.Lambda.denominator != 1:
            raise ValidationError("staircase needs an integer Lambda")
        return gen_staircase(int(spec.Lambda), spec.count, spec.stairs)
    if spec.kind in ("dyadic_intervals", "dyadic_rectangles"):
        return gen_dyadic(spec.kind.split("_")[1], spec.dimension, spec.depth, spec.count, spec.seed)
    if spec.kind == "random":
        return gen_random(spec.atoms, spec.count, spec.seed)
    raise ValidationError(f"unknown family kind {spec.kind!r}")


def family_meta(spec: FamilySpec) -> dict:
    return {"family": spec.to_json(), "prng": PRNG_NAME}
