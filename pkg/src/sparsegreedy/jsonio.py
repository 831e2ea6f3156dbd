"""JSON encodings for spaces, collections, traces, witnesses and reports.

Every scalar is written as an exact ``"p/q"`` string.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .collection import SetCollection
from .errors import ParseError, ValidationError
from .generators import KINDS, FamilySpec
from .greedy_log import LogTrace
from .greedy_opt import Fixed, OptTrace
from .measure import Atom, GroundSpace, as_fraction, fraction_str
from .oracle import OracleReport
from .partition import PartitionReport, PartitionResult
from .witness import AtomFunction, SparseWitness


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def loads(data: bytes | str, what: str = "input"):
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError(f"{what}: not UTF-8 ({e})") from None
    try:
        return json.loads(data)
    except json.JSONDecodeError as e:
        raise ParseError(f"{what}: line {e.lineno} column {e.colno}: {e.msg}") from None


def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"{where}: expected an integer, got {value!r}")
    return value


def _frac(value, where: str) -> Fraction:
    try:
        return as_fraction(value)
    except ValidationError as e:
        raise ValidationError(f"{where}: {e}") from None


def _list(value, where: str) -> list:
    if not isinstance(value, list):
        raise ValidationError(f"{where}: expected a list")
    return value


def _obj(value, where: str) -> dict:
    if not isinstance(value, dict):
        raise ValidationError(f"{where}: expected an object")
    return value


def _fn_to_json(f: AtomFunction) -> list[dict]:
    return [{"atom": a, "value": fraction_str(v)} for a, v in sorted(f.items())]


def space_to_json(space: GroundSpace) -> dict:
    atoms = []
    for a in space:
        d = {"id": a.id, "weight": fraction_str(a.weight)}
        if a.label is not None:
            d["label"] = a.label
        atoms.append(d)
    return {"atoms": atoms}


def space_from_json(obj, where: str = "space") -> GroundSpace:
    obj = _obj(obj, where)
    atoms = []
    for i, a in enumerate(_list(obj.get("atoms"), f"{where}.atoms")):
        loc = f"{where}.atoms[{i}]"
        a = _obj(a, loc)
        label = a.get("label")
        if label is not None and not isinstance(label, str):
            raise ValidationError(f"{loc}.label: expected a string")
        atoms.append(Atom(_int(a.get("id"), f"{loc}.id"), _frac(a.get("weight"), f"{loc}.weight"), label))
    try:
        return GroundSpace(atoms)
    except ValidationError as e:
        raise type(e)(f"{where}: {e}") from None


def collection_to_json(c: SetCollection) -> dict:
    return {
        "space": space_to_json(c.space),
        "sets": [{"id": sid, "atoms": s.atom_ids} for sid, s in c.entries],
    }


def collection_from_json(obj) -> SetCollection:
    obj = _obj(obj, "collection")
    space = space_from_json(obj.get("space"))
    entries = []
    for i, s in enumerate(_list(obj.get("sets"), "sets")):
        loc = f"sets[{i}]"
        s = _obj(s, loc)
        sid = _int(s.get("id"), f"{loc}.id")
        ids = [_int(a, f"{loc}.atoms[{k}]") for k, a in enumerate(_list(s.get("atoms"), f"{loc}.atoms"))]
        try:
            entries.append((sid, space.subset(ids)))
        except ValidationError as e:
            raise type(e)(f"{loc}: {e}") from None
    try:
        return SetCollection(space, entries)
    except ValidationError as e:
        raise type(e)(f"sets: {e}") from None


def parse_collection(data: bytes | str) -> SetCollection:
    return collection_from_json(loads(data, "collection"))


def log_trace_to_json(t: LogTrace) -> dict:
    return {
        "A": fraction_str(t.A),
        "steps": [
            {"set": sid, "lambda": fraction_str(t.lambdas[sid]), "f": _fn_to_json(t.f[sid])}
            for sid in t.removal_order
        ],
    }


def mode_to_json(mode) -> dict:
    d = {"mode": mode.name, "eta": fraction_str(mode.eta)}
    if isinstance(mode, Fixed):
        d["M"] = fraction_str(mode.M)
    return d


def opt_trace_to_json(t: OptTrace) -> dict:
    return {
        "header": mode_to_json(t.mode),
        "A": fraction_str(t.A),
        "steps": [
            {
                "set": sid,
                "lambda": fraction_str(t.lambdas[sid]),
                "threshold": fraction_str(t.thresholds[sid]),
                "E": t.E[sid].atom_ids,
            }
            for sid in t.removal_order
        ],
    }


def witness_to_json(w: SparseWitness) -> dict:
    return {
        "eta": fraction_str(w.achieved_eta),
        "phi": [{"set": sid, "values": _fn_to_json(f)} for sid, f in sorted(w.phi.items())],
    }


def witness_from_json(obj) -> SparseWitness:
    obj = _obj(obj, "witness")
    phi: dict[int, AtomFunction] = {}
    for i, entry in enumerate(_list(obj.get("phi"), "phi")):
        loc = f"phi[{i}]"
        entry = _obj(entry, loc)
        sid = _int(entry.get("set"), f"{loc}.set")
        if sid in phi:
            raise ValidationError(f"{loc}: set {sid} listed twice")
        f: AtomFunction = {}
        for k, v in enumerate(_list(entry.get("values"), f"{loc}.values")):
            vloc = f"{loc}.values[{k}]"
            v = _obj(v, vloc)
            f[_int(v.get("atom"), f"{vloc}.atom")] = _frac(v.get("value"), f"{vloc}.value")
        phi[sid] = f
    eta = _frac(obj["eta"], "eta") if "eta" in obj else Fraction(0)
    return SparseWitness(phi, eta)


def partition_to_json(p: PartitionResult) -> dict:
    return {
        "gamma": fraction_str(p.gamma),
        "buckets": [list(b) for b in p.buckets],
        "insertion_order": list(p.insertion_order),
        "new_mass": {str(sid): p.new_mass[sid].atom_ids for sid in sorted(p.new_mass)},
    }


def partition_report_to_json(r: PartitionReport) -> dict:
    return {
        "disjoint": r.disjoint,
        "mass_ok": r.mass_ok,
        "count_ok": r.count_ok,
        "bucket_count": r.bucket_count,
        "count_bound": fraction_str(r.count_bound),
        "passed": r.passed,
    }


def oracle_to_json(r: OracleReport) -> dict:
    return {"value": fraction_str(r.value), "argmax": list(r.witness_subfamily), "count": r.enumerated_count}


def family_spec_from_json(obj) -> FamilySpec:
    obj = _obj(obj, "family")
    kind = obj.get("kind")
    if kind not in KINDS:
        raise ValidationError(f"family.kind: expected one of {', '.join(KINDS)}, got {kind!r}")
    kwargs = {"kind": kind}
    if "Lambda" in obj:
        kwargs["Lambda"] = _frac(obj["Lambda"], "family.Lambda")
    for key in ("count", "dimension", "depth", "seed", "atoms"):
        if key in obj:
            kwargs[key] = _int(obj[key], f"family.{key}")
    if obj.get("stairs") is not None:
        kwargs["stairs"] = tuple(_int(j, f"family.stairs[{i}]") for i, j in enumerate(_list(obj["stairs"], "family.stairs")))
    unknown = set(obj) - set(kwargs) - {"stairs"}
    if unknown:
        raise ValidationError(f"family: unknown fields {sorted(unknown)}")
    return FamilySpec(**kwargs)
