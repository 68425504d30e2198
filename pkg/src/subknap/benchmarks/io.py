"""Plain-text instance files.

The format is line-oriented and self-describing; floats are written with
``repr`` (shortest round-tripping form), so write -> read -> write is
byte-identical and values survive exactly.

    subknap instance 1
    problem cov
    methodology ours          # optional metadata
    seed 12345                # optional metadata
    n 3
    m 4
    budget 5.0
    weights 0.5 0.25 1.0
    values 1.0 0.5 0.5 2.0    # cov payload: universe values then one set per element
    set 0 2 0 1               # "set <i> <k> <k ids...>"
    set 1 1 3
    set 2 0
    end

loc payload: one ``row <i> <m benefits...>`` line per location.
inf payload: ``probs <n floats>`` then one ``arcs <i> <k> <k ids...>`` line
per source.  Parse failures raise :class:`InstanceFormatError` with the
offending line number.
"""

from __future__ import annotations

import os
from typing import IO, Iterable

import numpy as np

from ..model import Instance
from .oracles import CoverageOracle, FacilityOracle, InfluenceOracle

__all__ = ["InstanceFormatError", "read_instance", "write_instance"]

_MAGIC = "subknap instance 1"


class InstanceFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


def _fmt(x: float) -> str:
    return repr(float(x))


def _fmt_vec(xs: Iterable[float]) -> str:
    return " ".join(_fmt(x) for x in xs)


def write_instance(instance: Instance, path: str | os.PathLike) -> None:
    inst = instance
    with open(path, "w") as fh:
        fh.write(_MAGIC + "\n")
        fh.write(f"problem {inst.problem}\n")
        if inst.methodology:
            fh.write(f"methodology {inst.methodology}\n")
        if inst.seed is not None:
            fh.write(f"seed {inst.seed}\n")
        fh.write(f"n {inst.n}\n")
        fh.write(f"m {_oracle_m(inst)}\n")
        fh.write(f"budget {_fmt(inst.budget)}\n")
        fh.write(f"weights {_fmt_vec(inst.weights)}\n")
        _write_payload(inst, fh)
        fh.write("end\n")


def _oracle_m(inst: Instance) -> int:
    return inst.oracle.m  # all serializable oracles expose m


def _write_payload(inst: Instance, fh: IO[str]) -> None:
    o = inst.oracle
    if isinstance(o, CoverageOracle):
        fh.write(f"values {_fmt_vec(o.values)}\n")
        for i, cols in enumerate(o.subsets):
            ids = " ".join(str(int(e)) for e in cols)
            fh.write(f"set {i} {len(cols)}{' ' if len(cols) else ''}{ids}\n")
    elif isinstance(o, FacilityOracle):
        for i in range(o.n):
            fh.write(f"row {i} {_fmt_vec(o.benefit[i])}\n")
    elif isinstance(o, InfluenceOracle):
        fh.write(f"probs {_fmt_vec(o.probs)}\n")
        for i, cols in enumerate(o.arcs):
            ids = " ".join(str(int(e)) for e in cols)
            fh.write(f"arcs {i} {len(cols)}{' ' if len(cols) else ''}{ids}\n")
    else:
        raise ValueError(f"cannot serialize oracle type {type(o).__name__}")


class _Lines:
    """Token-level cursor over the file, tracking line numbers for errors."""

    def __init__(self, fh: IO[str]):
        self.fh = fh
        self.no = 0

    def next(self) -> list[str]:
        while True:
            line = self.fh.readline()
            if not line:
                raise InstanceFormatError("unexpected end of file", self.no)
            self.no += 1
            stripped = line.strip()
            if stripped:
                return stripped.split()

    def expect(self, key: str) -> list[str]:
        toks = self.next()
        if toks[0] != key:
            raise InstanceFormatError(f"expected {key!r}, found {toks[0]!r}", self.no)
        return toks[1:]


def _floats(toks: list[str], count: int, cur: _Lines, what: str) -> np.ndarray:
    if len(toks) != count:
        raise InstanceFormatError(
            f"{what}: expected {count} numbers, found {len(toks)}", cur.no
        )
    try:
        return np.array([float(t) for t in toks])
    except ValueError as exc:
        raise InstanceFormatError(f"{what}: {exc}", cur.no) from None


def _id_list(toks: list[str], m: int, cur: _Lines, what: str) -> np.ndarray:
    try:
        count = int(toks[0])
        ids = [int(t) for t in toks[1:]]
    except (ValueError, IndexError) as exc:
        raise InstanceFormatError(f"{what}: {exc}", cur.no) from None
    if len(ids) != count:
        raise InstanceFormatError(
            f"{what}: declared {count} ids, found {len(ids)}", cur.no
        )
    if any(e < 0 or e >= m for e in ids):
        raise InstanceFormatError(f"{what}: id outside range(0, {m})", cur.no)
    return np.asarray(ids, dtype=np.int64)


def _indexed_line(cur: _Lines, key: str, i: int) -> list[str]:
    toks = cur.expect(key)
    if not toks or toks[0] != str(i):
        found = toks[0] if toks else "nothing"
        raise InstanceFormatError(f"expected {key} {i}, found {key} {found}", cur.no)
    return toks[1:]


def read_instance(path: str | os.PathLike, name: str = "") -> Instance:
    with open(path) as fh:
        cur = _Lines(fh)
        try:
            first = cur.next()
        except InstanceFormatError:
            raise InstanceFormatError("empty file", 0) from None
        if " ".join(first) != _MAGIC:
            raise InstanceFormatError(f"bad magic line {' '.join(first)!r}", cur.no)
        problem = cur.expect("problem")[0]
        if problem not in ("cov", "loc", "inf"):
            raise InstanceFormatError(f"unknown problem {problem!r}", cur.no)

        methodology = ""
        seed: int | None = None
        toks = cur.next()
        while toks[0] in ("methodology", "seed"):
            if toks[0] == "methodology":
                methodology = toks[1]
            else:
                seed = int(toks[1])
            toks = cur.next()
        if toks[0] != "n":
            raise InstanceFormatError(f"expected 'n', found {toks[0]!r}", cur.no)
        n = int(toks[1])
        m = int(cur.expect("m")[0])
        budget = float(cur.expect("budget")[0])
        weights = _floats(cur.expect("weights"), n, cur, "weights")

        if problem == "cov":
            values = _floats(cur.expect("values"), m, cur, "values")
            subsets = [
                _id_list(_indexed_line(cur, "set", i), m, cur, f"set {i}")
                for i in range(n)
            ]
            oracle = CoverageOracle(subsets, values)
        elif problem == "loc":
            benefit = np.vstack(
                [
                    _floats(_indexed_line(cur, "row", i), m, cur, f"row {i}")
                    for i in range(n)
                ]
            )
            oracle = FacilityOracle(benefit)
        else:
            probs = _floats(cur.expect("probs"), n, cur, "probs")
            arcs = [
                _id_list(_indexed_line(cur, "arcs", i), m, cur, f"arcs {i}")
                for i in range(n)
            ]
            oracle = InfluenceOracle(arcs, probs, m)

        cur.expect("end")

    stem = name or os.path.splitext(os.path.basename(os.fspath(path)))[0]
    return Instance(
        weights=weights,
        budget=budget,
        oracle=oracle,
        problem=problem,
        methodology=methodology,
        seed=seed,
        name=stem,
    )
