"""Finite multiplication tables for idempotent semigroups with xyz = xz.

Such tables decompose, canonically over a base point, as a product of a
left-zero table (xy = x) and a right-zero table (xy = y); they are also the
same thing as algebras for the squaring monad on finite sets, whose laws are
q(x, x) = x and q(q(a, b), q(c, d)) = q(a, d).  Both equivalences are exact
and checked by full enumeration.

Carriers are 0..n-1; labels, if any, live in the I/O layer.  Empty carriers
are excluded.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import InternalCheckError, LawError, SizeLimitError


@dataclass(frozen=True)
class BandTable:
    n: int
    table: tuple[tuple[int, ...], ...]

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]


def check_band(raw: list[list[int]] | tuple[tuple[int, ...], ...]) -> BandTable:
    """Associativity, idempotency and xyz = xz by full enumeration; raises
    with the first violated law and its witness."""
    n = len(raw)
    if n == 0:
        raise LawError("empty_carrier", "the empty table is excluded", {})
    table = tuple(tuple(row) for row in raw)
    for row in table:
        if len(row) != n or any(not (0 <= v < n) for v in row):
            raise LawError("malformed_table", f"table is not {n}x{n} over 0..{n - 1}", {"n": n})
    for x, y, z in itertools.product(range(n), repeat=3):
        if table[table[x][y]][z] != table[x][table[y][z]]:
            raise LawError("not_associative", f"associativity fails at ({x},{y},{z})", {"triple": [x, y, z]})
    for x in range(n):
        if table[x][x] != x:
            raise LawError("not_idempotent", f"idempotency fails at {x}", {"element": x})
    for x, y, z in itertools.product(range(n), repeat=3):
        if table[table[x][y]][z] != table[x][z]:
            raise LawError("not_rectangular", f"xyz = xz fails at ({x},{y},{z})", {"triple": [x, y, z]})
    return BandTable(n=n, table=table)


@dataclass(frozen=True)
class BandDecomposition:
    p: int
    q: int
    pair_of: tuple[tuple[int, int], ...]  # element -> (left class index, right class index)
    element_of: dict[tuple[int, int], int]


def decompose_band(band: BandTable) -> BandDecomposition:
    """Left-zero x right-zero decomposition over the base point 0.

    x maps to (x*0, 0*x); the transported product is (left of x, right of y)
    and this is re-checked exactly on the whole table.
    """
    e = 0
    left_reps = sorted({band.mul(x, e) for x in range(band.n)})
    right_reps = sorted({band.mul(e, x) for x in range(band.n)})
    left_index = {v: i for i, v in enumerate(left_reps)}
    right_index = {v: i for i, v in enumerate(right_reps)}
    pair_of = tuple((left_index[band.mul(x, e)], right_index[band.mul(e, x)]) for x in range(band.n))
    element_of = {p: x for x, p in enumerate(pair_of)}
    if len(element_of) != band.n or len(left_reps) * len(right_reps) != band.n:
        raise InternalCheckError("band_decomposition", "base-point decomposition is not bijective")
    for x, y in itertools.product(range(band.n), repeat=2):
        expected = (pair_of[x][0], pair_of[y][1])
        if pair_of[band.mul(x, y)] != expected:
            raise InternalCheckError("band_decomposition", f"transport fails at ({x},{y})")
    return BandDecomposition(p=len(left_reps), q=len(right_reps), pair_of=pair_of, element_of=element_of)


def recompose_band(dec: BandDecomposition) -> BandTable:
    n = dec.p * dec.q
    table = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            table[x][y] = dec.element_of[(dec.pair_of[x][0], dec.pair_of[y][1])]
    return check_band(table)


@dataclass(frozen=True)
class SetMonadAlgebra:
    n: int
    structure: tuple[tuple[int, ...], ...]  # q(x, y) by row x, column y

    def q(self, x: int, y: int) -> int:
        return self.structure[x][y]


@dataclass(frozen=True)
class AlgebraLawReport:
    unit_ok: bool
    unit_witness: tuple[int, ...] | None
    mult_ok: bool
    mult_witness: tuple[int, ...] | None

    @property
    def ok(self) -> bool:
        return self.unit_ok and self.mult_ok


def algebra_laws(alg: SetMonadAlgebra) -> AlgebraLawReport:
    """q(x,x) = x and q(q(a,b), q(c,d)) = q(a,d), fully enumerated."""
    unit_witness = next(((x,) for x in range(alg.n) if alg.q(x, x) != x), None)
    mult_witness = next(
        (
            (a, b, c, d)
            for a, b, c, d in itertools.product(range(alg.n), repeat=4)
            if alg.q(alg.q(a, b), alg.q(c, d)) != alg.q(a, d)
        ),
        None,
    )
    return AlgebraLawReport(
        unit_ok=unit_witness is None,
        unit_witness=unit_witness,
        mult_ok=mult_witness is None,
        mult_witness=mult_witness,
    )


def band_to_algebra(band: BandTable) -> SetMonadAlgebra:
    alg = SetMonadAlgebra(n=band.n, structure=band.table)
    report = algebra_laws(alg)
    if not report.ok:
        raise InternalCheckError("band_algebra", "a valid table must satisfy the algebra laws")
    return alg


def algebra_to_band(alg: SetMonadAlgebra) -> BandTable:
    report = algebra_laws(alg)
    if not report.ok:
        witness = report.unit_witness or report.mult_witness
        raise LawError("law_mismatch", "structure map violates the algebra laws", {"witness": list(witness)})
    return check_band(alg.structure)


def laws_agree(raw: list[list[int]] | tuple[tuple[int, ...], ...]) -> tuple[bool, bool]:
    """(band laws hold, algebra laws hold) for an arbitrary square table;
    the two verdicts must coincide on every table."""
    try:
        check_band(raw)
        band_ok = True
    except LawError:
        band_ok = False
    n = len(raw)
    algebra_ok = False
    if n > 0 and all(len(r) == n and all(0 <= v < n for v in r) for r in raw):
        algebra_ok = algebra_laws(SetMonadAlgebra(n=n, structure=tuple(tuple(r) for r in raw))).ok
    return band_ok, algebra_ok


@dataclass(frozen=True)
class BandEnumeration:
    n: int
    scanned: int
    bands: tuple[BandTable, ...]
    decompositions: tuple[BandDecomposition, ...]


def enumerate_rectangular_bands(n: int) -> BandEnumeration:
    """Scan all n^(n*n) tables, keep the ones satisfying all three laws and
    decompose each survivor.  Limited to n <= 3 (full scan)."""
    if n < 1 or n > 3:
        raise SizeLimitError("size_too_large", "full table scans are limited to 1 <= n <= 3", {"n": n})
    bands: list[BandTable] = []
    decompositions: list[BandDecomposition] = []
    scanned = 0
    cells = n * n
    for values in itertools.product(range(n), repeat=cells):
        scanned += 1
        table = tuple(tuple(values[i * n : (i + 1) * n]) for i in range(n))
        band_ok, algebra_ok = laws_agree(table)
        if band_ok != algebra_ok:
            raise InternalCheckError("band_algebra", f"law equivalence fails on {table}")
        if band_ok:
            band = BandTable(n=n, table=table)
            bands.append(band)
            decompositions.append(decompose_band(band))
    return BandEnumeration(n=n, scanned=scanned, bands=tuple(bands), decompositions=tuple(decompositions))
