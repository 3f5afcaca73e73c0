"""Exact sparse linear algebra over the rationals.

The reduced row echelon form is computed with integer-preserving sparse
elimination: rows carry unbounded integers, are divided by their gcd after
every combination, and only converted to rationals when the final RREF is
normalized.  A naive dense Fraction eliminator and a modular rank serve as
independent oracles; the RREF of a row space is unique, so all routes must
agree exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .budget import Budget, ensure_budget
from .errors import ChordBasisError
from .relations import Relation

Row = tuple[tuple[int, Fraction], ...]


@dataclass(frozen=True)
class ExactMatrix:
    """Row-major sparse matrix; within a row column indices increase and no
    zero entry is stored."""

    rows: tuple[Row, ...]
    ncols: int

    @property
    def nrows(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class RrefResult:
    matrix: ExactMatrix
    pivots: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.pivots)


def assemble(rows: Iterable[Relation | dict[int, int] | Sequence[tuple[int, int]]],
             ncols: int) -> ExactMatrix:
    """Build a matrix from integer relation rows; empty rows are dropped."""
    out: list[Row] = []
    for row in rows:
        if isinstance(row, Relation):
            items: Iterable[tuple[int, int]] = row.coeffs
        elif isinstance(row, dict):
            items = sorted(row.items())
        else:
            items = sorted(row)
        entries = []
        for col, coef in items:
            if not 0 <= col < ncols:
                raise ChordBasisError(f"column index {col} out of range 0..{ncols - 1}")
            if coef:
                entries.append((col, Fraction(coef)))
        if entries:
            out.append(tuple(entries))
    return ExactMatrix(tuple(out), ncols)


def _integer_rows(mat: ExactMatrix) -> list[dict[int, int]]:
    rows = []
    for row in mat.rows:
        scale = 1
        for _, v in row:
            scale = scale * v.denominator // gcd(scale, v.denominator)
        d = {c: int(v * scale) for c, v in row}
        g = 0
        for v in d.values():
            g = gcd(g, v)
        if g > 1:
            d = {c: v // g for c, v in d.items()}
        rows.append(d)
    return rows


def _forward_eliminate(int_rows: list[dict[int, int]], ncols: int,
                       budget: Budget | None = None) -> list[tuple[int, dict[int, int]]]:
    """Column-ordered elimination; returns (pivot column, row) in pivot order.

    Rows are bucketed by leading column; at each column the sparsest row
    becomes the pivot and the rest are combined against it with integer
    cross-multiplication and gcd reduction.
    """
    budget = ensure_budget(budget)
    buckets: dict[int, list[dict[int, int]]] = {}
    for r in int_rows:
        if r:
            buckets.setdefault(min(r), []).append(r)
    echelon: list[tuple[int, dict[int, int]]] = []
    for col in range(ncols):
        rows_here = buckets.pop(col, None)
        if not rows_here:
            continue
        budget.check_time()
        rows_here.sort(key=len)
        pivot = rows_here[0]
        plead = pivot[col]
        echelon.append((col, pivot))
        for row in rows_here[1:]:
            rlead = row[col]
            g = gcd(plead, rlead)
            pf, rf = plead // g, rlead // g
            new = {c: v * pf for c, v in row.items()}
            for c, v in pivot.items():
                w = new.get(c, 0) - v * rf
                if w:
                    new[c] = w
                elif c in new:
                    del new[c]
            if new:
                g = 0
                for v in new.values():
                    g = gcd(g, v)
                if g > 1:
                    new = {c: v // g for c, v in new.items()}
                buckets.setdefault(min(new), []).append(new)
    return echelon


def pivot_columns(mat: ExactMatrix, budget: Budget | None = None) -> tuple[int, ...]:
    """Pivot columns of the RREF, via the forward pass only."""
    echelon = _forward_eliminate(_integer_rows(mat), mat.ncols, budget)
    return tuple(col for col, _ in echelon)


def rref(mat: ExactMatrix, budget: Budget | None = None) -> RrefResult:
    """The unique reduced row echelon form of the row space of ``mat``."""
    budget = ensure_budget(budget)
    budget.check_cells(mat.nrows, mat.ncols)
    echelon = _forward_eliminate(_integer_rows(mat), mat.ncols, budget)
    # Back-substitution, right to left, staying in integers.
    for i in range(len(echelon) - 1, -1, -1):
        _, row = echelon[i]
        for j in range(i + 1, len(echelon)):
            pcol, prow = echelon[j]
            if pcol not in row:
                continue
            plead = prow[pcol]
            rcoef = row[pcol]
            g = gcd(plead, rcoef)
            pf, rf = plead // g, rcoef // g
            new = {c: v * pf for c, v in row.items()}
            for c, v in prow.items():
                w = new.get(c, 0) - v * rf
                if w:
                    new[c] = w
                elif c in new:
                    del new[c]
            g = 0
            for v in new.values():
                g = gcd(g, v)
            if g > 1:
                new = {c: v // g for c, v in new.items()}
            row = new
        echelon[i] = (echelon[i][0], row)
    rref_rows = []
    for col, row in echelon:
        lead = Fraction(row[col])
        rref_rows.append(tuple((c, Fraction(v) / lead) for c, v in sorted(row.items())))
    pivots = tuple(col for col, _ in echelon)
    return RrefResult(ExactMatrix(tuple(rref_rows), mat.ncols), pivots)


def rref_dense(mat: ExactMatrix) -> RrefResult:
    """Textbook dense Gauss-Jordan over Fractions; the independent oracle."""
    rows = [[Fraction(0)] * mat.ncols for _ in range(mat.nrows)]
    for i, row in enumerate(mat.rows):
        for c, v in row:
            rows[i][c] = v
    pivots: list[int] = []
    r = 0
    for col in range(mat.ncols):
        sel = None
        for i in range(r, len(rows)):
            if rows[i][col] != 0:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        lead = rows[r][col]
        rows[r] = [v / lead for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    out = []
    for i in range(r):
        out.append(tuple((c, v) for c, v in enumerate(rows[i]) if v != 0))
    return RrefResult(ExactMatrix(tuple(out), mat.ncols), tuple(pivots))


def rank_modular(mat: ExactMatrix, prime: int) -> int:
    """Rank of the matrix over GF(prime); a probabilistic cross-check."""
    rows = []
    for row in mat.rows:
        d = {}
        for c, v in row:
            x = v.numerator * pow(v.denominator, -1, prime) % prime
            if x:
                d[c] = x
        if d:
            rows.append(d)
    buckets: dict[int, list[dict[int, int]]] = {}
    for row in rows:
        buckets.setdefault(min(row), []).append(row)
    rank = 0
    for col in range(mat.ncols):
        rows_here = buckets.pop(col, None)
        if not rows_here:
            continue
        pivot = rows_here[0]
        inv = pow(pivot[col], -1, prime)
        rank += 1
        for row in rows_here[1:]:
            f = row[col] * inv % prime
            new = {}
            for c, v in row.items():
                w = (v - f * pivot.get(c, 0)) % prime
                if w:
                    new[c] = w
            for c, v in pivot.items():
                if c not in row:
                    w = -f * v % prime
                    if w:
                        new[c] = w
            if new:
                buckets.setdefault(min(new), []).append(new)
    return rank


def express_pivots(result: RrefResult) -> dict[int, tuple[tuple[int, Fraction], ...]]:
    """For each pivot column p with RREF row rho: x_p = -sum rho_q x_q over
    the non-pivot columns q.  Substituting these makes every row vanish."""
    pivot_set = set(result.pivots)
    out: dict[int, tuple[tuple[int, Fraction], ...]] = {}
    for pcol, row in zip(result.pivots, result.matrix.rows):
        expr = tuple((c, -v) for c, v in row if c != pcol)
        if any(c in pivot_set for c, _ in expr):
            raise ChordBasisError("RREF row has a nonzero entry in another pivot column")
        out[pcol] = expr
    return out


def _is_probable_prime(num: int) -> bool:
    if num < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if num % p == 0:
            return num == p
    d = num - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for num < 3.3e24 with these witnesses
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, num)
        if x in (1, num - 1):
            continue
        for _ in range(s - 1):
            x = x * x % num
            if x == num - 1:
                break
        else:
            return False
    return True


def random_prime(bits: int, rng: random.Random) -> int:
    while True:
        cand = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if _is_probable_prime(cand):
            return cand


def solve_columns(columns: Sequence[dict[int, Fraction]],
                  target: dict[int, Fraction], dim: int) -> list[Fraction]:
    """Solve sum_j x_j * columns[j] = target for x; the columns must be
    linearly independent and the target must lie in their span."""
    k = len(columns)
    rows = []
    for i in range(dim):
        row = [col.get(i, Fraction(0)) for col in columns]
        row.append(target.get(i, Fraction(0)))
        rows.append(tuple((c, v) for c, v in enumerate(row) if v != 0))
    result = rref_dense(ExactMatrix(tuple(rows), k + 1))
    if k in result.pivots:
        raise ChordBasisError("target vector is outside the span of the columns")
    if result.rank != k:
        raise ChordBasisError("columns are linearly dependent")
    solution = [Fraction(0)] * k
    for pcol, row in zip(result.pivots, result.matrix.rows):
        entries = dict(row)
        solution[pcol] = entries.get(k, Fraction(0))
    return solution
