"""Bases and dimensions of the diagram spaces modulo the four-term relation.

``connected_basis`` runs the full pipeline (enumerate connected diagrams,
generate the relation rows, reduce) and keeps the non-pivot diagrams as the
basis; each pivot diagram carries an expression over the basis.  Dimensions
of the full (not necessarily connected) spaces are computed from connected
dimensions by the component-decomposition formula: every diagram splits into
connected components, so

    dim_full(m, n) = sum over c of 1/c! *
        sum over ordered size vectors m_1+..+m_c = m of multinomial(m; m_i) *
        sum over ordered n_1+..+n_c = n of prod_i dim_conn(m_i, n_i)

with the conventions dim_conn(r, s) = 0 for s < r-1 and dim_conn(1, 0) = 1.
The ordered double sum counts every unordered (partition, composition) pair
exactly c! times, so the division is always exact (asserted).

``REFERENCE_C_DIMS`` / ``REFERENCE_A_DIMS`` hold previously published
dimension values used by fast verification profiles and cross-checking;
``eval_A_polynomial`` evaluates published closed-form polynomials for the
full dimensions, which are treated as claims to verify against the formula
above, never as ground truth.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterator, Mapping, Sequence

from .budget import Budget
from .diagrams import ChordDiagram, disjoint_union
from .enumeration import DiagramSet, enumerate_connected
from .errors import ChordBasisError, DiagramError
from .exactla import assemble, express_pivots, pivot_columns, rref
from .relations import generate_relations
from .util import content_digest

Combination = dict[ChordDiagram, Fraction]


@dataclass(frozen=True)
class BasisResult:
    diagram_set: DiagramSet
    pivots: tuple[int, ...]
    basis: tuple[ChordDiagram, ...]
    expressions: Mapping[ChordDiagram, tuple[tuple[ChordDiagram, Fraction], ...]]

    @property
    def dimension(self) -> int:
        return len(self.basis)


_BASIS_MEMO: dict[tuple[int, int], BasisResult] = {}
_DIM_MEMO: dict[tuple[int, int], int] = {}


def clear_memo() -> None:
    """Drop the in-process result memos (used between determinism runs)."""
    _BASIS_MEMO.clear()
    _DIM_MEMO.clear()


def connected_basis(m: int, n: int, budget: Budget | None = None,
                    threads: int = 1) -> BasisResult:
    """Basis of the connected space: the non-pivot diagrams, plus an
    expression for every pivot diagram over the basis."""
    key = (m, n)
    if budget is None and key in _BASIS_MEMO:
        return _BASIS_MEMO[key]
    ds = enumerate_connected(m, n, budget=budget, threads=threads)
    rows = generate_relations(ds, budget=budget, threads=threads)
    mat = assemble(rows, len(ds))
    result = rref(mat, budget=budget)
    pivot_set = set(result.pivots)
    basis = tuple(d for i, d in enumerate(ds.diagrams) if i not in pivot_set)
    expressions = {}
    for pcol, expr in express_pivots(result).items():
        expressions[ds.diagrams[pcol]] = tuple(
            (ds.diagrams[c], coef) for c, coef in expr
        )
    out = BasisResult(ds, result.pivots, basis, expressions)
    if budget is None:
        _BASIS_MEMO[key] = out
    return out


def express(d: ChordDiagram, b: BasisResult) -> Combination:
    """Coordinates of (the class of) ``d`` over ``b.basis``."""
    b.diagram_set.index_of(d)  # raises DiagramError when unknown
    if d in b.expressions:
        return {diag: coef for diag, coef in b.expressions[d]}
    return {d: Fraction(1)}


def dim_C(m: int, n: int, budget: Budget | None = None, threads: int = 1) -> int:
    """Dimension of the connected space, boundary conventions applied
    without enumeration."""
    if m < 1 or n < 0:
        raise DiagramError(f"bad parameters m={m}, n={n}")
    if n < m - 1:
        return 0
    if m == 1 and n == 0:
        return 1
    key = (m, n)
    if budget is None and key in _DIM_MEMO:
        return _DIM_MEMO[key]
    if budget is None and key in _BASIS_MEMO:
        return _BASIS_MEMO[key].dimension
    ds = enumerate_connected(m, n, budget=budget, threads=threads)
    rows = generate_relations(ds, budget=budget, threads=threads)
    mat = assemble(rows, len(ds))
    out = len(ds) - len(pivot_columns(mat, budget=budget))
    if budget is None:
        _DIM_MEMO[key] = out
    return out


# Published connected dimensions (columns m = 1.., rows n = 1..5); used for
# cross-checks and by fast profiles that skip the order-5 live computation.
REFERENCE_C_DIMS: dict[tuple[int, int], int] = {
    (1, 1): 1, (2, 1): 1,
    (1, 2): 2, (2, 2): 3, (3, 2): 3,
    (1, 3): 3, (2, 3): 9, (3, 3): 16, (4, 3): 16,
    (1, 4): 6, (2, 4): 22, (3, 4): 67, (4, 4): 127, (5, 4): 125,
    (1, 5): 10, (2, 5): 55, (3, 5): 229, (4, 5): 699, (5, 5): 1347, (6, 5): 1296,
}

# Published full-space dimensions for m <= 6, n <= 5.
REFERENCE_A_DIMS: dict[tuple[int, int], int] = {
    (1, 1): 1, (2, 1): 3, (3, 1): 6, (4, 1): 10, (5, 1): 15, (6, 1): 21,
    (1, 2): 2, (2, 2): 8, (3, 2): 24, (4, 2): 59, (5, 2): 125, (6, 2): 237,
    (1, 3): 3, (2, 3): 19, (3, 3): 80, (4, 3): 276, (5, 3): 815, (6, 3): 2088,
    (1, 4): 6, (2, 4): 44, (3, 4): 241, (4, 4): 1105, (5, 4): 4340, (6, 4): 14486,
    (1, 5): 10, (2, 5): 99, (3, 5): 682, (4, 5): 3921, (5, 5): 19468, (6, 5): 81149,
}


@dataclass(frozen=True)
class DimensionTable:
    """Map (m, n) -> dimension for one family, with per-entry provenance
    ("live" or "bundled")."""

    family: str  # "C" or "A"
    entries: Mapping[tuple[int, int], int]
    provenance: Mapping[tuple[int, int], str]

    def get(self, m: int, n: int) -> int:
        return self.entries[(m, n)]


def dim_table_C(n_max: int, m_max: int, budget: Budget | None = None,
                threads: int = 1, bundled_n: Sequence[int] = ()) -> DimensionTable:
    """Connected dimensions for 1 <= n <= n_max, 1 <= m <= m_max.

    Rows listed in ``bundled_n`` are taken from the published reference
    values instead of live computation (recorded in the provenance map).
    """
    entries: dict[tuple[int, int], int] = {}
    provenance: dict[tuple[int, int], str] = {}
    for n in range(1, n_max + 1):
        for m in range(1, m_max + 1):
            if n < m - 1:
                entries[(m, n)] = 0
                provenance[(m, n)] = "structural-zero"
            elif n in bundled_n:
                entries[(m, n)] = REFERENCE_C_DIMS[(m, n)]
                provenance[(m, n)] = "bundled"
            else:
                entries[(m, n)] = dim_C(m, n, budget=budget, threads=threads)
                provenance[(m, n)] = "live"
    return DimensionTable("C", entries, provenance)


def _c_lookup(table: DimensionTable | Mapping[tuple[int, int], int],
              m: int, n: int) -> int:
    if n < m - 1:
        return 0
    if m == 1 and n == 0:
        return 1
    entries = table.entries if isinstance(table, DimensionTable) else table
    try:
        return entries[(m, n)]
    except KeyError:
        raise ChordBasisError(f"connected dimension for (m={m}, n={n}) missing "
                              "from the supplied table") from None


def _compositions(total: int, parts: int, minimum: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        if total >= minimum:
            yield (total,)
        return
    for first in range(minimum, total - minimum * (parts - 1) + 1):
        for rest in _compositions(total - first, parts - 1, minimum):
            yield (first,) + rest


def dim_A(m: int, n: int,
          table: DimensionTable | Mapping[tuple[int, int], int]) -> int:
    """Dimension of the full space from connected dimensions (see module
    docstring); the division by c! must be exact and is asserted."""
    if m < 1 or n < 0:
        raise DiagramError(f"bad parameters m={m}, n={n}")
    total = 0
    for c in range(1, m + 1):
        inner = 0
        for sizes in _compositions(m, c, 1):
            mult = factorial(m)
            for s in sizes:
                mult //= factorial(s)
            for chords in _compositions(n, c, 0):
                prod = 1
                for mi, ni in zip(sizes, chords):
                    prod *= _c_lookup(table, mi, ni)
                    if prod == 0:
                        break
                inner += mult * prod
        if inner % factorial(c):
            raise ChordBasisError(
                f"component-count sum for c={c} not divisible by c! "
                f"(m={m}, n={n}, inner={inner})"
            )
        total += inner // factorial(c)
    return total


def dim_table_A(n_max: int, m_max: int,
                c_table: DimensionTable | Mapping[tuple[int, int], int]) -> DimensionTable:
    entries = {}
    provenance = {}
    for n in range(1, n_max + 1):
        for m in range(1, m_max + 1):
            entries[(m, n)] = dim_A(m, n, c_table)
            provenance[(m, n)] = "derived"
    return DimensionTable("A", entries, provenance)


def _set_partitions(items: Sequence[int]) -> Iterator[list[list[int]]]:
    """Set partitions with parts ordered by their lowest member."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for sub in _set_partitions(rest):
        yield [[first]] + sub
        for i in range(len(sub)):
            # the part receiving the minimum moves to the front
            yield [[first] + sub[i]] + sub[:i] + sub[i + 1:]


@dataclass(frozen=True)
class PartitionComposition:
    """A set partition of the circles (parts ordered by lowest member)
    paired with one chord count per part."""

    parts: tuple[tuple[int, ...], ...]
    chords: tuple[int, ...]

    def __post_init__(self):
        if len(self.parts) != len(self.chords):
            raise ChordBasisError("every part needs exactly one chord count")


def partition_compositions(m: int, n: int) -> Iterator[PartitionComposition]:
    """All (partition, composition) pairs that can carry a nonzero factor:
    each part of r circles gets at least r - 1 chords."""
    for partition in _set_partitions(list(range(m))):
        for chords in _compositions(n, len(partition), 0):
            if all(ni >= len(part) - 1 for part, ni in zip(partition, chords)):
                yield PartitionComposition(
                    tuple(tuple(p) for p in partition), chords
                )


def full_basis(m: int, n: int,
               connected: Mapping[tuple[int, int], BasisResult]) -> list[ChordDiagram]:
    """Basis of the full space: disjoint unions of one connected basis
    element per component, over all (partition, composition) pairs."""
    out: list[ChordDiagram] = []
    for pc in partition_compositions(m, n):
        factors: list[tuple[BasisResult, tuple[int, ...]]] = []
        ok = True
        for part, ni in zip(pc.parts, pc.chords):
            key = (len(part), ni)
            if key not in connected:
                raise ChordBasisError(
                    f"missing connected basis for (m={len(part)}, n={ni})"
                )
            if connected[key].dimension == 0:
                ok = False
                break
            factors.append((connected[key], part))
        if not ok:
            continue
        for combo in itertools.product(*(b.basis for b, _ in factors)):
            out.append(disjoint_union(
                (diag, part) for diag, (_, part) in zip(combo, factors)
            ))
    out.sort()
    return out


def connected_bases_for_full(m: int, n: int, budget: Budget | None = None,
                             threads: int = 1) -> dict[tuple[int, int], BasisResult]:
    """Every connected basis a ``full_basis(m, n)`` call can ask for."""
    out = {}
    for r in range(1, m + 1):
        for s in range(max(0, r - 1), n + 1):
            out[(r, s)] = connected_basis(r, s, budget=budget, threads=threads)
    return out


def eval_A_polynomial(n: int, m: int) -> Fraction:
    """Evaluate the published closed-form polynomial for the full dimension
    at order n in the circle count m.  These formulas are transcribed
    verbatim from their source and verified elsewhere against the
    component-decomposition formula, which is authoritative on mismatch."""
    x = Fraction(m)
    if n == 1:
        return (x**2 + x) / 2
    if n == 2:
        return (x**4 + 3 * x**2) / 8 + (x**3 + 5 * x) / 4
    if n == 3:
        return ((x**6 - 287 * x**4) / 144 + (19 * x**5 + 325 * x**3) / 48
                - Fraction(433, 72) * x**2 + Fraction(23, 6) * x)
    if n == 4:
        return ((x**8 - 46375 * x**4) / 384 + (17 * x**7 + 26651 * x**3) / 96
                - Fraction(209, 64) * x**6 + Fraction(113, 4) * x**5
                - Fraction(9775, 32) * x**2 + Fraction(3107, 24) * x)
    if n == 5:
        return ((x**10 + 13188691 * x**5) / 3840
                + (29 * x**9 - 151305 * x**6) / 256
                - (1421 * x**8 + 23495 * x**7) / 384
                - Fraction(1139009, 96) * x**4 + Fraction(4492697, 192) * x**3
                - Fraction(1897287, 80) * x**2 + Fraction(557411, 60) * x)
    raise ChordBasisError(f"no closed-form polynomial for n={n} (need 1..5)")


def polynomial_discrepancies(n_max: int = 5, m_max: int = 6,
                             c_table: Mapping[tuple[int, int], int] | None = None
                             ) -> list[tuple[int, int, Fraction, int]]:
    """(n, m, polynomial value, formula value) wherever the published
    closed forms disagree with the component-decomposition formula."""
    table = c_table if c_table is not None else REFERENCE_C_DIMS
    out = []
    for n in range(1, n_max + 1):
        for m in range(1, m_max + 1):
            poly = eval_A_polynomial(n, m)
            formula = dim_A(m, n, table)
            if poly != formula:
                out.append((n, m, poly, formula))
    return out


def format_dimension_table(table: DimensionTable, csv: bool = False) -> str:
    """Aligned text (or CSV) table, rows by chord count, columns by circle
    count; the connected family gets a trailing row-total column and blank
    cells at its structural zeros."""
    ns = sorted({n for _, n in table.entries})
    ms = sorted({m for m, _ in table.entries})
    with_total = table.family == "C"
    header = ["n\\m"] + [str(m) for m in ms] + (["total"] if with_total else [])
    rows = [header]
    for n in ns:
        row = [str(n)]
        total = 0
        for m in ms:
            v = table.entries[(m, n)]
            total += v
            if with_total and n < m - 1:
                row.append("")
            else:
                row.append(str(v))
        if with_total:
            row.append(str(total))
        rows.append(row)
    if csv:
        return "\n".join(",".join(cell for cell in row) for row in rows) + "\n"
    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    lines = []
    for row in rows:
        lines.append("  ".join(cell.rjust(w) for cell, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def basis_to_text(b: BasisResult) -> str:
    ds = b.diagram_set
    ds_digest = content_digest("".join(str(d) + "\n" for d in ds.diagrams))
    body_lines = [str(d) for d in b.basis]
    body_lines.append("pivot-expressions")
    for i in b.pivots:
        pivot = ds.diagrams[i]
        expr = b.expressions[pivot]
        if expr:
            terms = " + ".join(f"{coef}*{diag}" for diag, coef in expr)
        else:
            terms = "0"
        body_lines.append(f"{pivot} = {terms}")
    body = "".join(line + "\n" for line in body_lines)
    header = (
        f"basis m={ds.m} n={ds.n} dim={b.dimension} count={len(ds)} "
        f"diagrams-digest={ds_digest} digest={content_digest(body)}"
    )
    return header + "\n" + body
