"""Generation of four-term relation instances over an enumerated diagram set.

For every diagram, every circle, and every cyclically adjacent ordered pair
of feet carrying distinct chords a (first) and b (second), two relations are
emitted.  Both say that sliding one foot of the pair past the two feet of
the other chord produces differences that cancel:

* family A moves the a-foot:  with the four placements of that foot written
  as (before b's near foot, after b's near foot, before b's far foot, after
  b's far foot), the signed sum is  +1 -1 +1 -1.
* family B moves the b-foot around chord a's far foot:  +1 -1 -1 +1 on
  (source, pair swapped, before far foot, after far foot).

"before"/"after" mean immediately preceding/following in clockwise reading
order on the target foot's circle.  Every edited representation is
re-canonicalized before the four terms are merged, so coincidences of
canonical forms may cancel entries or produce coefficients of +-2; a row may
merge away entirely and is then kept as an empty audit row.

The adjacent pair at a circle's boundary (last foot followed cyclically by
the first) is generated by the wrap families; on a two-foot circle the
interior and wrap pairs coincide and both are still emitted (the list is
deliberately redundant).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .budget import Budget, ensure_budget
from .diagrams import (
    ChordDiagram,
    StringRep,
    canonical_feet,
    component_chord_counts,
    components,
)
from .enumeration import DiagramSet
from .errors import DiagramError
from .util import content_digest

FAMILIES = ("interior-A", "interior-B", "wrap-A", "wrap-B")


@dataclass(frozen=True)
class Provenance:
    source: str
    circle: int
    positions: tuple[int, int]
    family: str


@dataclass(frozen=True)
class Relation:
    """A sparse integer row over a DiagramSet: ((column, coefficient), ...)."""

    coeffs: tuple[tuple[int, int], ...]
    provenance: Provenance

    def is_zero(self) -> bool:
        return not self.coeffs

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)


def _remove_insert(feet: tuple[int, ...], starts: tuple[int, ...],
                   moving: int, target: int, after: bool) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Remove the foot at ``moving`` and reinsert it immediately before or
    after the foot currently at ``target`` (indices into the original feet)."""
    label = feet[moving]
    trimmed = feet[:moving] + feet[moving + 1:]
    starts_after_removal = [s - (1 if s > moving else 0) for s in starts]
    t2 = target - (1 if target > moving else 0)
    # circle owning the target foot, in post-removal indexing
    circle = 0
    for i in range(len(starts_after_removal) - 1):
        if starts_after_removal[i] <= t2 < starts_after_removal[i + 1]:
            circle = i
            break
    q = t2 + 1 if after else t2
    new_feet = trimmed[:q] + (label,) + trimmed[q:]
    new_starts = tuple(
        s + 1 if i > circle else s for i, s in enumerate(starts_after_removal)
    )
    return new_feet, new_starts


def _adjacent_pairs(starts: tuple[int, ...]) -> list[tuple[int, int, int, bool]]:
    """(circle, first position, second position, is_wrap) in generation order."""
    pairs = []
    for i in range(len(starts) - 1):
        lo, hi = starts[i], starts[i + 1]
        for k in range(lo, hi - 1):
            pairs.append((i, k, k + 1, False))
        if hi - lo >= 2:
            pairs.append((i, hi - 1, lo, True))
    return pairs


def _rows_for_diagram(d: ChordDiagram, ds: DiagramSet) -> list[Relation]:
    feet, starts = d.rep.feet, d.rep.starts
    source = str(d)
    src_idx = ds.index_of_raw(feet, starts)
    partner: dict[int, int] = {}
    first_pos: dict[int, int] = {}
    for pos, c in enumerate(feet):
        if c in first_pos:
            partner[pos] = first_pos[c]
            partner[first_pos[c]] = pos
        else:
            first_pos[c] = pos
    out: list[Relation] = []
    for circle, pa, pb, wrap in _adjacent_pairs(starts):
        if feet[pa] == feet[pb]:
            continue
        swapped = list(feet)
        swapped[pa], swapped[pb] = swapped[pb], swapped[pa]
        swap_idx = ds.index_of_raw(canonical_feet(tuple(swapped), starts), starts)
        far_b = partner[pb]
        far_a = partner[pa]
        for family, moving, target, signs in (
            ("A", pa, far_b, (1, -1)),   # before far foot: +, after: -
            ("B", pb, far_a, (-1, 1)),   # before far foot: -, after: +
        ):
            terms = [(src_idx, 1), (swap_idx, -1)]
            for after, sign in ((False, signs[0]), (True, signs[1])):
                ef, es = _remove_insert(feet, starts, moving, target, after)
                terms.append((ds.index_of_raw(canonical_feet(ef, es), es), sign))
            merged: dict[int, int] = {}
            for idx, coef in terms:
                merged[idx] = merged.get(idx, 0) + coef
            coeffs = tuple(sorted((i, c) for i, c in merged.items() if c))
            tag = ("wrap-" if wrap else "interior-") + family
            out.append(Relation(coeffs, Provenance(source, circle, (pa, pb), tag)))
    return out


def generate_relations(ds: DiagramSet, budget: Budget | None = None,
                       threads: int = 1) -> list[Relation]:
    """All four-term rows over ``ds``, in a fixed documented order.

    Iteration order: diagrams in set order, circles ascending, interior
    pairs by position then the wrap pair, family A before B.  Rows that
    merge to nothing are kept (for auditing) and dropped at matrix assembly.
    """
    budget = ensure_budget(budget)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(lambda d: _rows_for_diagram(d, ds), ds.diagrams))
    else:
        chunks = []
        for d in ds.diagrams:
            budget.check_time()
            chunks.append(_rows_for_diagram(d, ds))
    return [row for chunk in chunks for row in chunk]


def check_component_preservation(rel: Relation, ds: DiagramSet) -> bool:
    """True iff every diagram in the row has the same circle partition and
    the same per-component chord counts."""
    profiles = set()
    for idx, coef in rel.coeffs:
        if coef == 0:
            continue
        rep = ds.diagrams[idx].rep
        part = components(rep)
        profiles.add((part.assignment, component_chord_counts(rep, part)))
        if len(profiles) > 1:
            return False
    return True


def relations_to_text(ds: DiagramSet, rows: list[Relation]) -> str:
    nonzero = sum(1 for r in rows if not r.is_zero())
    body_lines = []
    for r in rows:
        p = r.provenance
        body_lines.append(
            f"# source={p.source} circle={p.circle} "
            f"pair={p.positions[0]},{p.positions[1]} family={p.family}"
        )
        body_lines.append(" ".join(f"{i}:{c}" for i, c in r.coeffs))
    body = "".join(line + "\n" for line in body_lines)
    ds_digest = content_digest("".join(str(d) + "\n" for d in ds.diagrams))
    header = (
        f"relations m={ds.m} n={ds.n} connected={int(ds.connected_only)} "
        f"rows={len(rows)} nonzero={nonzero} count={len(ds)} "
        f"diagrams-digest={ds_digest} digest={content_digest(body)}"
    )
    return header + "\n" + body


def relations_from_text(text: str, ds: DiagramSet) -> list[Relation]:
    lines = text.split("\n")
    fields = dict(item.split("=", 1) for item in lines[0].split()[1:])
    if int(fields["count"]) != len(ds):
        raise DiagramError("relation file does not match the diagram set")
    rows: list[Relation] = []
    i = 1
    while i < len(lines) and lines[i].startswith("#"):
        meta = dict(item.split("=", 1) for item in lines[i][2:].split())
        pa, pb = meta["pair"].split(",")
        prov = Provenance(meta["source"], int(meta["circle"]),
                          (int(pa), int(pb)), meta["family"])
        data = lines[i + 1] if i + 1 < len(lines) else ""
        coeffs = []
        if data:
            for tok in data.split():
                idx, coef = tok.split(":")
                coeffs.append((int(idx), int(coef)))
        rows.append(Relation(tuple(coeffs), prov))
        i += 2
    if len(rows) != int(fields["rows"]):
        raise DiagramError("relation file row count mismatch")
    return rows
