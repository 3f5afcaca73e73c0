"""Symmetric-group analysis of connected bases.

Circle relabellings act on diagram classes; the orbit of a basis vector is
the set of classes of its translates.  An orbit is *complete* when every
translate class is itself a basis element and *incomplete* otherwise; for an
incomplete orbit each non-basis translate, expanded over the basis, must
have a nonzero coefficient either on a basis element inside the same orbit
(type I) or on a basis element of a different incomplete orbit (type II) -
independence of the basis leaves no third case, and the implementation
asserts that.

Orbits are computed at the level of classes in the quotient, not raw
canonical strings: two translates that canonicalize differently may still be
equal modulo the four-term relation, and the published orbit counts (for
example the 6/6/3/1 split of the sixteen-dimensional three-circle space at
three chords) are class counts.

For two circles the incomplete orbits can always be repaired: a type I
orbit's basis vector b is replaced by b + sigma(b) (a fixed point), and a
type II orbit's witness beta in another incomplete orbit is replaced by
sigma(b); each round strictly lowers the incomplete-orbit count, so the loop
terminates with an equivariant basis of generalized (integer-combination)
vectors.  For three or more circles the same moves are attempted greedily,
but a failure to finish is a reported outcome, not an error.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .basis import BasisResult, express
from .diagrams import (
    ChordDiagram,
    StringRep,
    canonicalize,
    is_connected,
    permute_circles,
)
from .errors import ChordBasisError, DiagramError
from .exactla import ExactMatrix, rref_dense, solve_columns
from .util import content_digest

Coords = tuple[tuple[int, Fraction], ...]  # sparse, index-sorted, no zeros


@dataclass(frozen=True)
class GeneralizedBasisVector:
    """Integer/rational combination of diagrams sharing one (m, n)."""

    terms: tuple[tuple[ChordDiagram, Fraction], ...]

    def __post_init__(self):
        if not self.terms:
            raise ChordBasisError("a generalized basis vector cannot be zero")

    @property
    def m(self) -> int:
        return self.terms[0][0].m

    @property
    def n(self) -> int:
        return self.terms[0][0].n

    def __str__(self) -> str:
        return " + ".join(f"{coef}*{diag}" for diag, coef in self.terms)


def vector_of(d: ChordDiagram) -> GeneralizedBasisVector:
    return GeneralizedBasisVector(((d, Fraction(1)),))


def _combine(terms: dict[ChordDiagram, Fraction]) -> GeneralizedBasisVector:
    cleaned = tuple(sorted(((d, c) for d, c in terms.items() if c), key=lambda t: t[0]))
    return GeneralizedBasisVector(cleaned)


def vector_sum(a: GeneralizedBasisVector, b: GeneralizedBasisVector) -> GeneralizedBasisVector:
    terms: dict[ChordDiagram, Fraction] = dict(a.terms)
    for d, c in b.terms:
        terms[d] = terms.get(d, Fraction(0)) + c
    return _combine(terms)


def vector_difference(a: GeneralizedBasisVector, b: GeneralizedBasisVector) -> GeneralizedBasisVector:
    terms: dict[ChordDiagram, Fraction] = dict(a.terms)
    for d, c in b.terms:
        terms[d] = terms.get(d, Fraction(0)) - c
    return _combine(terms)


def apply_permutation(v: GeneralizedBasisVector, sigma: Sequence[int]) -> GeneralizedBasisVector:
    terms: dict[ChordDiagram, Fraction] = {}
    for d, c in v.terms:
        image = permute_circles(d, sigma)
        terms[image] = terms.get(image, Fraction(0)) + c
    return _combine(terms)


def class_coords(v: GeneralizedBasisVector, b: BasisResult) -> Coords:
    """Coordinates of the class of ``v`` over ``b.basis``."""
    pos = {d: i for i, d in enumerate(b.basis)}
    acc: dict[int, Fraction] = {}
    for d, c in v.terms:
        for diag, coef in express(d, b).items():
            i = pos[diag]
            acc[i] = acc.get(i, Fraction(0)) + c * coef
    return tuple(sorted((i, c) for i, c in acc.items() if c))


@dataclass(frozen=True)
class Orbit:
    """One group orbit of basis-vector classes.

    ``members`` holds one representative vector per distinct class; the
    representative of a class that equals a basis element is that basis
    diagram itself.
    """

    members: tuple[GeneralizedBasisVector, ...]
    member_coords: tuple[Coords, ...]
    basis_members: tuple[GeneralizedBasisVector, ...]
    complete: bool
    types: frozenset[str]  # subset of {"I", "II"}, empty for complete orbits

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class OrbitReport:
    m: int
    n: int
    orbits: tuple[Orbit, ...]

    @property
    def incomplete_count(self) -> int:
        return sum(1 for o in self.orbits if not o.complete)

    def orbit_sizes(self) -> list[int]:
        return sorted((o.size for o in self.orbits), reverse=True)


def _orbit_partition(vectors: Sequence[GeneralizedBasisVector],
                     b: BasisResult) -> list[dict]:
    """Group the given basis vectors into class-level orbits.

    Returns one record per orbit: its member classes (coords -> best
    representative vector), and which basis vectors (by index into
    ``vectors``) it contains.
    """
    perms = list(itertools.permutations(range(b.diagram_set.m)))
    coords_of = [class_coords(v, b) for v in vectors]
    coord_to_vec = {c: i for i, c in enumerate(coords_of)}
    if len(coord_to_vec) != len(vectors):
        raise ChordBasisError("the supplied vectors are not pairwise distinct classes")
    seen: set[int] = set()
    orbits: list[dict] = []
    for i, v in enumerate(vectors):
        if i in seen:
            continue
        classes: dict[Coords, GeneralizedBasisVector] = {}
        for sigma in perms:
            image = apply_permutation(v, sigma)
            c = class_coords(image, b)
            if c not in classes or str(image) < str(classes[c]):
                classes[c] = image
        inside: list[int] = []
        for c in classes:
            j = coord_to_vec.get(c)
            if j is not None:
                inside.append(j)
                seen.add(j)
                classes[c] = vectors[j]
        orbits.append({"classes": classes, "basis_indices": sorted(inside)})
    return orbits


def orbit_report(b: BasisResult,
                 vectors: Sequence[GeneralizedBasisVector] | None = None) -> OrbitReport:
    """Decompose a basis (by default ``b.basis``) into group orbits and
    classify every incomplete orbit by the expansion dichotomy."""
    if vectors is None:
        vectors = [vector_of(d) for d in b.basis]
    records = _orbit_partition(vectors, b)
    coords_of = [class_coords(v, b) for v in vectors]
    # orbit index of every basis vector, for the type II test
    orbit_of_vec: dict[int, int] = {}
    for oi, rec in enumerate(records):
        for j in rec["basis_indices"]:
            orbit_of_vec[j] = oi
    incomplete = {
        oi for oi, rec in enumerate(records)
        if len(rec["basis_indices"]) != len(rec["classes"])
    }
    basis_coord_to_vec = {c: i for i, c in enumerate(coords_of)}
    orbits = []
    for oi, rec in enumerate(records):
        classes = rec["classes"]
        types: set[str] = set()
        if oi in incomplete:
            own = set(rec["basis_indices"])
            for c in classes:
                if c in basis_coord_to_vec:
                    continue
                touched_i = False
                touched_ii = False
                coeffs = _expand_over(vectors, coords_of, c, b)
                for j, coef in enumerate(coeffs):
                    if not coef:
                        continue
                    if j in own:
                        touched_i = True
                    elif orbit_of_vec[j] in incomplete:
                        touched_ii = True
                if touched_i:
                    types.add("I")
                if touched_ii:
                    types.add("II")
                if not touched_i and not touched_ii:
                    raise ChordBasisError(
                        "expansion dichotomy violated: a non-basis translate "
                        "expands over complete orbits only"
                    )
        members = tuple(classes[c] for c in sorted(classes))
        orbits.append(Orbit(
            members=members,
            member_coords=tuple(sorted(classes)),
            basis_members=tuple(vectors[j] for j in rec["basis_indices"]),
            complete=oi not in incomplete,
            types=frozenset(types),
        ))
    return OrbitReport(b.diagram_set.m, b.diagram_set.n, tuple(orbits))


def _expand_over(vectors: Sequence[GeneralizedBasisVector],
                 coords_of: Sequence[Coords], target: Coords,
                 b: BasisResult) -> list[Fraction]:
    """Expand a class (given by coords over b.basis) over the supplied
    basis vectors."""
    columns = [dict(c) for c in coords_of]
    return solve_columns(columns, dict(target), len(b.basis))


def verify_equivariant(vectors: Sequence[GeneralizedBasisVector],
                       b: BasisResult) -> bool:
    """True iff the vectors form a basis of the connected space that is
    closed (classwise) under every circle relabelling."""
    if len(vectors) != len(b.basis):
        return False
    coords_of = [class_coords(v, b) for v in vectors]
    if len(set(coords_of)) != len(vectors):
        return False
    rows = tuple(c for c in coords_of)
    if rref_dense(ExactMatrix(rows, len(b.basis))).rank != len(vectors):
        return False
    known = set(coords_of)
    for sigma in itertools.permutations(range(b.diagram_set.m)):
        for v in vectors:
            if class_coords(apply_permutation(v, sigma), b) not in known:
                return False
    return True


def equivariantize_m2(b: BasisResult) -> tuple[list[GeneralizedBasisVector], list[int]]:
    """Repair a two-circle connected basis into an equivariant one.

    Returns the new basis vectors and the incomplete-orbit count after each
    round (strictly decreasing, ending in 0).
    """
    if b.diagram_set.m != 2:
        raise ChordBasisError("the repair algorithm is specific to two circles")
    swap = (1, 0)
    vectors: list[GeneralizedBasisVector] = [vector_of(d) for d in b.basis]
    history: list[int] = []

    def incomplete_orbits() -> list[tuple[int, GeneralizedBasisVector]]:
        coords = {class_coords(v, b): i for i, v in enumerate(vectors)}
        out = []
        for i, v in enumerate(vectors):
            image = apply_permutation(v, swap)
            if class_coords(image, b) not in coords:
                out.append((i, image))
        return out

    while True:
        bad = incomplete_orbits()
        history.append(len(bad))
        if not bad:
            break
        coords_of = [class_coords(v, b) for v in vectors]
        bad_indices = {i for i, _ in bad}
        applied = False
        for i, image in bad:
            coeffs = _expand_over(vectors, coords_of, class_coords(image, b), b)
            # Type I repair (replace b by the fixed point b + sigma(b)) keeps
            # a basis only while the b-coefficient of sigma(b) is not -1:
            # b + sigma(b) = (1 + c_b) b + ... loses its b-component there.
            if coeffs[i] and coeffs[i] != Fraction(-1):
                vectors[i] = vector_sum(vectors[i], image)
                applied = True
                break
            witness = None
            for j, coef in enumerate(coeffs):
                if coef and j != i and j in bad_indices:
                    witness = j
                    break
            if witness is not None:
                # type II: the witness in another incomplete orbit is
                # replaced by the translate itself
                vectors[witness] = image
                applied = True
                break
        if not applied:
            # Every incomplete orbit is stuck: sigma(b) = -b + (vectors in
            # complete orbits only).  Then b - sigma(b) is negated by the
            # action, and pairing it with a fixed basis vector x as
            # x +- (b - sigma(b)) gives a swapped pair spanning {x, b}
            # modulo the rest; the stuck orbit disappears.
            i, image = bad[0]
            anti = vector_difference(vectors[i], image)
            fixed_idx = None
            for j, v in enumerate(vectors):
                if j in bad_indices:
                    continue
                if class_coords(apply_permutation(v, swap), b) == coords_of[j]:
                    fixed_idx = j
                    break
            if fixed_idx is None:
                raise ChordBasisError(
                    "stuck incomplete orbit and no fixed basis vector to "
                    "pair it with"
                )
            x = vectors[fixed_idx]
            vectors[i] = vector_sum(x, anti)
            vectors[fixed_idx] = vector_difference(x, anti)
        if len(incomplete_orbits()) >= history[-1]:
            raise ChordBasisError("repair failed to reduce the incomplete count")
    return vectors, history


def equivariantize_greedy(b: BasisResult, max_rounds: int = 200
                          ) -> tuple[list[GeneralizedBasisVector], bool, list[int]]:
    """Best-effort repair for any circle count.

    Applies the two-circle moves whenever they keep the set a basis; makes
    no promise of success.  Returns (vectors, finished, per-round counts).
    """
    m = b.diagram_set.m
    perms = [p for p in itertools.permutations(range(m)) if p != tuple(range(m))]
    vectors: list[GeneralizedBasisVector] = [vector_of(d) for d in b.basis]
    history: list[int] = []

    def first_incomplete() -> tuple[int, GeneralizedBasisVector] | None:
        coords = {class_coords(v, b) for v in vectors}
        for i, v in enumerate(vectors):
            for sigma in perms:
                image = apply_permutation(v, sigma)
                if class_coords(image, b) not in coords:
                    return i, image
        return None

    def incomplete_count() -> int:
        coords = {class_coords(v, b) for v in vectors}
        count = 0
        for v in vectors:
            if any(class_coords(apply_permutation(v, sigma), b) not in coords
                   for sigma in perms):
                count += 1
        return count

    def is_basis(cand: Sequence[GeneralizedBasisVector]) -> bool:
        rows = tuple(class_coords(v, b) for v in cand)
        return rref_dense(ExactMatrix(rows, len(b.basis))).rank == len(cand)

    for _ in range(max_rounds):
        history.append(incomplete_count())
        problem = first_incomplete()
        if problem is None:
            return vectors, True, history
        i, image = problem
        # try the fixed-point move first, then swapping the image in for
        # some other vector still in an incomplete orbit
        summed = vectors[:]
        summed[i] = vector_sum(vectors[i], image)
        if is_basis(summed) and _strictly_better(summed, history[-1], b, perms):
            vectors = summed
            continue
        coords_of = [class_coords(v, b) for v in vectors]
        coeffs = _expand_over(vectors, coords_of, class_coords(image, b), b)
        done = False
        for j, coef in enumerate(coeffs):
            if not coef or j == i:
                continue
            cand = vectors[:]
            cand[j] = image
            if is_basis(cand) and _strictly_better(cand, history[-1], b, perms):
                vectors = cand
                done = True
                break
        if not done:
            return vectors, False, history
    return vectors, False, history


def _strictly_better(cand: Sequence[GeneralizedBasisVector], previous: int,
                     b: BasisResult, perms) -> bool:
    coords = {class_coords(v, b) for v in cand}
    count = 0
    for v in cand:
        if any(class_coords(apply_permutation(v, sigma), b) not in coords
               for sigma in perms):
            count += 1
    return count < previous


@dataclass(frozen=True)
class LabeledTree:
    """A labelled tree on vertices 0..m-1 as a sorted edge tuple."""

    edges: tuple[tuple[int, int], ...]

    @property
    def vertex_count(self) -> int:
        return len(self.edges) + 1

    @classmethod
    def from_prufer(cls, seq: Sequence[int], m: int) -> "LabeledTree":
        if m == 1:
            return cls(())
        if len(seq) != m - 2:
            raise ChordBasisError(f"need a length-{m - 2} sequence for {m} vertices")
        degree = [1] * m
        for v in seq:
            degree[v] += 1
        edges = []
        leaves = [v for v in range(m) if degree[v] == 1]
        heapq.heapify(leaves)
        for v in seq:
            leaf = heapq.heappop(leaves)
            edges.append((min(leaf, v), max(leaf, v)))
            degree[v] -= 1
            if degree[v] == 1:
                heapq.heappush(leaves, v)
        a = heapq.heappop(leaves)
        c = heapq.heappop(leaves)
        edges.append((min(a, c), max(a, c)))
        return cls(tuple(sorted(edges)))


def all_labeled_trees(m: int) -> list[LabeledTree]:
    if m == 1:
        return [LabeledTree(())]
    return [
        LabeledTree.from_prufer(seq, m)
        for seq in itertools.product(range(m), repeat=m - 2)
    ]


def diagram_from_multigraph(edges: Sequence[tuple[int, int]], m: int) -> ChordDiagram:
    """Normal-form diagram whose underlying graph is the given multigraph.

    Edges (loops allowed) are numbered in sorted order; on every circle the
    feet appear sorted by (neighbour circle, edge number), a loop
    contributing two adjacent feet.  Any normal form would do: diagrams
    sharing an underlying tree are equal in the quotient, which is what
    makes per-graph representatives useful.
    """
    ordered = sorted((min(a, b), max(a, b)) for a, b in edges)
    incident: list[list[tuple[int, int]]] = [[] for _ in range(m)]
    for label, (a, c) in enumerate(ordered):
        if a == c:
            incident[a].append((a, label))
            incident[a].append((a, label))
        else:
            incident[a].append((c, label))
            incident[c].append((a, label))
    blocks = []
    for i in range(m):
        incident[i].sort()
        blocks.append(tuple(label for _, label in incident[i]))
    feet = tuple(c for b in blocks for c in b)
    starts = [0]
    for b in blocks:
        starts.append(starts[-1] + len(b))
    return canonicalize(StringRep(feet, tuple(starts)))


def tree_basis(n: int) -> list[ChordDiagram]:
    """One normal-form diagram per labelled tree on n+1 circles.

    By the Cayley-Borchardt count there are (n+1)^(n-1) of them, and they
    form an equivariant basis of the connected space with m = n + 1.
    """
    return sorted(
        diagram_from_multigraph(t.edges, n + 1) for t in all_labeled_trees(n + 1)
    )


def underlying_multigraph(d: ChordDiagram) -> tuple[tuple[int, int], ...]:
    """The sorted edge multiset (circle pairs) of a diagram's chords."""
    ends: dict[int, list[int]] = {}
    for pos, c in enumerate(d.rep.feet):
        ends.setdefault(c, []).append(d.rep.circle_of(pos))
    return tuple(sorted((min(v), max(v)) for v in ends.values()))


def tree_reduce(d: ChordDiagram) -> LabeledTree:
    """Underlying labelled tree of a connected diagram with m = n + 1."""
    if d.m != d.n + 1:
        raise DiagramError(
            f"diagram has m={d.m}, n={d.n}; tree reduction needs m = n + 1"
        )
    if not is_connected(d):
        raise DiagramError("diagram is not connected")
    edges = underlying_multigraph(d)
    if len(set(edges)) != len(edges) or any(a == b for a, b in edges):
        raise DiagramError("underlying graph is not a tree")
    return LabeledTree(edges)


def graph_form_basis(b: BasisResult) -> list[ChordDiagram]:
    """One normal-form representative per underlying multigraph found in the
    enumerated set.  Meaningful when distinct graphs give independent
    classes and the graph count equals the dimension (the tree case, and the
    three-circle three-chord space); callers verify with
    :func:`verify_equivariant`."""
    graphs = sorted({underlying_multigraph(d) for d in b.diagram_set.diagrams})
    reps = [diagram_from_multigraph(g, b.diagram_set.m) for g in graphs]
    if len(reps) != b.dimension:
        raise ChordBasisError(
            f"graph count {len(reps)} != dimension {b.dimension}; this space "
            "has no per-graph basis"
        )
    return sorted(reps)


def orbit_report_to_text(report: OrbitReport) -> str:
    body_lines = []
    for i, o in enumerate(report.orbits):
        types = ",".join(sorted(o.types)) if o.types else "-"
        members = " ".join(_member_text(v) for v in o.members)
        basis_members = " ".join(_member_text(v) for v in o.basis_members)
        body_lines.append(
            f"orbit {i} size={o.size} complete={int(o.complete)} "
            f"types={types} basis=[{basis_members}] members=[{members}]"
        )
    body = "".join(line + "\n" for line in body_lines)
    header = (
        f"orbit-report m={report.m} n={report.n} orbits={len(report.orbits)} "
        f"incomplete={report.incomplete_count} digest={content_digest(body)}"
    )
    return header + "\n" + body


def _member_text(v: GeneralizedBasisVector) -> str:
    if len(v.terms) == 1 and v.terms[0][1] == 1:
        return str(v.terms[0][0])
    return "(" + "+".join(f"{coef}*{diag}" for diag, coef in v.terms) + ")"


def equivariant_to_text(vectors: Sequence[GeneralizedBasisVector], m: int, n: int,
                        rounds: Sequence[int]) -> str:
    body = "".join(str(v) + "\n" for v in sorted(vectors, key=str))
    header = (
        f"equivariant-basis m={m} n={n} vectors={len(vectors)} "
        f"rounds={','.join(str(r) for r in rounds)} digest={content_digest(body)}"
    )
    return header + "\n" + body
