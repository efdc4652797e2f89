"""Finite projective and biaffine incidence structures, and the point/line
deletion sets whose removal keeps the incidence graph regular.

Conventions, fixed for reproducibility:
  * projective points and hyperplanes are homogeneous coordinate tuples of
    field codes, scaled so the first nonzero coordinate is 1;
  * point and line lists are sorted lexicographically by these tuples, and
    vertex numbering everywhere is "all points, then all lines";
  * a structure is a pair of cross-indexed incidence lists, immutable after
    construction.
"""

import itertools
from dataclasses import dataclass, field as dc_field

from .field import Field, subfield_embedding
from .graphs import Graph


def normalize_projective(F: Field, vec) -> tuple[int, ...]:
    """Scale so the first nonzero coordinate equals 1."""
    for c in vec:
        if c:
            inv = F.inv(c)
            return tuple(F.mul(inv, x) for x in vec)
    raise ValueError("zero vector has no projective class")


def projective_points(F: Field, length: int) -> list[tuple[int, ...]]:
    """All normalized coordinate tuples of the given length, sorted."""
    out = []
    for lead in range(length):
        for tail in itertools.product(range(F.q), repeat=length - lead - 1):
            out.append((0,) * lead + (1,) + tail)
    out.sort()
    return out


def _dot(F: Field, u, v) -> int:
    acc = 0
    for a, b in zip(u, v):
        acc = F.add(acc, F.mul(a, b))
    return acc


def line_through(F: Field, p, r) -> tuple[int, ...]:
    """Dual coordinates of the unique line joining two distinct plane points."""
    cross = (
        F.sub(F.mul(p[1], r[2]), F.mul(p[2], r[1])),
        F.sub(F.mul(p[2], r[0]), F.mul(p[0], r[2])),
        F.sub(F.mul(p[0], r[1]), F.mul(p[1], r[0])),
    )
    if not any(cross):
        raise ValueError("points coincide, no unique joining line")
    return normalize_projective(F, cross)


@dataclass(frozen=True, eq=False)
class IncidenceStructure:
    """Typed point and line sets with an explicit incidence relation."""

    kind: str
    field: Field
    points: tuple
    lines: tuple
    point_lines: tuple  # per point: sorted tuple of incident line indices
    line_points: tuple  # per line: sorted tuple of incident point indices
    _point_index: dict = dc_field(repr=False, default_factory=dict)
    _line_index: dict = dc_field(repr=False, default_factory=dict)

    def __post_init__(self):
        self._point_index.update({lab: i for i, lab in enumerate(self.points)})
        self._line_index.update({lab: i for i, lab in enumerate(self.lines)})

    def point_id(self, label) -> int:
        return self._point_index[label]

    def line_id(self, label) -> int:
        return self._line_index[label]

    def incident(self, point_id: int, line_id: int) -> bool:
        return line_id in self.point_lines[point_id]

    def __repr__(self):
        return (f"IncidenceStructure({self.kind}, {len(self.points)} points, "
                f"{len(self.lines)} lines)")


def _structure_from_line_points(kind, F, points, lines, line_points):
    by_point = [[] for _ in points]
    for li, pts in enumerate(line_points):
        for pi in pts:
            by_point[pi].append(li)
    return IncidenceStructure(
        kind, F, tuple(points), tuple(lines),
        tuple(tuple(sorted(ls)) for ls in by_point),
        tuple(tuple(sorted(ps)) for ps in line_points),
    )


def build_pg_hyperplanes(F: Field, n: int) -> IncidenceStructure:
    """Point/hyperplane incidence of the n-dimensional projective space."""
    if n < 2:
        raise ValueError("projective dimension must be >= 2")
    pts = projective_points(F, n + 1)
    hyps = list(pts)
    line_points = []
    for h in hyps:
        line_points.append(tuple(i for i, p in enumerate(pts) if _dot(F, p, h) == 0))
    kind = "projective-plane" if n == 2 else f"pg({n})-point-hyperplane"
    return _structure_from_line_points(kind, F, pts, hyps, line_points)


def build_pg2(F: Field) -> IncidenceStructure:
    """The desarguesian projective plane over F."""
    return build_pg_hyperplanes(F, 2)


def build_biaffine(F: Field, kind: int) -> IncidenceStructure:
    """Biaffine plane of type 1 or 2 in Cartesian coordinates.

    Type 1: points (x, y), lines (m, b) meaning Y = mX + b; the vertical
    pencil and the infinite elements are already gone.  Type 2: points
    (x, y) != origin, lines (a, b) meaning aX + bY + 1 = 0; additionally the
    lines through the origin are gone.  Both are q-regular on q^2 resp.
    q^2 - 1 points and equally many lines.
    """
    q = F.q
    if kind == 1:
        points = sorted(itertools.product(range(q), repeat=2))
        lines = sorted(itertools.product(range(q), repeat=2))
        pid = {lab: i for i, lab in enumerate(points)}
        line_points = []
        for m, b in lines:
            line_points.append(tuple(sorted(pid[(x, F.add(F.mul(m, x), b))]
                                            for x in range(q))))
        return _structure_from_line_points("biaffine-1", F, points, lines, line_points)
    if kind == 2:
        points = sorted(p for p in itertools.product(range(q), repeat=2) if p != (0, 0))
        lines = sorted(l for l in itertools.product(range(q), repeat=2) if l != (0, 0))
        pid = {lab: i for i, lab in enumerate(points)}
        neg1 = F.neg(1)
        line_points = []
        for a, b in lines:
            pts = []
            if b:
                binv = F.inv(b)
                for x in range(q):
                    y = F.mul(binv, F.sub(neg1, F.mul(a, x)))
                    pts.append(pid[(x, y)])
            else:
                x = F.mul(F.inv(a), neg1)
                pts = [pid[(x, y)] for y in range(q)]
            line_points.append(tuple(sorted(pts)))
        return _structure_from_line_points("biaffine-2", F, points, lines, line_points)
    raise ValueError(f"biaffine type must be 1 or 2, got {kind}")


@dataclass(frozen=True)
class DeletionSet:
    """Point subset and line subset to remove, with the declared parameter t."""

    points: frozenset
    lines: frozenset
    t: int


def verify_t_good(S: IncidenceStructure, D: DeletionSet) -> bool:
    """Every surviving point on exactly t deleted lines, and dually."""
    for pi in range(len(S.points)):
        if pi in D.points:
            continue
        if sum(1 for li in S.point_lines[pi] if li in D.lines) != D.t:
            return False
    for li in range(len(S.lines)):
        if li in D.lines:
            continue
        if sum(1 for pi in S.line_points[li] if pi in D.points) != D.t:
            return False
    return True


def baer_deletion_set(plane: IncidenceStructure) -> DeletionSet:
    """Points and lines of the order-sqrt(q) subplane over the subfield."""
    emb = subfield_embedding(plane.field)  # raises for non-square order
    img = emb.image
    pts = frozenset(i for i, p in enumerate(plane.points) if all(c in img for c in p))
    lns = frozenset(i for i, l in enumerate(plane.lines) if all(c in img for c in l))
    s = emb.small.q
    expected = s * s + s + 1
    if len(pts) != expected or len(lns) != expected:
        raise AssertionError("subplane has wrong size")
    return DeletionSet(pts, lns, 1)


_CANONICAL_P1 = (1, 0, 0)
_CANONICAL_P2 = (0, 1, 0)
_CANONICAL_P3 = (0, 0, 1)
# canonical second line through P1, distinct from the joining line X2 = 0
_CANONICAL_E2 = (0, 1, 0)


def flag_deletion_set(plane: IncidenceStructure, p1=None, p2=None, e2=None) -> DeletionSet:
    """Lines through two points, points on the joining line and a second line.

    Defaults: P1 = (1:0:0), P2 = (0:1:0), whose joining line is X2 = 0, and
    e2 the line X1 = 0 through P1.
    """
    F = plane.field
    p1 = _CANONICAL_P1 if p1 is None else normalize_projective(F, p1)
    p2 = _CANONICAL_P2 if p2 is None else normalize_projective(F, p2)
    if p1 == p2:
        raise ValueError("points must be distinct")
    e1 = line_through(F, p1, p2)
    e2 = _CANONICAL_E2 if e2 is None else normalize_projective(F, e2)
    if _dot(F, p1, e2) != 0:
        raise ValueError("second line must pass through the first point")
    if e2 == e1:
        raise ValueError("second line must differ from the joining line")
    i1, i2 = plane.point_id(p1), plane.point_id(p2)
    lines = frozenset(plane.point_lines[i1]) | frozenset(plane.point_lines[i2])
    points = frozenset(plane.line_points[plane.line_id(e1)]) | \
        frozenset(plane.line_points[plane.line_id(e2)])
    return DeletionSet(points, lines, 2)


def triangle_deletion_set(plane: IncidenceStructure, p1=None, p2=None, p3=None) -> DeletionSet:
    """Lines through three non-collinear points, points on their joining lines."""
    F = plane.field
    p1 = _CANONICAL_P1 if p1 is None else normalize_projective(F, p1)
    p2 = _CANONICAL_P2 if p2 is None else normalize_projective(F, p2)
    p3 = _CANONICAL_P3 if p3 is None else normalize_projective(F, p3)
    if len({p1, p2, p3}) != 3:
        raise ValueError("points must be distinct")
    if _dot(F, p3, line_through(F, p1, p2)) == 0:
        raise ValueError("points must be non-collinear")
    ids = [plane.point_id(p) for p in (p1, p2, p3)]
    lines = frozenset().union(*(plane.point_lines[i] for i in ids))
    sides = [line_through(F, a, b) for a, b in ((p1, p2), (p1, p3), (p2, p3))]
    points = frozenset().union(
        *(plane.line_points[plane.line_id(e)] for e in sides))
    return DeletionSet(points, lines, 3)


def hermitian_deletion_set(plane: IncidenceStructure) -> DeletionSet:
    """Points of the Hermitian curve and its tangent lines.

    In the plane of square order s^2, the curve is
    X0^(s+1) + X1^(s+1) + X2^(s+1) = 0 with s^3 + 1 points; the tangent at
    (x0:x1:x2) has dual coordinates (x0^s, x1^s, x2^s) via the Frobenius
    conjugate of the gradient, which avoids the O(q^5) secant scan.
    """
    F = plane.field
    if F.r % 2:
        raise ValueError("Hermitian curve needs a square-order plane")
    s = F.p ** (F.r // 2)
    e = s + 1
    curve = [i for i, p in enumerate(plane.points)
             if F.add(F.add(F.pow(p[0], e), F.pow(p[1], e)), F.pow(p[2], e)) == 0]
    if len(curve) != s ** 3 + 1:
        raise AssertionError("Hermitian curve has wrong size")
    tangents = set()
    for i in curve:
        p = plane.points[i]
        tangents.add(plane.line_id(normalize_projective(
            F, tuple(F.pow(c, s) for c in p))))
    if len(tangents) != len(curve):
        raise AssertionError("tangent lines are not distinct")
    return DeletionSet(frozenset(curve), frozenset(tangents), e)


def delete_and_graph(S: IncidenceStructure, D: DeletionSet) -> Graph:
    """Bipartite incidence graph of the structure with D removed.

    Vertices are the surviving points in canonical order followed by the
    surviving lines; the result is regular of degree (line size - t).
    """
    if not verify_t_good(S, D):
        raise ValueError(f"deletion set is not {D.t}-good")
    live_points = [i for i in range(len(S.points)) if i not in D.points]
    live_lines = [i for i in range(len(S.lines)) if i not in D.lines]
    pmap = {old: new for new, old in enumerate(live_points)}
    lmap = {old: len(live_points) + new for new, old in enumerate(live_lines)}
    edges = []
    for old_line in live_lines:
        lv = lmap[old_line]
        for old_point in S.line_points[old_line]:
            if old_point not in D.points:
                edges.append((pmap[old_point], lv))
    tags = ["point"] * len(live_points) + ["line"] * len(live_lines)
    return Graph(len(live_points) + len(live_lines), edges, tags)


def incidence_graph(S: IncidenceStructure) -> Graph:
    """Full bipartite incidence graph (points first, then lines)."""
    return delete_and_graph(S, DeletionSet(frozenset(), frozenset(), 0))
