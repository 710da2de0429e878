"""Rational polyhedral cones with lattices: faces, transverse cones, subdivisions.

Combinatorial work (triangulation, smoothing, index computations) happens
in integer coordinates with respect to the canonical basis of the cone's
lattice, so every lattice cone is handled as a full-dimensional cone in
Z^d and mapped back at the end.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations

from .arith import (
    STANDARD, InnerProduct, Lattice, apply_matrix, pad, fmt_rational, independent_subset,
    integer_direction, lattice_image, lattice_intersection, lattice_index, nullspace,
    primitive_representative, projection_matrix, rank, solve, vector,
)
from .errors import DegenerateInputError, InvalidInputError, UnsupportedConeError

__all__ = [
    "Cone", "LatticeCone", "Subdivision", "ZERO", "make_lattice_cone", "is_strongly_convex",
    "faces", "transverse_cone", "simplicial_subdivide", "smooth_subdivide",
    "stellar_subdivide", "is_smooth", "open_face_cover", "facet_normals", "chen_cone",
    "chen_transverse_closed_form", "in_cone",
]


def in_cone(v, gens) -> bool:
    """Exact membership of v in the cone spanned by ``gens``.

    By Caratheodory it suffices to look at linearly independent subfamilies.
    """
    v = vector(v)
    if not v:
        return True
    gens = [vector(g) for g in gens]
    r = rank(gens) if gens else 0
    for size in range(1, r + 1):
        for T in combinations(range(len(gens)), size):
            sub = [gens[i] for i in T]
            if rank(sub) < size:
                continue
            c = solve(sub, v)
            if c is not None and all(x >= 0 for x in c):
                return True
    return False


@dataclass(frozen=True)
class Cone:
    """A rational polyhedral cone, stored by its sorted primitive integer rays."""
    rays: tuple = ()

    @classmethod
    def from_generators(cls, gens) -> "Cone":
        dirs = []
        for g in gens:
            d = integer_direction(g)
            if d not in dirs:
                dirs.append(d)
        dirs.sort()
        i = 0
        while i < len(dirs):
            others = dirs[:i] + dirs[i + 1:]
            if others and in_cone(dirs[i], others):
                dirs.pop(i)
            else:
                i += 1
        return cls(tuple(dirs))

    @property
    def dim(self) -> int:
        return rank(list(self.rays)) if self.rays else 0

    @property
    def is_simplicial(self) -> bool:
        return len(self.rays) == self.dim

    def __contains__(self, v) -> bool:
        return in_cone(v, self.rays)


def is_strongly_convex(c) -> bool:
    """True iff the cone contains no line.

    The lineality space is a face, hence spanned by the generators it
    contains; so a line exists iff some -v_i lies in the cone.
    """
    if isinstance(c, LatticeCone):
        c = c.cone
    return not any(in_cone(tuple(-x for x in r), c.rays) for r in c.rays)


def _fmt_vec(v) -> str:
    return "(" + ",".join(fmt_rational(x) for x in v) + ")"


@dataclass(frozen=True)
class LatticeCone:
    cone: Cone
    lattice: Lattice

    @property
    def rays(self):
        return self.cone.rays

    @property
    def dim(self) -> int:
        return self.lattice.rank

    @cached_property
    def generators(self) -> tuple:
        """Primary generating set: the lattice-primitive vector on each ray."""
        return tuple(primitive_representative(r, self.lattice) for r in self.rays)

    @property
    def is_simplicial(self) -> bool:
        return len(self.rays) == self.dim

    @cached_property
    def coordinates(self) -> tuple:
        """Integer coordinates of the primary generators in the lattice basis."""
        return tuple(tuple(self.lattice.integer_coordinates(g)) for g in self.generators)

    @cached_property
    def index(self) -> int:
        if not self.is_simplicial:
            raise UnsupportedConeError("index is defined for simplicial cones only")
        if self.dim == 0:
            return 1
        return lattice_index(self.generators, self.lattice)

    @property
    def ambient(self) -> int:
        return self.lattice.ambient

    def __str__(self):
        gens = ", ".join(_fmt_vec(g) for g in self.generators)
        return f"<{gens}>/{self.lattice}"

    def to_json(self):
        return {"generators": [[fmt_rational(x) for x in g] for g in self.generators],
                "lattice": self.lattice.to_json()}


ZERO = LatticeCone(Cone(()), Lattice(()))


def make_lattice_cone(generators, lattice: Lattice | None = None) -> LatticeCone:
    """Lattice cone on ``generators``; the lattice defaults to Z^k ∩ lin(C)."""
    gens = [vector(g) for g in generators]
    if any(not g for g in gens):
        raise DegenerateInputError("zero generator")
    cone = Cone.from_generators(gens)
    if lattice is None:
        k = max((len(g) for g in gens), default=0)
        lattice = lattice_intersection(Lattice.standard(k), cone.rays)
    if lattice.rank != cone.dim or any(lattice.coordinates(r) is None for r in cone.rays):
        raise InvalidInputError("lattice must span lin(C)")
    return LatticeCone(cone, lattice)


def is_smooth(lc: LatticeCone) -> bool:
    return lc.is_simplicial and lc.index == 1


def _require_simplicial(lc: LatticeCone):
    if not lc.is_simplicial:
        raise UnsupportedConeError(f"cone {lc} is not simplicial")


def _face(lc: LatticeCone, idx) -> LatticeCone:
    gens = [lc.generators[i] for i in idx]
    return LatticeCone(Cone(tuple(lc.rays[i] for i in idx)),
                       lattice_intersection(lc.lattice, gens))


@lru_cache(maxsize=None)
def faces(lc: LatticeCone) -> tuple:
    """All 2^n faces of a simplicial lattice cone, by size then generator order."""
    _require_simplicial(lc)
    n = len(lc.rays)
    return tuple(_face(lc, idx) for size in range(n + 1) for idx in combinations(range(n), size))


@lru_cache(maxsize=None)
def transverse_cone(lc: LatticeCone, face: LatticeCone, Q: InnerProduct = STANDARD) -> LatticeCone:
    """Project (C, Λ_C) orthogonally onto lin(F)^perp."""
    _require_simplicial(lc)
    if not set(face.rays) <= set(lc.rays):
        raise InvalidInputError(f"{face} is not a face of {lc}")
    if face.lattice != lattice_intersection(lc.lattice, face.generators):
        raise InvalidInputError(f"{face} does not carry the induced lattice of {lc}")
    k = max(lc.ambient, 1)
    P = projection_matrix(face.generators, Q, k)
    rest = [g for r, g in zip(lc.rays, lc.generators) if r not in face.rays]
    return make_lattice_cone([apply_matrix(P, g) for g in rest], lattice_image(lc.lattice, P))


# ---------------------------------------------------------------------------
# subdivisions, in integer lattice coordinates

@dataclass(frozen=True)
class Subdivision:
    parent: LatticeCone
    pieces: tuple


def int_det(m) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k]), None)
            if p is None:
                return 0
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _piece(parent: LatticeCone, coords) -> LatticeCone:
    gens = [parent.lattice.from_coordinates(c) for c in coords]
    return LatticeCone(Cone.from_generators(gens), parent.lattice)


def _placing(points):
    """Placing triangulation of a full-dimensional pointed cone.

    The first linearly independent subfamily seeds the triangulation; the
    remaining rays are placed in order, coning over visible boundary facets.
    """
    first = independent_subset(points)
    simplices = [tuple(first)]
    d = len(first)
    for idx in range(len(points)):
        if idx in first:
            continue
        r = points[idx]
        count = {}
        for S in simplices:
            for v in S:
                G = tuple(x for x in S if x != v)
                count[G] = count.get(G, 0) + 1
        new = []
        for S in simplices:
            for v in S:
                G = tuple(x for x in S if x != v)
                if count[G] != 1:
                    continue
                normal = nullspace([points[i] for i in G], d)[0]
                sv = sum(a * b for a, b in zip(normal, points[v]))
                sr = sum(a * b for a, b in zip(normal, r))
                if sv * sr < 0:
                    new.append(tuple(sorted(G + (idx,))))
        simplices.extend(new)
    return simplices


def simplicial_subdivide(lc: LatticeCone) -> Subdivision:
    if not is_strongly_convex(lc):
        raise UnsupportedConeError(f"cone {lc} contains a line")
    if lc.is_simplicial:
        return Subdivision(lc, (lc,))
    pts = [lc.lattice.coordinates(g) for g in lc.generators]
    pieces = tuple(_piece(lc, [pts[i] for i in S]) for S in _placing(pts))
    return Subdivision(lc, pieces)


def _adjugate(m):
    n = len(m)
    if n == 1:
        return [[1]]
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(m) if k != i]
            adj[j][i] = (-1) ** (i + j) * int_det(minor)
    return adj


def parallelepiped_points(coords):
    """Nonzero residues of Z^d modulo the sublattice spanned by ``coords``.

    Returns pairs (c, v) with v = sum c_i coords_i a lattice point and every
    c_i in [0, 1).  Enumerated by closing the group generated by the images
    of the unit vectors.
    """
    d = len(coords)
    A = [[coords[j][i] for j in range(d)] for i in range(d)]  # columns are generators
    D = int_det(A)
    w = abs(D)
    sgn = 1 if D > 0 else -1
    adj = _adjugate(A)
    gens = [tuple((sgn * adj[i][j]) % w for i in range(d)) for j in range(d)]
    seen = {tuple([0] * d)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for r in frontier:
            for g in gens:
                s = tuple((a + b) % w for a, b in zip(r, g))
                if s not in seen:
                    seen.add(s)
                    nxt.append(s)
        frontier = nxt
    out = []
    for r in seen:
        if any(r):
            c = tuple(Fraction(x, w) for x in r)
            v = tuple(sum(c[j] * coords[j][i] for j in range(d)) for i in range(d))
            out.append((c, tuple(int(x) for x in v)))
    return out


def _stellar(pieces, support, v):
    out = []
    for P in pieces:
        if all(s in P for s in support):
            for s in support:
                out.append(tuple(v if g == s else g for g in P))
        else:
            out.append(P)
    return out


def _pieces_in_coords(sub: Subdivision):
    lat = sub.parent.lattice
    for p in sub.pieces:
        if p.lattice != lat:
            raise InvalidInputError("subdivision pieces must share the parent lattice")
    return [tuple(tuple(int(x) for x in lat.coordinates(g)) for g in p.generators)
            for p in sub.pieces]


def smooth_subdivide(x) -> Subdivision:
    """Refine a lattice cone (or a simplicial subdivision) into smooth cones.

    Repeatedly takes a piece of maximal index, picks the parallelepiped
    point with least coefficient sum (ties: lexicographically smallest
    coefficients) and stellar-subdivides every piece containing its
    support face.
    """
    sub = x if isinstance(x, Subdivision) else simplicial_subdivide(x)
    parent = sub.parent
    pieces = _pieces_in_coords(sub)
    while True:
        ws = [abs(int_det([list(g) for g in P])) for P in pieces]
        w = max(ws, default=1)
        if w <= 1:
            break
        D = pieces[ws.index(w)]
        c, v = min(parallelepiped_points(D), key=lambda cv: (sum(cv[0]), cv[0]))
        support = [g for g, ci in zip(D, c) if ci]
        pieces = _stellar(pieces, support, v)
    return Subdivision(parent, tuple(_piece(parent, P) for P in pieces))


def stellar_subdivide(sub, v) -> Subdivision:
    """Stellar subdivision of a simplicial subdivision at the ray through v."""
    if isinstance(sub, LatticeCone):
        sub = simplicial_subdivide(sub)
    lat = sub.parent.lattice
    cv = lat.coordinates(vector(v))
    if cv is None or not any(cv):
        raise InvalidInputError(f"{v} is not a nonzero vector of lin(C)")
    ray = tuple(int(x) for x in integer_direction(cv))
    ray = ray + (0,) * (lat.rank - len(ray))
    pieces = _pieces_in_coords(sub)
    for P in pieces:
        c = solve([vector(g) for g in P], vector(ray))
        if c is not None and all(x >= 0 for x in c):
            support = [g for g, ci in zip(P, c) if ci]
            break
    else:
        raise InvalidInputError(f"{v} is not in the cone")
    if len(support) == 1:
        return sub
    return Subdivision(sub.parent, tuple(_piece(sub.parent, P) for P in _stellar(pieces, support, ray)))


def facet_normals(lc: LatticeCone) -> list:
    """Inward facet normals of a pointed cone, in lattice coordinates."""
    pts = [vector(lc.lattice.coordinates(g)) for g in lc.generators]
    d = lc.dim
    if d == 0:
        return []
    out = []
    for S in combinations(range(len(pts)), d - 1):
        sub = [pts[i] for i in S]
        if sub and rank(sub) < d - 1:
            continue
        n = nullspace(sub, d)[0]
        vals = [sum(a * b for a, b in zip(n, pad(p, d))) for p in pts]
        if all(v >= 0 for v in vals):
            pass
        elif all(v <= 0 for v in vals):
            n = [-a for a in n]
        else:
            continue
        n = integer_direction(n)
        if n not in out:
            out.append(n)
    return out


def open_face_cover(sub: Subdivision) -> tuple:
    """Faces of the pieces whose relative interiors lie in the parent's interior.

    A face is dropped when the sum of its generators lies on a facet
    hyperplane of the parent.
    """
    parent = sub.parent
    lat = parent.lattice
    normals = facet_normals(parent)
    d = parent.dim
    seen, out = set(), []
    for piece in sub.pieces:
        _require_simplicial(piece)
        coords = [pad(vector(lat.coordinates(g)), d) for g in piece.generators]
        for size in range(len(piece.rays) + 1):
            for idx in combinations(range(len(piece.rays)), size):
                rays = tuple(piece.rays[i] for i in idx)
                if rays in seen:
                    continue
                centre = [sum((coords[i][j] for i in idx), Fraction(0)) for j in range(d)]
                if any(sum(a * b for a, b in zip(n, pad(centre, d))) == 0 for n in normals):
                    continue
                seen.add(rays)
                out.append(_face(piece, idx))
    return tuple(out)


# ---------------------------------------------------------------------------
# Chen cones

def chen_cone(k: int) -> LatticeCone:
    """(<e1, e1+e2, ..., e1+...+ek>, Z^k)."""
    if k <= 0:
        raise InvalidInputError("Chen cones need k >= 1")
    gens = [vector([1] * i) for i in range(1, k + 1)]
    return LatticeCone(Cone(tuple(gens)), Lattice.standard(k))


def chen_transverse_closed_form(k: int, face_indices) -> list:
    """Generators of t(Chen_k, F) from the closed formulas, F given by 1-based generator indices.

    For a missing index m between face indices i < m < j: when j <= k the
    generator is ((j-m)/(j-i)) sum_{i<t<=m} e_t - ((m-i)/(j-i)) sum_{m<t<=j} e_t;
    when no face index follows m it is e_{i+1} + ... + e_m.
    """
    idx = sorted(face_indices)
    if len(set(idx)) != len(idx) or any(not 1 <= i <= k for i in idx):
        raise InvalidInputError(f"malformed face index pattern {face_indices} for k={k}")
    present = [0] + idx + [k + 1]
    out = []
    for a, b in zip(present, present[1:]):
        for m in range(a + 1, b):
            v = [Fraction(0)] * k
            if b <= k:
                for t in range(a + 1, m + 1):
                    v[t - 1] = Fraction(b - m, b - a)
                for t in range(m + 1, b + 1):
                    v[t - 1] = -Fraction(m - a, b - a)
            else:
                for t in range(a + 1, m + 1):
                    v[t - 1] = Fraction(1)
            out.append(vector(v))
    return out
