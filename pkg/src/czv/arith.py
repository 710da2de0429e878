"""Exact rational linear algebra and lattices in the filtered space Q^oo.

Vectors are plain tuples of ``Fraction`` with trailing zeros stripped, so
``(1, 0)`` and ``(1,)`` are the same vector and equality is padding
invariant.  Everything here is pure and works on the smallest common
ambient dimension.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import zip_longest
from math import gcd, lcm

from .errors import DegenerateInputError, DimensionError, InvalidInputError

__all__ = [
    "vector", "pad", "ambient_dim", "unit_vector", "fmt_rational", "parse_rational",
    "InnerProduct", "STANDARD", "inner_product", "orthogonal_project",
    "projection_matrix", "Lattice", "lattice_intersection", "lattice_image",
    "lattice_index", "primitive_representative", "integer_direction",
]


def vector(xs) -> tuple:
    v = [Fraction(x) for x in xs]
    while v and v[-1] == 0:
        v.pop()
    return tuple(v)


def pad(v, k: int) -> tuple:
    if len(v) > k:
        raise DimensionError(f"vector {v} does not fit in dimension {k}")
    return tuple(v) + (Fraction(0),) * (k - len(v))


def ambient_dim(*vectors) -> int:
    return max((len(v) for v in vectors), default=0)


def unit_vector(i: int) -> tuple:
    """e_i, 1-based: unit_vector(1) is the first basis vector."""
    return vector([0] * (i - 1) + [1])


def add(u, v):
    return vector(a + b for a, b in zip_longest(u, v, fillvalue=0))


def sub(u, v):
    return vector(a - b for a, b in zip_longest(u, v, fillvalue=0))


def smul(c, v):
    return vector(c * a for a in v)


def combination(coeffs, vectors):
    out = ()
    for c, v in zip(coeffs, vectors):
        if c:
            out = add(out, smul(c, v))
    return out


def as_fraction(q) -> Fraction:
    """Fraction with plain int parts, from ints, Fractions, gmpy2 mpq or strings."""
    if type(q) is Fraction and type(q.numerator) is int:
        return q
    if hasattr(q, "numerator") and hasattr(q, "denominator"):
        return Fraction(int(q.numerator), int(q.denominator))
    return Fraction(q)


def fmt_rational(q) -> str:
    q = as_fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(s) -> Fraction:
    try:
        return Fraction(str(s).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInputError(f"not a rational: {s!r}") from exc


# ---------------------------------------------------------------------------
# Gaussian elimination over Q

def rref(rows, ncols=None):
    """Reduced row echelon form.  Returns (nonzero rows, pivot columns)."""
    if ncols is None:
        ncols = ambient_dim(*rows)
    m = [list(pad(r, ncols)) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(vectors) -> int:
    return len(rref(vectors)[1])


def independent_subset(vectors) -> list[int]:
    """Indices of the first linearly independent subfamily, greedily in order."""
    chosen, basis = [], []
    for i, v in enumerate(vectors):
        if rank(basis + [v]) > len(basis):
            basis.append(v)
            chosen.append(i)
    return chosen


def solve(basis, v):
    """Coefficients c with sum c_i basis_i == v, or None if v is not in the span.

    ``basis`` must be linearly independent.
    """
    n = ambient_dim(v, *basis)
    k = len(basis)
    # columns are basis vectors; augment with v
    aug = [[pad(b, n)[j] for b in basis] + [pad(v, n)[j]] for j in range(n)]
    red, piv = rref(aug, k + 1)
    if k in piv:
        return None
    coeffs = [Fraction(0)] * k
    for row, c in zip(red, piv):
        coeffs[c] = row[k]
    return coeffs


def nullspace(rows, ncols):
    """Basis of {x in Q^ncols : r . x = 0 for every row r}."""
    red, piv = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in piv]
    out = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, c in zip(red, piv):
            x[c] = -row[f]
        out.append(x)
    return out


def det(matrix) -> Fraction:
    m = [[Fraction(x) for x in row] for row in matrix]
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return d


def inverse(matrix):
    """Inverse of an invertible square rational matrix, as a list of rows."""
    n = len(matrix)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(matrix)]
    red, piv = rref(aug, 2 * n)
    if piv[:n] != list(range(n)) or len(red) < n:
        raise DegenerateInputError("matrix is singular")
    return [row[n:] for row in red]


def transpose(matrix):
    return [list(col) for col in zip(*matrix)]


def integer_direction(v) -> tuple:
    """The primitive integer vector on the ray through a nonzero rational v."""
    v = vector(v)
    if not v:
        raise DegenerateInputError("zero vector has no direction")
    den = reduce(lcm, (x.denominator for x in v), 1)
    ints = [int(x * den) for x in v]
    g = reduce(gcd, ints, 0)
    return vector(x // g for x in ints)


# ---------------------------------------------------------------------------
# inner products

@dataclass(frozen=True)
class InnerProduct:
    """A compatible family Q_k of rational inner products.

    ``gram`` fixes Q on R^d; on R^k for k > d the family is extended
    block-diagonally by the standard dot product, which keeps Q_{k+1}
    restricted to R^k equal to Q_k.  The empty gram is the dot product.
    """
    gram: tuple = ()

    def __post_init__(self):
        g = tuple(tuple(Fraction(x) for x in row) for row in self.gram)
        d = len(g)
        if any(len(row) != d for row in g):
            raise InvalidInputError("gram matrix must be square")
        if any(g[i][j] != g[j][i] for i in range(d) for j in range(d)):
            raise InvalidInputError("gram matrix must be symmetric")
        if any(det([row[:i] for row in g[:i]]) <= 0 for i in range(1, d + 1)):
            raise InvalidInputError("gram matrix must be positive definite")
        object.__setattr__(self, "gram", g)

    def matrix(self, k: int):
        d = len(self.gram)
        return [[self.gram[i][j] if i < d and j < d else Fraction(int(i == j))
                 for j in range(k)] for i in range(k)]

    def __call__(self, u, v) -> Fraction:
        if not self.gram:
            return sum((a * b for a, b in zip(u, v)), Fraction(0))
        k = ambient_dim(u, v)
        u, v, m = pad(u, k), pad(v, k), self.matrix(k)
        return sum((u[i] * m[i][j] * v[j] for i in range(k) for j in range(k) if u[i] and v[j]),
                   Fraction(0))


STANDARD = InnerProduct()


def inner_product(u, v, Q: InnerProduct = STANDARD) -> Fraction:
    return Q(vector(u), vector(v))


def orthogonal_project(v, F, Q: InnerProduct = STANDARD):
    """Project v onto span(F)^perp along span(F)."""
    v = vector(v)
    F = [vector(f) for f in F]
    basis = [F[i] for i in independent_subset(F)]
    if not basis:
        return v
    gram = [[Q(a, b) for b in basis] for a in basis]
    rhs = [Q(a, v) for a in basis]
    # gram is invertible; solve gram c = rhs as a span problem
    c = solve([vector(col) for col in zip(*gram)], vector(rhs))
    return sub(v, combination(c, basis))


def projection_matrix(F, Q: InnerProduct = STANDARD, k: int | None = None):
    """Matrix (list of rows) of the Q-orthogonal projection onto span(F)^perp in R^k."""
    if k is None:
        k = ambient_dim(*F)
    cols = [pad(orthogonal_project(unit_vector(j + 1), F, Q), k) for j in range(k)]
    return [[cols[j][i] for j in range(k)] for i in range(k)]


def apply_matrix(m, v):
    v = pad(v, len(m[0])) if m else ()
    return vector(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in m)


# ---------------------------------------------------------------------------
# integer echelon forms

def hermite_rows(rows):
    """Row Hermite normal form of an integer matrix (nonzero rows only).

    Pivot columns strictly increase, pivots are positive and entries above
    a pivot lie in [0, pivot).  Unique for the row lattice.
    """
    n = max((len(r) for r in rows), default=0)
    rows = [list(r) + [0] * (n - len(r)) for r in rows]
    rows = [r for r in rows if any(r)]
    out, pivcols = [], []
    for col in range(n):
        if not rows:
            break
        nz = [r for r in rows if r[col]]
        rest = [r for r in rows if not r[col]]
        if not nz:
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            keep = [p]
            for r in nz[1:]:
                q = r[col] // p[col]
                r = [a - q * b for a, b in zip(r, p)]
                if r[col]:
                    keep.append(r)
                elif any(r):
                    rest.append(r)
            nz = keep
        p = nz[0]
        if p[col] < 0:
            p = [-a for a in p]
        out.append(p)
        pivcols.append(col)
        rows = rest
    for i, col in enumerate(pivcols):
        piv = out[i][col]
        for j in range(i):
            q = out[j][col] // piv
            if q:
                out[j] = [a - q * b for a, b in zip(out[j], out[i])]
    return out


def integer_kernel(matrix, ncols):
    """Z-basis of {x in Z^ncols : matrix x = 0} for an integer matrix."""
    r = len(matrix)
    if r == 0:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    aug = [[matrix[i][j] for i in range(r)] + [int(j == t) for t in range(ncols)]
           for j in range(ncols)]
    return [row[r:] for row in hermite_rows(aug) if not any(row[:r])]


# ---------------------------------------------------------------------------
# lattices

@dataclass(frozen=True)
class Lattice:
    """A finitely generated subgroup of Q^oo, stored by its canonical basis.

    The basis is the row Hermite normal form of the denominator-cleared
    generators, rescaled back; two lattices are equal iff their bases are.
    Build through :meth:`generated_by` or :meth:`standard`.
    """
    basis: tuple = ()

    @classmethod
    def generated_by(cls, vectors) -> "Lattice":
        vs = [vector(v) for v in vectors]
        vs = [v for v in vs if v]
        if not vs:
            return cls(())
        den = reduce(lcm, (x.denominator for v in vs for x in v), 1)
        ints = [[int(x * den) for x in v] for v in vs]
        return cls(tuple(vector(Fraction(a, den) for a in row) for row in hermite_rows(ints)))

    @classmethod
    def standard(cls, k: int) -> "Lattice":
        return cls(tuple(unit_vector(i) for i in range(1, k + 1)))

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def ambient(self) -> int:
        return ambient_dim(*self.basis)

    def coordinates(self, v):
        """Rational coordinates of v in the basis, or None if v is off the span."""
        v = vector(v)
        n = ambient_dim(v, *self.basis)
        rows = [pad(b, n) for b in self.basis]
        vv = pad(v, n)
        coeffs = []
        for i, row in enumerate(rows):
            pc = next(j for j, x in enumerate(row) if x)
            acc = vv[pc] - sum((coeffs[j] * rows[j][pc] for j in range(i)), Fraction(0))
            coeffs.append(acc / row[pc])
        if combination(coeffs, self.basis) != v:
            return None
        return coeffs

    def integer_coordinates(self, v):
        c = self.coordinates(v)
        if c is None or any(x.denominator != 1 for x in c):
            raise DimensionError(f"{v} is not a point of the lattice")
        return [int(x) for x in c]

    def __contains__(self, v) -> bool:
        c = self.coordinates(v)
        return c is not None and all(x.denominator == 1 for x in c)

    def from_coordinates(self, coeffs):
        return combination([Fraction(c) for c in coeffs], self.basis)

    def to_json(self):
        return [[fmt_rational(x) for x in b] for b in self.basis]

    def __str__(self):
        return "Z{" + ", ".join("(" + ",".join(fmt_rational(x) for x in b) + ")"
                                for b in self.basis) + "}"


def lattice_intersection(lattice: Lattice, W) -> Lattice:
    """Lattice ∩ span(W), for W inside span(lattice)."""
    W = [vector(w) for w in W]
    W = [w for w in W if w]
    if not W:
        return Lattice(())
    d = lattice.rank
    coords = []
    for w in W:
        c = lattice.coordinates(w)
        if c is None:
            raise DimensionError(f"{w} is not in the span of the lattice")
        coords.append(c)
    constraints = nullspace(coords, d)
    ints = []
    for row in constraints:
        den = reduce(lcm, (x.denominator for x in row), 1)
        ints.append([int(x * den) for x in row])
    kernel = integer_kernel(ints, d)
    return Lattice.generated_by([lattice.from_coordinates(x) for x in kernel])


def lattice_image(lattice: Lattice, matrix) -> Lattice:
    """The lattice generated by the images of the basis under a rational matrix."""
    return Lattice.generated_by([apply_matrix(matrix, b) for b in lattice.basis])


def lattice_index(vectors, lattice: Lattice) -> int:
    """|det| of the coordinate matrix of ``vectors`` in a basis of the lattice."""
    vectors = [vector(v) for v in vectors]
    if len(vectors) != lattice.rank:
        raise DimensionError(f"need {lattice.rank} vectors, got {len(vectors)}")
    m = [lattice.integer_coordinates(v) for v in vectors]
    d = abs(det(m)) if m else Fraction(1)
    if d == 0:
        raise DegenerateInputError("vectors are linearly dependent")
    return int(d)


def primitive_representative(v, lattice: Lattice):
    """The smallest positive multiple of v lying in the lattice."""
    v = vector(v)
    if not v:
        raise DegenerateInputError("zero vector has no primitive representative")
    c = lattice.coordinates(v)
    if c is None:
        raise DimensionError(f"{v} is not in the span of the lattice")
    return lattice.from_coordinates(integer_direction(c))
