"""Truncated meromorphic germs with linear poles, and univariate Laurent series.

A :class:`MeromorphicJet` is a finite sum of terms g / (L_1^{m_1} ... L_r^{m_r})
with L_j primitive integer linear forms and g a truncated Taylor polynomial.
The working order N is a homogeneous-degree contract: every term is known up
to total degree N, where a term's degree is deg(g) - sum(m_j).  Numerators are
therefore stored up to degree N + sum(m_j).  ``order=None`` marks an exact
(untruncated) germ.

Polynomials are dicts {exponent tuple: Fraction}, all of a jet's numerators
sharing the same number of variables.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

try:
    from gmpy2 import mpq as _Q      # ~20x faster than Fraction in the kernels
except ImportError:  # pragma: no cover
    _Q = Fraction

from .arith import (
    STANDARD, InnerProduct, as_fraction, fmt_rational, independent_subset, integer_direction, inverse,
    pad, projection_matrix, rref, transpose, vector,
)
from .errors import (
    DegenerateInputError, InvalidDirectionError, InvalidInputError, InvariantViolation,
    OrderExceededError,
)

__all__ = [
    "bernoulli_numbers", "h_coefficients", "h_jet", "h_tail_bound", "canonical_form",
    "MeromorphicJet", "pole_factor", "linear_form", "pi_plus", "eval_zero",
    "taylor_coefficient", "restrict_direction", "LaurentSeries", "laurent_split",
]


# ---------------------------------------------------------------------------
# Bernoulli numbers and h

@lru_cache(maxsize=None)
def bernoulli_numbers(n: int) -> tuple:
    """B_0 .. B_n with B_1 = -1/2, from sum_{j<=m} C(m+1, j) B_j = 0."""
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(comb(m + 1, j) * B[j] for j in range(m)) / (m + 1))
    return tuple(B)


@lru_cache(maxsize=None)
def h_coefficients(N: int) -> tuple:
    """Taylor coefficients c_0..c_N of h, where e^x/(1-e^x) = -1/x + h(x).

    c_n = -B_{n+1}(1)/(n+1)!, and B_m(1) = B_m except B_1(1) = 1/2.
    """
    B = list(bernoulli_numbers(N + 1))
    if len(B) > 1:
        B[1] = Fraction(1, 2)
    return tuple(-B[n + 1] / factorial(n + 1) for n in range(N + 1))


def h_tail_bound(x, N: int) -> Fraction:
    """Bound on |h(x) - sum_{n<=N} c_n x^n| for real |x| < 2*pi.

    Uses |B_2j|/(2j)! <= 4/(2 pi)^{2j} and the rational underestimate 6.28 of 2 pi.
    """
    twopi = Fraction(628, 100)
    r = abs(as_fraction(x)) / twopi
    if r >= 1:
        raise InvalidInputError("h series only converges for |x| < 2 pi")
    return 4 / twopi * r ** (N + 1) / (1 - r)


# ---------------------------------------------------------------------------
# polynomial kernels

def _zero_exp(k):
    return (0,) * k


def _padp(p, k):
    out = {}
    for e, c in p.items():
        if len(e) < k:
            e = e + (0,) * (k - len(e))
        elif len(e) > k:
            if any(e[k:]):
                raise InvalidInputError("cannot drop a variable in use")
            e = e[:k]
        out[e] = c
    return out


def _trunc(p, D):
    if D is None:
        return p
    return {e: c for e, c in p.items() if sum(e) <= D}


def _padd(p, q, s=1):
    out = dict(p)
    for e, c in q.items():
        v = out.get(e, 0) + s * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _pscale(p, c):
    if not c:
        return {}
    return {e: c * v for e, v in p.items()}


def _pmul(p, q, D):
    out = {}
    if D is None:
        for e1, c1 in p.items():
            for e2, c2 in q.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
    else:
        qs = sorted(q.items(), key=lambda kv: sum(kv[0]))
        qd = [sum(e) for e, _ in qs]
        for e1, c1 in p.items():
            room = D - sum(e1)
            for (e2, c2), d2 in zip(qs, qd):
                if d2 > room:
                    break
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _mul_linear(p, lin):
    """p times the linear form given as [(j, a), ...]."""
    out = {}
    for e, c in p.items():
        for j, a in lin:
            f = e[:j] + (e[j] + 1,) + e[j + 1:]
            out[f] = out.get(f, 0) + a * c
    return {e: c for e, c in out.items() if c}


def _compose(p, subs, k_out):
    """Substitute x_i -> subs[i] (a linear form as a coefficient list of length k_out)."""
    lins = [[(j, _Q(a)) for j, a in enumerate(row) if a] for row in subs]
    return _compose_rec(p, lins, k_out)


def _compose_rec(p, lins, k_out):
    if not p:
        return {}
    if not lins:
        c = sum(p.values())
        return {_zero_exp(k_out): c} if c else {}
    groups = {}
    for e, c in p.items():
        groups.setdefault(e[0], {})[e[1:]] = c
    acc = {}
    for d in range(max(groups), -1, -1):
        acc = _mul_linear(acc, lins[0]) if acc else {}
        if d in groups:
            acc = _padd(acc, _compose_rec(groups[d], lins[1:], k_out))
    return acc


def _form_poly(v, k):
    v = pad(v, k)
    out = {}
    for j, a in enumerate(v):
        if a:
            e = [0] * k
            e[j] = 1
            out[tuple(e)] = _Q(a)
    return out


def _h_of_form(v, k, D, derivative=0):
    """Jet of h^(derivative)(<v, eps>) up to total degree D, by Horner."""
    b = derivative
    cs = h_coefficients(max(D, 0) + b)
    cs = [_Q(cs[n + b] * factorial(n + b) / factorial(n)) for n in range(max(D, 0) + 1)]
    lin = [(j, _Q(a)) for j, a in enumerate(pad(v, k)) if a]
    acc = {}
    for n in range(D, -1, -1):
        acc = _trunc(_mul_linear(acc, lin), D) if acc else {}
        if cs[n]:
            acc = _padd(acc, {_zero_exp(k): cs[n]})
    return acc


def _low(p):
    return min((sum(e) for e in p), default=None)


# ---------------------------------------------------------------------------
# linear forms

def canonical_form(v):
    """Split a nonzero rational vector as scale * primitive integer form.

    The primitive form has gcd 1 and positive leading nonzero entry.
    """
    v = vector(v)
    if not v:
        raise DegenerateInputError("zero linear form")
    d = integer_direction(v)
    prim = tuple(int(x) for x in d)
    if next(x for x in prim if x) < 0:
        prim = tuple(-x for x in prim)
    j = next(i for i, x in enumerate(prim) if x)
    return prim, v[j] / prim[j]


def _fmt_form(form):
    parts = []
    for j, a in enumerate(form):
        if not a:
            continue
        var = f"ε{j + 1}"
        if a == 1:
            s = var
        elif a == -1:
            s = "-" + var
        else:
            s = f"{a}{var}"
        parts.append(s if not parts or s.startswith("-") else "+" + s)
    return "".join(parts)


def _fmt_poly(p):
    if not p:
        return "0"
    out = []
    for e, c in sorted(p.items(), key=lambda kv: (sum(kv[0]), tuple(-x for x in kv[0]))):
        mono = "·".join(f"ε{j + 1}" + (f"^{x}" if x > 1 else "") for j, x in enumerate(e) if x)
        coef = fmt_rational(c)
        if mono:
            coef = "" if c == 1 else "-" if c == -1 else coef + "·"
            out.append(coef + mono)
        else:
            out.append(coef)
    return " + ".join(out).replace("+ -", "- ")


def _key_merge(k1, k2):
    d = dict(k1)
    for f, m in k2:
        d[f] = d.get(f, 0) + m
    return tuple(sorted(d.items()))


def _key_mult(key):
    return sum(m for _, m in key)


def _omin(*xs):
    xs = [x for x in xs if x is not None]
    return min(xs) if xs else None


def _oadd(a, b):
    return None if a is None else a + b


# ---------------------------------------------------------------------------
# meromorphic jets

class MeromorphicJet:
    """Sum of g / prod L^m with linear poles, accurate to homogeneous degree ``order``."""

    __slots__ = ("terms", "nvars", "order")

    def __init__(self, terms=None, nvars: int = 0, order: int | None = None):
        self.nvars = nvars
        self.order = order
        clean = {}
        for key, g in (terms or {}).items():
            key = tuple(sorted((tuple(pad(f, nvars)), m) for f, m in key if m))
            g = _trunc(_padp(g, nvars), _oadd(order, _key_mult(key)))
            g = {e: _Q(c) for e, c in g.items() if c}
            if g:
                clean[key] = _padd(clean.get(key, {}), g)
                if not clean[key]:
                    del clean[key]
        if order is None:
            clean = _cancel(clean, nvars)
        self.terms = clean

    # constructors
    @classmethod
    def constant(cls, c, nvars=0, order=None):
        return cls({(): {_zero_exp(nvars): _Q(c)}}, nvars, order)

    @classmethod
    def polynomial(cls, p, nvars, order=None):
        return cls({(): dict(p)}, nvars, order)

    @classmethod
    def fraction(cls, numerator, forms, nvars, order=None):
        """numerator / prod(forms); forms are rational vectors, scales absorbed."""
        scale = Fraction(1)
        key = {}
        for v in forms:
            f, s = canonical_form(v)
            scale *= s
            key[f] = key.get(f, 0) + 1
        k = max([nvars] + [len(f) for f in key])
        num = _pscale(_padp(dict(numerator), k), 1 / scale)
        return cls({tuple(key.items()): num}, k, order)

    def _lift(self, k):
        if k == self.nvars:
            return self
        return MeromorphicJet(self.terms, k, self.order)

    def low(self):
        """Lowest homogeneous degree present (order+1 for the zero jet)."""
        lows = [_low(g) - _key_mult(key) for key, g in self.terms.items()]
        if lows:
            return min(lows)
        return None if self.order is None else self.order + 1

    # arithmetic
    def __add__(self, other):
        if not isinstance(other, MeromorphicJet):
            other = MeromorphicJet.constant(other, self.nvars)
        k = max(self.nvars, other.nvars)
        a, b = self._lift(k), other._lift(k)
        terms = {key: dict(g) for key, g in a.terms.items()}
        for key, g in b.terms.items():
            terms[key] = _padd(terms.get(key, {}), g)
        return MeromorphicJet(terms, k, _omin(a.order, b.order))

    __radd__ = __add__

    def __neg__(self):
        return MeromorphicJet({key: _pscale(g, -1) for key, g in self.terms.items()},
                              self.nvars, self.order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = _Q(c)
        return MeromorphicJet({key: _pscale(g, c) for key, g in self.terms.items()},
                              self.nvars, self.order)

    def __mul__(self, other):
        if not isinstance(other, MeromorphicJet):
            return self.scale(other)
        k = max(self.nvars, other.nvars)
        a, b = self._lift(k), other._lift(k)
        la, lb = a.low(), b.low()
        if a.order is None and b.order is None:
            N = None
        else:
            N = _omin(None if a.order is None or lb is None else a.order + lb,
                      None if b.order is None or la is None else b.order + la)
            if N is None:      # one side is an exact zero
                N = a.order if a.order is not None else b.order
        terms = {}
        for k1, g1 in a.terms.items():
            for k2, g2 in b.terms.items():
                key = _key_merge(k1, k2)
                prod = _pmul(g1, g2, _oadd(N, _key_mult(key)))
                terms[key] = _padd(terms.get(key, {}), prod)
        return MeromorphicJet(terms, k, N)

    __rmul__ = __mul__

    def derive(self, i: int):
        """Partial derivative in eps_i (1-based); the order drops by one."""
        j = i - 1
        k = max(self.nvars, i)
        f = self._lift(k)
        terms = {}

        def put(key, p):
            terms[key] = _padd(terms.get(key, {}), p)

        for key, g in f.terms.items():
            dg = {}
            for e, c in g.items():
                if e[j]:
                    dg[e[:j] + (e[j] - 1,) + e[j + 1:]] = c * e[j]
            put(key, dg)
            for idx, (form, m) in enumerate(key):
                a = form[j] if j < len(form) else 0
                if not a:
                    continue
                newkey = key[:idx] + ((form, m + 1),) + key[idx + 1:]
                put(newkey, _pscale(g, -m * a))
        return MeromorphicJet(terms, k, _oadd(f.order, -1))

    def truncate(self, N):
        return MeromorphicJet(self.terms, self.nvars, _omin(N, self.order))

    # inspection
    @property
    def is_holomorphic(self) -> bool:
        return all(not key for key in self.terms)

    def holomorphic_part(self) -> dict:
        return dict(self.terms.get((), {}))

    def forms(self):
        return sorted({f for key in self.terms for f, _ in key})

    def equals(self, other, N=None) -> bool:
        """Equality of germs up to homogeneous degree N (default: common order)."""
        if not isinstance(other, MeromorphicJet):
            other = MeromorphicJet.constant(other, self.nvars)
        diff = self - other
        if N is None:
            N = diff.order
        elif diff.order is not None and N > diff.order:
            raise OrderExceededError(f"cannot compare beyond order {diff.order}")
        if not diff.terms:
            return True
        k = diff.nvars
        common = {}
        for key in diff.terms:
            for f, m in key:
                common[f] = max(common.get(f, 0), m)
        D = sum(common.values())
        total = {}
        for key, g in diff.terms.items():
            have = dict(key)
            p = g
            for f, m in common.items():
                for _ in range(m - have.get(f, 0)):
                    p = _pmul(p, _form_poly(f, k), _oadd(N, D))
            total = _padd(total, _trunc(p, _oadd(N, D)))
        return not total

    def __eq__(self, other):
        return self.equals(other)

    __hash__ = None

    def __repr__(self):
        return f"MeromorphicJet({self}, order={self.order})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, key=lambda kk: (_key_mult(kk), kk)):
            num = _fmt_poly(self.terms[key])
            if not key:
                parts.append(num)
                continue
            den = "·".join(f"({_fmt_form(f)})" + (f"^{m}" if m > 1 else "") for f, m in key)
            parts.append(f"({num})/{den}" if " " in num else f"{num}/{den}")
        tail = f" + O(|ε|^{self.order + 1})" if self.order is not None else ""
        return (" + ".join(parts) + tail).replace("+ -", "- ")

    def to_json(self):
        return {
            "order": self.order,
            "nvars": self.nvars,
            "terms": [
                {"denominator": [{"form": [fmt_rational(a) for a in f], "multiplicity": m}
                                 for f, m in key],
                 "numerator": [{"exponent": list(e), "coefficient": fmt_rational(c)}
                               for e, c in sorted(g.items())]}
                for key, g in sorted(self.terms.items())
            ],
        }


def _divide_exact(p, form, k):
    """p / <form, eps> if the division is exact, else None."""
    form = pad(form, k)
    j = next(i for i, a in enumerate(form) if a)
    T = [list(form)] + [[int(i == c) for i in range(k)] for c in range(k) if c != j]
    Tinv = inverse(T)
    u = _compose(p, Tinv, k)
    if any(e[0] == 0 for e in u):
        return None
    q = {(e[0] - 1,) + e[1:]: c for e, c in u.items()}
    return _compose(q, T, k)


def _cancel(terms, k):
    changed = True
    while changed:
        changed = False
        for key in list(terms):
            g = terms[key]
            for idx, (f, m) in enumerate(key):
                q = _divide_exact(g, f, k)
                if q is None:
                    continue
                newkey = key[:idx] + (((f, m - 1),) if m > 1 else ()) + key[idx + 1:]
                del terms[key]
                terms[newkey] = _padd(terms.get(newkey, {}), q)
                if not terms[newkey]:
                    del terms[newkey]
                changed = True
                break
            if changed:
                break
    return terms


def linear_form(v, nvars=None, order=None) -> MeromorphicJet:
    """The polynomial germ <v, eps>."""
    v = vector(v)
    k = max(len(v), nvars or 0)
    return MeromorphicJet.polynomial(_form_poly(v, k), k, order)


def h_jet(N: int, v=(1,), nvars=None) -> MeromorphicJet:
    """Jet of h(<v, eps>) to order N (univariate h by default)."""
    if N < 0:
        raise InvalidInputError("order must be nonnegative")
    v = vector(v)
    k = max(len(v), nvars or 0, 1)
    return MeromorphicJet.polynomial(_h_of_form(v, k, N), k, N)


def pole_factor(v, N: int, nvars=None, derivative: int = 0) -> MeromorphicJet:
    """Jet of e^L/(1-e^L) = -1/L + h(L) for L = <v, eps>.

    With ``derivative`` = b, the b-th derivative in the single variable x = L
    is expanded instead: -(-1)^b b!/L^{b+1} + h^(b)(L).
    """
    form, scale = canonical_form(v)
    k = max(len(form), nvars or 0)
    b = derivative
    c = -(-1) ** b * factorial(b) / scale ** (b + 1)
    terms = {((form, b + 1),): {_zero_exp(k): c}, (): _h_of_form(vector(v), k, N, b)}
    return MeromorphicJet(terms, k, N)


# ---------------------------------------------------------------------------
# the projection pi_+

def _split_term(key, g, k, N, Q, rng, hol, polar):
    if not key:
        new = _padd(hol, g)
        hol.clear()
        hol.update(new)
        return
    forms = [f for f, _ in key]
    P = projection_matrix([vector(f) for f in forms], Q, k)
    gp = _compose(g, transpose(P), k)   # g o p with p the dual projection
    if gp:
        polar.append((key, gp))
    r = _padd(g, gp, -1)
    if not r:
        return
    order = list(range(len(forms)))
    if rng is not None:
        rng.shuffle(order)
    basis = [forms[order[i]] for i in independent_subset([vector(forms[i]) for i in order])]
    if rng is not None:
        rng.shuffle(basis)
    _, piv = rref([vector(b) for b in basis], k)
    T = [list(pad(b, k)) for b in basis] + [[int(i == c) for i in range(k)]
                                            for c in range(k) if c not in piv]
    u = _compose(r, inverse(T), k)
    for t, b in enumerate(basis):
        take = {e: c for e, c in u.items() if e[t]}
        if not take:
            continue
        for e in take:
            del u[e]
        q = {e[:t] + (e[t] - 1,) + e[t + 1:]: c for e, c in take.items()}
        q = _compose(q, T, k)
        newkey = tuple((f, m - 1 if f == b else m) for f, m in key)
        newkey = tuple((f, m) for f, m in newkey if m)
        _split_term(newkey, q, k, N, Q, rng, hol, polar)
    if u:
        raise InvariantViolation("nonzero remainder while peeling pole forms")


def pi_plus(f: MeromorphicJet, Q: InnerProduct = STANDARD, rng=None, with_polar=False):
    """Holomorphic component of f along the Q-dependent polar subspace.

    ``rng`` (a random.Random) randomises the basis of pole forms and the
    peeling order; the result must not depend on it.  With ``with_polar``
    the polar component is returned as well.
    """
    hol, polar = {}, []
    for key, g in f.terms.items():
        _split_term(key, g, f.nvars, f.order, Q, rng, hol, polar)
    plus = MeromorphicJet.polynomial(hol, f.nvars, f.order)
    if not with_polar:
        return plus
    terms = {}
    for key, g in polar:
        terms[key] = _padd(terms.get(key, {}), g)
    return plus, MeromorphicJet(terms, f.nvars, f.order)


def eval_zero(f: MeromorphicJet) -> Fraction:
    if not f.is_holomorphic:
        raise InvalidInputError("eval_zero needs a holomorphic germ")
    return as_fraction(f.holomorphic_part().get(_zero_exp(f.nvars), 0))


def taylor_coefficient(f: MeromorphicJet, r) -> Fraction:
    """Coefficient of eps^r in a holomorphic jet."""
    if not f.is_holomorphic:
        raise InvalidInputError("taylor_coefficient needs a holomorphic germ")
    r = tuple(int(x) for x in r)
    if f.order is not None and sum(r) > f.order:
        raise OrderExceededError(f"degree {sum(r)} exceeds jet order {f.order}")
    if len(r) > f.nvars:
        if any(r[f.nvars:]):
            return Fraction(0)
        r = r[:f.nvars]
    r = r + (0,) * (f.nvars - len(r))
    return as_fraction(f.holomorphic_part().get(r, 0))


# ---------------------------------------------------------------------------
# univariate Laurent series

class LaurentSeries:
    """Truncated Laurent series sum c_n eps^n, exact for n <= order."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs=None, order: int | None = None):
        self.order = order
        self.coeffs = {n: as_fraction(c) for n, c in (coeffs or {}).items()
                       if c and (order is None or n <= order)}

    @classmethod
    def constant(cls, c, order=None):
        return cls({0: c}, order)

    def low(self):
        if self.coeffs:
            return min(self.coeffs)
        return None if self.order is None else self.order + 1

    def __add__(self, other):
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries.constant(other)
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            out[n] = out.get(n, 0) + c
        return LaurentSeries(out, _omin(self.order, other.order))

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries({n: -c for n, c in self.coeffs.items()}, self.order)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return LaurentSeries({n: c * v for n, v in self.coeffs.items()}, self.order)

    def __mul__(self, other):
        if not isinstance(other, LaurentSeries):
            return self.scale(as_fraction(other))
        la, lb = self.low(), other.low()
        if self.order is None and other.order is None:
            N = None
        else:
            N = _omin(None if self.order is None or lb is None else self.order + lb,
                      None if other.order is None or la is None else other.order + la)
            if N is None:
                N = self.order if self.order is not None else other.order
        out = {}
        for n1, c1 in self.coeffs.items():
            for n2, c2 in other.coeffs.items():
                if N is None or n1 + n2 <= N:
                    out[n1 + n2] = out.get(n1 + n2, 0) + c1 * c2
        return LaurentSeries(out, N)

    __rmul__ = __mul__

    def holomorphic(self):
        return LaurentSeries({n: c for n, c in self.coeffs.items() if n >= 0}, self.order)

    def polar(self):
        return LaurentSeries({n: c for n, c in self.coeffs.items() if n < 0}, self.order)

    def __getitem__(self, n):
        if self.order is not None and n > self.order:
            raise OrderExceededError(f"coefficient {n} beyond order {self.order}")
        return self.coeffs.get(n, Fraction(0))

    def value_at_zero(self):
        if self.polar().coeffs:
            raise InvalidInputError("series has a pole at 0")
        return self[0]

    def equals(self, other, N=None):
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries.constant(other)
        d = self - other
        N = d.order if N is None else N
        return all(n > N for n in d.coeffs) if N is not None else not d.coeffs

    def __eq__(self, other):
        return self.equals(other)

    __hash__ = None

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for n in sorted(self.coeffs):
            c = fmt_rational(self.coeffs[n])
            parts.append(c if n == 0 else f"{c}·ε" if n == 1 else f"{c}·ε^{n}")
        tail = f" + O(ε^{self.order + 1})" if self.order is not None else ""
        return (" + ".join(parts) + tail).replace("+ -", "- ")

    def __repr__(self):
        return f"LaurentSeries({self})"


def laurent_split(f: LaurentSeries):
    """(holomorphic part, polar part)."""
    return f.holomorphic(), f.polar()


def restrict_direction(f: MeromorphicJet, a) -> LaurentSeries:
    """Substitute eps_i = a_i * eps."""
    a = vector(a)
    f = f._lift(max(f.nvars, len(a)))
    a = [as_fraction(x) for x in pad(a, f.nvars)]
    out = {}
    for key, g in f.terms.items():
        denom, m = Fraction(1), 0
        for form, mult in key:
            val = sum((x * y for x, y in zip(form, a)), Fraction(0))
            if not val:
                raise InvalidDirectionError(
                    f"direction {[fmt_rational(x) for x in a]} annihilates the pole {_fmt_form(form)}")
            denom *= val ** mult
            m += mult
        for e, c in g.items():
            v = c
            for x, p in zip(a, e):
                if p:
                    v *= x ** p
            n = sum(e) - m
            out[n] = out.get(n, 0) + v / denom
    return LaurentSeries(out, f.order)
