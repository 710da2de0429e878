"""Test corpus and self-check suites, shared by ``czv check`` and the test suite.

Every suite returns a report {"suite": name, "cases": [{input, expected?, got, pass}]}.
"""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from .arith import STANDARD, Lattice, fmt_rational, projection_matrix, transpose, vector
from .birkhoff import convolution
from .coalgebra import (
    UNIT, ColouredLatticeCone, coderivation, coproduct_coloured, counit, degree,
    reduced_coproduct,
)
from .cones import (
    Cone, LatticeCone, Subdivision, chen_cone, is_smooth, make_lattice_cone, smooth_subdivide,
    stellar_subdivide,
)
from .errors import InvalidInputError
from .germs import MeromorphicJet, _compose, h_jet, pi_plus, pole_factor, restrict_direction
from .renormalise import (
    _oracle, evaluate_exp_sum, exp_integral, exp_sum_inserted, exp_sum_open,
    multivariate_factors, numeric_oracle, zeta_ren, zeta_ren_univariate,
)

GOLDEN_DIRECTIONS = [(-2, -1), (-3, -1), (-5, -2), (-7, -3), (-4, -1)]


# ---------------------------------------------------------------------------
# corpus

def random_smooth_cone(rng: random.Random, d: int, steps: int = 4) -> LatticeCone:
    """Rows of a random unimodular matrix (elementary row operations on I)."""
    rows = [[int(i == j) for j in range(d)] for i in range(d)]
    for _ in range(steps):
        i, j = rng.sample(range(d), 2)
        c = rng.choice([-1, 1])
        rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
    return make_lattice_cone(rows)


def corpus(seed: int = 2017) -> dict:
    """Named lattice cones: Chen cones, orthants, index 2 and 3 cones, random smooth cones."""
    out = {f"chen:{k}": chen_cone(k) for k in (1, 2, 3)}
    out["orthant:2"] = make_lattice_cone([(1, 0), (0, 1)])
    out["orthant:3"] = make_lattice_cone([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    out["<e1,e1+2e2>"] = make_lattice_cone([(1, 0), (1, 2)])
    out["<e1,e1+3e2>"] = make_lattice_cone([(1, 0), (1, 3)])
    out["<e1+e2,e1-e2>"] = make_lattice_cone([(1, 1), (1, -1)])
    out["<e1-e2>/Z(e1-e2)/2"] = make_lattice_cone(
        [(1, -1)], Lattice.generated_by([(Fraction(1, 2), Fraction(-1, 2))]))
    rng = random.Random(seed)
    for n, d in enumerate((2, 2, 3, 3, 3)):
        out[f"random:{n}"] = random_smooth_cone(rng, d)
    return out


def colours(k: int, total: int = 2):
    """All s in Z_{<=0}^k with |s| <= total."""
    for s in product(range(-total, 1), repeat=k):
        if -sum(s) <= total:
            yield tuple(s)


def coloured_corpus(total: int = 2, seed: int = 2017) -> dict:
    out = {}
    for name, lc in corpus(seed).items():
        for s in colours(max(lc.ambient, 1), total):
            out[(name, s)] = ColouredLatticeCone(lc, s)
    return out


def _case(inp, got, ok, expected=None):
    c = {"input": inp}
    if expected is not None:
        c["expected"] = expected
    c["got"] = got
    c["pass"] = bool(ok)
    return c


def _report(name, cases):
    return {"suite": name, "cases": cases}


# ---------------------------------------------------------------------------
# suites

def suite_golden(order=None):
    c2 = chen_cone(2)
    cases = []
    z = zeta_ren(c2, (0, 0), order)
    cases.append(_case({"cone": "chen:2", "colour": [0, 0], "scheme": "multivariate"},
                       fmt_rational(z), z == Fraction(3, 8), "3/8"))
    for a in GOLDEN_DIRECTIONS:
        z = zeta_ren_univariate(c2, a, order, (0, 0))
        cases.append(_case({"cone": "chen:2", "colour": [0, 0], "scheme": "univariate",
                            "direction": list(a)}, fmt_rational(z), z == Fraction(3, 8), "3/8"))
    return _report("golden", cases)


def projected_chen2_expression(N: int) -> MeromorphicJet:
    """-(h(e1+e2)-h(e2))/e1 - (h(e1)-h((e1-e2)/2))/(e1+e2) + h(e1)h(e1+e2), to order N."""
    half = (Fraction(1, 2), Fraction(-1, 2))

    def h(v, n):
        return h_jet(n, v, 2)

    def inv(v):
        return MeromorphicJet.fraction({(0, 0): 1}, [v], 2)

    t1 = -(h((1, 1), N + 1) - h((0, 1), N + 1)) * inv((1, 0))
    t2 = -(h((1, 0), N + 1) - h(half, N + 1)) * inv((1, 1))
    return t1 + t2 + h((1, 0), N) * h((1, 1), N)


def suite_projection(order=6):
    N = 6 if order is None else order
    got = pi_plus(exp_sum_open(chen_cone(2), N))
    want = projected_chen2_expression(N)
    return _report("projection", [_case({"germ": "S°(chen:2)", "order": N}, str(got),
                                        got.equals(want, N), str(want))])


def expected_chen2_reduced():
    half = Lattice.generated_by([(Fraction(1, 2), Fraction(-1, 2))])
    e1 = LatticeCone(Cone(((Fraction(1),),)), Lattice.generated_by([(1,)]))
    e2 = LatticeCone(Cone(((0, 1),)), Lattice.generated_by([(0, 1)]))
    d = LatticeCone(Cone(((1, -1),)), half)
    s = LatticeCone(Cone(((1, 1),)), Lattice.generated_by([(1, 1)]))
    col = ColouredLatticeCone
    return {(col(e2), col(e1)): Fraction(1), (col(d), col(s)): Fraction(1)}


def suite_coproduct(order=None):
    got = reduced_coproduct(ColouredLatticeCone(chen_cone(2)))
    want = expected_chen2_reduced()
    render = sorted(f"{a} ⊗ {b}" for a, b in got)
    return _report("coproduct", [_case({"cone": "chen:2"}, render, got == want,
                                       sorted(f"{a} ⊗ {b}" for a, b in want))])


def suite_euler_maclaurin(order=8):
    N = 8 if order is None else order
    cases = []
    for name, lc in corpus().items():
        x = ColouredLatticeCone(lc)
        work = N + degree(x)
        mu = lambda y: MeromorphicJet.constant(1) if y == UNIT else pi_plus(exp_sum_open(y, work))
        integral = lambda y: exp_integral(y)
        rhs = convolution(mu, integral, x, _oracle(STANDARD))
        lhs = exp_sum_open(x, N)
        cases.append(_case({"cone": name, "order": N}, "S° = μ°∗I" if lhs.equals(rhs, N)
                           else "mismatch", lhs.equals(rhs, N)))
    return _report("euler-maclaurin", cases)


def _tensor3(tensor_pairs, left):
    """(Delta (x) id) or (id (x) Delta) applied to a pair-tensor."""
    out = {}
    for (a, b), c in tensor_pairs.items():
        if left:
            for (a1, a2), d in coproduct_coloured(a).items():
                out[(a1, a2, b)] = out.get((a1, a2, b), 0) + c * d
        else:
            for (b1, b2), d in coproduct_coloured(b).items():
                out[(a, b1, b2)] = out.get((a, b1, b2), 0) + c * d
    return {k: v for k, v in out.items() if v}


def _D(i, tensor):
    out = {}
    for (a, b), c in tensor.items():
        for key in ((coderivation(i, a), b), (a, coderivation(i, b))):
            out[key] = out.get(key, 0) + c
    return {k: v for k, v in out.items() if v}


def coalgebra_axioms(x: ColouredLatticeCone) -> dict:
    """Each axiom name mapped to whether it holds at x."""
    D = coproduct_coloured(x)
    res = {"coassociativity": _tensor3(D, True) == _tensor3(D, False)}
    left, right = {}, {}
    for (a, b), c in D.items():
        if counit(a):
            left[b] = left.get(b, 0) + c * counit(a)
        if counit(b):
            right[a] = right.get(a, 0) + c * counit(b)
    res["left counit"] = {k: v for k, v in left.items() if v} == {x: 1}
    res["right counit"] = {k: v for k, v in right.items() if v} == {x: 1}
    k = max(x.cone.ambient, len(x.colour), 1)
    res["Δδ = DΔ"] = all(coproduct_coloured(coderivation(i, x)) == _D(i, D)
                         for i in range(1, k + 1))
    res["εδ = 0"] = all(counit(coderivation(i, x)) == 0 for i in range(1, k + 1))
    return res


def suite_coalgebra(order=None):
    cases = []
    for (name, s), x in coloured_corpus().items():
        res = coalgebra_axioms(x)
        cases.append(_case({"cone": name, "colour": list(s)},
                           [k for k, v in res.items() if not v] or "all axioms hold",
                           all(res.values())))
    return _report("coalgebra", cases)


def exp_sum_by_insertion(x: ColouredLatticeCone, N: int) -> MeromorphicJet:
    """S° summed over the open faces of a smooth subdivision, insertion route per face."""
    from .cones import open_face_cover
    lc = x.cone
    if is_smooth(lc):
        return exp_sum_inserted(x, N)
    total = MeromorphicJet.constant(0, max(lc.ambient, len(x.colour), 1), N)
    for F in open_face_cover(smooth_subdivide(lc)):
        total = total + exp_sum_inserted(ColouredLatticeCone(F, x.colour), N)
    return total


def suite_differential(order=4):
    """S° delta_i = d_i S° against the insertion route, and colour compatibility of S°_1, S°_2."""
    N = 4 if order is None else order
    cases = []
    for name, lc in corpus().items():
        k = max(lc.ambient, 1)
        base = ColouredLatticeCone(lc)
        # one factorisation serves every colour: accurate to N + 2 on base
        (phi1, phi2), _ = multivariate_factors(base, work=N + 2 + lc.dim)
        fails = []
        for s in colours(k, 2):
            x = ColouredLatticeCone(lc, s)
            direct = exp_sum_by_insertion(x, N)
            deriv = exp_sum_open(base, N + 2)
            for i, si in enumerate(s):
                for _ in range(-si):
                    deriv = deriv.derive(i + 1)
            if not direct.equals(deriv, N):
                fails.append(("S°", s))
            if -sum(s) >= 1:
                i = next(j for j, v in enumerate(s) if v) + 1
                prev = list(s)
                prev[i - 1] += 1
                lhs = exp_sum_by_insertion(ColouredLatticeCone(lc, prev), N + 1).derive(i)
                if not lhs.equals(direct, N):
                    fails.append(("S°δ", s))
            for nm, f in (("S°1", phi1), ("S°2", phi2)):
                want = f(base)
                for i, si in enumerate(s):
                    for _ in range(-si):
                        want = want.derive(i + 1)
                if not f(x).equals(want, N):
                    fails.append((nm, s))
        cases.append(_case({"cone": name, "order": N},
                           [f"{a} at {list(b)}" for a, b in fails] or "all identities hold",
                           not fails))
    return _report("differential", cases)


def suite_subdivision(order=8):
    N = 8 if order is None else order
    C = make_lattice_cone([(1, 0), (0, 1)])
    single = Subdivision(C, (C,))
    a = stellar_subdivide(single, (1, 1))
    b = smooth_subdivide(stellar_subdivide(single, (1, 2)))
    fa, fb = exp_sum_open(C, N, subdivision=a), exp_sum_open(C, N, subdivision=b)
    direct = exp_sum_open(C, N)
    return _report("subdivision", [
        _case({"cone": "orthant:2", "subdivisions": ["split by e1+e2", "split by e1+2e2, smooth"],
               "pieces": [len(a.pieces), len(b.pieces)]}, "equal" if fa.equals(fb, N) else "differ",
              fa.equals(fb, N)),
        _case({"cone": "orthant:2", "subdivisions": ["split by e1+e2", "none"]},
              "equal" if fa.equals(direct, N) else "differ", fa.equals(direct, N)),
    ])


def brute_force_index(lc: LatticeCone) -> int:
    """Lattice points of the half-open parallelepiped, counted by enumeration."""
    from .arith import solve
    coords = [vector(lc.lattice.coordinates(g)) for g in lc.generators]
    d = len(coords)
    box = [max(abs(int(c[j])) if j < len(c) else 0 for c in coords) * d + 1 for j in range(d)]
    count = 0
    for p in product(*[range(-b, b + 1) for b in box]):
        c = solve(coords, vector(p))
        if c is not None and all(0 <= t < 1 for t in c) and len(c) == d:
            count += 1
    return count


def smoothing_inputs() -> dict:
    out = dict(corpus())
    for w in range(1, 6):
        out[f"<e1,e1+{w}e2>"] = make_lattice_cone([(1, 0), (1, w)])
    return out


def suite_smoothing(order=None):
    cases = []
    for name, lc in smoothing_inputs().items():
        sub = smooth_subdivide(lc)
        indices = [p.index for p in sub.pieces]
        ok = all(i == 1 for i in indices)
        got = {"pieces": len(sub.pieces), "indices": indices}
        if lc.dim == 2:
            w = brute_force_index(lc)
            got["index"] = w
            ok = ok and w == lc.index and len(sub.pieces) == w
        cases.append(_case({"cone": name}, got, ok))
    return _report("smoothing", cases)


def suite_numeric(order=30, cutoff=200):
    N = 30 if order is None else order
    eps = (Fraction(-1, 2), Fraction(-1, 3))
    value, bound = evaluate_exp_sum(chen_cone(2), eps, N)
    num, tail = numeric_oracle(chen_cone(2), eps, cutoff)
    rel = abs(float(value) - num) / abs(num)
    ok = rel < 1e-6 and abs(float(value) - num) <= float(bound) + tail + 1e-12 * abs(num)
    return _report("numeric", [_case(
        {"cone": "chen:2", "colour": [0, 0], "eps": ["-1/2", "-1/3"], "h_order": N,
         "cutoff": cutoff},
        {"jet": float(value), "jet_bound": float(bound), "lattice_sum": num,
         "tail_bound": tail, "relative_error": rel}, ok)])


def random_germ(rng: random.Random, N: int) -> MeromorphicJet:
    """A product of one to three pole factors in 2 or 3 variables, maybe times a monomial."""
    k = rng.choice((2, 3))
    f = MeromorphicJet.constant(rng.choice((1, -1, Fraction(1, 2), 2)), k)
    nf = rng.randint(1, 3)
    for _ in range(nf):
        while True:
            v = tuple(rng.randint(-2, 2) for _ in range(k))
            if any(v):
                break
        f = f * pole_factor(v, N + nf, k)
    if rng.random() < 0.5:
        e = [0] * k
        e[rng.randrange(k)] = 1
        f = f * MeromorphicJet.polynomial({tuple(e): Fraction(rng.randint(1, 3))}, k)
    return f.truncate(N)


def canonical_polar(f: MeromorphicJet) -> MeromorphicJet:
    """Replace each numerator g by g o p_W, giving a germ in the polar subspace."""
    terms = {}
    for key, g in f.terms.items():
        if not key:
            continue
        P = projection_matrix([vector(v) for v, _ in key], STANDARD, f.nvars)
        terms[key] = _compose(g, transpose(P), f.nvars)
    return MeromorphicJet(terms, f.nvars, f.order)


def suite_pi_plus(order=4, count=50, seed=7):
    N = 4 if order is None else order
    rng = random.Random(seed)
    cases = []
    for n in range(count):
        f = random_germ(rng, N)
        base = pi_plus(f)
        invariant = all(pi_plus(f, rng=random.Random(seed * 1000 + n * 10 + t)).equals(base, N)
                        for t in range(3))
        idem = pi_plus(base).equals(base, N)
        kills = not pi_plus(canonical_polar(f)).terms
        cases.append(_case({"germ": n, "terms": len(f.terms)},
                           {"invariant": invariant, "idempotent": idem, "annihilates_polar": kills},
                           invariant and idem and kills))
    return _report("pi-plus", cases)


def suite_counterexample(order=None, a=(-2, -1)):
    f = MeromorphicJet.fraction({(1, 0): 1}, [(0, 1)], 2)
    lhs = restrict_direction(f, a).holomorphic().value_at_zero()
    rhs = restrict_direction(pi_plus(f), a).value_at_zero()
    want = Fraction(a[0], a[1])
    return _report("counterexample", [_case(
        {"germ": "ε1/ε2", "direction": list(a)},
        {"restrict_then_project": fmt_rational(lhs), "project_then_restrict": fmt_rational(rhs)},
        lhs == want and rhs == 0 and lhs != rhs,
        {"restrict_then_project": fmt_rational(want), "project_then_restrict": "0"})])


SUITES = {
    "golden": suite_golden,
    "projection": suite_projection,
    "coproduct": suite_coproduct,
    "euler-maclaurin": suite_euler_maclaurin,
    "coalgebra": suite_coalgebra,
    "differential": suite_differential,
    "subdivision": suite_subdivision,
    "smoothing": suite_smoothing,
    "numeric": suite_numeric,
    "pi-plus": suite_pi_plus,
    "counterexample": suite_counterexample,
}


def run_suite(name: str, order=None) -> dict:
    if name not in SUITES:
        raise InvalidInputError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name](order)


def passed(report: dict) -> bool:
    return all(c["pass"] for c in report["cases"])
