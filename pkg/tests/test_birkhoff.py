from fractions import Fraction as F
from math import comb

import pytest

from czv.birkhoff import (
    CharacterMap, CoalgebraOracle, TargetAlgebra, birkhoff_split, check_differential_compat,
    convolution, convolution_inverse,
)
from czv.coalgebra import UNIT, ColouredLatticeCone, coderivation, coproduct_coloured, counit, \
    degree
from czv.cones import chen_cone, faces, transverse_cone
from czv.germs import LaurentSeries, MeromorphicJet, eval_zero, h_jet, pi_plus
from czv.renormalise import (
    exp_integral, exp_sum_open, multivariate_factors, univariate_factors,
)

ORACLE = CoalgebraOracle(coproduct_coloured, counit, UNIT, degree)
one_jet = MeromorphicJet.constant(1)
one_laurent = LaurentSeries.constant(1)
E1 = ColouredLatticeCone(chen_cone(1))
C2 = ColouredLatticeCone(chen_cone(2))
N = 4


def jet_map(fn, name="f"):
    return CharacterMap(fn, UNIT, lambda _: one_jet, name)


def chen_corpus(kmax=3):
    out = set()
    for k in range(1, kmax + 1):
        C = chen_cone(k)
        for G in faces(C):
            for F_ in faces(G):
                out.add(ColouredLatticeCone(transverse_cone(G, F_)))
    out.discard(UNIT)
    return sorted(out, key=lambda x: (degree(x), str(x)))


# --- a toy coalgebra: the binomial coalgebra on x^n --------------------------

BINOMIAL = CoalgebraOracle(lambda n: {(k, n - k): comb(n, k) for k in range(n + 1)},
                           lambda n: int(n == 0), 0, lambda n: n)
LAURENT = TargetAlgebra(one=lambda _: one_laurent, project=lambda f: f.holomorphic())


def toy_phi():
    return CharacterMap(lambda n: LaurentSeries({-n: 1, 0: n, 1: F(1, n + 1)}, 6), 0,
                        lambda _: one_laurent, "toy")


def test_engine_on_binomial_coalgebra():
    phi = toy_phi()
    phi1, phi2 = birkhoff_split(phi, BINOMIAL, LAURENT)
    inv1 = convolution_inverse(phi1, BINOMIAL, lambda _: one_laurent)
    for n in range(1, 6):
        assert convolution(inv1, phi2, n, BINOMIAL).equals(phi(n), 6 - 2 * n)
        assert not phi1(n).polar().coeffs                   # phi_1 in A_1
        assert not phi2(n).holomorphic().coeffs             # phi_2 in A_2
    assert phi1(0).equals(1) and phi2(0).equals(1)


# --- convolution and inverse -------------------------------------------------

def test_convolution_examples():
    f = jet_map(lambda x: exp_sum_open(x, N))
    g = jet_map(lambda x: exp_integral(x))
    assert convolution(f, g, UNIT, ORACLE).equals(1)
    # primitive element: f(x) + g(x)
    assert convolution(f, g, E1, ORACLE).equals(f(E1) + g(E1), N)
    mu = jet_map(lambda x: pi_plus(exp_sum_open(x, N + 1)))
    want = h_jet(N) - MeromorphicJet.fraction({(0,): 1}, [(1,)], 1)
    assert convolution(mu, g, E1, ORACLE).equals(want, N)


def test_convolution_inverse_examples():
    f = jet_map(lambda x: exp_sum_open(x, 8))
    inv = convolution_inverse(f, ORACLE, lambda _: one_jet)
    assert inv(UNIT).equals(1)
    assert inv(E1).equals(-f(E1), 6)
    for x in chen_corpus(2):
        got = convolution(inv, f, x, ORACLE)
        assert got.equals(counit(x))


# --- splitting -----------------------------------------------------------------

def test_split_unit():
    (phi1, phi2), _ = multivariate_factors(C2, N=N)
    assert phi1(UNIT).equals(1) and phi2(UNIT).equals(1)


def test_univariate_first_factor():
    a = (-2, -1)
    (phi1, _), _ = univariate_factors(C2, a, 5)
    inv = convolution_inverse(phi1, ORACLE, lambda _: one_laurent)
    h = [F(-1, 2), F(-1, 12), 0, F(1, 720)]
    want = LaurentSeries({n: c * (-2) ** n for n, c in enumerate(h) if c}, 3)
    assert inv(E1).equals(want, 3)


def test_multivariate_first_factor_is_projection():
    (phi1, _), _ = multivariate_factors(C2, N=N)
    inv = convolution_inverse(phi1, ORACLE, lambda _: one_jet)
    assert inv(C2).equals(pi_plus(exp_sum_open(C2, N + 2)), N)


@pytest.mark.parametrize("x", chen_corpus(), ids=str)
def test_factorisation_identity(x):
    (phi1, phi2), phi = multivariate_factors(x, N=N)
    inv1 = convolution_inverse(phi1, ORACLE, lambda _: one_jet)
    assert convolution(inv1, phi2, x, ORACLE).equals(phi(x), N)
    assert phi1(x).is_holomorphic and inv1(x).is_holomorphic
    assert not pi_plus(phi2(x)).terms                      # phi_2 lands in the polar part
    assert phi2(x).equals(exp_integral(x), N)


def test_uniqueness_negative_control():
    x = ColouredLatticeCone(chen_cone(3))
    (phi1, phi2), phi = multivariate_factors(x, N=N)
    y = E1
    bad = phi1.override(y, phi1(y) + MeromorphicJet.polynomial({(1,): 1}, 1))
    assert bad(y).is_holomorphic                           # still valued in A_1
    inv = convolution_inverse(bad, ORACLE, lambda _: one_jet)
    assert not convolution(inv, phi2, C2, ORACLE).equals(phi(C2), N)


# --- differential compatibility ----------------------------------------------

def _compat_setup(algebra=None):
    base = ColouredLatticeCone(chen_cone(2))
    work = 9
    phi = jet_map(lambda y: exp_sum_open(y, work), "S°")
    oracle = ORACLE
    algebra = algebra or TargetAlgebra(one=lambda _: one_jet, project=pi_plus)
    phi1, phi2 = birkhoff_split(phi, oracle, algebra)
    corpus = [y for y in chen_corpus(2) if y != base] + [base]
    return phi, phi1, phi2, corpus


def _equal(u, v):
    return u.equals(v, 3)


def test_compat_vacuous():
    phi, phi1, phi2, corpus = _compat_setup()
    rep = check_differential_compat(phi, {"φ1": phi1}, [], [], corpus, _equal)
    assert rep.ok and rep.checked == 0


def test_compat_holds_for_cone_scheme():
    phi, phi1, phi2, corpus = _compat_setup()
    deltas = [lambda y, i=i: coderivation(i, y) for i in (1, 2)]
    ders = [lambda f, i=i: f.derive(i) for i in (1, 2)]
    rep = check_differential_compat(phi, {"φ1": phi1, "φ2": phi2}, deltas, ders, corpus, _equal)
    assert rep.ok, rep.failures
    assert rep.checked == 3 * 2 * len(corpus)


def test_compat_reports_corrupted_projection():
    def bad_project(f):          # still a projection, but it does not commute with d_i
        return MeromorphicJet.constant(eval_zero(pi_plus(f)), f.nvars, f.order)
    algebra = TargetAlgebra(one=lambda _: one_jet, project=bad_project)
    phi, phi1, phi2, corpus = _compat_setup(algebra)
    deltas = [lambda y, i=i: coderivation(i, y) for i in (1, 2)]
    ders = [lambda f, i=i: f.derive(i) for i in (1, 2)]

    rep = check_differential_compat(phi, {"φ1": phi1}, deltas, ders, corpus,
                                    lambda u, v: u.equals(v, 0))
    assert not rep.ok
