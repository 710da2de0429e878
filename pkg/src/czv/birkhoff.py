"""Algebraic Birkhoff factorisation over a connected coalgebra.

The engine is generic: a :class:`CoalgebraOracle` supplies the full coproduct,
counit, unit and degree; a :class:`TargetAlgebra` supplies the unit element
and the projection P onto the first summand.  Values in the target are
combined with ``+`` and ``*``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

__all__ = [
    "CoalgebraOracle", "TargetAlgebra", "CharacterMap", "convolution",
    "convolution_inverse", "birkhoff_split", "check_differential_compat",
]


@dataclass
class CoalgebraOracle:
    coproduct: Callable          # x -> {(x1, x2): coeff}
    counit: Callable             # x -> scalar
    unit: object
    degree: Callable

    def reduced(self, x) -> dict:
        return {k: c for k, c in self.coproduct(x).items() if self.unit not in k}


@dataclass
class TargetAlgebra:
    one: Callable                      # x -> unit element (x is a hint, e.g. for order)
    project: Callable                  # P onto A_1 along A_2

    def complement(self, v):
        return v - self.project(v)


class CharacterMap:
    """Memoised map on basis elements, sending the coalgebra unit to 1."""

    def __init__(self, fn, unit, one, name="φ"):
        self._fn = fn
        self.unit = unit
        self.one = one
        self.name = name
        self._cache = {}

    def __call__(self, x):
        if x == self.unit:
            return self.one(x)
        try:
            return self._cache[x]
        except KeyError:
            v = self._cache[x] = self._fn(x)
            return v

    def override(self, x, value):
        """Copy of this map with one value replaced (for negative controls)."""
        m = CharacterMap(self._fn, self.unit, self.one, self.name + "'")
        m._cache = dict(self._cache)
        m._cache[x] = value
        return m


def _sum(values, start):
    acc = start
    for v in values:
        acc = acc + v
    return acc


def convolution(phi, psi, x, oracle: CoalgebraOracle):
    """(phi * psi)(x) = sum phi(x') psi(x'')."""
    terms = [phi(a) * psi(b) * c for (a, b), c in oracle.coproduct(x).items()]
    return _sum(terms[1:], terms[0]) if terms else None


def convolution_inverse(phi, oracle: CoalgebraOracle, one) -> CharacterMap:
    """phi^{*-1} via phi^{*-1}(x) = -phi(x) - sum' phi^{*-1}(x') phi(x'')."""
    def fn(x):
        acc = -phi(x)
        for (a, b), c in oracle.reduced(x).items():
            acc = acc - inv(a) * phi(b) * c
        return acc
    inv = CharacterMap(fn, oracle.unit, one, getattr(phi, "name", "φ") + "^{*-1}")
    return inv


def birkhoff_split(phi, oracle: CoalgebraOracle, algebra: TargetAlgebra):
    """The pair (phi_1, phi_2) with phi = phi_1^{*-1} * phi_2.

    phi_1(x) = -P(phi(x) + sum' phi_1(x') phi(x'')) and phi_2 = (id - P) of the
    same bracket, the sum running over the reduced coproduct.
    """
    bracket_cache = {}

    def bracket(x):
        try:
            return bracket_cache[x]
        except KeyError:
            pass
        acc = phi(x)
        for (a, b), c in oracle.reduced(x).items():
            acc = acc + phi1(a) * phi(b) * c
        bracket_cache[x] = acc
        return acc

    def f1(x):
        return -algebra.project(bracket(x))

    def f2(x):
        return algebra.complement(bracket(x))

    phi1 = CharacterMap(f1, oracle.unit, algebra.one, "φ1")
    phi2 = CharacterMap(f2, oracle.unit, algebra.one, "φ2")
    return phi1, phi2


@dataclass
class CompatReport:
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_differential_compat(phi, maps, coderivations, derivations, corpus, equal):
    """Check d_i phi = phi delta_i for phi and for each map in ``maps``.

    ``coderivations[i]`` and ``derivations[i]`` are paired; ``equal(a, b)``
    compares target values.  Returns a report listing every violation.
    """
    report = CompatReport()
    for name, m in [("φ", phi)] + list(maps.items()):
        for delta, d in zip(coderivations, derivations):
            for x in corpus:
                report.checked += 1
                if not equal(d(m(x)), m(delta(x))):
                    report.failures.append((name, delta, x))
    return report
