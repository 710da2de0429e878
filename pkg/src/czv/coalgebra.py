"""The differential coalgebra of coloured lattice cones.

Linear combinations are plain dicts {basis element: Fraction}; tensors are
dicts keyed by pairs.  Zero coefficients are never stored.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb

from .arith import STANDARD, InnerProduct
from .errors import InvalidInputError
from .cones import ZERO, LatticeCone, faces, transverse_cone

__all__ = [
    "ColouredLatticeCone", "UNIT", "coloured", "counit", "coderivation", "coproduct",
    "coproduct_coloured", "reduced_coproduct", "degree", "linear_extend",
    "render_tensor",
]


def _colour(s) -> tuple:
    s = [int(x) for x in s]
    while s and s[-1] == 0:
        s.pop()
    return tuple(s)


@dataclass(frozen=True)
class ColouredLatticeCone:
    cone: LatticeCone
    colour: tuple = ()

    def __post_init__(self):
        s = _colour(self.colour)
        if any(x > 0 for x in s):
            raise InvalidInputError(f"colours must be nonpositive, got {self.colour}")
        object.__setattr__(self, "colour", s)

    @property
    def dim(self) -> int:
        return self.cone.dim

    def colour_at(self, i: int) -> int:
        """Entry s_i, 1-based."""
        return self.colour[i - 1] if i <= len(self.colour) else 0

    def __str__(self):
        s = ",".join(str(x) for x in self.colour) or "0"
        return f"({self.cone}; {s})"

    def to_json(self):
        return {"cone": self.cone.to_json(), "colour": list(self.colour)}


UNIT = ColouredLatticeCone(ZERO, ())


def coloured(lc: LatticeCone, s=()) -> ColouredLatticeCone:
    return ColouredLatticeCone(lc, tuple(s))


def counit(x: ColouredLatticeCone) -> Fraction:
    return Fraction(1) if x == UNIT else Fraction(0)


def coderivation(i: int, x: ColouredLatticeCone) -> ColouredLatticeCone:
    """delta_i: lower the i-th colour by one."""
    if i < 1:
        raise InvalidInputError("coderivation index is 1-based")
    s = list(x.colour) + [0] * max(0, i - len(x.colour))
    s[i - 1] -= 1
    return ColouredLatticeCone(x.cone, tuple(s))


def degree(x: ColouredLatticeCone) -> int:
    return x.dim - sum(x.colour)


@lru_cache(maxsize=None)
def _uncoloured(lc: LatticeCone, Q: InnerProduct) -> tuple:
    out = {}
    for F in faces(lc):
        key = (ColouredLatticeCone(transverse_cone(lc, F, Q)), ColouredLatticeCone(F))
        out[key] = out.get(key, 0) + Fraction(1)
    return tuple(out.items())


def coproduct(lc: LatticeCone, Q: InnerProduct = STANDARD) -> dict:
    """Uncoloured coproduct: sum over faces F of t(C,F) (x) F."""
    return dict(_uncoloured(lc, Q))


@lru_cache(maxsize=None)
def _coloured(x: ColouredLatticeCone, Q: InnerProduct) -> tuple:
    s = x.colour
    base = _uncoloured(x.cone, Q)
    out = {}
    # s <= s' <= 0 componentwise: left gets s', right gets s - s'
    for sp in product(*[range(si, 1) for si in s]):
        c = 1
        for si, spi in zip(s, sp):
            c *= comb(-si, -spi)
        rest = tuple(a - b for a, b in zip(s, sp))
        for (t, F), coeff in base:
            key = (ColouredLatticeCone(t.cone, sp), ColouredLatticeCone(F.cone, rest))
            out[key] = out.get(key, 0) + coeff * c
    return tuple((k, v) for k, v in out.items() if v)


def coproduct_coloured(x: ColouredLatticeCone, Q: InnerProduct = STANDARD) -> dict:
    """Delta(C; s) = D_1^{-s_1} ... D_k^{-s_k} Delta(C; 0), in closed form."""
    return dict(_coloured(x, Q))


def reduced_coproduct(x: ColouredLatticeCone, Q: InnerProduct = STANDARD) -> dict:
    return {k: v for k, v in coproduct_coloured(x, Q).items() if UNIT not in k}


def linear_extend(f, combo: dict) -> dict:
    """Apply a basis map (returning a combination) linearly to a combination."""
    out = {}
    for x, c in combo.items():
        for y, d in f(x).items():
            out[y] = out.get(y, 0) + c * d
    return {k: v for k, v in out.items() if v}


def render_tensor(tensor: dict) -> str:
    def name(x):
        return "1" if x == UNIT else str(x)
    lines = []
    for (a, b), c in sorted(tensor.items(), key=lambda kv: (degree(kv[0][0]), str(kv[0]))):
        coeff = "" if c == 1 else f"{c} · "
        lines.append(f"{coeff}{name(a)} ⊗ {name(b)}")
    return "\n".join(lines) if lines else "0"
