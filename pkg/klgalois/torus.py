"""
Torus points s = s1 * phi(v): a finite-order part and a half-integral q-power.

A point is stored by coordinates in X_* tensored with Q: torsion exponents a
in Q/Z and q-exponents m in (1/2)Z, so that for a weight lambda

    lambda(s) = zeta_n^(n <lambda, a>) * v^(2 <lambda, m>).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import TYPE_CHECKING, Any

import sympy

from .exact_field import CyclotomicLaurent, GaloisAutomorphism
from .exceptions import DimensionMismatch, InvalidParameter
from .util import fraction_to_str, lcm_of_denominators, parse_fraction

if TYPE_CHECKING:
    from collections.abc import Iterable, Mapping, Sequence

    from .root_datum import RootDatum, WeylElement


@dataclass(frozen=True)
class TorusPoint:
    """A semisimple element of the dual torus with finite-order compact part."""

    torsion: tuple[Fraction, ...]
    qexp: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        torsion = tuple(parse_fraction(a) % 1 for a in self.torsion)
        qexp = tuple(parse_fraction(m) for m in self.qexp)
        if len(torsion) != len(qexp):
            msg = f"{len(torsion)} torsion exponents but {len(qexp)} q-exponents"
            raise DimensionMismatch(msg)
        for m in qexp:
            if (2 * m).denominator != 1:
                msg = f"q-exponent {m} is not a half-integer"
                raise InvalidParameter(msg)
        object.__setattr__(self, "torsion", torsion)
        object.__setattr__(self, "qexp", qexp)

    @classmethod
    def build(cls, torsion: Iterable[Any] | None = None, qexp: Iterable[Any] | None = None, rank: int | None = None) -> TorusPoint:
        """Either part may be omitted and then defaults to zeros."""
        torsion = list(torsion) if torsion is not None else None
        qexp = list(qexp) if qexp is not None else None
        if rank is None:
            rank = len(torsion) if torsion is not None else len(qexp or [])
        return cls(tuple(torsion if torsion is not None else [0] * rank), tuple(qexp if qexp is not None else [0] * rank))

    @property
    def rank(self) -> int:
        return len(self.torsion)

    @property
    def level(self) -> int:
        """Order of the compact part: the common denominator of the torsion."""
        return lcm_of_denominators(self.torsion)

    def monomial(self, weight: Sequence[int], level: int | None = None) -> tuple[int, int]:
        """(k mod level, e) with weight(s) = zeta_level^k v^e."""
        if len(weight) != self.rank:
            msg = f"weight of rank {len(weight)} at a torus point of rank {self.rank}"
            raise DimensionMismatch(msg)
        level = level or self.level
        angle = sum((x * a for x, a in zip(weight, self.torsion, strict=True)), Fraction(0)) * level
        exponent = sum((x * m for x, m in zip(weight, self.qexp, strict=True)), Fraction(0)) * 2
        if angle.denominator != 1:
            msg = f"level {level} is too small for the torsion {self.torsion}"
            raise InvalidParameter(msg)
        return int(angle) % level, int(exponent)

    def character(self, weight: Sequence[int], level: int | None = None) -> CyclotomicLaurent:
        level = level or self.level
        z, e = self.monomial(weight, level)
        return CyclotomicLaurent.monomial(level, z, e)

    def is_trivial_on(self, weight: Sequence[int]) -> bool:
        """weight(s) == 1 identically."""
        return self.monomial(weight) == (0, 0)

    def galois(self, gamma: GaloisAutomorphism) -> TorusPoint:
        """Twist the compact part: a -> k a mod 1. q-exponents are untouched."""
        level = self.level * gamma.level // gcd(self.level, gamma.level)
        k = gamma.extend(level).exponent
        return TorusPoint(tuple(k * a for a in self.torsion), self.qexp)

    def weyl_translate(self, rd: RootDatum, w: WeylElement) -> TorusPoint:
        """w . s, so that (w lambda)(w s) = lambda(s)."""
        inverse = rd.inverse(w).action
        size = self.rank

        def image(values):
            return tuple(sum((inverse[r][c] * values[r] for r in range(size)), Fraction(0)) for c in range(size))

        return TorusPoint(image(self.torsion), image(self.qexp))

    def compact_part(self) -> TorusPoint:
        return TorusPoint(self.torsion, (Fraction(0),) * self.rank)

    def to_dict(self) -> dict[str, Any]:
        return {
            "torsion": [fraction_to_str(a) for a in self.torsion],
            "qexp": [fraction_to_str(m) for m in self.qexp],
            "level": self.level,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> TorusPoint:
        return cls.build(data.get("torsion"), data.get("qexp"))

    def __str__(self) -> str:
        coords = ", ".join(f"({fraction_to_str(a)}, {fraction_to_str(m)})" for a, m in zip(self.torsion, self.qexp, strict=True))
        return f"s[{coords}]"


def steinberg_point(rd: RootDatum, torsion: Iterable[Any] | None = None) -> TorusPoint:
    """
    The point where every simple root takes the value q.

    Optional torsion must be central, i.e. trivial on every simple root.
    """
    count = rd.semisimple_rank
    if count:
        system = sympy.Matrix(rd.simple_roots)
        rhs = sympy.Matrix([1] * count)
        solution, params = system.gauss_jordan_solve(rhs)
        # free directions are central; fix them to zero
        solution = solution.subs(dict.fromkeys(params, 0))
        qexp = [Fraction(int(x.p), int(x.q)) for x in solution]
    else:
        qexp = [Fraction(0)] * rd.rank
    point = TorusPoint.build(torsion, qexp, rd.rank)
    for root in rd.simple_roots:
        z, _ = point.monomial(root)
        if z:
            msg = f"torsion {point.torsion} is not central: it is nontrivial on the root {root}"
            raise InvalidParameter(msg)
    return point
