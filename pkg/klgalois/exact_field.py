"""
Exact arithmetic in cyclotomic fields Q(zeta_n) and in Q(zeta_n)(v).

v stands for q^(1/2) and is never given a numeric value inside the exact
engine. Numbers of Q(zeta_n) are stored as rational coefficient vectors in the
power basis 1, zeta, ..., zeta^(phi(n)-1), i.e. reduced modulo the n-th
cyclotomic polynomial, so equality is a tuple comparison.

Three value types live here:

- CyclotomicNumber: an element of Q(zeta_n).
- RatFun: an element of Q(zeta_n)(v) in reduced form, monic denominator.
- CyclotomicLaurent: a sparse element of the group ring Z[mu_n][v, 1/v],
  which is what torus characters lambda(s) = zeta^k v^e multiply into.
  The formal-degree engine does its bulk work here and converts to RatFun
  once at the end.
"""

from __future__ import annotations

import cmath
import operator
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, pi
from typing import TYPE_CHECKING, Any

import numpy as np
import sympy

from .exceptions import InvalidGaloisAutomorphism, PoleError
from .util import exact_sqrt, fraction_to_str, parse_fraction, units_mod

if TYPE_CHECKING:
    from collections.abc import Callable, Iterable, Mapping, Sequence

_X = sympy.Symbol("x")
_ZERO = Fraction(0)
_ONE = Fraction(1)


@lru_cache(64)
def cyclotomic_coefficients(level: int) -> tuple[int, ...]:
    """Coefficients of the level-th cyclotomic polynomial, constant term first."""
    poly = sympy.Poly(sympy.cyclotomic_poly(level, _X), _X)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


@lru_cache(64)
def field_degree(level: int) -> int:
    return int(sympy.totient(level))


def _reduce(values: list[Fraction], level: int) -> tuple[Fraction, ...]:
    """Reduce a coefficient list modulo Phi_level, returning exactly phi(level) entries."""
    phi = cyclotomic_coefficients(level)
    degree = len(phi) - 1
    for top in range(len(values) - 1, degree - 1, -1):
        lead = values[top]
        if lead:
            base = top - degree
            # x^degree == -sum(phi[j] x^j) for j < degree
            for j in range(degree):
                if phi[j]:
                    values[base + j] -= lead * phi[j]
    out = values[:degree]
    if len(out) < degree:
        out.extend([_ZERO] * (degree - len(out)))
    return tuple(out)


@lru_cache(64)
def power_basis(level: int) -> tuple[tuple[int, ...], ...]:
    """Row k is zeta_level^k written in the power basis (always integral)."""
    rows = []
    for k in range(level):
        values = [_ZERO] * k + [_ONE]
        rows.append(tuple(int(c) for c in _reduce(values, level)))
    return tuple(rows)


class CyclotomicNumber:
    """An exact element of Q(zeta_n)."""

    __slots__ = ("coeffs", "level")
    # Equality is across levels (zeta_3 == zeta_6^2), so no hash.
    __hash__ = None

    level: int
    coeffs: tuple[Fraction, ...]

    def __init__(self, level: int, coeffs: Iterable[Any] = ()) -> None:
        if level < 1:
            msg = f"cyclotomic level must be positive, got {level}"
            raise ValueError(msg)
        self.level = level
        self.coeffs = _reduce([parse_fraction(c) for c in coeffs], level)

    @classmethod
    def _raw(cls, level: int, coeffs: tuple[Fraction, ...]) -> CyclotomicNumber:
        new = object.__new__(cls)
        new.level = level
        new.coeffs = coeffs
        return new

    @classmethod
    def zeta(cls, level: int, power: int = 1) -> CyclotomicNumber:
        """zeta_level ** power."""
        row = power_basis(level)[power % level]
        return cls._raw(level, tuple(Fraction(c) for c in row))

    @classmethod
    def from_rational(cls, value, level: int = 1) -> CyclotomicNumber:
        coeffs = [_ZERO] * field_degree(level)
        coeffs[0] = parse_fraction(value)
        return cls._raw(level, tuple(coeffs))

    @classmethod
    def zero(cls, level: int = 1) -> CyclotomicNumber:
        return cls._raw(level, (_ZERO,) * field_degree(level))

    @classmethod
    def one(cls, level: int = 1) -> CyclotomicNumber:
        return cls.from_rational(1, level)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def lift(self, level: int) -> CyclotomicNumber:
        """The same number, written at a level that is a multiple of ours."""
        if level == self.level:
            return self
        if level % self.level:
            msg = f"cannot lift level {self.level} to level {level}"
            raise ValueError(msg)
        step = level // self.level
        basis = power_basis(level)
        out = [_ZERO] * field_degree(level)
        for j, c in enumerate(self.coeffs):
            if c:
                for t, b in enumerate(basis[(j * step) % level]):
                    if b:
                        out[t] += c * b
        return CyclotomicNumber._raw(level, tuple(out))

    @staticmethod
    def _coerce(other) -> CyclotomicNumber | None:
        if isinstance(other, CyclotomicNumber):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return CyclotomicNumber.from_rational(other)
        return None

    def _common(self, other: CyclotomicNumber) -> tuple[CyclotomicNumber, CyclotomicNumber]:
        if other.level == self.level:
            return self, other
        level = self.level * other.level // gcd(self.level, other.level)
        return self.lift(level), other.lift(level)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._common(other)
        return CyclotomicNumber._raw(a.level, tuple(x + y for x, y in zip(a.coeffs, b.coeffs, strict=True)))

    __radd__ = __add__

    def __neg__(self) -> CyclotomicNumber:
        return CyclotomicNumber._raw(self.level, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._common(other)
        if len(a.coeffs) == 1:
            return CyclotomicNumber._raw(a.level, (a.coeffs[0] * b.coeffs[0],))
        prod = [_ZERO] * (2 * len(a.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return CyclotomicNumber._raw(a.level, _reduce(prod, a.level))

    __rmul__ = __mul__

    def inverse(self) -> CyclotomicNumber:
        if self.is_zero():
            msg = "division by zero in Q(zeta_n)"
            raise ZeroDivisionError(msg)
        if len(self.coeffs) == 1:
            return CyclotomicNumber._raw(self.level, (1 / self.coeffs[0],))
        modulus = sympy.Poly(list(reversed(cyclotomic_coefficients(self.level))), _X, domain=sympy.QQ)
        element = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(self.coeffs)], _X, domain=sympy.QQ)
        inv = sympy.invert(element, modulus)
        values = [Fraction(int(c.p), int(c.q)) for c in reversed(inv.all_coeffs())]
        return CyclotomicNumber._raw(self.level, _reduce(values, self.level))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int) -> CyclotomicNumber:
        base = self if exponent >= 0 else self.inverse()
        result = CyclotomicNumber.one(self.level)
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def galois(self, gamma: GaloisAutomorphism) -> CyclotomicNumber:
        """Apply zeta_n -> zeta_n^k. gamma.level has to be a multiple of our level."""
        if gamma.level % self.level:
            msg = f"automorphism of level {gamma.level} does not act on Q(zeta_{self.level})"
            raise InvalidGaloisAutomorphism(msg)
        # zeta_N^(N/n) -> zeta_N^(kN/n) is zeta_n -> zeta_n^(k mod n), so stay at our level
        return self._power_map(gamma.exponent % self.level)

    def _power_map(self, k: int) -> CyclotomicNumber:
        if len(self.coeffs) == 1 or k % self.level == 1 % self.level:
            return self
        basis = power_basis(self.level)
        out = [_ZERO] * len(self.coeffs)
        for j, c in enumerate(self.coeffs):
            if c:
                for t, b in enumerate(basis[(j * k) % self.level]):
                    if b:
                        out[t] += c * b
        return CyclotomicNumber._raw(self.level, tuple(out))

    def conjugate(self) -> CyclotomicNumber:
        return self._power_map(-1)

    def rational_part(self) -> Fraction | None:
        """The rational value if we are fixed by every automorphism, else None."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def float_embed(self, k: int = 1) -> complex:
        """Numeric value under zeta_n -> exp(2 pi i k / n)."""
        total = 0j
        for j, c in enumerate(self.coeffs):
            if c:
                total += float(c) * cmath.exp(2j * pi * j * k / self.level)
        return total

    def to_dict(self) -> dict[str, Any]:
        return {"n": self.level, "coeffs": [fraction_to_str(c) for c in self.coeffs]}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> CyclotomicNumber:
        return cls(int(data["n"]), data["coeffs"])

    def __repr__(self) -> str:
        return f"CyclotomicNumber({self.level}, [{', '.join(fraction_to_str(c) for c in self.coeffs)}])"

    def __str__(self) -> str:
        parts = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            if j == 0:
                parts.append(fraction_to_str(c))
            else:
                power = f"z{self.level}" if j == 1 else f"z{self.level}^{j}"
                parts.append(power if c == 1 else f"{fraction_to_str(c)}*{power}")
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class GaloisAutomorphism:
    """
    The automorphism zeta_n -> zeta_n^k of Q(zeta_n).

    This is all of Aut(C) that finite-order torus data can see. v = q^(1/2)
    is always fixed.
    """

    level: int
    exponent: int

    def __post_init__(self) -> None:
        if self.level < 1:
            msg = f"level must be positive, got {self.level}"
            raise InvalidGaloisAutomorphism(msg)
        exponent = self.exponent % self.level if self.level > 1 else 1
        if gcd(exponent, self.level) != 1:
            msg = f"exponent {self.exponent} is not a unit mod {self.level}"
            raise InvalidGaloisAutomorphism(msg)
        object.__setattr__(self, "exponent", exponent)

    @property
    def is_conjugation(self) -> bool:
        return (self.exponent + 1) % self.level == 0

    @property
    def is_identity(self) -> bool:
        return self.exponent % self.level == 1 % self.level

    @classmethod
    def conjugation(cls, level: int) -> GaloisAutomorphism:
        return cls(level, level - 1)

    @classmethod
    def all_for_level(cls, level: int) -> list[GaloisAutomorphism]:
        return [cls(level, k) for k in units_mod(level)]

    def extend(self, level: int) -> GaloisAutomorphism:
        """Some automorphism of Q(zeta_level) restricting to us on Q(zeta_n)."""
        if level % self.level:
            msg = f"cannot extend level {self.level} to level {level}"
            raise InvalidGaloisAutomorphism(msg)
        candidate = self.exponent
        while gcd(candidate, level) != 1:
            candidate += self.level
        return GaloisAutomorphism(level, candidate)

    def compose(self, other: GaloisAutomorphism) -> GaloisAutomorphism:
        """self after other."""
        level = self.level * other.level // gcd(self.level, other.level)
        a, b = self.extend(level), other.extend(level)
        return GaloisAutomorphism(level, a.exponent * b.exponent)

    __matmul__ = compose

    def inverse(self) -> GaloisAutomorphism:
        if self.level == 1:
            return self
        return GaloisAutomorphism(self.level, pow(self.exponent, -1, self.level))

    def __call__(self, value):
        return value.galois(self)

    def to_dict(self) -> dict[str, int]:
        return {"n": self.level, "k": self.exponent}

    def __str__(self) -> str:
        return f"({self.level},{self.exponent})"


# Dense polynomials in v over Q(zeta_n): lists of CyclotomicNumber, constant first,
# all at the same level, no trailing zeros.


def _trim(poly: list[CyclotomicNumber]) -> list[CyclotomicNumber]:
    while poly and poly[-1].is_zero():
        poly.pop()
    return poly


def _poly_add(a, b, level):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] = out[i] + y
    return _trim(out)


def _poly_mul(a, b, level):
    if not a or not b:
        return []
    out = [CyclotomicNumber.zero(level)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
    return _trim(out)


def _poly_scale(a, c):
    return _trim([x * c for x in a])


def _poly_divmod(a, b):
    """Long division. b must be nonzero; cheapest when b is monic."""
    lead = b[-1]
    lead_inv = None if lead == 1 else lead.inverse()
    rem = list(a)
    if len(a) < len(b):
        return [], _trim(rem)
    quot = [None] * (len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = rem[i + len(b) - 1]
        if lead_inv is not None:
            c = c * lead_inv
        quot[i] = c
        if c:
            for j, y in enumerate(b):
                if y:
                    rem[i + j] = rem[i + j] - c * y
    return _trim(quot), _trim(rem[: len(b) - 1])


def _monic(a):
    lead = a[-1]
    if lead == 1:
        return a
    return _poly_scale(a, lead.inverse())


def _poly_gcd(a, b):
    """Monic gcd by Euclid with monic remainders."""
    if len(a) < len(b):
        a, b = b, a
    a = _monic(a) if a else a
    while b:
        b = _monic(b)
        _, r = _poly_divmod(a, b)
        a, b = b, r
    return a


def _evaluate_poly(poly, value):
    total = None
    for c in reversed(poly):
        total = c if total is None else total * value + c
    return total


class RatFun:
    """
    An element of Q(zeta_n)(v) in canonical form.

    numerator and denominator are coprime polynomials in v (constant term
    first) with coefficients at a common level, and the denominator is monic.
    Two RatFuns with equal values are structurally equal once written at the
    same level.
    """

    __slots__ = ("denominator", "level", "numerator")
    __hash__ = None

    level: int
    numerator: tuple[CyclotomicNumber, ...]
    denominator: tuple[CyclotomicNumber, ...]

    def __init__(self, numerator: Sequence[Any] = (0,), denominator: Sequence[Any] = (1,), level: int | None = None):
        num = [_as_cyclotomic(c) for c in numerator]
        den = [_as_cyclotomic(c) for c in denominator]
        if level is None:
            level = 1
            for c in (*num, *den):
                level = level * c.level // gcd(level, c.level)
        self._set(*_canonical(level, [c.lift(level) for c in num], [c.lift(level) for c in den]))

    def _set(self, level, num, den) -> None:
        self.level = level
        self.numerator = tuple(num)
        self.denominator = tuple(den)

    @classmethod
    def _make(cls, level: int, num: list, den: list, *, reduced: bool = False) -> RatFun:
        new = object.__new__(cls)
        if reduced:
            new._set(level, num, den)
        else:
            new._set(*_canonical(level, num, den))
        return new

    @classmethod
    def constant(cls, value, level: int = 1) -> RatFun:
        return cls([_as_cyclotomic(value).lift(level)], level=level)

    @classmethod
    def v(cls, level: int = 1) -> RatFun:
        return cls._make(level, [CyclotomicNumber.zero(level), CyclotomicNumber.one(level)], [CyclotomicNumber.one(level)], reduced=True)

    @classmethod
    def from_laurent(cls, numerator: Mapping[int, Any], denominator: Mapping[int, Any] | None = None, level: int = 1) -> RatFun:
        """Build from {v-exponent: coefficient} maps; negative exponents allowed."""
        num = {e: _as_cyclotomic(c).lift(level) for e, c in numerator.items()}
        num = {e: c for e, c in num.items() if c}
        if denominator is None:
            denominator = {0: 1}
        den = {e: _as_cyclotomic(c).lift(level) for e, c in denominator.items()}
        den = {e: c for e, c in den.items() if c}
        if not den:
            msg = "zero denominator"
            raise ZeroDivisionError(msg)
        if not num:
            return cls._make(level, [], [CyclotomicNumber.one(level)], reduced=True)
        low_num, low_den = min(num), min(den)
        num_poly = _dense(num, low_num, level)
        den_poly = _dense(den, low_den, level)
        shift = low_num - low_den
        zero = CyclotomicNumber.zero(level)
        if shift > 0:
            num_poly = [zero] * shift + num_poly
        elif shift < 0:
            den_poly = [zero] * (-shift) + den_poly
        return cls._make(level, num_poly, den_poly)

    def is_zero(self) -> bool:
        return not self.numerator

    def __bool__(self) -> bool:
        return bool(self.numerator)

    def lift(self, level: int) -> RatFun:
        if level == self.level:
            return self
        return RatFun._make(
            level,
            [c.lift(level) for c in self.numerator],
            [c.lift(level) for c in self.denominator],
            reduced=True,
        )

    @staticmethod
    def _coerce(other) -> RatFun | None:
        if isinstance(other, RatFun):
            return other
        if isinstance(other, CyclotomicNumber):
            return RatFun.constant(other, other.level)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return RatFun.constant(other)
        return None

    def _common(self, other: RatFun) -> tuple[RatFun, RatFun]:
        if self.level == other.level:
            return self, other
        level = self.level * other.level // gcd(self.level, other.level)
        return self.lift(level), other.lift(level)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._common(other)
        level = a.level
        if a.denominator == b.denominator:
            return RatFun._make(level, _poly_add(list(a.numerator), list(b.numerator), level), list(a.denominator))
        num = _poly_add(
            _poly_mul(a.numerator, b.denominator, level),
            _poly_mul(b.numerator, a.denominator, level),
            level,
        )
        return RatFun._make(level, num, _poly_mul(a.denominator, b.denominator, level))

    __radd__ = __add__

    def __neg__(self) -> RatFun:
        return RatFun._make(self.level, [-c for c in self.numerator], list(self.denominator), reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._common(other)
        level = a.level
        return RatFun._make(
            level,
            _poly_mul(a.numerator, b.numerator, level),
            _poly_mul(a.denominator, b.denominator, level),
        )

    __rmul__ = __mul__

    def inverse(self) -> RatFun:
        if self.is_zero():
            msg = "division by the zero rational function"
            raise ZeroDivisionError(msg)
        return RatFun._make(self.level, list(self.denominator), list(self.numerator))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int) -> RatFun:
        base = self if exponent >= 0 else self.inverse()
        result = RatFun.constant(1, self.level)
        for _ in range(abs(exponent)):
            result = result * base
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._common(other)
        return (
            len(a.numerator) == len(b.numerator)
            and len(a.denominator) == len(b.denominator)
            and all(x.coeffs == y.coeffs for x, y in zip(a.numerator, b.numerator, strict=True))
            and all(x.coeffs == y.coeffs for x, y in zip(a.denominator, b.denominator, strict=True))
        )

    def conjugate(self) -> RatFun:
        """Complex conjugation on coefficients; v is real and stays fixed."""
        return RatFun._make(
            self.level,
            [c.conjugate() for c in self.numerator],
            [c.conjugate() for c in self.denominator],
            reduced=True,
        )

    def galois(self, gamma: GaloisAutomorphism) -> RatFun:
        """Coefficientwise action with v fixed. Preserves canonical form."""
        return RatFun._make(
            self.level,
            [c.galois(gamma) for c in self.numerator],
            [c.galois(gamma) for c in self.denominator],
            reduced=True,
        )

    def is_conjugation_fixed(self) -> bool:
        return self == self.conjugate()

    def has_rational_coefficients(self) -> bool:
        return all(c.rational_part() is not None for c in (*self.numerator, *self.denominator))

    def only_even_powers(self) -> bool:
        return not any(c for c in self.numerator[1::2]) and not any(c for c in self.denominator[1::2])

    def evaluate(self, value) -> CyclotomicNumber:
        """Exact value at v = value (a rational or a CyclotomicNumber)."""
        value = _as_cyclotomic(value)
        den = _evaluate_poly(self.denominator, value)
        if den.is_zero():
            msg = f"v = {value} is a pole"
            raise PoleError(msg)
        if not self.numerator:
            return CyclotomicNumber.zero(self.level)
        return _evaluate_poly(self.numerator, value) / den

    def evaluate_at_q(self, q0) -> CyclotomicNumber | None:
        """
        Exact value at v^2 = q0, when it can be had without square roots.

        That is when q0 is a rational square, or when only even powers of v
        appear. Otherwise None; use float_embed.
        """
        q0 = parse_fraction(q0)
        root = exact_sqrt(q0)
        if root is not None:
            return self.evaluate(root)
        if not self.only_even_powers():
            return None
        den = _evaluate_poly(list(self.denominator[::2]), CyclotomicNumber.from_rational(q0))
        if den.is_zero():
            msg = f"q = {q0} is a pole"
            raise PoleError(msg)
        if not self.numerator:
            return CyclotomicNumber.zero(self.level)
        return _evaluate_poly(list(self.numerator[::2]), CyclotomicNumber.from_rational(q0)) / den

    def float_embed(self, v0: float, k: int = 1) -> complex:
        """Numeric value at v = v0 under zeta_n -> exp(2 pi i k / n)."""
        den = _float_horner(self.denominator, v0, k)
        scale = sum(abs(c.float_embed(k)) * abs(v0) ** i for i, c in enumerate(self.denominator))
        if den == 0 or abs(den) <= 1e-14 * scale:
            msg = f"v = {v0} is (numerically) a pole"
            raise PoleError(msg)
        return _float_horner(self.numerator, v0, k) / den

    def to_dict(self) -> dict[str, Any]:
        return {
            "level": self.level,
            "numerator": [c.to_dict()["coeffs"] for c in self.numerator],
            "denominator": [c.to_dict()["coeffs"] for c in self.denominator],
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> RatFun:
        level = int(data["level"])
        return cls(
            [CyclotomicNumber(level, c) for c in data["numerator"]] or [0],
            [CyclotomicNumber(level, c) for c in data["denominator"]],
            level=level,
        )

    def __repr__(self) -> str:
        return f"RatFun(level={self.level}, {self})"

    def __str__(self) -> str:
        num = _poly_str(self.numerator)
        if len(self.denominator) == 1:
            return num
        return f"({num})/({_poly_str(self.denominator)})"


def _as_cyclotomic(value) -> CyclotomicNumber:
    if isinstance(value, CyclotomicNumber):
        return value
    return CyclotomicNumber.from_rational(value)


def _dense(terms: Mapping[int, CyclotomicNumber], low: int, level: int) -> list[CyclotomicNumber]:
    out = [CyclotomicNumber.zero(level)] * (max(terms) - low + 1)
    for e, c in terms.items():
        out[e - low] = c
    return out


def _canonical(level: int, num: list, den: list):
    num, den = _trim(list(num)), _trim(list(den))
    if not den:
        msg = "zero denominator"
        raise ZeroDivisionError(msg)
    if not num:
        return level, [], [CyclotomicNumber.one(level)]
    # common powers of v first, they are free
    low = 0
    while num[low].is_zero() and den[low].is_zero():
        low += 1
    num, den = num[low:], den[low:]
    if len(den) > 1:
        g = _poly_gcd(list(num), list(den))
        if len(g) > 1:
            num, rest = _poly_divmod(num, g)
            den, rest_den = _poly_divmod(den, g)
            if rest or rest_den:
                msg = "gcd does not divide"
                raise ArithmeticError(msg)
    lead = den[-1]
    if not lead == 1:
        inv = lead.inverse()
        num = [c * inv for c in num]
        den = [c * inv for c in den]
    return level, num, den


def _float_horner(poly, v0: float, k: int) -> complex:
    total = 0j
    for c in reversed(poly):
        total = total * v0 + c.float_embed(k)
    return total


def _poly_str(poly) -> str:
    parts = []
    for i, c in enumerate(poly):
        if not c:
            continue
        text = str(c)
        if " + " in text:
            text = f"({text})"
        if i == 0:
            parts.append(text)
        else:
            power = "v" if i == 1 else f"v^{i}"
            parts.append(power if text == "1" else f"{text}*{power}")
    return " + ".join(parts) if parts else "0"


class CyclotomicLaurent:
    """
    A sparse element of the group ring Z[mu_n][v, 1/v].

    Keys are (root-of-unity exponent mod n, v-exponent) and values are
    integers. Nothing is reduced modulo Phi_n here, so equality is equality
    in the group ring, which is finer than equality of values. Use
    to_ratfun() when values have to be compared.
    """

    __slots__ = ("level", "terms")
    __hash__ = None

    def __init__(self, level: int, terms: Mapping[tuple[int, int], int] | None = None) -> None:
        self.level = level
        clean: dict[tuple[int, int], int] = defaultdict(int)
        for (z, e), c in (terms or {}).items():
            clean[(z % level, e)] += c
        self.terms = {key: c for key, c in clean.items() if c}

    @classmethod
    def _raw(cls, level: int, terms: dict) -> CyclotomicLaurent:
        new = object.__new__(cls)
        new.level = level
        new.terms = terms
        return new

    @classmethod
    def one(cls, level: int) -> CyclotomicLaurent:
        return cls._raw(level, {(0, 0): 1})

    @classmethod
    def monomial(cls, level: int, z: int, e: int, coeff: int = 1) -> CyclotomicLaurent:
        return cls._raw(level, {(z % level, e): coeff} if coeff else {})

    @classmethod
    def from_q_polynomial(cls, level: int, coefficients: Sequence[int]) -> CyclotomicLaurent:
        """sum c_j q^j with q = v^2."""
        return cls._raw(level, {(0, 2 * j): c for j, c in enumerate(coefficients) if c})

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: CyclotomicLaurent) -> None:
        if other.level != self.level:
            msg = f"group ring levels differ: {self.level} vs {other.level}"
            raise ValueError(msg)

    def __add__(self, other: CyclotomicLaurent) -> CyclotomicLaurent:
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            value = out.get(key, 0) + c
            if value:
                out[key] = value
            else:
                out.pop(key, None)
        return CyclotomicLaurent._raw(self.level, out)

    def __neg__(self) -> CyclotomicLaurent:
        return CyclotomicLaurent._raw(self.level, {key: -c for key, c in self.terms.items()})

    def __sub__(self, other: CyclotomicLaurent) -> CyclotomicLaurent:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        level = self.level
        out: dict[tuple[int, int], int] = defaultdict(int)
        for (z1, e1), c1 in self.terms.items():
            for (z2, e2), c2 in other.terms.items():
                out[((z1 + z2) % level, e1 + e2)] += c1 * c2
        return CyclotomicLaurent._raw(level, {key: c for key, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, factor: int) -> CyclotomicLaurent:
        if not factor:
            return CyclotomicLaurent._raw(self.level, {})
        return CyclotomicLaurent._raw(self.level, {key: c * factor for key, c in self.terms.items()})

    def shift(self, exponent: int) -> CyclotomicLaurent:
        """Multiply by v^exponent."""
        return CyclotomicLaurent._raw(self.level, {(z, e + exponent): c for (z, e), c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, CyclotomicLaurent):
            return NotImplemented
        return self.level == other.level and self.terms == other.terms

    def conjugate(self) -> CyclotomicLaurent:
        return self._power_map(-1)

    def galois(self, gamma: GaloisAutomorphism) -> CyclotomicLaurent:
        if gamma.level % self.level:
            msg = f"automorphism of level {gamma.level} does not act on level {self.level}"
            raise InvalidGaloisAutomorphism(msg)
        return self._power_map(gamma.exponent)

    def _power_map(self, k: int) -> CyclotomicLaurent:
        out: dict[tuple[int, int], int] = defaultdict(int)
        for (z, e), c in self.terms.items():
            out[((z * k) % self.level, e)] += c
        return CyclotomicLaurent._raw(self.level, dict(out))

    def v_range(self) -> tuple[int, int]:
        exps = [e for _, e in self.terms]
        return min(exps), max(exps)

    def field_coefficients(self) -> dict[int, CyclotomicNumber]:
        """Collapse to {v-exponent: element of Q(zeta_n)}."""
        basis = power_basis(self.level)
        width = field_degree(self.level)
        rows: dict[int, list[int]] = {}
        for (z, e), c in self.terms.items():
            row = rows.setdefault(e, [0] * width)
            for t, b in enumerate(basis[z]):
                if b:
                    row[t] += c * b
        return {
            e: CyclotomicNumber._raw(self.level, tuple(Fraction(x) for x in row))
            for e, row in rows.items()
            if any(row)
        }

    def to_ratfun(self, denominator: CyclotomicLaurent | None = None) -> RatFun:
        den = None if denominator is None else denominator.field_coefficients()
        return RatFun.from_laurent(self.field_coefficients(), den, level=self.level)

    def float_embed(self, v0: float, k: int = 1) -> complex:
        total = 0j
        for (z, e), c in self.terms.items():
            total += c * cmath.exp(2j * pi * z * k / self.level) * v0**e
        return total

    def __repr__(self) -> str:
        return f"CyclotomicLaurent({self.level}, {dict(sorted(self.terms.items()))})"


def convolve_sum(pairs: Iterable[tuple[CyclotomicLaurent, CyclotomicLaurent]], level: int) -> CyclotomicLaurent:
    """
    sum(a * b for a, b in pairs), done with dense numpy convolutions.

    Each factor is packed into one integer array: slot (e - e_min) * 2n + z.
    Root-of-unity exponents of a product are below 2n, so they never carry
    into the v-slot and one 1-D convolution multiplies both variables.
    """
    pairs = [(a, b) for a, b in pairs if a.terms and b.terms]
    if not pairs:
        return CyclotomicLaurent._raw(level, {})
    magnitude = sum(sum(map(abs, a.terms.values())) * sum(map(abs, b.terms.values())) for a, b in pairs)
    if magnitude >= 2**62:
        # int64 would overflow; stay with Python integers
        total = CyclotomicLaurent._raw(level, {})
        for a, b in pairs:
            total = total + a * b
        return total
    a_low = min(a.v_range()[0] for a, _ in pairs)
    a_high = max(a.v_range()[1] for a, _ in pairs)
    b_low = min(b.v_range()[0] for _, b in pairs)
    b_high = max(b.v_range()[1] for _, b in pairs)
    width = 2 * level
    a_len = (a_high - a_low + 1) * width
    b_len = (b_high - b_low + 1) * width
    total = np.zeros(a_len + b_len - 1, dtype=np.int64)
    for a, b in pairs:
        total += np.convolve(_pack(a, a_low, width, a_len), _pack(b, b_low, width, b_len))
    out: dict[tuple[int, int], int] = defaultdict(int)
    for idx in np.flatnonzero(total):
        e = int(idx) // width + a_low + b_low
        z = (int(idx) % width) % level
        out[(z, e)] += int(total[idx])
    return CyclotomicLaurent._raw(level, {key: c for key, c in out.items() if c})


def _pack(element: CyclotomicLaurent, low: int, width: int, length: int) -> np.ndarray:
    dense = np.zeros(length, dtype=np.int64)
    for (z, e), c in element.terms.items():
        dense[(e - low) * width + z] += c
    return dense


_OPS: dict[str, Callable[[Any, Any], Any]] = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}


def cyclo_arith(a: CyclotomicNumber, b: CyclotomicNumber, op: str) -> CyclotomicNumber:
    """Field arithmetic; levels are lifted to their lcm."""
    return _OPS[op](a, b)


def galois_apply(gamma: GaloisAutomorphism, a: CyclotomicNumber) -> CyclotomicNumber:
    return a.galois(gamma)


def rational_part(a: CyclotomicNumber) -> Fraction | None:
    return a.rational_part()


def ratfun_arith(f: RatFun, g: RatFun, op: str) -> RatFun:
    return _OPS[op](f, g)


def ratfun_conjugate(f: RatFun) -> RatFun:
    return f.conjugate()


def ratfun_galois(gamma: GaloisAutomorphism, f: RatFun) -> RatFun:
    return f.galois(gamma)


def float_embed(x: CyclotomicNumber | RatFun | CyclotomicLaurent, v0: float = 1.0, k: int = 1) -> complex:
    """Numeric embedding zeta_n -> exp(2 pi i k / n), v -> v0."""
    if isinstance(x, CyclotomicNumber):
        return x.float_embed(k)
    return x.float_embed(v0, k)
