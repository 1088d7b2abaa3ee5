"""
Laurent polynomials in v and in the weight lattice.

IntLaurent is Z[v, 1/v]. WeightPolynomial is Z[v, 1/v][X*], the group ring of
the weight lattice, which is where Bernstein's theta elements and the
W-symmetrized numerators of the M-function live.
"""

from __future__ import annotations

from collections import defaultdict
from typing import TYPE_CHECKING, Any

from .exact_field import CyclotomicLaurent
from .exceptions import DimensionMismatch, EngineDefect

if TYPE_CHECKING:
    from collections.abc import Iterable, Mapping, Sequence

    from .root_datum import WeylElement
    from .torus import TorusPoint

Weight = tuple[int, ...]


class IntLaurent:
    """A Laurent polynomial in v with integer coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, int] | None = None) -> None:
        self.terms: dict[int, int] = {int(e): int(c) for e, c in (terms or {}).items() if c}

    @classmethod
    def _raw(cls, terms: dict[int, int]) -> IntLaurent:
        new = object.__new__(cls)
        new.terms = terms
        return new

    @classmethod
    def constant(cls, value: int) -> IntLaurent:
        return cls._raw({0: value} if value else {})

    @classmethod
    def q_minus_one(cls) -> IntLaurent:
        return cls._raw({2: 1, 0: -1})

    @classmethod
    def q(cls) -> IntLaurent:
        return cls._raw({2: 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: IntLaurent) -> IntLaurent:
        out = dict(self.terms)
        for e, c in other.terms.items():
            value = out.get(e, 0) + c
            if value:
                out[e] = value
            else:
                out.pop(e, None)
        return IntLaurent._raw(out)

    def __neg__(self) -> IntLaurent:
        return IntLaurent._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: IntLaurent) -> IntLaurent:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntLaurent._raw({e: c * other for e, c in self.terms.items()} if other else {})
        out: dict[int, int] = defaultdict(int)
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] += c1 * c2
        return IntLaurent._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntLaurent.constant(other)
        if not isinstance(other, IntLaurent):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def at_one(self) -> int:
        """The specialization v = 1."""
        return sum(self.terms.values())

    def to_list(self) -> list[list[int]]:
        """[[exponent, coefficient], ...] in increasing exponent."""
        return [[e, self.terms[e]] for e in sorted(self.terms)]

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            parts.append(f"{c}" if e == 0 else f"{c}*v^{e}")
        return " + ".join(parts)


class WeightPolynomial:
    """
    A finite sum of c_lambda * x^lambda with c_lambda in Z[v, 1/v].

    Zero coefficients are never stored.
    """

    __slots__ = ("rank", "terms")

    def __init__(self, rank: int, terms: Mapping[Sequence[int], IntLaurent | int] | None = None) -> None:
        self.rank = rank
        clean: dict[Weight, IntLaurent] = {}
        for weight, coeff in (terms or {}).items():
            key = tuple(int(x) for x in weight)
            if len(key) != rank:
                msg = f"weight {key} does not have rank {rank}"
                raise DimensionMismatch(msg)
            if isinstance(coeff, int):
                coeff = IntLaurent.constant(coeff)
            total = clean.get(key, IntLaurent()) + coeff
            if total:
                clean[key] = total
            else:
                clean.pop(key, None)
        self.terms = clean

    @classmethod
    def _raw(cls, rank: int, terms: dict[Weight, IntLaurent]) -> WeightPolynomial:
        new = object.__new__(cls)
        new.rank = rank
        new.terms = terms
        return new

    @classmethod
    def monomial(cls, weight: Sequence[int], coeff: IntLaurent | int = 1) -> WeightPolynomial:
        return cls(len(weight), {tuple(weight): coeff})

    @classmethod
    def one(cls, rank: int) -> WeightPolynomial:
        return cls._raw(rank, {(0,) * rank: IntLaurent.constant(1)})

    @classmethod
    def binomial(cls, beta: Sequence[int], coeff: IntLaurent | int = 1) -> WeightPolynomial:
        """1 - coeff * x^beta."""
        rank = len(beta)
        return cls.one(rank) - cls.monomial(beta, coeff)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _check(self, other: WeightPolynomial) -> None:
        if other.rank != self.rank:
            msg = f"weight polynomials of rank {self.rank} and {other.rank}"
            raise DimensionMismatch(msg)

    def __add__(self, other: WeightPolynomial) -> WeightPolynomial:
        self._check(other)
        out = dict(self.terms)
        for weight, coeff in other.terms.items():
            total = out[weight] + coeff if weight in out else coeff
            if total:
                out[weight] = total
            else:
                out.pop(weight, None)
        return WeightPolynomial._raw(self.rank, out)

    def __neg__(self) -> WeightPolynomial:
        return WeightPolynomial._raw(self.rank, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: WeightPolynomial) -> WeightPolynomial:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, IntLaurent)):
            return self.scale(other)
        self._check(other)
        out: dict[Weight, IntLaurent] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(w1, w2, strict=True))
                out[key] = out[key] + c1 * c2 if key in out else c1 * c2
        return WeightPolynomial._raw(self.rank, {w: c for w, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, factor: IntLaurent | int) -> WeightPolynomial:
        out = {w: c * factor for w, c in self.terms.items()}
        return WeightPolynomial._raw(self.rank, {w: c for w, c in out.items() if c})

    def shift(self, weight: Sequence[int]) -> WeightPolynomial:
        """Multiply by x^weight."""
        return WeightPolynomial._raw(
            self.rank,
            {tuple(a + b for a, b in zip(w, weight, strict=True)): c for w, c in self.terms.items()},
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightPolynomial):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    __hash__ = None

    def weyl_apply(self, w: WeylElement) -> WeightPolynomial:
        return WeightPolynomial._raw(self.rank, {w.apply(weight): c for weight, c in self.terms.items()})

    def map_weights(self, func) -> WeightPolynomial:
        out: dict[Weight, IntLaurent] = {}
        for weight, c in self.terms.items():
            key = tuple(func(weight))
            out[key] = out[key] + c if key in out else c
        return WeightPolynomial._raw(self.rank, {w: c for w, c in out.items() if c})

    def at_v_one(self) -> dict[Weight, int]:
        out = {w: c.at_one() for w, c in self.terms.items()}
        return {w: c for w, c in out.items() if c}

    def divide_by_binomial(self, beta: Sequence[int]) -> WeightPolynomial:
        """
        The quotient self / (1 - x^beta), which has to be a Laurent polynomial.

        Works one beta-line (coset lambda + Z beta) at a time: along a line the
        quotient's coefficients are the running sums of ours, and the line
        total has to vanish. A nonzero total raises EngineDefect.
        """
        beta = tuple(beta)
        pivot = next((i for i, b in enumerate(beta) if b), None)
        if pivot is None:
            msg = "division by 1 - x^0"
            raise ZeroDivisionError(msg)
        lines: dict[Weight, dict[int, IntLaurent]] = defaultdict(dict)
        for weight, coeff in self.terms.items():
            t = weight[pivot] // beta[pivot]
            base = tuple(x - t * b for x, b in zip(weight, beta, strict=True))
            lines[base][t] = coeff
        out: dict[Weight, IntLaurent] = {}
        for base, line in lines.items():
            running = IntLaurent()
            positions = sorted(line)
            for t in range(positions[0], positions[-1] + 1):
                running = running + line.get(t, IntLaurent())
                if t == positions[-1]:
                    break
                if running:
                    out[tuple(x + t * b for x, b in zip(base, beta, strict=True))] = running
            if running:
                msg = f"not divisible by 1 - x^{beta}: line through {base} sums to {running}"
                raise EngineDefect(msg)
        return WeightPolynomial._raw(self.rank, out)

    def evaluate(self, point: TorusPoint, level: int | None = None) -> CyclotomicLaurent:
        """Value at a torus point, as an element of Z[mu_n][v, 1/v]."""
        if point.rank != self.rank:
            msg = f"torus point of rank {point.rank} for a weight polynomial of rank {self.rank}"
            raise DimensionMismatch(msg)
        level = level or point.level
        out: dict[tuple[int, int], int] = defaultdict(int)
        for weight, coeff in self.terms.items():
            z, e = point.monomial(weight, level)
            for exp, c in coeff.terms.items():
                out[(z, e + exp)] += c
        return CyclotomicLaurent(level, out)

    def to_list(self) -> list[dict[str, Any]]:
        return [{"lambda": list(w), "coeff": self.terms[w].to_list()} for w in sorted(self.terms)]

    def __repr__(self) -> str:
        return f"WeightPolynomial({self.rank}, {len(self.terms)} terms)"


def orbit_polynomial(weights: Iterable[Sequence[int]], rank: int) -> WeightPolynomial:
    """sum of x^mu over the given weights."""
    return WeightPolynomial(rank, dict.fromkeys((tuple(w) for w in weights), 1))
