"""
The affine Hecke algebra in its Bernstein presentation.

Elements are kept in the normal form sum c * theta_lambda T_w with
c in Z[v, 1/v] and q = v^2. Products are brought back to normal form with

    T_s theta_mu = theta_{s mu} T_s + (q - 1) (theta_mu - theta_{s mu}) / (1 - theta_{-alpha})

whose right side is a finite geometric sum of thetas.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import TYPE_CHECKING, Any

from .const import _LOGGER, MAX_BRAID_RANK
from .exceptions import DimensionMismatch, EngineDefect, InvalidRootDatum, NotInvariant
from .laurent import IntLaurent, WeightPolynomial, orbit_polynomial
from .root_datum import RootDatum, dominant_conjugate, matmul
from .torus import TorusPoint

if TYPE_CHECKING:
    from collections.abc import Iterable, Mapping, Sequence

    from .exact_field import GaloisAutomorphism, RatFun
    from .root_datum import Weight

Key = tuple[tuple[int, ...], tuple[tuple[int, ...], ...]]

_Q = IntLaurent.q()
_Q_MINUS_ONE = IntLaurent.q_minus_one()


def _accumulate(out: dict, key, coeff: IntLaurent) -> None:
    if key in out:
        total = out[key] + coeff
        if total:
            out[key] = total
        else:
            del out[key]
    elif coeff:
        out[key] = coeff


class HeckeElement:
    """An element of H, stored as {(lambda, w.action): coefficient}."""

    __slots__ = ("rd", "terms")
    __hash__ = None

    def __init__(self, rd: RootDatum, terms: Mapping[Key, IntLaurent | int] | None = None) -> None:
        self.rd = rd
        clean: dict[Key, IntLaurent] = {}
        for (weight, action), coeff in (terms or {}).items():
            if isinstance(coeff, int):
                coeff = IntLaurent.constant(coeff)
            _accumulate(clean, (rd.check_weight(weight), action), coeff)
        self.terms = clean

    @classmethod
    def _raw(cls, rd: RootDatum, terms: dict[Key, IntLaurent]) -> HeckeElement:
        new = object.__new__(cls)
        new.rd = rd
        new.terms = terms
        return new

    @classmethod
    def one(cls, rd: RootDatum) -> HeckeElement:
        return cls.theta(rd, (0,) * rd.rank)

    @classmethod
    def theta(cls, rd: RootDatum, weight: Sequence[int], coeff: IntLaurent | int = 1) -> HeckeElement:
        return cls(rd, {(tuple(weight), rd.identity.action): coeff})

    @classmethod
    def T(cls, rd: RootDatum, word: Iterable[int] | int) -> HeckeElement:
        """T_w for the Weyl element with this word (a single index means T_s)."""
        word = (word,) if isinstance(word, int) else tuple(word)
        element = HeckeElement.one(rd)
        for i in word:
            element = element * cls._raw(rd, {((0,) * rd.rank, rd.element_from_word((i,)).action): IntLaurent.constant(1)})
        return element

    @classmethod
    def from_weight_polynomial(cls, rd: RootDatum, f: WeightPolynomial) -> HeckeElement:
        identity = rd.identity.action
        return cls._raw(rd, {(weight, identity): c for weight, c in f.terms.items()})

    def _check(self, other: HeckeElement) -> None:
        if other.rd != self.rd:
            msg = f"cannot combine elements of the Hecke algebras of {self.rd.label} and {other.rd.label}"
            raise InvalidRootDatum(msg)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: HeckeElement) -> HeckeElement:
        self._check(other)
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            _accumulate(out, key, coeff)
        return HeckeElement._raw(self.rd, out)

    def __neg__(self) -> HeckeElement:
        return HeckeElement._raw(self.rd, {key: -c for key, c in self.terms.items()})

    def __sub__(self, other: HeckeElement) -> HeckeElement:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, IntLaurent)):
            out = {key: c * other for key, c in self.terms.items()}
            return HeckeElement._raw(self.rd, {key: c for key, c in out.items() if c})
        return hecke_multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, IntLaurent)):
            return self * other
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.rd == other.rd and self.terms == other.terms

    def specialize(self) -> dict[Key, int]:
        """Image under v -> 1 in the group ring Z[W x X*]."""
        out = {key: c.at_one() for key, c in self.terms.items()}
        return {key: c for key, c in out.items() if c}

    def to_list(self) -> list[dict[str, Any]]:
        rows = []
        for (weight, action), coeff in self.terms.items():
            w = self.rd.weyl_index[action]
            rows.append({"lambda": list(weight), "w_word": list(w.word), "coeff": coeff.to_list()})
        return sorted(rows, key=lambda row: (len(row["w_word"]), row["w_word"], row["lambda"]))

    def __repr__(self) -> str:
        return f"HeckeElement({self.rd.label}, {len(self.terms)} terms)"


@lru_cache(4096)
def cross_quotient(rd: RootDatum, i: int, weight: Weight) -> tuple[tuple[Weight, int], ...]:
    """
    (theta_mu - theta_{s mu}) / (1 - theta_{-alpha}) as ((nu, sign), ...).

    With k = <mu, alpha^vee>: theta_{mu - j alpha} for 0 <= j < k when k > 0,
    and -theta_{mu + j alpha} for 1 <= j <= -k when k < 0. The closed form is
    checked against generic binomial division on first use.
    """
    alpha = rd.simple_roots[i]
    k = sum(x * c for x, c in zip(weight, rd.simple_coroots[i], strict=True))
    if k > 0:
        terms = tuple((tuple(x - j * a for x, a in zip(weight, alpha, strict=True)), 1) for j in range(k))
    else:
        terms = tuple((tuple(x + j * a for x, a in zip(weight, alpha, strict=True)), -1) for j in range(1, -k + 1))
    numerator = WeightPolynomial.monomial(weight) - WeightPolynomial.monomial(rd.reflect(i, weight))
    expected = numerator.divide_by_binomial(tuple(-a for a in alpha))
    if expected != WeightPolynomial(rd.rank, dict(terms)):
        msg = f"closed-form quotient disagrees with binomial division for {weight} and root {alpha}"
        raise EngineDefect(msg)
    return terms


def _left_T(rd: RootDatum, i: int, terms: Mapping[Key, IntLaurent]) -> dict[Key, IntLaurent]:
    """T_s * (sum c theta_mu T_x), back in normal form."""
    out: dict[Key, IntLaurent] = {}
    for (weight, action), coeff in terms.items():
        x = rd.weyl_index[action]
        sx = rd.left_multiply(i, x)
        s_weight = rd.reflect(i, weight)
        if sx.length > x.length:
            _accumulate(out, (s_weight, sx.action), coeff)
        else:
            _accumulate(out, (s_weight, action), coeff * _Q_MINUS_ONE)
            _accumulate(out, (s_weight, sx.action), coeff * _Q)
        if s_weight != weight:
            scaled = coeff * _Q_MINUS_ONE
            for nu, sign in cross_quotient(rd, i, weight):
                _accumulate(out, (nu, action), scaled * sign)
    return out


def hecke_multiply(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    """a * b in normal form."""
    a._check(b)
    rd = a.rd
    out: dict[Key, IntLaurent] = {}
    for (weight, action), coeff in a.terms.items():
        current = b.terms
        for i in reversed(rd.weyl_index[action].word):
            current = _left_T(rd, i, current)
        for (mu, x), c in current.items():
            _accumulate(out, (tuple(p + r for p, r in zip(weight, mu, strict=True)), x), coeff * c)
    return HeckeElement._raw(rd, out)


# Independent models used by the relation harness


def polynomial_action(h: HeckeElement, f: WeightPolynomial) -> WeightPolynomial:
    """
    The polynomial representation on Z[v, 1/v][X*].

    theta_lambda multiplies by x^lambda and
    T_s f = q s(f) + (q - 1) (f - s(f)) / (1 - x^{-alpha}), computed by generic
    binomial division rather than the closed form used for products.
    """
    rd = h.rd
    total = WeightPolynomial(rd.rank)
    for (weight, action), coeff in h.terms.items():
        g = f
        for i in reversed(rd.weyl_index[action].word):
            reflected = g.map_weights(lambda mu, i=i: rd.reflect(i, mu))
            negative = tuple(-a for a in rd.simple_roots[i])
            g = reflected * _Q + (g - reflected).divide_by_binomial(negative) * _Q_MINUS_ONE
        total = total + g.shift(weight) * coeff
    return total


def _group_ring_product(rd: RootDatum, a: Mapping[Key, int], b: Mapping[Key, int]) -> dict[Key, int]:
    """(lambda, w)(mu, x) = (lambda + w mu, w x) in Z[W x X*]."""
    out: dict[Key, int] = {}
    for (weight, action), c1 in a.items():
        w = rd.weyl_index[action]
        for (mu, x), c2 in b.items():
            key = (tuple(p + r for p, r in zip(weight, w.apply(mu), strict=True)), matmul(action, x))
            out[key] = out.get(key, 0) + c1 * c2
    return {key: c for key, c in out.items() if c}


def braid_order(rd: RootDatum, i: int, j: int) -> int:
    """m_ij from the Cartan product a_ij a_ji."""
    cartan = rd.cartan_matrix
    return {0: 2, 1: 3, 2: 4, 3: 6}[cartan[i][j] * cartan[j][i]]


def orbit_sum(rd: RootDatum, weight: Sequence[int]) -> WeightPolynomial:
    """sum of x^mu over the W-orbit of weight; a basis element of the centre."""
    return orbit_polynomial(rd.orbit(weight), rd.rank)


@dataclass
class RelationCheck:
    relation: str
    instance: str
    passed: bool
    witness: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {"relation": self.relation, "instance": self.instance, "passed": self.passed, "witness": self.witness}


@dataclass
class RelationReport:
    label: str
    length_bound: int
    checks: list[RelationCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def counts(self) -> dict[str, dict[str, int]]:
        out: dict[str, dict[str, int]] = {}
        for check in self.checks:
            entry = out.setdefault(check.relation, {"checked": 0, "failed": 0})
            entry["checked"] += 1
            entry["failed"] += 0 if check.passed else 1
        return out

    def add(self, relation: str, instance: str, lhs, rhs) -> None:
        passed = lhs == rhs
        witness = None if passed else f"lhs={_describe(lhs)} rhs={_describe(rhs)}"
        self.checks.append(RelationCheck(relation, instance, passed, witness))

    def to_dict(self) -> dict[str, Any]:
        return {
            "root_datum": self.label,
            "length_bound": self.length_bound,
            "passed": self.passed,
            "counts": self.counts(),
            "checks": [check.to_dict() for check in self.checks],
        }


def _describe(value) -> str:
    if isinstance(value, HeckeElement):
        return str(value.to_list())
    if isinstance(value, WeightPolynomial):
        return str(value.to_list())
    return str(value)


def _box(rank: int, radius: int) -> list[Weight]:
    return [tuple(p) for p in product(range(-radius, radius + 1), repeat=rank)]


def _generators(rd: RootDatum) -> list[tuple[str, HeckeElement]]:
    gens = [(f"T_{i}", HeckeElement.T(rd, i)) for i in range(rd.semisimple_rank)]
    for j in range(rd.rank):
        for sign in (1, -1):
            weight = tuple(sign * int(c == j) for c in range(rd.rank))
            gens.append((f"theta{weight}", HeckeElement.theta(rd, weight)))
    return gens


class RegularMatrix:
    """
    Left multiplication by a fixed element, as a column-finite matrix on the basis theta_lambda T_w.

    Columns are filled in lazily; a product of two matrices is evaluated column by column.
    """

    def __init__(self, h: HeckeElement) -> None:
        self.h = h
        self._columns: dict[Key, dict[Key, IntLaurent]] = {}

    def column(self, key: Key) -> dict[Key, IntLaurent]:
        if key not in self._columns:
            basis = HeckeElement._raw(self.h.rd, {key: IntLaurent.constant(1)})
            self._columns[key] = hecke_multiply(self.h, basis).terms
        return self._columns[key]

    def apply(self, vector: Mapping[Key, IntLaurent]) -> dict[Key, IntLaurent]:
        out: dict[Key, IntLaurent] = {}
        for key, coeff in vector.items():
            for row, entry in self.column(key).items():
                _accumulate(out, row, coeff * entry)
        return out


def _regular_basis(rd: RootDatum) -> list[Key]:
    weights = [(0,) * rd.rank]
    for j in range(rd.rank):
        for sign in (1, -1):
            weights.append(tuple(sign * int(c == j) for c in range(rd.rank)))
    return [(weight, w.action) for weight in weights for w in rd.weyl_elements()]


def verify_relations(rd: RootDatum, length_bound: int) -> RelationReport:
    """
    Check the defining relations on a finite truncation.

    Products are also compared with independent models: the polynomial representation,
    left multiplication matrices on theta_lambda T_w and the v = 1 specialization.

    Failures become report entries; nothing here raises on a failed relation.
    """
    report = RelationReport(rd.label, length_bound)
    count = rd.semisimple_rank
    one = HeckeElement.one(rd)
    gens = {i: HeckeElement.T(rd, i) for i in range(count)}

    for i, t in gens.items():
        report.add("quadratic", f"s{i}", t * t, t * _Q_MINUS_ONE + one * _Q)

    if count > MAX_BRAID_RANK:
        _LOGGER.warning("Skipping braid relations for %s: semisimple rank %d is above %d", rd.label, count, MAX_BRAID_RANK)
    else:
        for i in range(count):
            for j in range(i + 1, count):
                m = braid_order(rd, i, j)
                if m > length_bound:
                    continue
                left = [(i, j)[k % 2] for k in range(m)]
                right = [(j, i)[k % 2] for k in range(m)]
                lhs, rhs = one, one
                for a, b in zip(left, right, strict=True):
                    lhs, rhs = lhs * gens[a], rhs * gens[b]
                report.add("braid", f"s{i},s{j} (m={m})", lhs, rhs)

    small = _box(rd.rank, min(length_bound, 1))
    for weight in small:
        for mu in small:
            sum_weight = tuple(a + b for a, b in zip(weight, mu, strict=True))
            report.add(
                "theta_additivity",
                f"{weight}+{mu}",
                HeckeElement.theta(rd, weight) * HeckeElement.theta(rd, mu),
                HeckeElement.theta(rd, sum_weight),
            )

    box = _box(rd.rank, length_bound)
    for i, t in gens.items():
        negative = tuple(-a for a in rd.simple_roots[i])
        for weight in box:
            s_weight = rd.reflect(i, weight)
            if s_weight == weight:
                continue
            lhs = HeckeElement.theta(rd, weight) * t - t * HeckeElement.theta(rd, s_weight)
            quotient = (WeightPolynomial.monomial(weight) - WeightPolynomial.monomial(s_weight)).divide_by_binomial(negative)
            rhs = HeckeElement.from_weight_polynomial(rd, quotient) * _Q_MINUS_ONE
            report.add("cross", f"s{i}, lambda={weight}", lhs, rhs)

    seen: set[Weight] = set()
    for weight in box:
        dominant = dominant_conjugate(rd, weight) if count else weight
        if dominant in seen:
            continue
        seen.add(dominant)
        z = HeckeElement.from_weight_polynomial(rd, orbit_sum(rd, dominant))
        fixed = all(p == 0 for p in rd.pairings(dominant))
        for i, t in gens.items():
            report.add("centrality", f"orbit sum of {dominant} with s{i}", z * t, t * z)
            if fixed:
                theta = HeckeElement.theta(rd, dominant)
                report.add("centrality", f"W-fixed theta{dominant} with s{i}", theta * t, t * theta)

    named = _generators(rd)
    test_polys = [WeightPolynomial.monomial(mu) for mu in small]
    for (name1, h1), (name2, h2) in product(named, repeat=2):
        prod_element = h1 * h2
        for f in test_polys:
            report.add(
                "representation_model",
                f"{name1}*{name2} on x^{next(iter(f.terms))}",
                polynomial_action(prod_element, f),
                polynomial_action(h1, polynomial_action(h2, f)),
            )
        report.add(
            "specialization",
            f"{name1}*{name2} at v=1",
            prod_element.specialize(),
            _group_ring_product(rd, h1.specialize(), h2.specialize()),
        )

    matrices = {name: RegularMatrix(h) for name, h in named}
    basis = _regular_basis(rd)
    for i in range(count):
        m_t = matrices[f"T_{i}"]
        for key in basis:
            column = {key: IntLaurent.constant(1)}
            expected = HeckeElement._raw(rd, m_t.column(key)) * _Q_MINUS_ONE + HeckeElement._raw(rd, column) * _Q
            report.add("regular_representation", f"T_{i}^2 on {key[0]}", HeckeElement._raw(rd, m_t.apply(m_t.column(key))), expected)
    for (name1, h1), (name2, h2) in product(named, repeat=2):
        product_matrix = RegularMatrix(h1 * h2)
        for key in basis:
            composed = matrices[name1].apply(matrices[name2].column(key))
            report.add(
                "regular_representation",
                f"{name1}*{name2} on theta{key[0]} T_{list(rd.weyl_index[key[1]].word)}",
                HeckeElement._raw(rd, composed),
                HeckeElement._raw(rd, product_matrix.column(key)),
            )

    _LOGGER.debug("Checked %d relation instances for %s", len(report.checks), rd.label)
    return report


# Central characters


def central_character(rd: RootDatum, point: TorusPoint, f: WeightPolynomial) -> RatFun:
    """Value of a W-invariant Laurent polynomial at a torus point."""
    for i in range(rd.semisimple_rank):
        if f.weyl_apply(rd.element_from_word((i,))) != f:
            msg = f"central function is not invariant under s{i}"
            raise NotInvariant(msg)
    return f.evaluate(point).to_ratfun()


def _point_key(point: TorusPoint) -> tuple:
    return tuple((-m, a) for a, m in zip(point.torsion, point.qexp, strict=True))


@dataclass(frozen=True)
class CentralCharacter:
    """A W-orbit of torus points, kept as its canonical representative."""

    rd: RootDatum
    representative: TorusPoint

    def galois_image(self, gamma: GaloisAutomorphism) -> CentralCharacter:
        return central_character_orbit(self.rd, self.representative.galois(gamma))

    def to_dict(self) -> dict[str, Any]:
        return {"root_datum": self.rd.label, "representative": self.representative.to_dict()}


def central_character_orbit(rd: RootDatum, point: TorusPoint) -> CentralCharacter:
    """
    Canonical representative of W . point.

    The representative minimises the coordinate key (-q-exponent, torsion)
    lexicographically; for permutation actions that is a sort.
    """
    if point.rank != rd.rank:
        msg = f"torus point of rank {point.rank} for {rd.label}"
        raise DimensionMismatch(msg)
    if rd.acts_by_permutations:
        pairs = sorted(zip(point.torsion, point.qexp, strict=True), key=lambda pair: (-pair[1], pair[0]))
        return CentralCharacter(rd, TorusPoint(tuple(a for a, _ in pairs), tuple(m for _, m in pairs)))
    best = min((point.weyl_translate(rd, w) for w in rd.weyl_elements()), key=_point_key)
    return CentralCharacter(rd, best)


def same_orbit(rd: RootDatum, first: TorusPoint, second: TorusPoint) -> bool:
    return central_character_orbit(rd, first) == central_character_orbit(rd, second)

