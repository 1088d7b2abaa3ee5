"""
Root data of split reductive groups, their Weyl groups and dominant weights.

Weights live in X* written as integer vectors in a fixed basis; coweights in
X_* in the dual basis, so the pairing is the dot product. A root datum is
built from a named Cartan type with a lattice choice, or from explicit
simple root / coroot matrices.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from typing import TYPE_CHECKING, Any

import sympy
import voluptuous as vol

from .const import (
    _LOGGER,
    CARTAN_TYPES,
    LATTICE_AD,
    LATTICE_GL,
    LATTICE_SC,
    LATTICES,
    MAX_POSITIVE_ROOTS,
    MAX_RANK,
    MAX_WEYL_ORDER,
)
from .exceptions import DimensionMismatch, GuardExceeded, InvalidRootDatum, NotDominant, NotSemisimple

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator, Mapping, Sequence

Weight = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]

NAMED_ROOT_DATUM_SCHEMA = vol.Schema(
    {
        vol.Required("type"): vol.All(str, vol.Upper, vol.In(CARTAN_TYPES)),
        vol.Required("rank"): vol.All(int, vol.Range(min=1, max=MAX_RANK)),
        vol.Optional("lattice", default=LATTICE_SC): vol.All(str, vol.Lower, vol.In(LATTICES)),
    }
)

EXPLICIT_ROOT_DATUM_SCHEMA = vol.Schema(
    {
        vol.Required("simple_roots"): [[int]],
        vol.Required("simple_coroots"): [[int]],
        vol.Optional("rank"): vol.All(int, vol.Range(min=0, max=MAX_RANK)),
        vol.Optional("label"): str,
    }
)

_LABEL_RE = re.compile(r"^(?:GL(?P<gl>\d+)|(?P<type>[A-G])(?P<rank>\d+)(?:-(?P<lattice>sc|ad|gl))?)$", re.IGNORECASE)


@dataclass(frozen=True)
class IntegerPolynomial:
    """A polynomial in q with integer coefficients, constant term first."""

    coefficients: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        coeffs = [int(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, q):
        total = 0
        for c in reversed(self.coefficients):
            total = total * q + c
        return total

    def __add__(self, other: IntegerPolynomial) -> IntegerPolynomial:
        size = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + (0,) * (size - len(self.coefficients))
        b = other.coefficients + (0,) * (size - len(other.coefficients))
        return IntegerPolynomial(tuple(x + y for x, y in zip(a, b, strict=True)))

    def __mul__(self, other: IntegerPolynomial) -> IntegerPolynomial:
        if self.is_zero() or other.is_zero():
            return IntegerPolynomial()
        out = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, x in enumerate(self.coefficients):
            for j, y in enumerate(other.coefficients):
                out[i + j] += x * y
        return IntegerPolynomial(tuple(out))

    def __divmod__(self, other: IntegerPolynomial) -> tuple[IntegerPolynomial, IntegerPolynomial]:
        """Division over Z; raises if a quotient coefficient is not an integer."""
        if other.is_zero():
            msg = "polynomial division by zero"
            raise ZeroDivisionError(msg)
        rem = list(self.coefficients)
        lead = other.coefficients[-1]
        size = len(other.coefficients)
        if len(rem) < size:
            return IntegerPolynomial(), self
        quot = [0] * (len(rem) - size + 1)
        for i in range(len(rem) - size, -1, -1):
            c, r = divmod(rem[i + size - 1], lead)
            if r:
                msg = f"{self} / {other} leaves the integers"
                raise ValueError(msg)
            quot[i] = c
            for j, y in enumerate(other.coefficients):
                rem[i + j] -= c * y
        return IntegerPolynomial(tuple(quot)), IntegerPolynomial(tuple(rem))

    def __floordiv__(self, other: IntegerPolynomial) -> IntegerPolynomial:
        return divmod(self, other)[0]

    def divides(self, other: IntegerPolynomial) -> bool:
        try:
            _, rem = divmod(other, self)
        except ValueError:
            return False
        return rem.is_zero()

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coefficients):
            if not c:
                continue
            power = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
            if not power:
                terms.append(str(c))
            else:
                terms.append(power if c == 1 else f"{c}{power}")
        return " + ".join(terms) if terms else "0"


@dataclass(frozen=True)
class WeylElement:
    """
    An element of W, acting on X* by an integer matrix.

    The word is a reduced word found by breadth-first search: action is the
    product s_{word[0]} s_{word[1]} ... of simple reflections.
    """

    action: Matrix
    word: tuple[int, ...]
    length: int

    def apply(self, weight: Sequence[int]) -> Weight:
        if len(weight) != len(self.action):
            msg = f"weight of rank {len(weight)} for a Weyl element of rank {len(self.action)}"
            raise DimensionMismatch(msg)
        return tuple(sum(a * x for a, x in zip(row, weight, strict=True)) for row in self.action)

    def to_dict(self) -> dict[str, Any]:
        return {"word": list(self.word), "length": self.length, "action": [list(row) for row in self.action]}


def _identity(rank: int) -> Matrix:
    return tuple(tuple(int(r == c) for c in range(rank)) for r in range(rank))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    size = len(b)
    cols = len(b[0]) if b else 0
    return tuple(tuple(sum(row[k] * b[k][c] for k in range(size)) for c in range(cols)) for row in a)


class RootDatum:
    """
    A root datum (X*, Phi, X_*, Phi^vee) with a chosen base.

    Treat instances as immutable. Expensive derived data (positive roots,
    the Weyl group) is computed once and cached on the instance.
    """

    def __init__(
        self,
        simple_roots: Iterable[Iterable[int]],
        simple_coroots: Iterable[Iterable[int]],
        rank: int | None = None,
        *,
        label: str | None = None,
        lattice: str | None = None,
    ) -> None:
        self.simple_roots: tuple[Weight, ...] = tuple(tuple(int(x) for x in r) for r in simple_roots)
        self.simple_coroots: tuple[Weight, ...] = tuple(tuple(int(x) for x in r) for r in simple_coroots)
        if rank is None:
            if not self.simple_roots:
                msg = "a root datum without roots needs an explicit rank"
                raise InvalidRootDatum(msg)
            rank = len(self.simple_roots[0])
        self.rank = rank
        self.lattice = lattice
        self._validate_shapes()
        self.label = label or self._default_label()
        self._weyl: list[WeylElement] | None = None
        self._weyl_index: dict[Matrix, WeylElement] = {}
        self._parabolic: dict[frozenset[int], list[WeylElement]] = {}
        self._left_mult: dict[tuple[int, Matrix], WeylElement] = {}
        # force the finiteness check now rather than on first use
        _ = self.positive_roots

    def _validate_shapes(self) -> None:
        if len(self.simple_roots) != len(self.simple_coroots):
            msg = f"{len(self.simple_roots)} simple roots but {len(self.simple_coroots)} simple coroots"
            raise InvalidRootDatum(msg)
        if self.rank > MAX_RANK:
            msg = f"rank {self.rank} exceeds the limit of {MAX_RANK}"
            raise GuardExceeded(msg)
        for vector in (*self.simple_roots, *self.simple_coroots):
            if len(vector) != self.rank:
                msg = f"vector {vector} does not have rank {self.rank}"
                raise InvalidRootDatum(msg)
        if len(self.simple_roots) > self.rank:
            msg = "more simple roots than the rank of X*"
            raise InvalidRootDatum(msg)
        if self.simple_roots:
            if sympy.Matrix(self.simple_roots).rank() != len(self.simple_roots):
                msg = "simple roots are linearly dependent"
                raise InvalidRootDatum(msg)
            if sympy.Matrix(self.simple_coroots).rank() != len(self.simple_coroots):
                msg = "simple coroots are linearly dependent"
                raise InvalidRootDatum(msg)
        cartan = self.cartan_matrix
        for i, row in enumerate(cartan):
            if row[i] != 2:
                msg = f"<alpha_{i}, alpha_{i}^vee> = {row[i]}, expected 2"
                raise InvalidRootDatum(msg)
            for j, value in enumerate(row):
                if i == j:
                    continue
                if value > 0:
                    msg = f"positive off-diagonal Cartan entry at ({i}, {j})"
                    raise InvalidRootDatum(msg)
                if (value == 0) != (cartan[j][i] == 0):
                    msg = f"Cartan entries ({i}, {j}) and ({j}, {i}) are not zero together"
                    raise InvalidRootDatum(msg)

    def _default_label(self) -> str:
        return f"explicit(rank={self.rank}, roots={len(self.simple_roots)})"

    @property
    def key(self) -> tuple:
        return (self.rank, self.simple_roots, self.simple_coroots)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RootDatum):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"RootDatum({self.label})"

    def __getstate__(self) -> dict:
        # Caches rebuild cheaply; don't ship them to worker processes.
        state = dict(self.__dict__)
        state.update(_weyl=None, _weyl_index={}, _parabolic={}, _left_mult={})
        return state

    @property
    def semisimple_rank(self) -> int:
        return len(self.simple_roots)

    @cached_property
    def cartan_matrix(self) -> Matrix:
        """Entry (i, j) is <alpha_i, alpha_j^vee>."""
        return tuple(tuple(pairing(a, c) for c in self.simple_coroots) for a in self.simple_roots)

    @cached_property
    def weight_lattice_basis(self) -> Matrix:
        """X* is identified with Z^rank in the standard basis."""
        return _identity(self.rank)

    @cached_property
    def positive_roots(self) -> tuple[Weight, ...]:
        """Closure of the simple roots under simple reflections, kept positive."""
        cartan = self.cartan_matrix
        count = len(self.simple_roots)
        seen: set[tuple[int, ...]] = set()
        frontier = [tuple(int(i == j) for j in range(count)) for i in range(count)]
        seen.update(frontier)
        while frontier:
            new_frontier = []
            for coords in frontier:
                for i in range(count):
                    value = sum(coords[j] * cartan[j][i] for j in range(count))
                    if value >= 0:
                        continue
                    reflected = tuple(c - value * int(j == i) for j, c in enumerate(coords))
                    if reflected not in seen:
                        seen.add(reflected)
                        new_frontier.append(reflected)
            if len(seen) > MAX_POSITIVE_ROOTS:
                msg = "Cartan matrix is not of finite type (root closure does not terminate)"
                raise InvalidRootDatum(msg)
            frontier = new_frontier
        roots = [self._from_simple_coordinates(c) for c in seen]
        heights = {self._from_simple_coordinates(c): sum(c) for c in seen}
        return tuple(sorted(roots, key=lambda r: (heights[r], r)))

    def _from_simple_coordinates(self, coords: Sequence[int]) -> Weight:
        out = [0] * self.rank
        for c, root in zip(coords, self.simple_roots, strict=True):
            for k, x in enumerate(root):
                out[k] += c * x
        return tuple(out)

    @cached_property
    def negative_roots(self) -> tuple[Weight, ...]:
        return tuple(tuple(-x for x in r) for r in self.positive_roots)

    @cached_property
    def all_roots(self) -> tuple[Weight, ...]:
        return self.positive_roots + self.negative_roots

    @cached_property
    def positive_coroots(self) -> dict[Weight, Weight]:
        """Coroot of each positive root (alpha^vee = w(alpha_i^vee) when alpha = w(alpha_i))."""
        out = {self.simple_roots[i]: self.simple_coroots[i] for i in range(len(self.simple_roots))}
        frontier = list(out)
        while frontier:
            new_frontier = []
            for root in frontier:
                coroot = out[root]
                for i, simple in enumerate(self.simple_roots):
                    image = self.reflect(i, root)
                    if image in out or image not in set(self.positive_roots):
                        continue
                    simple_coroot = self.simple_coroots[i]
                    k = pairing(simple, coroot)
                    out[image] = tuple(c - k * s for c, s in zip(coroot, simple_coroot, strict=True))
                    new_frontier.append(image)
            frontier = new_frontier
        return out

    @property
    def dim_flag(self) -> int:
        return len(self.positive_roots)

    @cached_property
    def is_semisimple(self) -> bool:
        """The root lattice has finite index in X*."""
        return len(self.simple_roots) == self.rank and self.rank > 0

    @cached_property
    def acts_by_permutations(self) -> bool:
        """True when every simple reflection swaps two coordinates (the gl_n lattice)."""
        for root, coroot in zip(self.simple_roots, self.simple_coroots, strict=True):
            if root != coroot or sorted(root) != [-1] + [0] * (self.rank - 2) + [1]:
                return False
        return True

    def check_weight(self, weight: Sequence[int]) -> Weight:
        if len(weight) != self.rank:
            msg = f"weight {tuple(weight)} does not have rank {self.rank}"
            raise DimensionMismatch(msg)
        return tuple(int(x) for x in weight)

    def pairings(self, weight: Sequence[int]) -> tuple[int, ...]:
        """<weight, alpha_i^vee> for every simple coroot."""
        weight = self.check_weight(weight)
        return tuple(pairing(weight, c) for c in self.simple_coroots)

    def height(self, weight: Sequence[int]) -> int:
        return sum(self.pairings(weight))

    def is_dominant(self, weight: Sequence[int]) -> bool:
        return all(p >= 0 for p in self.pairings(weight))

    def reflect(self, i: int, weight: Sequence[int]) -> Weight:
        k = pairing(weight, self.simple_coroots[i])
        return tuple(x - k * a for x, a in zip(weight, self.simple_roots[i], strict=True))

    def simple_reflection_matrix(self, i: int) -> Matrix:
        root, coroot = self.simple_roots[i], self.simple_coroots[i]
        return tuple(tuple(int(r == c) - root[r] * coroot[c] for c in range(self.rank)) for r in range(self.rank))

    def _left_reflect(self, i: int, action: Matrix) -> Matrix:
        root, coroot = self.simple_roots[i], self.simple_coroots[i]
        row = [sum(coroot[r] * action[r][c] for r in range(self.rank)) for c in range(self.rank)]
        return tuple(
            tuple(action[r][c] - root[r] * row[c] for c in range(self.rank)) for r in range(self.rank)
        )

    def _enumerate(self, generators: Sequence[int]) -> list[WeylElement]:
        identity = WeylElement(_identity(self.rank), (), 0)
        found: dict[Matrix, WeylElement] = {identity.action: identity}
        frontier = [identity]
        while frontier:
            new_frontier = []
            for element in frontier:
                for i in generators:
                    action = self._left_reflect(i, element.action)
                    if action in found:
                        continue
                    image = WeylElement(action, (i, *element.word), element.length + 1)
                    found[action] = image
                    new_frontier.append(image)
                    if len(found) > MAX_WEYL_ORDER:
                        msg = f"Weyl group of {self.label} has more than {MAX_WEYL_ORDER} elements"
                        raise GuardExceeded(msg)
            frontier = new_frontier
        return sorted(found.values(), key=lambda w: (w.length, w.word))

    def weyl_elements(self) -> list[WeylElement]:
        if self._weyl is None:
            self._weyl = self._enumerate(range(len(self.simple_roots)))
            self._weyl_index = {w.action: w for w in self._weyl}
            _LOGGER.debug("Enumerated %d Weyl group elements for %s", len(self._weyl), self.label)
        return self._weyl

    @property
    def weyl_index(self) -> dict[Matrix, WeylElement]:
        self.weyl_elements()
        return self._weyl_index

    @property
    def identity(self) -> WeylElement:
        return self.weyl_elements()[0]

    def parabolic_elements(self, subset: Iterable[int]) -> list[WeylElement]:
        key = frozenset(subset)
        for i in key:
            if not 0 <= i < len(self.simple_roots):
                msg = f"simple root index {i} out of range"
                raise InvalidRootDatum(msg)
        if key not in self._parabolic:
            self._parabolic[key] = self._enumerate(sorted(key))
        return self._parabolic[key]

    def element_from_word(self, word: Iterable[int]) -> WeylElement:
        action = _identity(self.rank)
        for i in reversed(tuple(word)):
            action = self._left_reflect(i, action)
        return self.weyl_index[action]

    def left_multiply(self, i: int, element: WeylElement) -> WeylElement:
        """s_i * element."""
        key = (i, element.action)
        if key not in self._left_mult:
            self._left_mult[key] = self.weyl_index[self._left_reflect(i, element.action)]
        return self._left_mult[key]

    def inverse(self, element: WeylElement) -> WeylElement:
        return self.element_from_word(reversed(element.word))

    def longest_element(self) -> WeylElement:
        return self.weyl_elements()[-1]

    def inversion_count(self, element: WeylElement) -> int:
        negatives = set(self.negative_roots)
        return sum(1 for root in self.positive_roots if element.apply(root) in negatives)

    def orbit(self, weight: Sequence[int]) -> set[Weight]:
        weight = self.check_weight(weight)
        return {w.apply(weight) for w in self.weyl_elements()}

    @cached_property
    def inverse_pairing_matrix(self) -> tuple[tuple[Fraction, ...], ...]:
        """C^-1 where C has the simple coroots as rows; maps pairing vectors back to weights."""
        if not self.is_semisimple:
            msg = f"{self.label} is not semisimple; project to the semisimple quotient first"
            raise NotSemisimple(msg)
        inverse = sympy.Matrix(self.simple_coroots).inv()
        return tuple(
            tuple(Fraction(int(inverse[r, c].p), int(inverse[r, c].q)) for c in range(self.rank))
            for r in range(self.rank)
        )

    def weight_from_pairings(self, pairings: Sequence[int]) -> Weight | None:
        """The weight with these simple-coroot pairings, or None if it is not in X*."""
        inverse = self.inverse_pairing_matrix
        values = [sum(row[i] * pairings[i] for i in range(self.rank)) for row in inverse]
        if any(v.denominator != 1 for v in values):
            return None
        return tuple(int(v) for v in values)

    def to_dict(self) -> dict[str, Any]:
        return {
            "label": self.label,
            "rank": self.rank,
            "lattice": self.lattice,
            "simple_roots": [list(r) for r in self.simple_roots],
            "simple_coroots": [list(r) for r in self.simple_coroots],
            "cartan_matrix": [list(r) for r in self.cartan_matrix],
            "positive_roots": [list(r) for r in self.positive_roots],
            "dim_flag": self.dim_flag,
            "is_semisimple": self.is_semisimple,
        }


def pairing(weight: Sequence[int], coweight: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(weight, coweight, strict=True))


def _euclidean_simple_roots(cartan_type: str, rank: int) -> list[list[Fraction]]:
    """Bourbaki realizations of the simple roots."""
    half = Fraction(1, 2)

    def unit(i: int, size: int) -> list[Fraction]:
        return [Fraction(int(j == i)) for j in range(size)]

    def diff(i: int, j: int, size: int) -> list[Fraction]:
        return [a - b for a, b in zip(unit(i, size), unit(j, size), strict=True)]

    if cartan_type == "A":
        return [diff(i, i + 1, rank + 1) for i in range(rank)]
    if cartan_type == "B":
        return [diff(i, i + 1, rank) for i in range(rank - 1)] + [unit(rank - 1, rank)]
    if cartan_type == "C":
        return [diff(i, i + 1, rank) for i in range(rank - 1)] + [[2 * x for x in unit(rank - 1, rank)]]
    if cartan_type == "D":
        last = [a + b for a, b in zip(unit(rank - 2, rank), unit(rank - 1, rank), strict=True)]
        return [diff(i, i + 1, rank) for i in range(rank - 1)] + [last]
    if cartan_type == "E":
        e8 = [[half, -half, -half, -half, -half, -half, -half, half]]
        e8.append([Fraction(x) for x in (1, 1, 0, 0, 0, 0, 0, 0)])
        e8.extend(diff(i + 1, i, 8) for i in range(6))
        return e8[:rank]
    if cartan_type == "F":
        return [diff(1, 2, 4), diff(2, 3, 4), unit(3, 4), [half, -half, -half, -half]]
    if cartan_type == "G":
        return [[Fraction(x) for x in (1, -1, 0)], [Fraction(x) for x in (-2, 1, 1)]]
    msg = f"unknown Cartan type {cartan_type}"
    raise InvalidRootDatum(msg)


_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 4}
_FIXED_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}


@lru_cache(64)
def cartan_matrix_of_type(cartan_type: str, rank: int) -> Matrix:
    if cartan_type in _FIXED_RANKS and rank not in _FIXED_RANKS[cartan_type]:
        msg = f"type {cartan_type} has no rank {rank}"
        raise InvalidRootDatum(msg)
    if rank < _MIN_RANK.get(cartan_type, 1):
        msg = f"type {cartan_type}{rank} is not a standard Cartan type"
        raise InvalidRootDatum(msg)
    roots = _euclidean_simple_roots(cartan_type, rank)

    def inner(a, b):
        return sum(x * y for x, y in zip(a, b, strict=True))

    rows = []
    for a in roots:
        row = []
        for b in roots:
            value = 2 * inner(a, b) / inner(b, b)
            if value.denominator != 1:
                msg = f"non-integral Cartan entry for {cartan_type}{rank}"
                raise InvalidRootDatum(msg)
            row.append(int(value))
        rows.append(tuple(row))
    return tuple(rows)


def _build_named(cartan_type: str, rank: int, lattice: str) -> RootDatum:
    cartan = cartan_matrix_of_type(cartan_type, rank)
    label = f"{cartan_type}{rank}-{lattice}"
    if lattice == LATTICE_SC:
        # X* has the fundamental weights as basis: alpha_i = row i, coroots are the unit vectors
        roots = [list(row) for row in cartan]
        coroots = [[int(i == j) for j in range(rank)] for i in range(rank)]
        return RootDatum(roots, coroots, rank, label=label, lattice=lattice)
    if lattice == LATTICE_AD:
        roots = [[int(i == j) for j in range(rank)] for i in range(rank)]
        coroots = [[cartan[i][j] for i in range(rank)] for j in range(rank)]
        return RootDatum(roots, coroots, rank, label=label, lattice=lattice)
    if lattice == LATTICE_GL:
        if cartan_type != "A":
            msg = "the gl lattice only exists for type A"
            raise InvalidRootDatum(msg)
        vectors = [[int(j == i) - int(j == i + 1) for j in range(rank + 1)] for i in range(rank)]
        return RootDatum(vectors, vectors, rank + 1, label=f"GL{rank + 1}", lattice=lattice)
    msg = f"unknown lattice {lattice}"
    raise InvalidRootDatum(msg)


def parse_root_datum_label(label: str) -> dict[str, Any]:
    """'A2' / 'A1-sc' / 'B3-ad' / 'A2-gl' / 'GL3' into a named root datum mapping."""
    match = _LABEL_RE.match(label.strip())
    if not match:
        msg = f"cannot parse root datum label {label!r}"
        raise InvalidRootDatum(msg)
    if match["gl"]:
        n = int(match["gl"])
        if n < 2:
            msg = "GL1 is a torus; give it as explicit data with rank 1"
            raise InvalidRootDatum(msg)
        return {"type": "A", "rank": n - 1, "lattice": LATTICE_GL}
    return {"type": match["type"].upper(), "rank": int(match["rank"]), "lattice": (match["lattice"] or LATTICE_SC).lower()}


def build_root_datum(description: str | Mapping[str, Any] | RootDatum) -> RootDatum:
    """Validate a structured description and build the root datum."""
    if isinstance(description, RootDatum):
        return description
    if isinstance(description, str):
        description = parse_root_datum_label(description)
    try:
        if "simple_roots" in description:
            data = EXPLICIT_ROOT_DATUM_SCHEMA(dict(description))
            return RootDatum(data["simple_roots"], data["simple_coroots"], data.get("rank"), label=data.get("label"))
        data = NAMED_ROOT_DATUM_SCHEMA(dict(description))
    except vol.Invalid as err:
        msg = f"invalid root datum description: {err}"
        raise InvalidRootDatum(msg) from err
    return _build_named(data["type"], data["rank"], data["lattice"])


@lru_cache(16)
def build_gl(n: int) -> RootDatum:
    """GL_n with X* = Z^n. GL_1 is the rank one torus."""
    if n == 1:
        return RootDatum([], [], 1, label="GL1")
    return _build_named("A", n - 1, LATTICE_GL)


@lru_cache(16)
def build_adjoint(cartan_type: str, rank: int) -> RootDatum:
    return _build_named(cartan_type, rank, LATTICE_AD)


def weyl_elements(rd: RootDatum) -> list[WeylElement]:
    return rd.weyl_elements()


def weyl_action(w: WeylElement, weight: Sequence[int]) -> Weight:
    return w.apply(weight)


def poincare_polynomial(rd: RootDatum, subset: Iterable[int] = ()) -> IntegerPolynomial:
    """sum of q^l(w) over the parabolic subgroup generated by the simple reflections in subset."""
    counts = Counter(w.length for w in rd.parabolic_elements(subset))
    top = max(counts)
    return IntegerPolynomial(tuple(counts.get(i, 0) for i in range(top + 1)))


def weight_stabilizer(rd: RootDatum, weight: Sequence[int]) -> frozenset[int]:
    """Indices of the simple roots whose reflections fix a dominant weight."""
    values = rd.pairings(weight)
    if any(v < 0 for v in values):
        msg = f"{tuple(weight)} is not dominant for {rd.label}"
        raise NotDominant(msg)
    return frozenset(i for i, v in enumerate(values) if v == 0)


def all_subsets(rd: RootDatum) -> list[frozenset[int]]:
    """Every subset of the simple roots, smallest first."""
    indices = range(rd.semisimple_rank)
    return [frozenset(c) for size in range(rd.semisimple_rank + 1) for c in combinations(indices, size)]


def _pairing_vectors(count: int, zeros: frozenset[int], budget: int) -> Iterator[tuple[int, ...]]:
    """Vectors with 0 at zeros, >= 1 elsewhere, total <= budget."""

    def loop(i: int, remaining: int, prefix: tuple[int, ...]):
        if i == count:
            yield prefix
            return
        if i in zeros:
            yield from loop(i + 1, remaining, (*prefix, 0))
            return
        for value in range(1, remaining + 1):
            yield from loop(i + 1, remaining - value, (*prefix, value))

    yield from loop(0, budget, ())


def enumerate_lambda(rd: RootDatum, subset: Iterable[int], height_bound: int) -> list[Weight]:
    """
    Dominant weights with stabilizer exactly W_J and height <= height_bound.

    Sorted by height, then lexicographically.
    """
    if not rd.is_semisimple:
        msg = f"{rd.label} is not semisimple; dominant weights with a given stabilizer are infinite along the centre"
        raise NotSemisimple(msg)
    zeros = frozenset(subset)
    found = []
    for values in _pairing_vectors(rd.semisimple_rank, zeros, height_bound):
        weight = rd.weight_from_pairings(values)
        if weight is not None:
            found.append((sum(values), weight))
    found.sort()
    return [weight for _, weight in found]


def dominant_weights(rd: RootDatum, height_bound: int) -> list[Weight]:
    """All dominant weights up to the height bound, in (height, lex) order."""
    found = []
    for subset in all_subsets(rd):
        found.extend((rd.height(w), w) for w in enumerate_lambda(rd, subset, height_bound))
    found.sort()
    return [weight for _, weight in found]


def dominant_conjugate(rd: RootDatum, weight: Sequence[int]) -> Weight:
    """The dominant weight in the W-orbit, by reflecting away negative pairings."""
    current = rd.check_weight(weight)
    while True:
        for i, value in enumerate(rd.pairings(current)):
            if value < 0:
                current = rd.reflect(i, current)
                break
        else:
            return current
