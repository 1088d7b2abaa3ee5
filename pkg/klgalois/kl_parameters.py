"""
Kazhdan-Lusztig parameters (s, N, rho) for GL_n.

N is a Jordan nilpotent given by a partition, s = s1 * phi(v) is a torus
point whose q-exponents come from the Jacobson-Morozov cocharacter of N, and
rho only enters through its dimension.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import TYPE_CHECKING, Any

import sympy
import voluptuous as vol

from .const import _LOGGER, _LOGGER_SPAM_LESS, MAX_PARAMETER_SIZE, MAX_TORSION_LEVEL
from .exceptions import GuardExceeded, InvalidParameter
from .hecke_bernstein import central_character_orbit
from .root_datum import RootDatum, build_adjoint, build_gl
from .torus import TorusPoint, steinberg_point  # noqa: F401  re-exported
from .util import fraction_to_str, partitions

if TYPE_CHECKING:
    from collections.abc import Iterable, Mapping, Sequence

    from .exact_field import GaloisAutomorphism

PARAMETER_SCHEMA = vol.Schema(
    {
        vol.Required("n"): vol.All(int, vol.Range(min=1, max=MAX_PARAMETER_SIZE)),
        vol.Required("partition"): [vol.All(int, vol.Range(min=1))],
        vol.Optional("torsion_level", default=1): vol.All(int, vol.Range(min=1)),
        vol.Optional("torsion_num"): [int],
        vol.Optional("rho_dim", default=1): vol.All(int, vol.Range(min=1)),
    },
    extra=vol.REMOVE_EXTRA,
)


def check_partition(n: int, partition: Sequence[int]) -> tuple[int, ...]:
    parts = tuple(int(p) for p in partition)
    if not parts or any(p < 1 for p in parts) or sum(parts) != n:
        msg = f"{list(parts)} is not a partition of {n}"
        raise InvalidParameter(msg)
    if list(parts) != sorted(parts, reverse=True):
        msg = f"partition {list(parts)} is not weakly decreasing"
        raise InvalidParameter(msg)
    return parts


@dataclass(frozen=True)
class NilpotentMatrix:
    """The Jordan nilpotent of a partition: blocks in order, ones on the superdiagonal."""

    size: int
    partition: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "partition", check_partition(self.size, self.partition))

    @property
    def matrix(self) -> tuple[tuple[int, ...], ...]:
        ones = set(self.unit_entries())
        return tuple(tuple(int((i, j) in ones) for j in range(self.size)) for i in range(self.size))

    def unit_entries(self) -> list[tuple[int, int]]:
        """0-based (i, j) with N_ij = 1."""
        out = []
        start = 0
        for part in self.partition:
            out.extend((start + k, start + k + 1) for k in range(part - 1))
            start += part
        return out

    def blocks(self) -> list[range]:
        out = []
        start = 0
        for part in self.partition:
            out.append(range(start, start + part))
            start += part
        return out

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]]) -> NilpotentMatrix:
        """Recover the partition from the ranks of N, N^2, ..."""
        size = len(matrix)
        current = sympy.Matrix(matrix)
        base = sympy.Matrix(matrix)
        ranks = [size]
        while ranks[-1]:
            ranks.append(current.rank())
            if ranks[-1] == ranks[-2]:
                msg = "matrix is not nilpotent"
                raise InvalidParameter(msg)
            current = current * base
        # number of blocks of size >= k is rank(N^(k-1)) - rank(N^k)
        at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
        parts = []
        for k, count in enumerate(at_least, start=1):
            bigger = at_least[k] if k < len(at_least) else 0
            parts.extend([k] * (count - bigger))
        return cls(size, tuple(sorted(parts, reverse=True)))

    def to_dict(self) -> dict[str, Any]:
        return {"n": self.size, "partition": list(self.partition)}


def jm_cocharacter(partition: Sequence[int]) -> tuple[Fraction, ...]:
    """Halved sl2 weight strings (l-1, l-3, ..., 1-l), parts in the given order."""
    parts = check_partition(sum(int(p) for p in partition), partition)
    out: list[Fraction] = []
    for part in parts:
        out.extend(Fraction(part - 1 - 2 * k, 2) for k in range(part))
    return tuple(out)


@dataclass(frozen=True)
class KLParameter:
    """A GL_n parameter with its validity certificate for Ad(s)N = qN."""

    point: TorusPoint
    nilpotent: NilpotentMatrix
    rho_dim: int = 1
    valid: bool = field(default=True, compare=False)
    violation: tuple[int, int] | None = field(default=None, compare=False)

    @property
    def n(self) -> int:
        return self.nilpotent.size

    @property
    def rd(self) -> RootDatum:
        return build_gl(self.n)

    @property
    def partition(self) -> tuple[int, ...]:
        return self.nilpotent.partition

    @property
    def torsion(self) -> tuple[Fraction, ...]:
        return self.point.torsion

    @property
    def level(self) -> int:
        return self.point.level

    def normal_form(self) -> KLParameter:
        """Jordan strings sorted by (length desc, torsion asc)."""
        if not self.valid:
            return self
        strings = []
        for block in self.nilpotent.blocks():
            strings.append((len(block), self.point.torsion[block[0]], [self.point.qexp[i] for i in block]))
        strings.sort(key=lambda item: (-item[0], item[1]))
        torsion = [a for length, a, _ in strings for _ in range(length)]
        qexp = [m for _, _, values in strings for m in values]
        return KLParameter(
            TorusPoint(tuple(torsion), tuple(qexp)),
            NilpotentMatrix(self.n, tuple(length for length, _, _ in strings)),
            self.rho_dim,
            self.valid,
            self.violation,
        )

    def to_dict(self) -> dict[str, Any]:
        level = self.level
        return {
            "n": self.n,
            "partition": list(self.partition),
            "torsion_level": level,
            "torsion_num": [int(a * level) for a in self.torsion],
            "torsion": [fraction_to_str(a) for a in self.torsion],
            "qexp": [fraction_to_str(m) for m in self.point.qexp],
            "rho_dim": self.rho_dim,
            "valid": self.valid,
            "violation": list(self.violation) if self.violation else None,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> KLParameter:
        """Read the parameter-file format {n, partition, torsion_level, torsion_num, rho_dim}."""
        try:
            clean = PARAMETER_SCHEMA(dict(data))
        except vol.Invalid as err:
            msg = f"invalid parameter description: {err}"
            raise InvalidParameter(msg) from err
        n, level = clean["n"], clean["torsion_level"]
        numerators = clean.get("torsion_num", [0] * n)
        if len(numerators) != n:
            msg = f"{len(numerators)} torsion numerators for n = {n}"
            raise InvalidParameter(msg)
        return build_parameter(n, clean["partition"], [Fraction(k, level) for k in numerators], clean["rho_dim"])

    def __str__(self) -> str:
        torsion = ",".join(fraction_to_str(a) for a in self.torsion)
        return f"GL{self.n}[p={list(self.partition)}, a=({torsion})]"


def _certificate(point: TorusPoint, nilpotent: NilpotentMatrix) -> tuple[int, int] | None:
    """First unit entry (1-based) where s_i / s_j != q, or None."""
    for i, j in nilpotent.unit_entries():
        if point.torsion[i] != point.torsion[j] or point.qexp[i] - point.qexp[j] != 1:
            return (i + 1, j + 1)
    return None


def build_parameter(n: int, partition: Sequence[int], torsion: Iterable[Any], rho_dim: int = 1) -> KLParameter:
    """
    Assemble s from torsion and the Jacobson-Morozov q-exponents.

    An invalid certificate is reported on the parameter, not raised.
    """
    nilpotent = NilpotentMatrix(n, tuple(partition))
    torsion = tuple(torsion)
    if len(torsion) != n:
        msg = f"{len(torsion)} torsion exponents for n = {n}"
        raise InvalidParameter(msg)
    if rho_dim < 1:
        msg = f"rho_dim must be positive, got {rho_dim}"
        raise InvalidParameter(msg)
    point = TorusPoint(torsion, jm_cocharacter(nilpotent.partition))
    violation = _certificate(point, nilpotent)
    return KLParameter(point, nilpotent, rho_dim, violation is None, violation)


def _require_valid(param: KLParameter) -> None:
    if not param.valid:
        msg = f"{param} fails Ad(s)N = qN at entry {param.violation}"
        raise InvalidParameter(msg)


def centralizer_dimension(param: KLParameter) -> int:
    """dim {X in gl_n : Ad(s)X = X, [N, X] = 0}, by exact rank computation."""
    _require_valid(param)
    n = param.n
    coords = list(zip(param.point.torsion, param.point.qexp, strict=True))
    support = [(i, j) for i in range(n) for j in range(n) if coords[i] == coords[j]]
    index = {entry: k for k, entry in enumerate(support)}
    units = param.nilpotent.unit_entries()
    rows = []
    for r in range(n):
        for c in range(n):
            # ([N, X])_rc = sum_k N_rk X_kc - X_rk N_kc
            row = [0] * len(support)
            for a, b in units:
                if a == r and (b, c) in index:
                    row[index[(b, c)]] += 1
                if b == c and (r, a) in index:
                    row[index[(r, a)]] -= 1
            if any(row):
                rows.append(row)
    rank = sympy.Matrix(rows).rank() if rows else 0
    return len(support) - rank


def is_discrete_combinatorial(param: KLParameter) -> bool:
    """The type-A criterion: a single Jordan block with constant torsion."""
    _require_valid(param)
    return param.partition == (param.n,) and len(set(param.torsion)) == 1


def is_essentially_discrete(param: KLParameter) -> bool:
    """
    No proper Levi contains (s, N): the centralizer is the centre of gl_n.

    The combinatorial criterion is checked alongside and a disagreement is
    logged; callers that need a verdict on it use is_discrete_combinatorial.
    """
    result = centralizer_dimension(param) == 1
    if result != is_discrete_combinatorial(param):
        _LOGGER.warning("Discreteness criteria disagree for %s", param)
    return result


@dataclass(frozen=True)
class GaloisTwistResult:
    parameter: KLParameter
    gamma: GaloisAutomorphism
    twisted: KLParameter
    validity_preserved: bool
    discreteness_preserved: bool
    central_character_compatible: bool

    @property
    def all_preserved(self) -> bool:
        return self.validity_preserved and self.discreteness_preserved and self.central_character_compatible

    def to_dict(self) -> dict[str, Any]:
        return {
            "parameter": self.parameter.to_dict(),
            "gamma": self.gamma.to_dict(),
            "twisted": self.twisted.to_dict(),
            "preserved": {
                "validity": self.validity_preserved,
                "discreteness": self.discreteness_preserved,
                "central_character_orbit_compatible": self.central_character_compatible,
            },
        }


def twist_parameter(gamma: GaloisAutomorphism, param: KLParameter) -> KLParameter:
    point = param.point.galois(gamma)
    violation = _certificate(point, param.nilpotent)
    return KLParameter(point, param.nilpotent, param.rho_dim, violation is None, violation)


def galois_twist(gamma: GaloisAutomorphism, param: KLParameter) -> GaloisTwistResult:
    """Twist the torsion by gamma and re-run every check on the result."""
    twisted = twist_parameter(gamma, param)
    validity = twisted.valid == param.valid
    if param.valid and twisted.valid:
        discreteness = is_essentially_discrete(param) == is_essentially_discrete(twisted)
    else:
        discreteness = validity
    rd = param.rd
    compatible = central_character_orbit(rd, twisted.point) == central_character_orbit(rd, param.point).galois_image(gamma)
    return GaloisTwistResult(param, gamma, twisted, validity, discreteness, compatible)


def enumerate_parameters(n: int, torsion_level: int) -> list[KLParameter]:
    """
    Every valid parameter for GL_n with torsion in (1/level)Z/Z, one per class.

    Torsion is constant along each Jordan string; within a partition the
    strings of equal length get a multiset of torsion values.
    """
    if n > MAX_PARAMETER_SIZE:
        msg = f"n = {n} is above the enumeration limit {MAX_PARAMETER_SIZE}"
        raise GuardExceeded(msg)
    if torsion_level > MAX_TORSION_LEVEL:
        msg = f"torsion level {torsion_level} is above the limit {MAX_TORSION_LEVEL}"
        raise GuardExceeded(msg)
    if n < 1 or torsion_level < 1:
        msg = "n and the torsion level must be positive"
        raise InvalidParameter(msg)
    found: list[KLParameter] = []
    for partition in partitions(n):
        lengths = sorted(set(partition), reverse=True)
        choices = [
            list(combinations_with_replacement(range(torsion_level), partition.count(length))) for length in lengths
        ]
        for selection in product(*choices):
            torsion: list[Fraction] = []
            for length, values in zip(lengths, selection, strict=True):
                for value in values:
                    torsion.extend([Fraction(value, torsion_level)] * length)
            param = build_parameter(n, partition, torsion)
            if not param.valid:
                _LOGGER_SPAM_LESS.warning("enumerate_invalid", "Enumeration produced an invalid parameter %s", param)
                continue
            found.append(param.normal_form())
    _LOGGER.debug("Enumerated %d parameters for GL%d at level %d", len(found), n, torsion_level)
    return found


def project_to_semisimple(param: KLParameter) -> tuple[RootDatum, TorusPoint] | None:
    """
    The image in the adjoint group PGL_n: consecutive coordinate quotients.

    Unramified central twists drop out here. None for GL_1.
    """
    n = param.n
    if n == 1:
        return None
    rd = build_adjoint("A", n - 1)
    torsion = tuple(param.torsion[i] - param.torsion[i + 1] for i in range(n - 1))
    qexp = tuple(param.point.qexp[i] - param.point.qexp[i + 1] for i in range(n - 1))
    return rd, TorusPoint(torsion, qexp)
