"""Machine-readable dump of every exact value a campaign can see."""

from __future__ import annotations

from typing import TYPE_CHECKING, Any

from .const import HEIGHT_NOTION, SCHEMA_VERSION, VERSION
from .formal_degree import partial_degree_inverse, subset_sums
from .kl_parameters import is_essentially_discrete, project_to_semisimple
from .root_datum import all_subsets, poincare_polynomial
from .util import fraction_to_str, parse_fraction

if TYPE_CHECKING:
    from .campaign import CampaignConfig
    from .exact_field import RatFun
    from .root_datum import RootDatum
    from .torus import TorusPoint


def _subset_key(subset) -> str:
    return "J=" + (",".join(str(i) for i in sorted(subset)) or "-")


def root_datum_dump(rd: RootDatum) -> dict[str, Any]:
    """Roots, Weyl elements and parabolic Poincare polynomials."""
    data = rd.to_dict()
    data["weyl_group"] = [w.to_dict() for w in rd.weyl_elements()]
    data["poincare_polynomials"] = {
        _subset_key(subset): list(poincare_polynomial(rd, subset).coefficients) for subset in all_subsets(rd)
    }
    return data


def _values_at(inverse: RatFun, q_values) -> dict[str, Any]:
    out = {}
    for q in q_values:
        exact = inverse.evaluate_at_q(parse_fraction(q))
        rational = exact.rational_part() if exact is not None else None
        out[q] = {
            "exact": None if exact is None else exact.to_dict(),
            "rational": None if rational is None else fraction_to_str(rational),
        }
    return out


def point_dump(rd: RootDatum, point: TorusPoint, height_bounds, q_values, *, fallback: bool = True) -> dict[str, Any]:
    """Exact per-subset sums and partial inverse degrees at one torus point."""
    data: dict[str, Any] = {"point": point.to_dict(), "bounds": {}}
    for bound in height_bounds:
        inverse = partial_degree_inverse(rd, point, bound, fallback=fallback)
        data["bounds"][str(bound)] = {
            "subset_sums": {
                _subset_key(subset): value.to_dict()
                for subset, value in subset_sums(rd, point, bound, fallback=fallback).items()
            },
            "partial_inverse_degree": inverse.to_dict(),
            "values": _values_at(inverse, q_values),
        }
    return data


def export_dump(config: CampaignConfig) -> dict[str, Any]:
    """
    Everything exact behind a campaign config.

    The root datum section is always there; torus points are dumped when the
    config names one, parameters when it enumerates or lists them.
    """
    data: dict[str, Any] = {
        "meta": {"schema_version": SCHEMA_VERSION, "version": VERSION, "height_notion": HEIGHT_NOTION},
    }
    rd = config.build_root_datum()
    data["root_datum"] = root_datum_dump(rd)

    if rd.is_semisimple and (config.steinberg or config.torsion is not None or config.qexp is not None):
        data["points"] = {
            str(point): point_dump(rd, point, config.height_bounds, config.q_values, fallback=config.fallback)
            for point in config.points(rd)
        }

    if config.parameters or config.sizes is not None:
        params = {}
        for param, _ in config.load_parameters():
            entry = param.to_dict()
            entry["essentially_discrete"] = is_essentially_discrete(param)
            projected = project_to_semisimple(param)
            if projected is not None and entry["essentially_discrete"]:
                small, point = projected
                entry["projected"] = point_dump(small, point, config.height_bounds, config.q_values, fallback=config.fallback)
            params[str(param)] = entry
        data["parameters"] = params
    return data
