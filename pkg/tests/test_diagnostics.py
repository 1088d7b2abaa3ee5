"""Tests for the exact-value dump."""

from __future__ import annotations

import json

from klgalois.campaign import CampaignConfig
from klgalois.diagnostics import export_dump, point_dump, root_datum_dump

from .const import MOCK_CONFIG_ENUMERATE, MOCK_CONFIG_EXPORT


def test_root_datum_dump(a2_sc):
    data = root_datum_dump(a2_sc)
    assert len(data["weyl_group"]) == 6
    assert data["poincare_polynomials"]["J=-"] == [1]
    assert data["poincare_polynomials"]["J=0,1"] == [1, 2, 2, 1]


def test_point_dump(a1_sc, steinberg_a1):
    data = point_dump(a1_sc, steinberg_a1, [10], ["2", "4"])
    bound = data["bounds"]["10"]
    assert set(bound["subset_sums"]) == {"J=-", "J=0"}
    assert bound["values"]["2"]["rational"] == "12279/2048"
    assert data["point"]["qexp"] == ["1/2"]


def test_export_dump_is_json():
    dump = export_dump(CampaignConfig.from_dict(MOCK_CONFIG_EXPORT))
    assert set(dump) == {"meta", "root_datum", "points"}
    json.dumps(dump)


def test_export_dump_with_parameters():
    dump = export_dump(CampaignConfig.from_dict({**MOCK_CONFIG_ENUMERATE, "command": "export", "height_bound": 4}))
    params = dump["parameters"]
    assert len(params) == 2
    discrete = [entry for entry in params.values() if entry["essentially_discrete"]]
    assert len(discrete) == 1
    assert "projected" in discrete[0]
