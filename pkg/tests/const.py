"""Constants for the KL Galois twist verifier tests."""

from __future__ import annotations

from klgalois.const import (
    CMD_DEGREE,
    CMD_ENUMERATE,
    CMD_EXPORT,
    CMD_GALOIS_CHECK,
    CMD_HECKE_VERIFY,
    CONF_COMMAND,
    CONF_HEIGHT_BOUND,
    CONF_LENGTH_BOUND,
    CONF_LEVELS,
    CONF_Q_VALUES,
    CONF_ROOT_DATUM,
    CONF_SIZES,
    CONF_STEINBERG,
)

MOCK_CONFIG_DEGREE = {
    CONF_COMMAND: CMD_DEGREE,
    CONF_ROOT_DATUM: "A1-sc",
    CONF_STEINBERG: True,
    CONF_Q_VALUES: ["2"],
    CONF_HEIGHT_BOUND: 10,
}

MOCK_CONFIG_ENUMERATE = {
    CONF_COMMAND: CMD_ENUMERATE,
    CONF_SIZES: [2],
    CONF_LEVELS: [1],
}

MOCK_CONFIG_GALOIS = {
    CONF_COMMAND: CMD_GALOIS_CHECK,
    CONF_SIZES: [2],
    CONF_LEVELS: [5],
    CONF_HEIGHT_BOUND: 10,
    CONF_Q_VALUES: ["2"],
}

MOCK_CONFIG_HECKE = {
    CONF_COMMAND: CMD_HECKE_VERIFY,
    CONF_ROOT_DATUM: "A1-sc",
    CONF_LENGTH_BOUND: 2,
}

MOCK_CONFIG_EXPORT = {
    CONF_COMMAND: CMD_EXPORT,
    CONF_ROOT_DATUM: "A1-sc",
    CONF_STEINBERG: True,
    CONF_HEIGHT_BOUND: 4,
    CONF_Q_VALUES: ["4"],
}

# Parameter-file format
MOCK_PARAMETER = {"n": 2, "partition": [2], "torsion_level": 3, "torsion_num": [1, 1], "rho_dim": 1}
