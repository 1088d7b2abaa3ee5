"""Constants for the KL Galois twist verifier."""

from __future__ import annotations

import logging
from typing import Final

from .log_spam_less import KLGaloisLogSpamLess

NAME = "KL Galois Twist Verifier"
DOMAIN = "klgalois"
# The version in the repository should always be 0.0.0 to reflect
# that the package has been checked out from git, not pulled from
# an officially built release.
VERSION = "0.0.0"

# Bumped whenever a field in the emitted reports changes meaning.
SCHEMA_VERSION: Final = 1

# Size guards. Everything is exact, so these are about wall-clock, not precision.
MAX_RANK: Final = 8
MAX_WEYL_ORDER: Final = 100_000
MAX_PARAMETER_SIZE: Final = 6  # n for GL_n enumeration
MAX_TORSION_LEVEL: Final = 12
MAX_POSITIVE_ROOTS: Final = 200  # E8 has 120; anything past this is not finite type
MAX_BRAID_RANK: Final = 3

LOGSPAM_INTERVAL = 22
# Campaign loops tend to hit the same warning for whole families of
# parameters. This is how long in seconds we wait before repeating one.

# Lattice choices for named Cartan types
LATTICE_SC: Final = "sc"  # X* = weight lattice
LATTICE_AD: Final = "ad"  # X* = root lattice
LATTICE_GL: Final = "gl"  # X* = Z^(n+1), type A only
LATTICES: Final = (LATTICE_SC, LATTICE_AD, LATTICE_GL)
CARTAN_TYPES: Final = ("A", "B", "C", "D", "E", "F", "G")

# Height notion used to truncate the dominant-weight sums. Reported verbatim.
HEIGHT_NOTION: Final = "sum of pairings with simple coroots"

# Significant digits for advisory decimals in reports.
DECIMAL_DIGITS: Final = 12

# Relative agreement demanded between the exact engine and the float oracle.
ORACLE_RTOL: Final = 1e-9

# Subcommands
CMD_ENUMERATE: Final = "enumerate"
CMD_DEGREE: Final = "degree"
CMD_GALOIS_CHECK: Final = "galois-check"
CMD_HECKE_VERIFY: Final = "hecke-verify"
CMD_EXPORT: Final = "export"
COMMANDS: Final = (CMD_ENUMERATE, CMD_DEGREE, CMD_GALOIS_CHECK, CMD_HECKE_VERIFY, CMD_EXPORT)

# Exit codes
EXIT_OK: Final = 0
EXIT_FALSIFIED: Final = 1  # some mathematical verdict came back negative
EXIT_USAGE: Final = 2  # bad config, bad flags, guard exceeded
EXIT_ENGINE_DEFECT: Final = 3  # an internal self-check failed; never a verdict

FORMAT_JSON: Final = "json"
FORMAT_CSV: Final = "csv"

DOCS = {}

# Campaign configuration

CONF_COMMAND = "command"
DOCS[CONF_COMMAND] = "Which campaign to run: one of " + ", ".join(COMMANDS)

CONF_ROOT_DATUM, DEFAULT_ROOT_DATUM = "root_datum", "A1-sc"
DOCS[CONF_ROOT_DATUM] = (
    "Root datum: a label like `A2-sc`/`GL3`, a named type mapping"
    " {type, rank, lattice} or explicit {simple_roots, simple_coroots}."
)

CONF_SIZES, DEFAULT_SIZES = "n", [2]
DOCS[CONF_SIZES] = "GL_n sizes to enumerate parameters for."

CONF_LEVELS, DEFAULT_LEVELS = "levels", [1]
DOCS[CONF_LEVELS] = "Torsion levels: torsion exponents are multiples of 1/level."

CONF_GAMMAS = "gammas"
DOCS[CONF_GAMMAS] = "Galois exponents k to try. Empty means every unit mod the level."

CONF_HEIGHT_BOUND, DEFAULT_HEIGHT_BOUND = "height_bound", 30
DOCS[CONF_HEIGHT_BOUND] = "Truncation of the dominant-weight sums, see HEIGHT_NOTION."

CONF_Q_VALUES, DEFAULT_Q_VALUES = "q", ["2"]
DOCS[CONF_Q_VALUES] = "Rational q values (> 1) to evaluate formal degrees at."

CONF_TOLERANCE, DEFAULT_TOLERANCE = "tolerance", 1e-8
DOCS[CONF_TOLERANCE] = "Allowed |d(s) - d(gamma(s))| before a numeric verdict is negative."

CONF_MAX_DECAY_RATIO, DEFAULT_MAX_DECAY_RATIO = "max_decay_ratio", 0.95
DOCS[CONF_MAX_DECAY_RATIO] = (
    "Per-unit-height increment ratio above which a truncated sum is flagged"
    " as not converging."
)

CONF_LENGTH_BOUND, DEFAULT_LENGTH_BOUND = "length_bound", 3
DOCS[CONF_LENGTH_BOUND] = "Word length / lattice box radius for the Hecke relation harness."

CONF_RHO_DIM, DEFAULT_RHO_DIM = "rho_dim", 1
DOCS[CONF_RHO_DIM] = "Component-group multiplicity dim(rho); scales formal degrees."

CONF_STEINBERG, DEFAULT_STEINBERG = "steinberg", False
DOCS[CONF_STEINBERG] = "Use the Steinberg point (every simple root evaluates to q)."

CONF_TORSION = "torsion"
DOCS[CONF_TORSION] = "Torsion exponents (fractions mod 1) for the torus point, one per coordinate."

CONF_QEXP = "qexp"
DOCS[CONF_QEXP] = "Half-integer q-exponents for the torus point; defaults to zero or Steinberg."

CONF_PARAMETERS = "parameters"
DOCS[CONF_PARAMETERS] = "Explicit GL_n parameters in the parameter-file format."

CONF_FALLBACK, DEFAULT_FALLBACK = "fallback", True
DOCS[CONF_FALLBACK] = "Use the symbolic M-function for torus points that are not regular."

CONF_WORKERS, DEFAULT_WORKERS = "workers", 1
DOCS[CONF_WORKERS] = "Worker processes for campaign items. 1 runs inline."

CONF_OUTPUT = "output"
DOCS[CONF_OUTPUT] = "Where to write the report. Standard output when missing."

CONF_FORMAT, DEFAULT_FORMAT = "format", FORMAT_JSON
DOCS[CONF_FORMAT] = "Report format, json or csv."

_LOGGER: logging.Logger = logging.getLogger(__package__)
_LOGGER_SPAM_LESS = KLGaloisLogSpamLess(_LOGGER, LOGSPAM_INTERVAL)


STARTUP_MESSAGE = f"""
-------------------------------------------------------------------
{NAME}
Version: {VERSION}
Exact values are normative, decimals are advisory.
-------------------------------------------------------------------
"""
