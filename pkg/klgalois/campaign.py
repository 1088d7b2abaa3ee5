"""Batch verification campaigns behind the command line."""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from pathlib import Path
from typing import TYPE_CHECKING, Any

import voluptuous as vol
import yaml

from .const import (
    _LOGGER,
    _LOGGER_SPAM_LESS,
    CMD_DEGREE,
    CMD_ENUMERATE,
    CMD_EXPORT,
    CMD_GALOIS_CHECK,
    CMD_HECKE_VERIFY,
    COMMANDS,
    CONF_COMMAND,
    CONF_FALLBACK,
    CONF_FORMAT,
    CONF_GAMMAS,
    CONF_HEIGHT_BOUND,
    CONF_LENGTH_BOUND,
    CONF_LEVELS,
    CONF_MAX_DECAY_RATIO,
    CONF_OUTPUT,
    CONF_PARAMETERS,
    CONF_Q_VALUES,
    CONF_QEXP,
    CONF_RHO_DIM,
    CONF_ROOT_DATUM,
    CONF_SIZES,
    CONF_STEINBERG,
    CONF_TOLERANCE,
    CONF_TORSION,
    CONF_WORKERS,
    DEFAULT_FALLBACK,
    DEFAULT_FORMAT,
    DEFAULT_HEIGHT_BOUND,
    DEFAULT_LENGTH_BOUND,
    DEFAULT_LEVELS,
    DEFAULT_MAX_DECAY_RATIO,
    DEFAULT_Q_VALUES,
    DEFAULT_RHO_DIM,
    DEFAULT_ROOT_DATUM,
    DEFAULT_SIZES,
    DEFAULT_STEINBERG,
    DEFAULT_TOLERANCE,
    DEFAULT_WORKERS,
    EXIT_FALSIFIED,
    EXIT_OK,
    FORMAT_CSV,
    FORMAT_JSON,
    HEIGHT_NOTION,
    MAX_PARAMETER_SIZE,
    MAX_TORSION_LEVEL,
    SCHEMA_VERSION,
)
from .exact_field import GaloisAutomorphism
from .exceptions import InvalidConfig
from .formal_degree import degree_numeric, galois_invariance_report, galois_verdict, parameter_degree
from .hecke_bernstein import verify_relations
from .kl_parameters import (
    KLParameter,
    centralizer_dimension,
    enumerate_parameters,
    galois_twist,
    is_discrete_combinatorial,
    is_essentially_discrete,
    project_to_semisimple,
)
from .root_datum import RootDatum, build_root_datum
from .torus import TorusPoint, steinberg_point
from .util import format_decimal, fraction_to_str, parse_fraction, units_mod

if TYPE_CHECKING:
    from collections.abc import Iterable, Mapping


def ensure_list(value: Any) -> list[Any]:
    """Wrap value into a list if it is not one."""
    if value is None:
        return []
    return value if isinstance(value, list) else [value]


def _rational(value: Any) -> str:
    try:
        return fraction_to_str(parse_fraction(value))
    except (TypeError, ValueError, ZeroDivisionError) as err:
        msg = f"not a rational number: {value!r}"
        raise vol.Invalid(msg) from err


def _q_value(value: Any) -> str:
    text = _rational(value)
    if Fraction(text) <= 1:
        msg = f"q must be > 1, got {text}"
        raise vol.Invalid(msg)
    return text


CAMPAIGN_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_COMMAND): vol.In(COMMANDS),
        vol.Optional(CONF_ROOT_DATUM, default=DEFAULT_ROOT_DATUM): vol.Any(str, dict),
        vol.Optional(CONF_SIZES): vol.All(ensure_list, [vol.All(int, vol.Range(min=1, max=MAX_PARAMETER_SIZE))]),
        vol.Optional(CONF_LEVELS, default=DEFAULT_LEVELS): vol.All(
            ensure_list, [vol.All(int, vol.Range(min=1, max=MAX_TORSION_LEVEL))]
        ),
        vol.Optional(CONF_GAMMAS, default=list): vol.All(ensure_list, [int]),
        vol.Optional(CONF_HEIGHT_BOUND, default=DEFAULT_HEIGHT_BOUND): vol.All(
            ensure_list, [vol.All(int, vol.Range(min=0))], vol.Length(min=1)
        ),
        vol.Optional(CONF_Q_VALUES, default=DEFAULT_Q_VALUES): vol.All(ensure_list, [_q_value], vol.Length(min=1)),
        vol.Optional(CONF_TOLERANCE, default=DEFAULT_TOLERANCE): vol.All(vol.Coerce(float), vol.Range(min=0)),
        vol.Optional(CONF_MAX_DECAY_RATIO, default=DEFAULT_MAX_DECAY_RATIO): vol.All(
            vol.Coerce(float), vol.Range(min=0, max=1)
        ),
        vol.Optional(CONF_LENGTH_BOUND, default=DEFAULT_LENGTH_BOUND): vol.All(int, vol.Range(min=1)),
        vol.Optional(CONF_RHO_DIM, default=DEFAULT_RHO_DIM): vol.All(int, vol.Range(min=1)),
        vol.Optional(CONF_STEINBERG, default=DEFAULT_STEINBERG): bool,
        vol.Optional(CONF_TORSION): vol.All(ensure_list, [_rational]),
        vol.Optional(CONF_QEXP): vol.All(ensure_list, [_rational]),
        vol.Optional(CONF_PARAMETERS, default=list): [dict],
        vol.Optional(CONF_FALLBACK, default=DEFAULT_FALLBACK): bool,
        vol.Optional(CONF_WORKERS, default=DEFAULT_WORKERS): vol.All(int, vol.Range(min=1)),
        vol.Optional(CONF_OUTPUT): vol.Any(None, str),
        vol.Optional(CONF_FORMAT, default=DEFAULT_FORMAT): vol.In((FORMAT_JSON, FORMAT_CSV)),
    }
)

# CSV columns per command, documented in README.md.
COLUMNS: dict[str, tuple[str, ...]] = {
    CMD_ENUMERATE: (
        "n",
        "partition",
        "torsion",
        "qexp",
        "centralizer_dimension",
        "discrete",
        "discrete_combinatorial",
        "verdict",
    ),
    CMD_DEGREE: (
        "root_datum",
        "parameter",
        "torsion",
        "qexp",
        "q",
        "height_bound",
        "rho_dim",
        "inverse_exact",
        "degree_exact",
        "degree",
        "oracle_degree",
        "oracle_relative_diff",
        "tail_ratio",
        "converged",
        "note",
        "verdict",
    ),
    CMD_GALOIS_CHECK: (
        "root_datum",
        "n",
        "partition",
        "torsion",
        "gamma",
        "twisted_torsion",
        "discrete",
        "validity_preserved",
        "discreteness_preserved",
        "central_character_compatible",
        "galois_stable",
        "termwise_exact_equal",
        "numeric_degree_diff",
        "note",
        "verdict",
    ),
    CMD_HECKE_VERIFY: ("root_datum", "length_bound", "relation", "checked", "failed", "verdict"),
    CMD_EXPORT: ("section", "key", "value"),
}


@dataclass
class CampaignConfig:
    """A validated campaign configuration."""

    command: str
    root_datum: str | dict[str, Any] = DEFAULT_ROOT_DATUM
    sizes: list[int] | None = None
    levels: list[int] = field(default_factory=lambda: list(DEFAULT_LEVELS))
    gammas: list[int] = field(default_factory=list)
    height_bounds: list[int] = field(default_factory=lambda: [DEFAULT_HEIGHT_BOUND])
    q_values: list[str] = field(default_factory=lambda: list(DEFAULT_Q_VALUES))
    tolerance: float = DEFAULT_TOLERANCE
    max_decay_ratio: float = DEFAULT_MAX_DECAY_RATIO
    length_bound: int = DEFAULT_LENGTH_BOUND
    rho_dim: int = DEFAULT_RHO_DIM
    steinberg: bool = DEFAULT_STEINBERG
    torsion: list[str] | None = None
    qexp: list[str] | None = None
    parameters: list[dict[str, Any]] = field(default_factory=list)
    fallback: bool = DEFAULT_FALLBACK
    workers: int = DEFAULT_WORKERS
    output: str | None = None
    format: str = DEFAULT_FORMAT

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> CampaignConfig:
        try:
            clean = CAMPAIGN_SCHEMA(dict(data))
        except vol.Invalid as err:
            msg = f"invalid campaign configuration: {err}"
            raise InvalidConfig(msg) from err
        config = cls(
            command=clean[CONF_COMMAND],
            root_datum=clean[CONF_ROOT_DATUM],
            sizes=clean.get(CONF_SIZES),
            levels=clean[CONF_LEVELS],
            gammas=clean[CONF_GAMMAS],
            height_bounds=clean[CONF_HEIGHT_BOUND],
            q_values=clean[CONF_Q_VALUES],
            tolerance=clean[CONF_TOLERANCE],
            max_decay_ratio=clean[CONF_MAX_DECAY_RATIO],
            length_bound=clean[CONF_LENGTH_BOUND],
            rho_dim=clean[CONF_RHO_DIM],
            steinberg=clean[CONF_STEINBERG],
            torsion=clean.get(CONF_TORSION),
            qexp=clean.get(CONF_QEXP),
            parameters=clean[CONF_PARAMETERS],
            fallback=clean[CONF_FALLBACK],
            workers=clean[CONF_WORKERS],
            output=clean.get(CONF_OUTPUT),
            format=clean[CONF_FORMAT],
        )
        config.validate()
        return config

    @classmethod
    def load(cls, path: str | Path, overrides: Mapping[str, Any] | None = None) -> CampaignConfig:
        """Read a YAML (or JSON) config file; overrides win over file values."""
        try:
            with Path(path).open(encoding="utf-8") as f:
                data = yaml.safe_load(f) or {}
        except (OSError, yaml.YAMLError) as err:
            msg = f"cannot read config file {path}: {err}"
            raise InvalidConfig(msg) from err
        if not isinstance(data, dict):
            msg = f"config file {path} does not hold a mapping"
            raise InvalidConfig(msg)
        data.update({k: v for k, v in (overrides or {}).items() if v is not None})
        return cls.from_dict(data)

    @property
    def parameter_mode(self) -> bool:
        """Work on GL_n parameters rather than on a single root datum."""
        if self.command == CMD_ENUMERATE:
            return True
        if bool(self.parameters) or self.sizes is not None:
            return True
        # galois-check without a torus point enumerates GL_n parameters
        return self.command == CMD_GALOIS_CHECK and not self.point_given

    @property
    def point_given(self) -> bool:
        return self.steinberg or self.torsion is not None or self.qexp is not None

    def validate(self) -> None:
        """Run every size guard before any work starts."""
        if self.parameter_mode:
            self.load_parameters()
        else:
            rd = self.build_root_datum()
            rd.weyl_elements()
            self.points(rd)

    def build_root_datum(self) -> RootDatum:
        return build_root_datum(self.root_datum)

    def points(self, rd: RootDatum) -> list[TorusPoint]:
        if self.steinberg:
            return [steinberg_point(rd, self.torsion)]
        if self.torsion is None and self.qexp is None:
            msg = "give --steinberg, --torsion or --qexp for a torus point"
            raise InvalidConfig(msg)
        point = TorusPoint.build(self.torsion, self.qexp, rd.rank)
        if point.rank != rd.rank:
            msg = f"torus point of rank {point.rank} for {rd.label} of rank {rd.rank}"
            raise InvalidConfig(msg)
        return [point]

    def load_parameters(self) -> list[tuple[KLParameter, int]]:
        """(parameter, Galois level) pairs, enumerated or read from the config."""
        if self.parameters:
            loaded = [KLParameter.from_dict(data) for data in self.parameters]
            return [(param, param.level) for param in loaded]
        found = []
        for n in self.sizes or DEFAULT_SIZES:
            for level in self.levels:
                found.extend((param, level) for param in enumerate_parameters(n, level))
        return found

    def galois_automorphisms(self, level: int) -> list[GaloisAutomorphism]:
        """The configured gammas at this level, or all of (Z/level)^x."""
        if not self.gammas:
            return [GaloisAutomorphism(level, k) for k in units_mod(level)]
        out = []
        for k in self.gammas:
            if level > 1 and gcd(k, level) != 1:
                _LOGGER_SPAM_LESS.warning(f"gamma_{k}_{level}", "Skipping gamma %d: not a unit mod %d", k, level)
                continue
            out.append(GaloisAutomorphism(level, k))
        return out

    def to_dict(self) -> dict[str, Any]:
        """The config as echoed into reports; workers and output do not change results."""
        return {
            CONF_COMMAND: self.command,
            CONF_ROOT_DATUM: self.root_datum,
            CONF_SIZES: self.sizes,
            CONF_LEVELS: self.levels,
            CONF_GAMMAS: self.gammas,
            CONF_HEIGHT_BOUND: self.height_bounds,
            CONF_Q_VALUES: self.q_values,
            CONF_TOLERANCE: self.tolerance,
            CONF_MAX_DECAY_RATIO: self.max_decay_ratio,
            CONF_LENGTH_BOUND: self.length_bound,
            CONF_RHO_DIM: self.rho_dim,
            CONF_STEINBERG: self.steinberg,
            CONF_TORSION: self.torsion,
            CONF_QEXP: self.qexp,
            CONF_PARAMETERS: self.parameters,
            CONF_FALLBACK: self.fallback,
            CONF_FORMAT: self.format,
        }


@dataclass
class CampaignRow:
    """One table row plus the full exact data behind it."""

    columns: dict[str, Any]
    detail: dict[str, Any] = field(default_factory=dict)

    @property
    def verdict(self) -> bool | None:
        return self.columns.get("verdict")

    def to_dict(self) -> dict[str, Any]:
        return {**self.columns, "detail": self.detail}


@dataclass
class CampaignResult:
    config: CampaignConfig
    rows: list[CampaignRow]

    @property
    def falsified(self) -> list[CampaignRow]:
        return [row for row in self.rows if row.verdict is False]

    @property
    def exit_code(self) -> int:
        return EXIT_FALSIFIED if self.falsified else EXIT_OK

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "command": self.config.command,
            "config": self.config.to_dict(),
            "height_notion": HEIGHT_NOTION,
            "passed": not self.falsified,
            "rows": [row.to_dict() for row in self.rows],
        }

    def render(self, fmt: str | None = None) -> str:
        fmt = fmt or self.config.format
        if fmt == FORMAT_JSON:
            return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"
        columns = COLUMNS[self.config.command]
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n", extrasaction="ignore")
        writer.writeheader()
        for row in self.rows:
            writer.writerow({key: _csv_value(row.columns.get(key)) for key in columns})
        return buffer.getvalue()

    def write(self, output: str | Path | None = None, fmt: str | None = None) -> str:
        """Write to output (or the configured path); returns the rendered text."""
        text = self.render(fmt)
        target = output or self.config.output
        if target:
            Path(target).write_text(text, encoding="utf-8")
            _LOGGER.info("Wrote %d rows to %s", len(self.rows), target)
        return text


def _csv_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return " ".join(str(v) for v in value)
    return str(value)


def _fractions(values: Iterable[Fraction]) -> list[str]:
    return [fraction_to_str(v) for v in values]


# Item runners. Module level so that worker processes can pickle them.


def _enumerate_rows(config: CampaignConfig, param: KLParameter) -> list[CampaignRow]:
    discrete = is_essentially_discrete(param)
    combinatorial = is_discrete_combinatorial(param)
    columns = {
        "n": param.n,
        "partition": list(param.partition),
        "torsion": _fractions(param.torsion),
        "qexp": _fractions(param.point.qexp),
        "centralizer_dimension": centralizer_dimension(param),
        "discrete": discrete,
        "discrete_combinatorial": combinatorial,
        "verdict": discrete == combinatorial,
    }
    return [CampaignRow(columns, {"parameter": param.to_dict()})]


def _degree_columns(report, **extra) -> dict[str, Any]:
    return {
        "root_datum": report.root_datum,
        "torsion": _fractions(report.point.torsion),
        "qexp": _fractions(report.point.qexp),
        "q": fraction_to_str(report.q),
        "height_bound": report.height_bound,
        "rho_dim": report.rho_dim,
        "inverse_exact": str(report.partial_inverse_degree),
        "degree_exact": None if report.degree_exact is None else fraction_to_str(report.degree_exact),
        "degree": format_decimal(report.degree),
        "oracle_degree": format_decimal(report.oracle_degree),
        "oracle_relative_diff": format_decimal(report.oracle_relative_diff),
        "tail_ratio": format_decimal(report.tail_ratio),
        "converged": report.converged,
        "note": None if report.converged else "truncated sum does not decay",
        "verdict": None,
        **extra,
    }


def _degree_point_rows(config: CampaignConfig, item: tuple[RootDatum, TorusPoint]) -> list[CampaignRow]:
    rd, point = item
    rows = []
    for q in config.q_values:
        for bound in config.height_bounds:
            report = degree_numeric(
                rd,
                point,
                q,
                bound,
                config.tolerance,
                rho_dim=config.rho_dim,
                fallback=config.fallback,
                max_decay_ratio=config.max_decay_ratio,
            )
            rows.append(CampaignRow(_degree_columns(report, parameter=None), report.to_dict()))
    return rows


def _degree_parameter_rows(config: CampaignConfig, param: KLParameter) -> list[CampaignRow]:
    rows = []
    discrete = is_essentially_discrete(param)
    for q in config.q_values:
        for bound in config.height_bounds:
            if param.n == 1 or not discrete:
                note = "GL1: the degree is 1" if param.n == 1 else "not essentially discrete: no formal degree"
                columns = {
                    "root_datum": param.rd.label,
                    "parameter": str(param),
                    "torsion": _fractions(param.torsion),
                    "qexp": _fractions(param.point.qexp),
                    "q": q,
                    "height_bound": bound,
                    "rho_dim": param.rho_dim,
                    "degree_exact": "1" if param.n == 1 else None,
                    "degree": format_decimal(1) if param.n == 1 else None,
                    "note": note,
                    "verdict": None,
                }
                rows.append(CampaignRow(columns, {"parameter": param.to_dict()}))
                continue
            report = parameter_degree(
                param,
                q,
                bound,
                fallback=config.fallback,
                max_decay_ratio=config.max_decay_ratio,
            )
            rows.append(
                CampaignRow(
                    _degree_columns(report, parameter=str(param)),
                    {"parameter": param.to_dict(), "report": report.to_dict()},
                )
            )
    return rows


def _galois_rows(config: CampaignConfig, item: tuple[KLParameter, int]) -> list[CampaignRow]:
    param, level = item
    discrete = is_essentially_discrete(param)
    bound = max(config.height_bounds)
    projected = project_to_semisimple(param)
    rows = []
    for gamma in config.galois_automorphisms(level):
        twist = galois_twist(gamma, param)
        columns: dict[str, Any] = {
            "root_datum": param.rd.label if projected is None else projected[0].label,
            "n": param.n,
            "partition": list(param.partition),
            "torsion": _fractions(param.torsion),
            "gamma": gamma.exponent,
            "twisted_torsion": _fractions(twist.twisted.torsion),
            "discrete": discrete,
            "validity_preserved": twist.validity_preserved,
            "discreteness_preserved": twist.discreteness_preserved,
            "central_character_compatible": twist.central_character_compatible,
            "galois_stable": None,
            "termwise_exact_equal": None,
            "numeric_degree_diff": None,
            "note": None,
        }
        detail: dict[str, Any] = {"twist": twist.to_dict()}
        if projected is None:
            columns["note"] = "GL1: the degree is 1 for every gamma"
        else:
            rd, point = projected
            diff = None
            notes = []
            if discrete and twist.twisted.valid:
                for q in config.q_values:
                    before = parameter_degree(param, q, bound, fallback=config.fallback, oracle=False)
                    after = parameter_degree(twist.twisted, q, bound, fallback=config.fallback, oracle=False)
                    value = abs(before.degree - after.degree)
                    diff = value if diff is None else max(diff, value)
                    if not before.converged:
                        notes.append(f"sum at q={q} does not decay")
                twisted = project_to_semisimple(twist.twisted)
                if twisted is not None and twisted[1] == point:
                    notes.append("torsion is central: the projected points coincide")
            verdict = galois_verdict(rd, point, gamma, bound, fallback=config.fallback)
            columns["galois_stable"] = verdict.galois_stable
            columns["termwise_exact_equal"] = verdict.termwise_exact_equal
            columns["numeric_degree_diff"] = format_decimal(diff)
            columns["note"] = "; ".join(notes) or None
            detail["galois"] = verdict.to_dict()
        columns["verdict"] = (
            twist.all_preserved
            and columns["termwise_exact_equal"] is not False
            and (columns["numeric_degree_diff"] is None or diff < config.tolerance)
        )
        rows.append(CampaignRow(columns, detail))
    return rows


def _galois_point_rows(config: CampaignConfig, item: tuple[RootDatum, TorusPoint]) -> list[CampaignRow]:
    """One row per gamma for a torus point of a semisimple root datum; the torsion is not projected away."""
    rd, point = item
    bound = max(config.height_bounds)
    gammas = config.galois_automorphisms(point.level)
    reports = [
        galois_invariance_report(
            rd, point, gammas, bound, q, config.tolerance, rho_dim=config.rho_dim, fallback=config.fallback
        )
        for q in config.q_values
    ]
    notes = [f"sum at q={fraction_to_str(report.q)} does not decay" for report in reports if not report.converged]
    rows = []
    for index, gamma in enumerate(gammas):
        verdicts = [report.galois_verdicts[index] for report in reports]
        diff = max(verdict.numeric_degree_diff for verdict in verdicts)
        termwise = verdicts[0].termwise_exact_equal
        columns = {
            "root_datum": rd.label,
            "torsion": _fractions(point.torsion),
            "gamma": gamma.exponent,
            "twisted_torsion": _fractions(verdicts[0].twisted_point.torsion),
            "galois_stable": verdicts[0].galois_stable,
            "termwise_exact_equal": termwise,
            "numeric_degree_diff": format_decimal(diff),
            "note": "; ".join(notes) or None,
            "verdict": termwise and diff < config.tolerance,
        }
        detail = {
            "point": point.to_dict(),
            "degrees": {fraction_to_str(report.q): format_decimal(report.degree) for report in reports},
            "galois": [verdict.to_dict() for verdict in verdicts],
        }
        rows.append(CampaignRow(columns, detail))
    return rows


def _hecke_rows(config: CampaignConfig, rd: RootDatum) -> list[CampaignRow]:
    report = verify_relations(rd, config.length_bound)
    rows = []
    for relation, counts in sorted(report.counts().items()):
        columns = {
            "root_datum": rd.label,
            "length_bound": config.length_bound,
            "relation": relation,
            "checked": counts["checked"],
            "failed": counts["failed"],
            "verdict": counts["failed"] == 0,
        }
        failures = [check.to_dict() for check in report.checks if check.relation == relation and not check.passed]
        rows.append(CampaignRow(columns, {"failures": failures}))
    return rows


def _export_rows(config: CampaignConfig, _item: Any) -> list[CampaignRow]:
    from .diagnostics import export_dump

    dump = export_dump(config)
    rows = []
    for section in sorted(dump):
        value = dump[section]
        if isinstance(value, dict):
            rows.extend(
                CampaignRow({"section": section, "key": key, "value": json.dumps(value[key], sort_keys=True)})
                for key in sorted(value)
            )
        else:
            rows.append(CampaignRow({"section": section, "key": None, "value": json.dumps(value, sort_keys=True)}))
    rows[0].detail = dump
    return rows


_RUNNERS = {
    CMD_GALOIS_CHECK: _galois_rows,
    CMD_HECKE_VERIFY: _hecke_rows,
    CMD_EXPORT: _export_rows,
}


def _run_item(config: CampaignConfig, item: Any) -> list[CampaignRow]:
    if config.command == CMD_DEGREE:
        if isinstance(item, KLParameter):
            return _degree_parameter_rows(config, item)
        return _degree_point_rows(config, item)
    if config.command == CMD_ENUMERATE:
        return _enumerate_rows(config, item[0])
    if config.command == CMD_GALOIS_CHECK and isinstance(item[0], RootDatum):
        return _galois_point_rows(config, item)
    return _RUNNERS[config.command](config, item)


class VerificationCampaign:
    """
    Runs one subcommand over its work items.

    Items go to a process pool when more than one worker is configured;
    rows always come back in item order.
    """

    def __init__(self, config: CampaignConfig) -> None:
        self.config = config

    def items(self) -> list[Any]:
        config = self.config
        if config.command in (CMD_ENUMERATE, CMD_GALOIS_CHECK) and config.parameter_mode:
            return config.load_parameters()
        if config.command == CMD_DEGREE and config.parameter_mode:
            return [param for param, _ in config.load_parameters()]
        if config.command == CMD_EXPORT:
            return [None]
        rd = config.build_root_datum()
        if config.command == CMD_HECKE_VERIFY:
            return [rd]
        return [(rd, point) for point in config.points(rd)]

    def run(self) -> CampaignResult:
        items = self.items()
        _LOGGER.info("Running %s over %d items with %d workers", self.config.command, len(items), self.config.workers)
        if self.config.workers <= 1 or len(items) <= 1:
            results = [_run_item(self.config, item) for item in items]
        else:
            results = [None] * len(items)
            with ProcessPoolExecutor(max_workers=self.config.workers) as pool:
                futures = {pool.submit(_run_item, self.config, item): index for index, item in enumerate(items)}
                for done, future in enumerate(as_completed(futures), 1):
                    results[futures[future]] = future.result()
                    _LOGGER.debug("Finished item %d of %d", done, len(items))
        rows = [row for chunk in results for row in chunk]
        result = CampaignResult(self.config, rows)
        if result.falsified:
            _LOGGER.warning("%d of %d rows have a negative verdict", len(result.falsified), len(rows))
        return result


def run_campaign(config: CampaignConfig | Mapping[str, Any]) -> CampaignResult:
    if not isinstance(config, CampaignConfig):
        config = CampaignConfig.from_dict(config)
    return VerificationCampaign(config).run()
