"""Scenario files: parsing, validation, serialization, materialization.

Scenarios are JSON documents with a version header, a slit count, a state
specification, optional geometry overrides, the correlation orders to
evaluate and an optional mode dimension.  Validation is total: every field
is checked and failures carry the dotted path of the offending entry (plus
line/column for raw parse errors).  Parsed configs hold normalized plain
data, so serialize(parse(text)) round-trips semantically.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import ConfigError
from .fields import FieldGeometry
from .states import mix, pure_state, random_state, two_photon_superposition

CONFIG_VERSION = 1

STATE_KINDS = ("pure_state", "mix", "two_photon_superposition", "random_state")


@dataclass(frozen=True)
class ScenarioConfig:
    """Normalized scenario: plain ints, floats, lists and dicts only."""

    slit_count: int
    state: dict
    geometry: dict
    orders: tuple[int, ...]
    mode_dimension: int | None
    output: str
    version: int = CONFIG_VERSION


def _fail(path, message):
    raise ConfigError(f"{path}: {message}", field=path)


def _require(raw, path, key, kind, kind_name):
    if key not in raw:
        _fail(f"{path}.{key}" if path else key, "required field is missing")
    value = raw[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        _fail(f"{path}.{key}" if path else key, f"expected {kind_name}, got {type(value).__name__}")
    return value


def _as_int(value, path, minimum=None, maximum=None):
    if not isinstance(value, int) or isinstance(value, bool):
        _fail(path, f"expected integer, got {type(value).__name__}")
    if minimum is not None and value < minimum:
        _fail(path, f"must be >= {minimum}, got {value}")
    if maximum is not None and value > maximum:
        _fail(path, f"must be <= {maximum}, got {value}")
    return value


def _as_number(value, path):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        _fail(path, f"expected number, got {type(value).__name__}")
    if not math.isfinite(value):
        _fail(path, f"must be finite, got {value}")
    return float(value)


def _as_complex(value, path):
    """Numbers or [re, im] pairs; normalized to a [re, im] list."""
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return [_as_number(value, path), 0.0]
    if isinstance(value, list):
        if len(value) != 2:
            _fail(path, f"complex value needs [re, im], got {len(value)} entries")
        return [_as_number(value[0], f"{path}[0]"), _as_number(value[1], f"{path}[1]")]
    _fail(path, f"expected number or [re, im] pair, got {type(value).__name__}")


def _as_vector(value, path, length):
    if not isinstance(value, list) or len(value) != length:
        _fail(path, f"expected a list of {length} numbers")
    return [_as_number(v, f"{path}[{i}]") for i, v in enumerate(value)]


def _validate_state(raw, path, slit_count):
    if not isinstance(raw, dict):
        _fail(path, f"expected object, got {type(raw).__name__}")
    kind = _require(raw, path, "kind", str, "string")
    if kind not in STATE_KINDS:
        _fail(f"{path}.kind", f"unknown state kind {kind!r}; expected one of {', '.join(STATE_KINDS)}")
    mode_count = 2 * slit_count
    known = {"kind"}
    out = {"kind": kind}

    if kind == "pure_state":
        known |= {"photon_count", "amplitudes"}
        photon_count = _as_int(_require(raw, path, "photon_count", int, "integer"), f"{path}.photon_count", minimum=0)
        amplitudes = _require(raw, path, "amplitudes", list, "list")
        if not amplitudes:
            _fail(f"{path}.amplitudes", "must not be empty")
        norm2 = 0.0
        entries = []
        for i, entry in enumerate(amplitudes):
            entry_path = f"{path}.amplitudes[{i}]"
            if not isinstance(entry, dict):
                _fail(entry_path, f"expected object, got {type(entry).__name__}")
            counts = _require(entry, entry_path, "counts", list, "list")
            if len(counts) != mode_count:
                _fail(f"{entry_path}.counts", f"expected {mode_count} entries (2 per slit), got {len(counts)}")
            counts = [_as_int(c, f"{entry_path}.counts[{j}]", minimum=0) for j, c in enumerate(counts)]
            if sum(counts) != photon_count:
                _fail(f"{entry_path}.counts", f"must sum to photon_count={photon_count}, got {sum(counts)}")
            value = _as_complex(_require(entry, entry_path, "value", (int, float, list), "number or [re, im]"), f"{entry_path}.value")
            norm2 += value[0] ** 2 + value[1] ** 2
            entries.append({"counts": counts, "value": value})
        if norm2 <= 1e-24:
            _fail(f"{path}.amplitudes", "amplitudes are all zero (null state)")
        out["photon_count"] = photon_count
        out["amplitudes"] = entries

    elif kind == "mix":
        known |= {"components"}
        components = _require(raw, path, "components", list, "list")
        if not components:
            _fail(f"{path}.components", "must not be empty")
        entries = []
        total = 0.0
        for i, entry in enumerate(components):
            entry_path = f"{path}.components[{i}]"
            if not isinstance(entry, dict):
                _fail(entry_path, f"expected object, got {type(entry).__name__}")
            weight = _as_number(_require(entry, entry_path, "weight", (int, float), "number"), f"{entry_path}.weight")
            if weight < 0:
                _fail(f"{entry_path}.weight", f"must be >= 0, got {weight}")
            total += weight
            inner = _require(entry, entry_path, "state", dict, "object")
            entries.append({"weight": weight, "state": _validate_state(inner, f"{entry_path}.state", slit_count)})
        if total <= 0:
            _fail(f"{path}.components", "weights sum to zero")
        out["components"] = entries

    elif kind == "two_photon_superposition":
        known |= {"c1", "c2", "c3"}
        if slit_count not in (1, 2):
            _fail(f"{path}.kind", f"two_photon_superposition needs slit_count 1 or 2, got {slit_count}")
        for key in ("c1", "c2", "c3"):
            value = _require(raw, path, key, (int, float, list), "number or [re, im]")
            out[key] = _as_complex(value, f"{path}.{key}")
        if all(out[key] == [0.0, 0.0] for key in ("c1", "c2", "c3")):
            _fail(path, "amplitudes are all zero (null state)")

    elif kind == "random_state":
        known |= {"seed", "support", "components", "active_modes"}
        out["seed"] = _as_int(_require(raw, path, "seed", int, "integer"), f"{path}.seed", minimum=0)
        support = _require(raw, path, "support", list, "list")
        if not support:
            _fail(f"{path}.support", "must not be empty")
        out["support"] = [_as_int(n, f"{path}.support[{i}]", minimum=0) for i, n in enumerate(support)]
        if "components" in raw:
            out["components"] = _as_int(raw["components"], f"{path}.components", minimum=1)
        if "active_modes" in raw:
            modes = raw["active_modes"]
            if not isinstance(modes, list) or not modes:
                _fail(f"{path}.active_modes", "expected a non-empty list of mode indices")
            out["active_modes"] = [
                _as_int(m, f"{path}.active_modes[{i}]", minimum=0, maximum=mode_count - 1)
                for i, m in enumerate(modes)
            ]

    unknown = set(raw) - known
    if unknown:
        _fail(f"{path}.{sorted(unknown)[0]}", "unknown field")
    return out


def _validate_geometry(raw, path, slit_count):
    if not isinstance(raw, dict):
        _fail(path, f"expected object, got {type(raw).__name__}")
    out = {}
    known = {"field_amplitude", "wave_vector", "angular_frequency", "positions", "times", "polarizations"}
    unknown = set(raw) - known
    if unknown:
        _fail(f"{path}.{sorted(unknown)[0]}", "unknown field")
    if "field_amplitude" in raw:
        out["field_amplitude"] = _as_complex(raw["field_amplitude"], f"{path}.field_amplitude")
    if "wave_vector" in raw:
        out["wave_vector"] = _as_vector(raw["wave_vector"], f"{path}.wave_vector", 3)
    if "angular_frequency" in raw:
        out["angular_frequency"] = _as_number(raw["angular_frequency"], f"{path}.angular_frequency")
    if "positions" in raw:
        positions = raw["positions"]
        if not isinstance(positions, list) or len(positions) != slit_count:
            _fail(f"{path}.positions", f"expected {slit_count} position vectors")
        out["positions"] = [_as_vector(p, f"{path}.positions[{i}]", 3) for i, p in enumerate(positions)]
    if "times" in raw:
        out["times"] = _as_vector(raw["times"], f"{path}.times", slit_count)
    if "polarizations" in raw:
        pols = raw["polarizations"]
        if not isinstance(pols, list) or len(pols) != slit_count:
            _fail(f"{path}.polarizations", f"expected {slit_count} polarization pairs")
        normalized = []
        for m, pair in enumerate(pols):
            if not isinstance(pair, list) or len(pair) != 2:
                _fail(f"{path}.polarizations[{m}]", "expected two polarization vectors")
            vectors = []
            for s, vec in enumerate(pair):
                if not isinstance(vec, list) or len(vec) != 3:
                    _fail(f"{path}.polarizations[{m}][{s}]", "expected a 3-component vector")
                vectors.append([_as_complex(c, f"{path}.polarizations[{m}][{s}][{j}]") for j, c in enumerate(vec)])
            normalized.append(vectors)
        out["polarizations"] = normalized
    return out


def parse_scenario(text):
    """Parse and validate scenario text into a normalized ScenarioConfig."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}", line=exc.lineno) from None
    if not isinstance(raw, dict):
        _fail("", f"scenario must be a JSON object, got {type(raw).__name__}")

    known = {"version", "slit_count", "state", "geometry", "orders", "mode_dimension", "output"}
    unknown = set(raw) - known
    if unknown:
        _fail(sorted(unknown)[0], "unknown field")

    version = _as_int(raw.get("version", CONFIG_VERSION), "version", minimum=1)
    if version != CONFIG_VERSION:
        _fail("version", f"unsupported version {version}; this engine reads version {CONFIG_VERSION}")
    slit_count = _as_int(_require(raw, "", "slit_count", int, "integer"), "slit_count", minimum=1)
    state = _validate_state(_require(raw, "", "state", dict, "object"), "state", slit_count)
    geometry = _validate_geometry(raw.get("geometry", {}), "geometry", slit_count)

    orders_raw = raw.get("orders", [1])
    if not isinstance(orders_raw, list) or not orders_raw:
        _fail("orders", "expected a non-empty list of integers")
    orders = tuple(_as_int(n, f"orders[{i}]", minimum=1) for i, n in enumerate(orders_raw))

    mode_dimension = raw.get("mode_dimension")
    if mode_dimension is not None:
        mode_dimension = _as_int(mode_dimension, "mode_dimension", minimum=2, maximum=2 * slit_count)

    output = raw.get("output", "json")
    if output != "json":
        _fail("output", f"unsupported output format {output!r}; expected 'json'")

    return ScenarioConfig(
        slit_count=slit_count,
        state=state,
        geometry=geometry,
        orders=orders,
        mode_dimension=mode_dimension,
        output=output,
        version=version,
    )


def scenario_to_dict(config):
    doc = {
        "version": config.version,
        "slit_count": config.slit_count,
        "state": config.state,
        "orders": list(config.orders),
        "output": config.output,
    }
    if config.geometry:
        doc["geometry"] = config.geometry
    if config.mode_dimension is not None:
        doc["mode_dimension"] = config.mode_dimension
    return doc


def serialize_scenario(config):
    """Scenario text whose parse equals ``config``."""
    return json.dumps(scenario_to_dict(config), indent=2, sort_keys=True) + "\n"


def _complex_of(pair):
    return complex(pair[0], pair[1])


def _build_state(node, slit_count):
    mode_count = 2 * slit_count
    kind = node["kind"]
    if kind == "pure_state":
        keyed = {}
        for entry in node["amplitudes"]:
            occ = tuple(entry["counts"])
            keyed[occ] = keyed.get(occ, 0j) + _complex_of(entry["value"])
        return pure_state(mode_count, node["photon_count"], keyed)
    if kind == "mix":
        return mix(
            (entry["weight"], _build_state(entry["state"], slit_count))
            for entry in node["components"]
        )
    if kind == "two_photon_superposition":
        return two_photon_superposition(
            _complex_of(node["c1"]), _complex_of(node["c2"]), _complex_of(node["c3"]), slit_count=slit_count
        )
    if kind == "random_state":
        return random_state(
            node["seed"],
            mode_count,
            node["support"],
            components=node.get("components", 1),
            active_modes=node.get("active_modes"),
        )
    raise ConfigError(f"state.kind: unknown state kind {kind!r}")


def build_state(config):
    """Materialize the configured state; validation errors become ConfigError."""
    try:
        return _build_state(config.state, config.slit_count)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"state: {exc}", field="state") from exc


def build_geometry(config):
    """Materialize the configured geometry on top of the defaults."""
    overrides = config.geometry
    kwargs = {"slit_count": config.slit_count}
    if "field_amplitude" in overrides:
        kwargs["field_amplitude"] = _complex_of(overrides["field_amplitude"])
    if "wave_vector" in overrides:
        kwargs["wave_vector"] = overrides["wave_vector"]
    if "angular_frequency" in overrides:
        kwargs["angular_frequency"] = overrides["angular_frequency"]
    if "positions" in overrides:
        kwargs["positions"] = overrides["positions"]
    if "times" in overrides:
        kwargs["times"] = overrides["times"]
    if "polarizations" in overrides:
        kwargs["polarizations"] = [
            [[_complex_of(c) for c in vec] for vec in pair] for pair in overrides["polarizations"]
        ]
    try:
        return FieldGeometry(**kwargs)
    except ValueError as exc:
        raise ConfigError(f"geometry: {exc}", field="geometry") from exc
