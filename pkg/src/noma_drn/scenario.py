"""Scenario files: flat ``dotted.key = value`` TOML documents.

Example::

    name = "fig2-jml"
    pa.alpha1 = 0.9602
    links.sr1.m = 1.0
    links.sr1.omega = 2.0
    snr_grid_db = [0, 5, 10]

Every diagnostic names the line of the offending key.
"""
from __future__ import annotations

import re
import sys
from importlib import resources
from pathlib import Path

from .channel import NakagamiParams
from .errors import ConfigurationError
from .phy import PowerAllocation
from .simulator import Links, ScenarioConfig

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

LINK_NAMES = ("sr1", "sr2", "r1d", "r2d")
_FLOAT_KEYS = {"pa.alpha1", "pa.alpha2", "pa.beta", "pa.ps", "pa.pr"} | {
    f"links.{l}.{p}" for l in LINK_NAMES for p in ("m", "omega")
}
_INT_KEYS = {"modulation.m1", "modulation.m2", "trials", "seed", "early_stop_errors"}
_STR_KEYS = {"name", "description", "destination_detector"}
_BOOL_KEYS = {"genie_phase2"}
_LIST_KEYS = {"snr_grid_db"}
KNOWN_KEYS = _FLOAT_KEYS | _INT_KEYS | _STR_KEYS | _BOOL_KEYS | _LIST_KEYS
REQUIRED_KEYS = _FLOAT_KEYS - {"pa.ps", "pa.pr"}


class ScenarioFileError(ConfigurationError):
    def __init__(self, source: str, line: int | None, msg: str):
        self.source = source
        self.line = line
        where = f"{source}:{line}" if line else source
        super().__init__(f"{where}: {msg}")


def _flatten(d, prefix=""):
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            yield from _flatten(v, key + ".")
        else:
            yield key, v


def _key_lines(text: str) -> dict[str, int]:
    lines = {}
    pat = re.compile(r"^\s*([A-Za-z0-9_.\-\"]+)\s*=")
    for n, line in enumerate(text.splitlines(), 1):
        m = pat.match(line)
        if m:
            lines.setdefault(m.group(1).replace('"', ""), n)
    return lines


def parse_scenario(text: str, source: str = "<scenario>") -> ScenarioConfig:
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        m = re.search(r"line (\d+)", str(exc))
        raise ScenarioFileError(source, int(m.group(1)) if m else None, str(exc)) from None
    lines = _key_lines(text)
    flat = dict(_flatten(doc))

    def fail(key, msg):
        raise ScenarioFileError(source, lines.get(key), f"{key}: {msg}")

    for key, value in flat.items():
        if key not in KNOWN_KEYS:
            fail(key, "unknown key")
        if key in _FLOAT_KEYS and (isinstance(value, bool) or not isinstance(value, (int, float))):
            fail(key, f"expected a number, got {value!r}")
        if key in _INT_KEYS and (isinstance(value, bool) or not isinstance(value, int)):
            fail(key, f"expected an integer, got {value!r}")
        if key in _STR_KEYS and not isinstance(value, str):
            fail(key, f"expected a string, got {value!r}")
        if key in _BOOL_KEYS and not isinstance(value, bool):
            fail(key, f"expected true/false, got {value!r}")
        if key in _LIST_KEYS and (
            not isinstance(value, list)
            or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in value)
        ):
            fail(key, "expected a list of numbers")
    for key in sorted(REQUIRED_KEYS - flat.keys()):
        raise ScenarioFileError(source, None, f"missing required key {key}")

    try:
        pa = PowerAllocation(
            flat["pa.alpha1"], flat["pa.alpha2"], flat["pa.beta"],
            flat.get("pa.ps", 1.0), flat.get("pa.pr", 1.0),
        )
    except ConfigurationError as exc:
        fail("pa.alpha1", str(exc))
    links = []
    for name in LINK_NAMES:
        try:
            links.append(NakagamiParams(flat[f"links.{name}.m"], flat[f"links.{name}.omega"]))
        except ConfigurationError as exc:
            fail(f"links.{name}.m", str(exc))

    kwargs = {
        "name": flat.get("name", Path(source).stem),
        "m1": flat.get("modulation.m1", 2),
        "m2": flat.get("modulation.m2", 2),
        "trials": flat.get("trials", 1_000_000),
        "seed": flat.get("seed", 0),
        "destination_detector": flat.get("destination_detector", "jml"),
        "genie_phase2": flat.get("genie_phase2", False),
        "early_stop_errors": flat.get("early_stop_errors", 0),
    }
    if "snr_grid_db" in flat:
        kwargs["snr_grid_db"] = tuple(flat["snr_grid_db"])
    try:
        return ScenarioConfig(pa, Links(*links), **kwargs)
    except ConfigurationError as exc:
        msg = str(exc)
        key = next((k for k in ("snr_grid_db", "trials", "destination_detector",
                                "early_stop_errors", "seed") if k in msg), None)
        if key is None:
            key = "modulation.m1" if "order" in msg else "name"
        fail(key, msg)


def load_scenario(path) -> ScenarioConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigurationError(f"cannot read scenario {path}: {exc}") from None
    return parse_scenario(text, str(path))


def dump_scenario(cfg: ScenarioConfig, description: str = "") -> str:
    def num(x):
        return repr(float(x))

    out = [f'name = "{cfg.name}"']
    if description:
        out.append(f'description = "{description}"')
    pa = cfg.pa
    out += [
        f"pa.alpha1 = {num(pa.alpha1)}",
        f"pa.alpha2 = {num(pa.alpha2)}",
        f"pa.beta = {num(pa.beta)}",
        f"pa.ps = {num(pa.ps)}",
        f"pa.pr = {num(pa.pr)}",
    ]
    for name, link in zip(LINK_NAMES, cfg.links.as_tuple()):
        out += [f"links.{name}.m = {num(link.m)}", f"links.{name}.omega = {num(link.omega)}"]
    grid = ", ".join(f"{s:g}" for s in cfg.snr_grid_db)
    out += [
        f"modulation.m1 = {cfg.m1}",
        f"modulation.m2 = {cfg.m2}",
        f"snr_grid_db = [{grid}]",
        f"trials = {cfg.trials}",
        f"seed = {cfg.seed}",
        f'destination_detector = "{cfg.destination_detector}"',
        f"genie_phase2 = {str(cfg.genie_phase2).lower()}",
        f"early_stop_errors = {cfg.early_stop_errors}",
    ]
    return "\n".join(out) + "\n"


def _preset_dir():
    return resources.files("noma_drn") / "scenarios"


def list_presets() -> list[str]:
    return sorted(p.name[:-5] for p in _preset_dir().iterdir() if p.name.endswith(".toml"))


def preset_text(name: str) -> str:
    f = _preset_dir() / f"{name}.toml"
    if not f.is_file():
        raise ConfigurationError(f"unknown preset {name!r}; see `noma-drn presets`")
    return f.read_text()


def load_preset(name: str) -> ScenarioConfig:
    return parse_scenario(preset_text(name), f"preset:{name}")


def resolve_scenario(ref: str) -> ScenarioConfig:
    """A path to a scenario file, or the name of a shipped preset."""
    if Path(ref).is_file():
        return load_scenario(ref)
    return load_preset(ref)
