"""System definition files.

INI-style text read with :mod:`configparser`::

    [component:<name>]     one section per substitution
    a = ab                 symbol = image word (single-character symbols)
    alphabet = ab          optional explicit alphabet order (default: sorted)

    [system]
    union = fib, tm        components of the disjoint union, in order; repeats allowed
    allow_nonprimitive = no

    [bounds]               defaults for the CLI searches
    max_len = 2
    shift = 2
    level = 4
    coeff = 3
    budget = 256

The environment variable ``CLOPEN_ORDER_BUDGET`` overrides ``budget``.
"""

from __future__ import annotations

import configparser
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .systems import SubshiftComponent, Substitution, SystemSpace

__all__ = ["SystemConfig", "ConfigError", "load_config", "parse_config", "resolve_system", "bundled_systems"]

BUDGET_ENV = "CLOPEN_ORDER_BUDGET"

DEFAULT_BOUNDS = {"max_len": 2, "shift": 2, "level": 4, "coeff": 3, "budget": 256}


class ConfigError(ValueError):
    """Invalid system definition."""


@dataclass
class SystemConfig:
    name: str
    components: dict[str, Substitution]
    union: list[str]
    bounds: dict[str, int] = field(default_factory=lambda: dict(DEFAULT_BOUNDS))
    allow_nonprimitive: bool = False

    def build(self) -> SystemSpace:
        comps = []
        seen: dict[str, int] = {}
        for entry in self.union:
            sub = self.components[entry]
            if not sub.is_primitive():
                hint = " (allow_nonprimitive is set, but only primitive components are supported)" if self.allow_nonprimitive else ""
                raise ConfigError(f"component {entry!r} is not primitive{hint}")
            k = seen.get(entry, 0)
            seen[entry] = k + 1
            label = entry if k == 0 else f"{entry}#{k + 1}"
            try:
                comps.append(SubshiftComponent(sub, label))
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
        return SystemSpace(comps, self.name)


def parse_config(text: str, name: str = "") -> SystemConfig:
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(str(exc)) from None
    components: dict[str, Substitution] = {}
    for section in cp.sections():
        if not section.startswith("component:"):
            continue
        cname = section.split(":", 1)[1].strip()
        if not cname:
            raise ConfigError("component section without a name")
        items = dict(cp.items(section))
        alphabet = items.pop("alphabet", None)
        rules = {k: v.strip() for k, v in items.items()}
        try:
            sub = Substitution.from_strings(rules, list(alphabet.strip()) if alphabet else None)
        except ValueError as exc:
            raise ConfigError(f"component {cname!r}: {exc}") from None
        components[cname] = sub
    if not components:
        raise ConfigError("no [component:<name>] sections")
    if cp.has_section("system") and cp.has_option("system", "union"):
        union = [s.strip() for s in cp.get("system", "union").split(",") if s.strip()]
    else:
        union = list(components)
    missing = [u for u in union if u not in components]
    if missing:
        raise ConfigError(f"union refers to undeclared components {missing}")
    if not union:
        raise ConfigError("empty union")
    allow = cp.getboolean("system", "allow_nonprimitive", fallback=False) if cp.has_section("system") else False
    bounds = dict(DEFAULT_BOUNDS)
    if cp.has_section("bounds"):
        for key, value in cp.items("bounds"):
            try:
                bounds[key] = int(value)
            except ValueError:
                raise ConfigError(f"bound {key!r} must be an integer") from None
    env = os.environ.get(BUDGET_ENV)
    if env:
        try:
            bounds["budget"] = int(env)
        except ValueError:
            raise ConfigError(f"{BUDGET_ENV} must be an integer") from None
    return SystemConfig(name, components, union, bounds, allow)


def load_config(path) -> SystemConfig:
    path = Path(path)
    return parse_config(path.read_text(), path.stem)


def bundled_systems() -> list[str]:
    root = resources.files("clopen_order") / "configs"
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".cfg"))


def resolve_system(name_or_path: str) -> SystemConfig:
    """A config file path, or the name of a bundled system such as ``fib``."""
    path = Path(name_or_path)
    if path.is_file():
        return load_config(path)
    res = resources.files("clopen_order") / "configs" / f"{name_or_path}.cfg"
    if res.is_file():
        return parse_config(res.read_text(), name_or_path)
    raise ConfigError(f"no config file or bundled system named {name_or_path!r} (bundled: {', '.join(bundled_systems())})")
