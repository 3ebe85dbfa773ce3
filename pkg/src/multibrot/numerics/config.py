"""Central numerical configuration; overridable from a key=value file."""
from __future__ import annotations

from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path


@dataclass(frozen=True)
class NumericsConfig:
    degree: int = 2
    escape_radius: float = 100.0
    substeps: int = 4
    depth: int = 60
    newton_steps: int = 200
    newton_tol: float = 1e-12
    #: three consecutive moves below this declare a trace landed
    landing_tol: float = 1e-9
    #: refined landing points further than this from the ray tip are rejected
    landing_radius: float = 0.1
    solver_tol: float = 1e-12
    boundary_tol: float = 1e-6
    cap_potential: float = 1.0 / 1024
    internal_steps: int = 64
    bailout: float = 1e10
    green_iter: int = 2000

    def with_overrides(self, **kw) -> "NumericsConfig":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})

    def as_dict(self) -> dict:
        return asdict(self)


def parse_config(text: str, base: NumericsConfig | None = None) -> NumericsConfig:
    base = base or NumericsConfig()
    types = {f.name: type(getattr(base, f.name)) for f in fields(base)}
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in types:
            raise ValueError(f"config line {lineno}: unknown key {key!r}")
        values[key] = types[key](float(value)) if types[key] is int else types[key](value)
    return replace(base, **values)


def load_config(path: str | Path | None, base: NumericsConfig | None = None) -> NumericsConfig:
    if path is None:
        return base or NumericsConfig()
    return parse_config(Path(path).read_text(), base)


DEFAULT = NumericsConfig()
