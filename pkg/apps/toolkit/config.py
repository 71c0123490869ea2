from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional

from django.core.management.base import CommandError

from apps.intervals.parser import parse_degrees, parse_set_spec
from apps.intervals.sets import IntervalSet

FORMATS = ("csv", "json")


@dataclass(frozen=True)
class RunConfig:
    """Аргументи одного запуску підкоманди після розбору."""
    spec: Optional[str]
    set: Optional[IntervalSet]
    x0: Optional[float]
    alpha: Optional[float]
    degrees: Optional[List[int]]
    grid: Optional[int]
    quad_points: Optional[int]
    tol: Optional[float]
    out: Optional[str]
    format: str

    @classmethod
    def from_options(cls, options: dict, default_format: str = "json") -> "RunConfig":
        spec = options.get("set")
        fmt = options.get("format") or default_format
        if fmt not in FORMATS:
            raise CommandError(f"--format must be one of {FORMATS}, got {fmt!r}")
        degrees = options.get("degrees")
        if options.get("n") is not None:
            degrees = str(options["n"])
        return cls(
            spec=spec,
            set=parse_set_spec(spec) if spec is not None else None,
            x0=options.get("x0"),
            alpha=options.get("alpha"),
            degrees=parse_degrees(degrees) if degrees is not None else None,
            grid=options.get("grid"),
            quad_points=options.get("quad_points"),
            tol=options.get("tol"),
            out=options.get("out"),
            format=fmt,
        )

    def require(self, *names):
        missing = [name for name in names if getattr(self, name) is None]
        if missing:
            flags = ", ".join("--" + ("set" if name == "set" else name.replace("_", "-")) for name in missing)
            raise CommandError(f"missing required argument(s): {flags}")
        return self
