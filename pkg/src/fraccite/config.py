"""Run configuration and its digest."""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any

from .bibdata import YearRange
from .errors import PipelineError
from .stats.posthoc import METHODS

GRAPH_FORMATS = ("pajek", "dot", "both")


@dataclass(frozen=True)
class RunConfig:
    pub_window: YearRange = YearRange(2005, 2007)
    cite_window: YearRange = YearRange(2009, 2009)
    alpha: float = 0.05
    posthoc: str = "auto"
    include_self_citations: bool = True
    levene_center: str = "mean"
    # correlations on values rounded as printed (ties as in the tables)
    rounded_correlations: bool = True
    registry: Path | None = None
    inputs: tuple[Path, ...] = ()
    cited: tuple[Path, ...] = ()
    citing: tuple[Path, ...] = ()
    links: tuple[Path, ...] = ()
    out: Path = Path("out")
    format: str = "both"

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise PipelineError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.posthoc not in METHODS:
            raise PipelineError(f"posthoc must be one of {', '.join(METHODS)}, got {self.posthoc!r}")
        if self.format not in GRAPH_FORMATS:
            raise PipelineError(f"format must be one of {', '.join(GRAPH_FORMATS)}, got {self.format!r}")
        if self.levene_center not in ("mean", "median"):
            raise PipelineError(f"levene_center must be 'mean' or 'median', got {self.levene_center!r}")

    def settings(self) -> dict[str, Any]:
        """Analysis settings (no paths)."""
        return {
            "pub_window": str(self.pub_window),
            "cite_window": str(self.cite_window),
            "alpha": self.alpha,
            "posthoc": self.posthoc,
            "include_self_citations": self.include_self_citations,
            "levene_center": self.levene_center,
            "rounded_correlations": self.rounded_correlations,
        }

    def digest(self) -> str:
        """SHA-256 over the settings and the bytes of every input file.

        Output paths are left out, so the same analysis written to two
        directories carries the same digest.
        """
        h = hashlib.sha256()
        h.update(json.dumps(self.settings(), sort_keys=True).encode())
        for group in ("registry", "inputs", "cited", "citing", "links"):
            value = getattr(self, group)
            paths = [value] if isinstance(value, Path) else list(value or ())
            for p in paths:
                h.update(group.encode())
                h.update(hashlib.sha256(Path(p).read_bytes()).digest() if Path(p).exists() else b"missing")
        return h.hexdigest()

    def with_overrides(self, **kw) -> "RunConfig":
        kw = {k: v for k, v in kw.items() if v is not None}
        return replace(self, **_coerce(kw))


_PATH_LISTS = ("inputs", "cited", "citing", "links")


def _coerce(raw: dict[str, Any], base: Path | None = None) -> dict[str, Any]:
    known = {f.name for f in fields(RunConfig)}
    unknown = set(raw) - known
    if unknown:
        raise PipelineError(f"unknown config key(s): {', '.join(sorted(unknown))}")

    def path(p):
        p = Path(p)
        return p if base is None or p.is_absolute() else base / p

    out = {}
    for k, v in raw.items():
        if k in ("pub_window", "cite_window") and not isinstance(v, YearRange):
            v = YearRange.parse(v)
        elif k in _PATH_LISTS:
            v = tuple(path(p) for p in ([v] if isinstance(v, (str, Path)) else v))
        elif k in ("registry", "out"):
            v = path(v)
        elif k == "alpha":
            v = float(v)
        elif k == "posthoc":
            v = str(v).replace("-", "_")
        out[k] = v
    return out


def load_config(path: str | Path) -> RunConfig:
    """Read a JSON config file; relative paths resolve against its directory."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise PipelineError(f"cannot read config {path}: {exc}") from None
    if not isinstance(raw, dict):
        raise PipelineError(f"config {path} must hold a JSON object")
    return RunConfig(**_coerce(raw, path.parent))


def config_to_json(cfg: RunConfig) -> str:
    d = asdict(cfg)
    for k, v in d.items():
        if isinstance(v, Path):
            d[k] = str(v)
        elif isinstance(v, tuple) and k in _PATH_LISTS:
            d[k] = [str(p) for p in v]
        elif k in ("pub_window", "cite_window"):
            d[k] = str(getattr(cfg, k))
    return json.dumps(d, indent=2, sort_keys=True) + "\n"


__all__ = ["GRAPH_FORMATS", "RunConfig", "config_to_json", "load_config"]
