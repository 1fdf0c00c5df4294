"""Layered config: defaults → ~/.xduce/config.toml → .xduce.toml → env vars → CLI flags."""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    try:
        import tomllib
    except ImportError:
        import tomli as tomllib  # type: ignore[no-redef]

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


@dataclass
class Config:
    # Resource limits (search bounds themselves are never defaulted)
    node_budget: int = 2_000_000
    state_budget: int = 100_000
    output_cap: int = 1_000

    # Harness
    jobs: int = 1

    log_level: str = "WARNING"

    # Extra directories searched for machine files given by name
    corpus_dirs: list[str] = field(default_factory=list)


def load(
    node_budget: int | None = None,
    state_budget: int | None = None,
    jobs: int | None = None,
    log_level: str | None = None,
) -> Config:
    """Load config with layered precedence."""
    cfg = Config()

    # Layer 2: ~/.xduce/config.toml
    global_cfg = Path.home() / ".xduce" / "config.toml"
    if global_cfg.exists():
        _apply_toml(cfg, global_cfg)

    # Layer 3: .xduce.toml in cwd
    local_cfg = Path.cwd() / ".xduce.toml"
    if local_cfg.exists():
        _apply_toml(cfg, local_cfg)

    # Layer 4: environment variables
    if v := os.environ.get("XDUCE_NODE_BUDGET"):
        cfg.node_budget = int(v)
    if v := os.environ.get("XDUCE_STATE_BUDGET"):
        cfg.state_budget = int(v)
    if v := os.environ.get("XDUCE_OUTPUT_CAP"):
        cfg.output_cap = int(v)
    if v := os.environ.get("XDUCE_JOBS"):
        cfg.jobs = int(v)
    if v := os.environ.get("XDUCE_LOG_LEVEL"):
        cfg.log_level = v.upper()

    # Layer 5: CLI flags
    if node_budget is not None:
        cfg.node_budget = node_budget
    if state_budget is not None:
        cfg.state_budget = state_budget
    if jobs is not None:
        cfg.jobs = jobs
    if log_level:
        cfg.log_level = log_level.upper()

    if cfg.log_level not in LOG_LEVELS:
        cfg.log_level = "WARNING"
    return cfg


def _apply_toml(cfg: Config, path: Path) -> None:
    with open(path, "rb") as f:
        data = tomllib.load(f)

    if v := data.get("node_budget"):
        cfg.node_budget = int(v)
    if v := data.get("state_budget"):
        cfg.state_budget = int(v)
    if v := data.get("output_cap"):
        cfg.output_cap = int(v)
    if v := data.get("jobs"):
        cfg.jobs = int(v)
    if v := data.get("log_level"):
        cfg.log_level = str(v).upper()
    if v := data.get("corpus_dirs"):
        cfg.corpus_dirs = [str(p) for p in v]


def save_toml(cfg: Config, scope: str = "local") -> Path:
    """Persist editable config fields using read-merge-write (preserves unknown keys)."""
    import tomli_w  # not imported at module level to keep startup lean

    if scope == "global":
        path = Path.home() / ".xduce" / "config.toml"
        path.parent.mkdir(parents=True, exist_ok=True)
    else:
        path = Path.cwd() / ".xduce.toml"

    data: dict = {}
    if path.exists():
        try:
            with open(path, "rb") as f:
                data = tomllib.load(f)
        except Exception:
            data = {}

    data["node_budget"] = cfg.node_budget
    data["state_budget"] = cfg.state_budget
    data["output_cap"] = cfg.output_cap
    data["jobs"] = cfg.jobs
    data["log_level"] = cfg.log_level
    if cfg.corpus_dirs:
        data["corpus_dirs"] = list(cfg.corpus_dirs)
    else:
        data.pop("corpus_dirs", None)

    with open(path, "wb") as f:
        tomli_w.dump(data, f)

    return path


# Module-level active config (set once in cli.py startup)
_active: Config | None = None


def get() -> Config:
    return _active if _active is not None else Config()


def set_active(cfg: Config) -> None:
    global _active
    _active = cfg
