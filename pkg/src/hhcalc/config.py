from __future__ import annotations

import json
import logging
import os
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any

logger = logging.getLogger(__name__)

DEFAULT_CONFIG = Path(__file__).resolve().parents[2] / "config" / "engine.json"


def resolve_macros(value: Any) -> Any:
    """Expand ``{ENV:VAR}`` / ``{ENV:VAR:default}``; anything else passes through."""
    if not isinstance(value, str):
        return value
    if value.startswith("{ENV:") and value.endswith("}"):
        _, var, *rest = value[1:-1].split(":", 2)
        default = rest[0] if rest else ""
        return os.getenv(var, default)
    return value


def _as_bool(value: Any) -> bool:
    if isinstance(value, str):
        return value.strip().lower() in ("1", "true", "yes", "on")
    return bool(value)


def _as_optional_int(value: Any) -> int | None:
    return None if value in (None, "") else int(value)


@dataclass
class EngineConfig:
    max_m: int = 26
    coeff: str = "gf2"
    jobs: int = 1
    chunksize: int = 64
    cache_dir: Path | None = None
    check_cochain: bool = False
    result_xsd: Path | None = None

    @classmethod
    def load(cls, path: Path | None = None) -> "EngineConfig":
        """Read ``config/engine.json`` (or ``path``); a missing default file gives defaults."""
        path = Path(path) if path else DEFAULT_CONFIG
        if not path.exists():
            if path != DEFAULT_CONFIG:
                raise FileNotFoundError(f"config file not found: {path}")
            logger.debug("no config at %s, using defaults", path)
            return cls()
        data = {k: resolve_macros(v) for k, v in json.loads(path.read_text(encoding="utf-8")).items()}
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            logger.warning("ignoring unknown config keys in %s: %s", path, ", ".join(unknown))

        xsd = data.get("result_xsd")
        if xsd:
            xsd = Path(xsd)
            if not xsd.is_absolute():
                xsd = (path.parent / xsd).resolve()
        cache_dir = data.get("cache_dir")
        return cls(
            max_m=int(data.get("max_m", 26)),
            coeff=str(data.get("coeff", "gf2")),
            jobs=_as_optional_int(data.get("jobs")) or 1,
            chunksize=int(data.get("chunksize", 64)),
            cache_dir=Path(cache_dir) if cache_dir else None,
            check_cochain=_as_bool(data.get("check_cochain", False)),
            result_xsd=xsd,
        )

    def override(self, **values: Any) -> "EngineConfig":
        """Apply CLI flags; ``None`` means "not given"."""
        given = {k: v for k, v in values.items() if v is not None}
        if "max_m" in given and given["max_m"] > self.max_m:
            logger.warning(
                "raising the vertex cap from %d to %d: enumeration is 2^m subsets",
                self.max_m, given["max_m"],
            )
        return replace(self, **given)

    def engine_options(self) -> dict[str, Any]:
        return {"jobs": self.jobs, "max_m": self.max_m, "chunksize": self.chunksize}
