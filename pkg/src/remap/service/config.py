from __future__ import annotations

from pathlib import Path

from pydantic import BaseModel, field_validator


class ServiceConfig(BaseModel):
    listen: str = "127.0.0.1:8000"
    snapshot_path: Path
    default_threshold: float = 0.10
    default_alpha: float = 0.05
    static_dir: Path | None = None

    @field_validator("default_threshold")
    @classmethod
    def _threshold_range(cls, v: float) -> float:
        if not 0.0 < v < 1.0:
            raise ValueError("threshold must be in (0, 1)")
        return v

    @field_validator("default_alpha")
    @classmethod
    def _alpha_range(cls, v: float) -> float:
        if not 0.0 < v < 1.0:
            raise ValueError("alpha must be in (0, 1)")
        return v

    @property
    def host(self) -> str:
        return self.listen.rsplit(":", 1)[0]

    @property
    def port(self) -> int:
        return int(self.listen.rsplit(":", 1)[1])
