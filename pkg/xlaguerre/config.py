"""Centralized configuration via environment variables.

Every numeric tolerance and runtime knob lives here. Override with XLAGUERRE_* env vars;
CLI flags take precedence where they exist.
"""

from typing import Literal

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_prefix="XLAGUERRE_")

    log_level: Literal["debug", "info", "warning", "error"] = "warning"

    # Quadrature: pass when error <= abs OR error <= rel * |value|
    quad_abs_tol: float = 1e-10
    quad_rel_tol: float = 1e-9
    quad_limit: int = Field(default=200, ge=10)

    # Roots
    root_polish_tol: float = 1e-12
    root_imag_tol: float = 1e-8
    polish_dps: int = Field(default=40, ge=16, le=400)
    bessel_tol: float = 1e-12

    # mpmath working precision for the tanh-sinh head of weighted integrals on (0, 1)
    quad_head_dps: int = Field(default=20, ge=15, le=200)

    # Spectral probes
    boundary_threshold: float = 1e-8
    probe_dps: int = Field(default=30, ge=15, le=200)

    # Symbolic memo tables (entries per table)
    memo_size: int = Field(default=4096, ge=16)

    # verify suites; 1 runs checks serially
    max_workers: int = Field(default=4, ge=1, le=64)

    @field_validator(
        "quad_abs_tol",
        "quad_rel_tol",
        "root_polish_tol",
        "root_imag_tol",
        "bessel_tol",
        "boundary_threshold",
    )
    @classmethod
    def _positive(cls, v: float) -> float:
        if not v > 0:
            raise ValueError(f"tolerance must be positive, got {v}")
        return v


settings = Settings()
