"""
Configuration management for the Stochastic Duel Solver
Handles environment variables and numerical defaults for simulation and inversion
"""

from pydantic_settings import BaseSettings
from pydantic import Field
from typing import Optional
from dotenv import load_dotenv

load_dotenv()

class Settings(BaseSettings):
    """Solver settings with environment variable support"""

    app_name: str = "Stochastic Duel Solver"
    log_level: str = "INFO"

    # Monte Carlo settings
    default_replications: int = Field(default=100_000, ge=1)
    default_seed: int = Field(default=12345, ge=0)
    threads: Optional[int] = None  # None uses every core
    show_progress: bool = False

    # t* search
    t_star_tolerance: float = Field(default=1e-12, gt=0)
    t_star_search_limit: float = 1e12

    # Laplace-Carson inversion
    inversion_order: int = 14
    inversion_agreement_tolerance: float = 1e-3

    # Moments by finite differences
    derivative_step: float = Field(default=1e-3, gt=0)
    derivative_agreement_tolerance: float = 1e-3

    # Adaptive quadrature
    quad_epsabs: float = 1e-13
    quad_epsrel: float = 1e-11
    quad_limit: int = 400

    # Reports
    default_format: str = "human"

    model_config = {
        "env_file": ".env",
        "env_file_encoding": "utf-8",
        "env_prefix": "DUEL_",
        "case_sensitive": False,
        "extra": "ignore"
    }

# Global settings instance
settings = Settings()
