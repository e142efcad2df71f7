"""
Application Settings Configuration
Loads verification settings from environment variables
"""

import os
from pathlib import Path
from pydantic_settings import BaseSettings
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

class Settings(BaseSettings):
    """Verification settings loaded from environment variables"""

    # Logging Configuration
    ENABLE_LOGGING: bool = os.getenv("ENABLE_LOGGING", "True").lower() == "true"
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")
    LOG_FILE_PATH: str = os.getenv("LOG_FILE_PATH", "./logs/verification.log")

    # Prefect Configuration
    # Empty URL runs flows against an ephemeral local API
    PREFECT_API_URL: str = os.getenv("PREFECT_API_URL", "")
    USE_PREFECT: bool = os.getenv("USE_PREFECT", "False").lower() == "true"
    MAX_WORKERS: int = int(os.getenv("MAX_WORKERS", "4"))

    # Reproducibility
    SEED: int = int(os.getenv("SEED", "20240607"))

    # Symbolic engine
    SYMRING_GCD_REDUCE: bool = os.getenv("SYMRING_GCD_REDUCE", "True").lower() == "true"
    GOLDEN_DIR: str = os.getenv("GOLDEN_DIR", "./data/golden")

    # Finite differences and linear algebra
    FD_STEP: float = float(os.getenv("FD_STEP", "1e-3"))
    RICHARDSON_LEVELS: int = int(os.getenv("RICHARDSON_LEVELS", "2"))
    PROBE_COUNT: int = int(os.getenv("PROBE_COUNT", "20"))
    KERNEL_THRESHOLD: float = float(os.getenv("KERNEL_THRESHOLD", "1e-10"))
    LSTSQ_RCOND: float = float(os.getenv("LSTSQ_RCOND", "1e-10"))
    ROOT_TOLERANCE: float = float(os.getenv("ROOT_TOLERANCE", "1e-12"))

    # Fixtures
    KERR_MASS: float = float(os.getenv("KERR_MASS", "1.0"))
    KERR_SPIN: float = float(os.getenv("KERR_SPIN", "0.5"))

    # Flat solver
    LMAX: int = int(os.getenv("LMAX", "6"))
    SIGMA_MIN_BAND: float = float(os.getenv("SIGMA_MIN_BAND", "2.0"))

    # Output Configuration
    OUTPUT_DIR: str = os.getenv("OUTPUT_DIR", "./outputs")
    TOOL_VERSION: str = os.getenv("TOOL_VERSION", "0.1.0")

    # Tolerances, one per check family
    TOL_COMPLEMENTING: float = float(os.getenv("TOL_COMPLEMENTING", "1e-8"))
    TOL_VACUUM: float = float(os.getenv("TOL_VACUUM", "1e-6"))
    TOL_IDENTITY: float = float(os.getenv("TOL_IDENTITY", "1e-5"))
    TOL_INVARIANCE: float = float(os.getenv("TOL_INVARIANCE", "1e-6"))
    TOL_FLAT_SPLIT: float = float(os.getenv("TOL_FLAT_SPLIT", "1e-8"))
    TOL_BOUNDARY: float = float(os.getenv("TOL_BOUNDARY", "1e-8"))
    TOL_GAUGE: float = float(os.getenv("TOL_GAUGE", "1e-8"))
    TOL_INTERIOR: float = float(os.getenv("TOL_INTERIOR", "1e-10"))
    TOL_STABILITY: float = float(os.getenv("TOL_STABILITY", "1e-8"))

    @property
    def tolerances(self) -> dict:
        """Get the TOL_* fields as a {family: tolerance} dict"""
        return {
            name[len("TOL_"):].lower(): getattr(self, name)
            for name in sorted(type(self).model_fields)
            if name.startswith("TOL_")
        }

    # Base directory
    BASE_DIR: Path = Path(__file__).resolve().parent.parent

    class Config:
        env_file = ".env"
        case_sensitive = True

# Global settings instance
settings = Settings()
