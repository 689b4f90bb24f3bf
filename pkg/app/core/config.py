"""
Core configuration settings
Aplicando Dependency Inversion y Single Responsibility
"""
from pydantic_settings import BaseSettings
from pathlib import Path
from functools import lru_cache


class Settings(BaseSettings):
    """Application settings with environment variable support"""

    # Application
    app_name: str = "ResistNet Contrastive Learning"
    app_version: str = "0.1.0"
    debug: bool = False
    log_level: str = "INFO"

    # API
    api_prefix: str = "/api/v1"
    allowed_origins: list[str] = ["http://localhost:3000", "http://localhost:5173"]

    # Output
    base_dir: Path = Path(__file__).resolve().parent.parent.parent
    output_dir: Path = base_dir / "results"
    float_format: str = "%.17g"  # 17 cifras significativas

    # Valores por defecto de la librería
    epsilon: float = 0.1
    default_seed: int = 42
    lipschitz_trials: int = 10_000

    class Config:
        env_file = ".env"
        env_prefix = "RESISTNET_"
        case_sensitive = False


@lru_cache()
def get_settings() -> Settings:
    """
    Singleton pattern para settings
    lru_cache asegura una sola instancia
    """
    return Settings()
