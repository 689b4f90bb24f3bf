"""
Dependency Injection Container
Configura las dependencias para FastAPI
Aplicando Dependency Injection y Singleton patterns
"""
from app.application.use_cases import (
    ComputeBoundUseCase,
    ComputeExperimentUseCase,
    VerificationUseCase,
)
from app.core.config import get_settings
from app.domain.repositories.i_repository import IArtifactRepository, IGraphRepository
from app.infrastructure.repositories import CsvArtifactRepository, FileGraphRepository

# Singletons (se crean una sola vez)
_graph_repo: IGraphRepository | None = None
_artifact_repo: IArtifactRepository | None = None


def initialize_repositories() -> None:
    """Crea los repositorios; se llama una sola vez al inicio de la aplicación"""
    global _graph_repo, _artifact_repo

    if _graph_repo is not None and _artifact_repo is not None:
        return  # Ya inicializados

    settings = get_settings()
    _graph_repo = FileGraphRepository()
    _artifact_repo = CsvArtifactRepository(settings.output_dir, settings.float_format)


def get_graph_repository() -> IGraphRepository:
    """
    Dependency provider para IGraphRepository
    Usado por FastAPI con Depends()
    """
    if _graph_repo is None:
        initialize_repositories()
    return _graph_repo  # type: ignore


def get_artifact_repository() -> IArtifactRepository:
    """Dependency provider para IArtifactRepository"""
    if _artifact_repo is None:
        initialize_repositories()
    return _artifact_repo  # type: ignore


# Use Cases factories
def get_compute_bound_use_case() -> ComputeBoundUseCase:
    return ComputeBoundUseCase()


def get_compute_experiment_use_case() -> ComputeExperimentUseCase:
    """Factory para ComputeExperimentUseCase"""
    return ComputeExperimentUseCase(get_graph_repository())


def get_verification_use_case() -> VerificationUseCase:
    """Factory para VerificationUseCase"""
    return VerificationUseCase(get_graph_repository())
