"""
Routes para experimentos y verificación
"""
from typing import Any, Optional

import numpy as np
from fastapi import APIRouter, Depends, HTTPException, Query
from fastapi.responses import PlainTextResponse

from app import __version__
from app.api.dependencies import (
    get_artifact_repository,
    get_compute_experiment_use_case,
    get_verification_use_case,
)
from app.api.errors import http_error
from app.api.models.schemas import ErrorResponse, SuiteSchema, VerificationResponseSchema
from app.application.dtos.experiment_dtos import VerificationRequest
from app.application.dtos.experiment_spec import ExperimentSpec
from app.application.use_cases import ComputeExperimentUseCase, VerificationUseCase
from app.core.config import get_settings
from app.core.exceptions import ResistNetError
from app.domain.repositories.i_repository import IArtifactRepository
from app.domain.value_objects.provenance import Provenance

router = APIRouter(tags=["experiments"])


def _jsonable(value: Any) -> Any:
    """Convierte arreglos y escalares numpy de los testigos a tipos JSON"""
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return value


@router.post(
    "/experiments",
    response_class=PlainTextResponse,
    responses={400: {"model": ErrorResponse}, 409: {"model": ErrorResponse}},
)
async def ejecutar_experimento(
    spec: ExperimentSpec,
    use_case: ComputeExperimentUseCase = Depends(get_compute_experiment_use_case),
    artifacts: IArtifactRepository = Depends(get_artifact_repository),
) -> PlainTextResponse:
    """
    Ejecuta un experimento y devuelve su CSV principal

    Raises:
        400: Si la especificación referencia archivos del servidor
        409: Si el solver falla (grafo disconexo)
    """
    if spec.graph_file is not None:
        raise HTTPException(status_code=400, detail="graph_file no está disponible por HTTP")
    try:
        result = use_case.execute(spec)
    except ResistNetError as e:
        raise http_error(e) from e

    provenance = Provenance(spec_hash=spec.fingerprint(), seed=spec.seed, version=__version__)
    return PlainTextResponse(
        artifacts.render(result.table, provenance),
        media_type="text/csv",
        headers={"X-Experiment-Status": "ok" if result.succeeded else "failed"},
    )


@router.get("/verification", response_model=VerificationResponseSchema)
async def verificar(
    seed: Optional[int] = Query(default=None, ge=0, description="Semilla; por defecto la de la configuración"),
    trials: Optional[int] = Query(default=None, ge=1, description="Pares del chequeo de Lipschitz"),
    use_case: VerificationUseCase = Depends(get_verification_use_case),
) -> VerificationResponseSchema:
    """Ejecuta las suites de verificación sobre instancias sembradas"""
    settings = get_settings()
    request = VerificationRequest(
        seed=settings.default_seed if seed is None else seed,
        lipschitz_trials=settings.lipschitz_trials if trials is None else trials,
        epsilon=settings.epsilon,
    )
    try:
        response = use_case.execute(request)
    except ResistNetError as e:
        raise http_error(e) from e

    return VerificationResponseSchema(
        seed=response.seed,
        passed=response.passed,
        suites=[
            SuiteSchema(
                name=suite.name,
                passed=suite.passed,
                instances=suite.instances,
                worst_value=None if np.isnan(suite.worst_value) else suite.worst_value,
                threshold=suite.threshold,
                witness=_jsonable(suite.witness),
            )
            for suite in response.suites
        ],
    )
