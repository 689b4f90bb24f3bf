"""
Use Case: Ejecutar un experimento y persistir sus artefactos
Aplicando Strategy (un caso de uso por tipo) y Dependency Inversion
"""
from pathlib import Path
import logging

from app.application.dtos.experiment_dtos import (
    ExperimentResult,
    ExperimentRunResponse,
    VerificationRequest,
)
from app.application.dtos.experiment_spec import ExperimentKind, ExperimentSpec
from app.application.use_cases.experiment_support import bound_frame
from app.application.use_cases.run_size_sweep import SizeSweepUseCase
from app.application.use_cases.run_step_size_sweep import StepSizeSweepUseCase
from app.application.use_cases.run_stochastic_experiment import StochasticExperimentUseCase
from app.application.use_cases.run_verification import VerificationUseCase
from app.domain.repositories.i_repository import IArtifactRepository, IGraphRepository
from app.domain.value_objects.provenance import Provenance

logger = logging.getLogger(__name__)


class ComputeExperimentUseCase:
    """Despacha según kind y devuelve las tablas sin escribir nada"""

    def __init__(self, graph_repository: IGraphRepository):
        self._graph_repository = graph_repository

    def execute(self, spec: ExperimentSpec) -> ExperimentResult:
        logger.info(f"Experimento '{spec.artifact_name}' ({spec.kind.value}), seed={spec.seed}")

        if spec.kind == ExperimentKind.STEP_SIZE_SWEEP:
            result = StepSizeSweepUseCase(self._graph_repository).execute(spec)
        elif spec.kind == ExperimentKind.SIZE_SWEEP:
            result = SizeSweepUseCase().execute(spec)
        elif spec.kind == ExperimentKind.STOCHASTIC:
            result = StochasticExperimentUseCase(self._graph_repository).execute(spec)
        else:
            result = self._verify(spec)

        for warning in result.warnings:
            logger.warning(warning)
        for failure in result.failures:
            logger.error(failure)
        return result

    def _verify(self, spec: ExperimentSpec) -> ExperimentResult:
        response = VerificationUseCase(self._graph_repository).execute(
            VerificationRequest(
                seed=spec.seed,
                lipschitz_trials=spec.verify_trials,
                epsilon=spec.epsilon,
                graph_file=spec.graph_file,
            )
        )
        lipschitz = next((s for s in response.suites if s.table is not None), None)
        return ExperimentResult(
            spec=spec,
            table=response.to_frame(),
            bound_table=lipschitz.table if lipschitz is not None else bound_frame([]),
            failures=[f"{s.name}: {s.witness}" for s in response.suites if not s.passed],
            summary=lipschitz.summary if lipschitz is not None else "",
        )


class RunExperimentUseCase:
    """
    Calcula el experimento y escribe name.csv y name_bound.csv en output_dir

    En verify el segundo artefacto es name_lipschitz.csv con la línea resumen
    """

    def __init__(
        self,
        graph_repository: IGraphRepository,
        artifact_repository: IArtifactRepository,
        version: str,
    ):
        self._compute = ComputeExperimentUseCase(graph_repository)
        self._artifacts = artifact_repository
        self._version = version

    def provenance(self, spec: ExperimentSpec) -> Provenance:
        return Provenance(spec_hash=spec.fingerprint(), seed=spec.seed, version=self._version)

    def execute(self, spec: ExperimentSpec) -> ExperimentRunResponse:
        result = self._compute.execute(spec)
        provenance = self.provenance(spec)
        name = spec.artifact_name

        secondary = f"{name}_lipschitz" if spec.kind == ExperimentKind.VERIFY else f"{name}_bound"
        paths: list[Path] = [
            self._artifacts.save(name, result.table, provenance),
            self._artifacts.save(secondary, result.bound_table, provenance, result.summary or None),
        ]
        logger.info(f"Artefactos escritos: {[str(p) for p in paths]}")
        return ExperimentRunResponse(result=result, artifacts=paths)

