"""
Use Case: Barrido de tamaños de paso
Aplicando Single Responsibility y Dependency Inversion
"""
import logging

from app.application.dtos.experiment_dtos import ExperimentResult
from app.application.dtos.experiment_spec import ExperimentKind, ExperimentSpec
from app.application.use_cases.experiment_support import (
    bound_frame,
    curves_frame,
    input_rows,
    resolve_graph,
    run_parallel,
    trace_failures,
    unreachable_warnings,
)
from app.core.exceptions import ConfigurationError
from app.domain.entities.run_trace import RunTrace
from app.domain.repositories.i_repository import IGraphRepository
from app.domain.services.instances import hidden_conductances, make_rng, realized_training_set
from app.domain.services.learning import lipschitz_bound_K, run_contrastive_learning
from app.domain.value_objects.conductance import ConductanceVector
from app.domain.value_objects.learning_config import LearningConfig

logger = logging.getLogger(__name__)


class StepSizeSweepUseCase:
    """
    Corre el algoritmo determinista para cada gamma de la lista sobre la misma
    instancia: g0 uniforme y objetivo generado por una red oculta uniforme en
    (target_low, target_high], con target_low = eps por defecto
    """

    def __init__(self, graph_repository: IGraphRepository):
        self._graph_repository = graph_repository

    def execute(self, spec: ExperimentSpec) -> ExperimentResult:
        """
        Returns:
            Tabla t, gamma_<valor>... con ||p_O - p_O^D|| por iteración y la
            tabla de cota con 2/K de la instancia

        Raises:
            ConfigurationError: Si la especificación no es de este tipo
        """
        if spec.kind != ExperimentKind.STEP_SIZE_SWEEP:
            raise ConfigurationError(f"se esperaba step-size-sweep, recibido {spec.kind.value}")

        graph = resolve_graph(spec, self._graph_repository)
        rng = make_rng(spec.seed)
        target = hidden_conductances(graph.num_branches, spec.epsilon, rng, spec.target_high, spec.target_low)
        samples = realized_training_set(graph, target, input_rows(spec, graph, rng, 1))
        sample = samples[0]
        g0 = ConductanceVector.uniform(graph.num_branches, spec.g0, spec.epsilon)
        K = lipschitz_bound_K(graph, sample.p_I, spec.epsilon)
        logger.info(f"Barrido de pasos sobre {graph}: 2/K = {2.0 / K:.6e}, gammas={spec.gammas}")

        def run(gamma: float) -> RunTrace:
            config = LearningConfig(
                gamma=gamma,
                epsilon=spec.epsilon,
                max_iterations=spec.iterations,
                stop_tolerance=spec.stop_tolerance,
            )
            return run_contrastive_learning(graph, g0, sample, config)

        traces = run_parallel(run, spec.gammas, spec.threads)
        curves = {f"gamma_{gamma:g}": trace for gamma, trace in zip(spec.gammas, traces)}

        return ExperimentResult(
            spec=spec,
            table=curves_frame(curves, spec.iterations),
            bound_table=bound_frame([(graph.num_branches, K)]),
            failures=trace_failures(curves),
            warnings=unreachable_warnings(samples),
        )
