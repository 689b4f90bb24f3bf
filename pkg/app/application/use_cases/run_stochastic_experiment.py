"""
Use Case: Contrastive Learning estocástico
n muestras generadas por una misma red oculta y gamma_t = a/(1+t)^p
"""
import logging

from app.application.dtos.experiment_dtos import ExperimentResult
from app.application.dtos.experiment_spec import ExperimentKind, ExperimentSpec
from app.application.use_cases.experiment_support import (
    bound_frame,
    input_rows,
    resolve_graph,
    trace_failures,
    unreachable_warnings,
)
from app.core.exceptions import ConfigurationError
from app.domain.repositories.i_repository import IGraphRepository
from app.domain.services.instances import hidden_conductances, make_rng, realized_training_set
from app.domain.services.learning import run_stochastic_cl, stochastic_bound_K
from app.domain.value_objects.conductance import ConductanceVector
from app.domain.value_objects.learning_config import LearningConfig
from app.domain.value_objects.step_schedule import PowerLawSchedule

logger = logging.getLogger(__name__)


class StochasticExperimentUseCase:
    """Una corrida estocástica; la traza completa es la tabla principal"""

    def __init__(self, graph_repository: IGraphRepository):
        self._graph_repository = graph_repository

    def execute(self, spec: ExperimentSpec) -> ExperimentResult:
        if spec.kind != ExperimentKind.STOCHASTIC:
            raise ConfigurationError(f"se esperaba stochastic, recibido {spec.kind.value}")

        graph = resolve_graph(spec, self._graph_repository)
        rng = make_rng(spec.seed)
        target = hidden_conductances(graph.num_branches, spec.epsilon, rng, spec.target_high, spec.target_low)
        samples = realized_training_set(graph, target, input_rows(spec, graph, rng, spec.samples))

        schedule = PowerLawSchedule(spec.schedule_a, spec.schedule_p)
        config = LearningConfig(
            schedule=schedule,
            epsilon=spec.epsilon,
            max_iterations=spec.iterations,
            stop_tolerance=spec.stop_tolerance,
            rng_seed=spec.seed,
            track_mean_error=spec.track_mean_error,
        )
        g0 = ConductanceVector.uniform(graph.num_branches, spec.g0, spec.epsilon)
        logger.info(f"CL estocástico sobre {graph}: n={len(samples)}, {schedule}")

        trace = run_stochastic_cl(graph, g0, samples, config)
        K_max = stochastic_bound_K(graph, samples, spec.epsilon)

        return ExperimentResult(
            spec=spec,
            table=trace.to_frame(),
            bound_table=bound_frame([(graph.num_branches, K_max)]),
            failures=trace_failures({"stochastic": trace}),
            warnings=unreachable_warnings(samples),
        )
