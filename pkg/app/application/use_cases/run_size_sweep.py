"""
Use Case: Barrido de tamaños de red
Crossbars cuadrados de lado sqrt(B) con p_I = (1, ..., sqrt(B))
"""
from dataclasses import dataclass
import logging
import math

import numpy as np

from app.application.dtos.experiment_dtos import ExperimentResult
from app.application.dtos.experiment_spec import ExperimentKind, ExperimentSpec
from app.application.use_cases.experiment_support import (
    bound_frame,
    curves_frame,
    run_parallel,
    trace_failures,
    unreachable_warnings,
)
from app.core.exceptions import ConfigurationError
from app.domain.entities.circuit_graph import make_crossbar
from app.domain.entities.run_trace import RunTrace
from app.domain.services.instances import (
    hidden_conductances,
    ramp_inputs,
    realized_training_set,
)
from app.domain.services.learning import lipschitz_bound_K, run_contrastive_learning
from app.domain.value_objects.conductance import ConductanceVector
from app.domain.value_objects.learning_config import LearningConfig

logger = logging.getLogger(__name__)


@dataclass
class _SizeOutcome:
    branches: int
    K: float
    trace: RunTrace
    warnings: list[str]


class SizeSweepUseCase:
    """
    Para cada B de la lista corre el algoritmo determinista con el único gamma
    del experimento; cada tamaño usa su propia semilla derivada de seed
    """

    def execute(self, spec: ExperimentSpec) -> ExperimentResult:
        if spec.kind != ExperimentKind.SIZE_SWEEP:
            raise ConfigurationError(f"se esperaba size-sweep, recibido {spec.kind.value}")
        for branches in spec.branch_counts:
            if math.isqrt(branches) ** 2 != branches:
                raise ConfigurationError(f"B={branches} no es un cuadrado perfecto")

        gamma = spec.gammas[0]
        child_seeds = np.random.SeedSequence(spec.seed).spawn(len(spec.branch_counts))

        def run(job: tuple[int, np.random.SeedSequence]) -> _SizeOutcome:
            branches, seed_sequence = job
            side = math.isqrt(branches)
            graph = make_crossbar(side, side)
            rng = np.random.Generator(np.random.PCG64(seed_sequence))
            target = hidden_conductances(graph.num_branches, spec.epsilon, rng, spec.target_high, spec.target_low)
            samples = realized_training_set(graph, target, ramp_inputs(side))
            config = LearningConfig(
                gamma=gamma,
                epsilon=spec.epsilon,
                max_iterations=spec.iterations,
                stop_tolerance=spec.stop_tolerance,
            )
            g0 = ConductanceVector.uniform(graph.num_branches, spec.g0, spec.epsilon)
            return _SizeOutcome(
                branches=branches,
                K=lipschitz_bound_K(graph, samples[0].p_I, spec.epsilon),
                trace=run_contrastive_learning(graph, g0, samples[0], config),
                warnings=[f"B={branches}: {w}" for w in unreachable_warnings(samples)],
            )

        outcomes = run_parallel(run, list(zip(spec.branch_counts, child_seeds)), spec.threads)
        curves = {f"B_{o.branches}": o.trace for o in outcomes}
        for outcome in outcomes:
            logger.info(f"B={outcome.branches}: 2/K = {2.0 / outcome.K:.6e}, error final {outcome.trace.final_error:.3e}")

        return ExperimentResult(
            spec=spec,
            table=curves_frame(curves, spec.iterations),
            bound_table=bound_frame([(o.branches, o.K) for o in outcomes]),
            failures=trace_failures(curves),
            warnings=[w for o in outcomes for w in o.warnings],
        )
