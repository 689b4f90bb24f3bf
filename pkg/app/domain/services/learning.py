"""
Domain Service: Contrastive Learning sobre redes de resistencias

Iteración de punto fijo g^{t+1} = P_{C_eps}(g^t - gamma_t h(g^t)) con
h(g) = (v^D)^2 - (v(g))^2, en sus variantes determinista, batch y estocástica.
"""
from dataclasses import dataclass, field
from typing import Callable, Optional
import logging

import numpy as np
from numpy.typing import ArrayLike, NDArray

from app.core.exceptions import (
    InvalidArgumentError,
    InvalidConductanceError,
    ResistNetError,
)
from app.domain.entities.circuit_graph import CircuitGraph
from app.domain.entities.run_trace import IterationRecord, RunStatus, RunTrace
from app.domain.entities.training import TrainingSample, TrainingSet
from app.domain.services.network_solver import as_vector, solve_network, total_power
from app.domain.value_objects.conductance import ConductanceVector
from app.domain.value_objects.learning_config import LearningConfig
from app.domain.value_objects.step_schedule import (
    ConstantSchedule,
    PowerLawSchedule,
    StepSchedule,
)

logger = logging.getLogger(__name__)

Projection = Callable[[NDArray[np.float64], float], ConductanceVector]

# (error en g^t, dirección h, índice de muestra usado)
_Evaluation = tuple[float, NDArray[np.float64], Optional[int]]


def project_c_eps(g: ArrayLike, epsilon: float) -> ConductanceVector:
    """
    Proyección euclídea sobre la caja C_eps: max(g_k, eps) por componente
    Idempotente
    """
    if not epsilon > 0:
        raise InvalidArgumentError("epsilon", epsilon, "debe ser positivo")
    values = np.asarray(g, dtype=np.float64).reshape(-1)
    return ConductanceVector(np.maximum(values, epsilon), epsilon)


def branch_update(
    g_k: float,
    v_k: float,
    v_desired_k: float,
    gamma: float,
    epsilon: float,
) -> float:
    """Regla local de una rama: solo usa g_k, v_k y v_k^D"""
    return max(g_k - gamma * (v_desired_k * v_desired_k - v_k * v_k), epsilon)


def surrogate_gradient_h(
    graph: CircuitGraph,
    g: ConductanceVector,
    sample: TrainingSample,
) -> NDArray[np.float64]:
    """h(g) = (v^D)^2 - (v(g))^2, gradiente parcial de Q-hat"""
    v = solve_network(graph, g, sample.p_I).v
    return sample.v_desired ** 2 - v ** 2


def cost_q(graph: CircuitGraph, g: ConductanceVector, sample: TrainingSample) -> float:
    """
    Q(g) = (v^D)^T G v^D - v(g)^T G v(g)
    No negativo por el principio de mínima potencia
    """
    state = solve_network(graph, g, sample.p_I)
    return total_power(g, sample.v_desired) - state.power


def cl_step(
    graph: CircuitGraph,
    g: ConductanceVector,
    sample: TrainingSample,
    gamma: float,
    projection: Projection = project_c_eps,
) -> ConductanceVector:
    """Un paso del operador T(g) = P_{C_eps}(g - gamma h(g))"""
    if not gamma > 0:
        raise InvalidArgumentError("gamma", gamma, "debe ser positivo")
    h = surrogate_gradient_h(graph, g, sample)
    return projection(g.values - gamma * h, g.epsilon)


def lipschitz_bound_K(graph: CircuitGraph, p_I: ArrayLike, epsilon: float) -> float:
    """
    Constante de Lipschitz de h sobre C_eps

    K = (2/eps) (||D_I|| + sqrt(N_I N_O) ||D_O||)^2 ||p_I||^2
    con normas espectrales (mayor valor singular)
    """
    if not epsilon > 0:
        raise InvalidArgumentError("epsilon", epsilon, "debe ser positivo")
    p_in = as_vector("p_I", p_I, graph.num_inputs)
    d_in, d_out = graph.partition_incidence()

    norm_in = float(np.linalg.norm(d_in, 2)) if d_in.size else 0.0
    norm_out = float(np.linalg.norm(d_out, 2)) if d_out.size else 0.0
    coupling = norm_in + np.sqrt(graph.num_inputs * graph.num_outputs) * norm_out
    return float(2.0 / epsilon * coupling ** 2 * np.dot(p_in, p_in))


def stochastic_bound_K(graph: CircuitGraph, samples: TrainingSet, epsilon: float) -> float:
    """K_max = max_l K(p_I_l): cada h_l es K_max-Lipschitz"""
    return max(lipschitz_bound_K(graph, sample.p_I, epsilon) for sample in samples)


def target_in_input_range(sample: TrainingSample) -> bool:
    """
    Condición necesaria de factibilidad

    p_O es combinación convexa de p_I, así que cada p_O^D debe caer en
    [min p_I, max p_I]
    """
    low, high = float(sample.p_I.min()), float(sample.p_I.max())
    return bool(np.all((sample.p_O_desired >= low) & (sample.p_O_desired <= high)))


@dataclass
class ScheduleDiagnostics:
    """Resultado de validate_schedule; advertencias, nunca fallos"""
    horizon: int
    positive: bool
    nonincreasing: bool
    divergent_sum: Optional[bool] = None
    square_summable: Optional[bool] = None
    warnings: list[str] = field(default_factory=list)

    @property
    def usable(self) -> bool:
        """Precondición de los drivers: positiva y no creciente en el horizonte"""
        return self.positive and self.nonincreasing

    @property
    def satisfies_conditions(self) -> bool:
        return self.usable and self.divergent_sum is True and self.square_summable is True


def validate_schedule(schedule: StepSchedule, horizon: int) -> ScheduleDiagnostics:
    """
    Revisa una secuencia de pasos en t = 0..horizon-1

    Positividad y monotonía se verifican numéricamente; sum gamma_t = inf y
    sum gamma_t^2 < inf solo se deciden simbólicamente para las familias
    conocidas (constante y a/(1+t)^p).
    """
    if horizon < 1:
        raise InvalidArgumentError("horizon", horizon, "debe ser >= 1")

    values = np.array([float(schedule(t)) for t in range(horizon)])
    diagnostics = ScheduleDiagnostics(
        horizon=horizon,
        positive=bool(np.all(values > 0)),
        nonincreasing=bool(np.all(np.diff(values) <= 0)),
    )

    if not diagnostics.positive:
        first = int(np.argmax(values <= 0))
        diagnostics.warnings.append(f"gamma_{first} = {values[first]:g} no es positivo")
    if not diagnostics.nonincreasing:
        first = int(np.argmax(np.diff(values) > 0))
        diagnostics.warnings.append(f"la secuencia crece entre t={first} y t={first + 1}")

    if isinstance(schedule, ConstantSchedule):
        diagnostics.divergent_sum = True
        diagnostics.square_summable = False
    elif isinstance(schedule, PowerLawSchedule):
        diagnostics.divergent_sum = schedule.divergent_sum
        diagnostics.square_summable = schedule.square_summable
    else:
        diagnostics.warnings.append(
            "secuencia arbitraria: las condiciones sobre sumas infinitas no se pueden verificar en un horizonte finito"
        )

    if diagnostics.divergent_sum is False:
        diagnostics.warnings.append("sum gamma_t < inf: no se garantiza convergencia")
    if diagnostics.square_summable is False:
        diagnostics.warnings.append("sum gamma_t^2 = inf: no se garantiza convergencia")

    for message in diagnostics.warnings:
        logger.warning(f"Schedule {schedule}: {message}")
    return diagnostics


def _check_start(g0: ConductanceVector, config: LearningConfig) -> None:
    if g0.values.size and g0.values.min() < config.epsilon:
        raise InvalidConductanceError(float(g0.values.min()), config.epsilon)


def _warn_step_size(gamma: float, bound: float) -> None:
    if bound > 0 and gamma >= 2.0 / bound:
        logger.warning(
            f"gamma={gamma:g} >= 2/K={2.0 / bound:.4e}: fuera del rango con convergencia garantizada"
        )


def _warn_unreachable(samples: TrainingSet) -> None:
    outside = [index for index, sample in enumerate(samples) if not target_in_input_range(sample)]
    if outside:
        logger.warning(f"Muestras con p_O^D fuera del rango de p_I (inalcanzables): {outside}")


def _drive(
    g0: ConductanceVector,
    config: LearningConfig,
    evaluate: Callable[[ConductanceVector, int], _Evaluation],
    projection: Projection,
    stop_on_error: bool = True,
) -> RunTrace:
    """
    Motor común de los drivers

    En cada t evalúa el error en g^t, decide si parar y si no aplica
    g^{t+1} = P(g^t - gamma_t h). Un fallo del solver corta la corrida y
    devuelve la traza parcial con estado ERROR.
    """
    trace = RunTrace()
    g = g0
    t = 0
    try:
        while True:
            error, direction, sample_index = evaluate(g, t)
            record = IterationRecord(
                t=t,
                error=error,
                conductances=g.values.copy() if config.keeps_conductances(t) else None,
            )
            trace.append(record)

            if stop_on_error and error <= config.stop_tolerance:
                return trace.finish(RunStatus.CONVERGED)
            if t >= config.max_iterations:
                return trace.finish(RunStatus.MAX_ITERATIONS)

            gamma = config.step_size(t)
            g_next = projection(g.values - gamma * direction, config.epsilon)
            record.residual = float(np.linalg.norm(g_next.values - g.values))
            record.gamma = gamma
            record.sample_index = sample_index
            g = g_next
            t += 1
    except ResistNetError as e:
        logger.error(f"Corrida abortada en t={t}: {e}")
        return trace.finish(RunStatus.ERROR, str(e))


def _log_result(name: str, trace: RunTrace) -> RunTrace:
    logger.info(
        f"{name}: {trace.status.value} tras {trace.iterations} iteraciones, "
        f"error final {trace.final_error:.3e}"
    )
    return trace


def run_contrastive_learning(
    graph: CircuitGraph,
    g0: ConductanceVector,
    sample: TrainingSample,
    config: LearningConfig,
    projection: Projection = project_c_eps,
) -> RunTrace:
    """
    Contrastive Learning determinista

    Itera hasta ||p_O(g^t) - p_O^D|| <= stop_tolerance o max_iterations
    """
    _check_start(g0, config)
    _warn_unreachable(TrainingSet.of([sample]))
    _warn_step_size(config.step_size(0), lipschitz_bound_K(graph, sample.p_I, config.epsilon))

    def evaluate(g: ConductanceVector, t: int) -> _Evaluation:
        state = solve_network(graph, g, sample.p_I)
        error = float(np.linalg.norm(state.p_O - sample.p_O_desired))
        return error, sample.v_desired ** 2 - state.v ** 2, None

    return _log_result("CL determinista", _drive(g0, config, evaluate, projection))


def run_batch_cl(
    graph: CircuitGraph,
    g0: ConductanceVector,
    samples: TrainingSet,
    config: LearningConfig,
    projection: Projection = project_c_eps,
) -> RunTrace:
    """
    Variante determinista sobre todo el set: h = (1/n) sum_l h_l
    El error registrado es el error medio sobre las muestras
    """
    _check_start(g0, config)
    _warn_unreachable(samples)
    _warn_step_size(config.step_size(0), stochastic_bound_K(graph, samples, config.epsilon))

    def evaluate(g: ConductanceVector, t: int) -> _Evaluation:
        errors = []
        direction = np.zeros(g.size)
        for sample in samples:
            state = solve_network(graph, g, sample.p_I)
            errors.append(np.linalg.norm(state.p_O - sample.p_O_desired))
            direction += sample.v_desired ** 2 - state.v ** 2
        return float(np.mean(errors)), direction / len(samples), None

    return _log_result("CL batch", _drive(g0, config, evaluate, projection))


def run_stochastic_cl(
    graph: CircuitGraph,
    g0: ConductanceVector,
    samples: TrainingSet,
    config: LearningConfig,
    projection: Projection = project_c_eps,
) -> RunTrace:
    """
    Contrastive Learning estocástico

    En cada t elige l uniforme con reemplazo (PCG64 sembrado con rng_seed) y
    aplica g^{t+1} = P(g^t - gamma_t h_l(g^t)). Con track_mean_error registra
    (1/n) sum_j ||p_Oj - p_Oj^D||; sin él registra solo el error de la
    muestra elegida y no aplica el criterio de parada.
    """
    _check_start(g0, config)
    schedule = config.schedule if config.schedule is not None else ConstantSchedule(float(config.gamma))  # type: ignore[arg-type]
    diagnostics = validate_schedule(schedule, config.max_iterations + 1)
    if not diagnostics.usable:
        raise InvalidArgumentError("schedule", str(config.schedule), "; ".join(diagnostics.warnings))
    _warn_unreachable(samples)

    rng = np.random.Generator(np.random.PCG64(config.rng_seed))
    count = len(samples)

    def evaluate(g: ConductanceVector, t: int) -> _Evaluation:
        if config.track_mean_error:
            states = [solve_network(graph, g, sample.p_I) for sample in samples]
            error = float(np.mean([
                np.linalg.norm(state.p_O - sample.p_O_desired)
                for state, sample in zip(states, samples)
            ]))
            index = int(rng.integers(count))
            state = states[index]
        else:
            index = int(rng.integers(count))
            state = solve_network(graph, g, samples[index].p_I)
            error = float(np.linalg.norm(state.p_O - samples[index].p_O_desired))
        return error, samples[index].v_desired ** 2 - state.v ** 2, index

    trace = _drive(g0, config, evaluate, projection, stop_on_error=config.track_mean_error)
    return _log_result("CL estocástico", trace)
