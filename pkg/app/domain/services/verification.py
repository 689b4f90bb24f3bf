"""
Domain Service: suites de verificación de propiedades

Cada suite recorre instancias sembradas y devuelve un SuiteResult con el
peor valor observado y, si falla, un testigo.
"""
from dataclasses import dataclass
from typing import Any, Callable, Optional
import logging

import numpy as np
import pandas as pd

from app.core.exceptions import PropertyViolationError
from app.domain.entities.circuit_graph import CircuitGraph, make_crossbar
from app.domain.entities.run_trace import RunStatus
from app.domain.entities.training import TrainingSet
from app.domain.services.analysis import (
    check_lipschitz_cocoercive,
    io_map_matrix,
    jacobian_report,
    min_power_gap,
)
from app.domain.services.instances import (
    RandomInstance,
    hidden_conductances,
    instance_on_graph,
    make_rng,
    ramp_inputs,
    random_instance,
    realized_training_set,
)
from app.domain.services.learning import (
    Projection,
    lipschitz_bound_K,
    project_c_eps,
    run_contrastive_learning,
    run_stochastic_cl,
)
from app.domain.value_objects.conductance import ConductanceVector
from app.domain.value_objects.learning_config import LearningConfig
from app.domain.value_objects.step_schedule import PowerLawSchedule

logger = logging.getLogger(__name__)

InstanceFactory = Callable[[np.random.Generator], RandomInstance]

JACOBIAN_FD_TOL = 1e-5
JACOBIAN_SYMMETRY_TOL = 1e-12
JACOBIAN_EIGEN_TOL = 1e-10
ROW_SUM_TOL = 1e-10
ENTRY_TOL = 1e-12
RESIDUAL_TOL = 1e-12
POWER_TOL = 1e-12
PERTURBATION_NORM = 0.1


@dataclass
class SuiteResult:
    """Resultado de una suite: pasa o no, con el peor valor frente a su umbral"""
    name: str
    passed: bool
    instances: int
    worst_value: float
    threshold: float
    witness: Optional[dict[str, Any]] = None
    table: Optional[pd.DataFrame] = None
    summary: str = ""

    def __str__(self) -> str:
        verdict = "OK" if self.passed else "FALLA"
        return (
            f"[{verdict}] {self.name}: {self.instances} instancias, "
            f"peor={self.worst_value:.3e} (umbral {self.threshold:.1e})"
        )


def instance_factory(graph: Optional[CircuitGraph] = None, epsilon: float = 0.1) -> InstanceFactory:
    """Instancias sobre un grafo fijo o sobre grafos de Erdős–Rényi aleatorios"""
    if graph is None:
        return lambda rng: random_instance(rng, epsilon)
    return lambda rng: instance_on_graph(graph, rng, epsilon)


def _finish(result: SuiteResult) -> SuiteResult:
    if result.passed:
        logger.info(str(result))
    else:
        logger.warning(f"{result} testigo={result.witness}")
    return result


def jacobian_suite(
    seed: int,
    instances: int = 50,
    step: float = 1e-6,
    factory: Optional[InstanceFactory] = None,
) -> SuiteResult:
    """Jacobiano cerrado frente a diferencias finitas, simetría, PSD y cota K"""
    build = factory or instance_factory()
    rng = make_rng(seed)
    worst, witness = 0.0, None

    for index in range(instances):
        instance = build(rng)
        # margen sobre epsilon para las diferencias centrales
        g = ConductanceVector(np.maximum(instance.g.values, instance.g.epsilon + 10 * step), instance.g.epsilon)
        report = jacobian_report(instance.graph, g, instance.sample, step)
        bound = lipschitz_bound_K(instance.graph, instance.sample.p_I, g.epsilon)
        worst = max(worst, report.fd_defect)
        failed = (
            report.fd_defect > JACOBIAN_FD_TOL
            or report.symmetry_defect > JACOBIAN_SYMMETRY_TOL
            or report.min_eigenvalue < -JACOBIAN_EIGEN_TOL
            or report.max_eigenvalue > bound
        )
        if failed and witness is None:
            witness = {
                "instance": index,
                "fd_defect": report.fd_defect,
                "symmetry_defect": report.symmetry_defect,
                "min_eigenvalue": report.min_eigenvalue,
                "max_eigenvalue": report.max_eigenvalue,
                "K": bound,
            }

    return _finish(SuiteResult("jacobian", witness is None, instances, worst, JACOBIAN_FD_TOL, witness))


def row_stochastic_suite(
    seed: int,
    instances: int = 100,
    factory: Optional[InstanceFactory] = None,
) -> SuiteResult:
    """Filas del mapa entrada-salida suman 1 y sus entradas están en [0, 1]"""
    build = factory or instance_factory()
    rng = make_rng(seed)
    worst, witness = 0.0, None

    for index in range(instances):
        instance = build(rng)
        M = io_map_matrix(instance.graph, instance.g)
        row_defect = float(np.max(np.abs(M.sum(axis=1) - 1.0), initial=0.0))
        below = float(-M.min()) if M.size else 0.0
        above = float(M.max() - 1.0) if M.size else 0.0
        worst = max(worst, row_defect)
        if (row_defect > ROW_SUM_TOL or below > ENTRY_TOL or above > ENTRY_TOL) and witness is None:
            witness = {"instance": index, "row_sum_defect": row_defect, "min_entry": float(M.min()), "max_entry": float(M.max())}

    return _finish(SuiteResult("row_stochastic", witness is None, instances, worst, ROW_SUM_TOL, witness))


def lipschitz_cocoercive_suite(
    seed: int,
    trials: int = 10_000,
    graph: Optional[CircuitGraph] = None,
    epsilon: float = 0.1,
) -> SuiteResult:
    """
    Pares de conductancias sobre una topología (por defecto el crossbar 40x30
    con p_I = 1..40)
    """
    rng = make_rng(seed)
    if graph is None:
        graph = make_crossbar(40, 30)
        inputs = ramp_inputs(graph.num_inputs)
    else:
        inputs = rng.uniform(-1.0, 1.0, graph.num_inputs)
    target = hidden_conductances(graph.num_branches, epsilon, rng)
    sample = realized_training_set(graph, target, inputs)[0]

    try:
        diagnostics = check_lipschitz_cocoercive(graph, sample, epsilon, trials, seed)
    except PropertyViolationError as e:
        return _finish(SuiteResult("lipschitz_cocoercive", False, trials, float("nan"), 1.0, e.witness))
    return _finish(
        SuiteResult(
            "lipschitz_cocoercive",
            True,
            trials,
            diagnostics.worst_lipschitz_ratio,
            1.0,
            table=diagnostics.to_frame(),
            summary=diagnostics.summary(),
        )
    )


def residual_monotonicity_suite(
    seed: int,
    instances: int = 20,
    iterations: int = 500,
    factory: Optional[InstanceFactory] = None,
) -> SuiteResult:
    """Con gamma = 1/K el residuo ||g^{t+1} - g^t|| no crece"""
    build = factory or instance_factory()
    rng = make_rng(seed)
    worst, witness = 0.0, None

    for index in range(instances):
        instance = build(rng)
        gamma = 1.0 / lipschitz_bound_K(instance.graph, instance.sample.p_I, instance.g.epsilon)
        config = LearningConfig(
            gamma=gamma,
            epsilon=instance.g.epsilon,
            max_iterations=iterations,
            stop_tolerance=0.0,
        )
        trace = run_contrastive_learning(instance.graph, instance.g, instance.sample, config)
        increments = np.diff(trace.residuals())
        growth = float(increments.max()) if increments.size else 0.0
        worst = max(worst, growth)
        if (growth > RESIDUAL_TOL or trace.status == RunStatus.ERROR) and witness is None:
            step = int(np.argmax(increments)) if increments.size else 0
            witness = {"instance": index, "t": step, "growth": growth, "status": trace.status.value}

    return _finish(SuiteResult("residual_monotonicity", witness is None, instances, worst, RESIDUAL_TOL, witness))


def minimum_power_suite(
    seed: int,
    instances: int = 50,
    perturbations: int = 100,
    factory: Optional[InstanceFactory] = None,
) -> SuiteResult:
    """S(p_I, p_O(g)) <= S(p_I, p_O(g) + delta) para direcciones aleatorias con ||delta|| = 0.1"""
    build = factory or instance_factory()
    rng = make_rng(seed)
    worst, witness = 0.0, None

    for index in range(instances):
        instance = build(rng)
        deltas = rng.normal(size=(perturbations, instance.graph.num_outputs))
        deltas *= PERTURBATION_NORM / np.linalg.norm(deltas, axis=1, keepdims=True)
        gap = min_power_gap(instance.graph, instance.g, instance.sample.p_I, deltas)
        if gap is None:
            continue
        worst = max(worst, -gap)
        if gap < -POWER_TOL and witness is None:
            witness = {"instance": index, "power_gap": gap}

    return _finish(SuiteResult("minimum_power", witness is None, instances, worst, POWER_TOL, witness))


def feasibility_suite(
    seed: int,
    instances: int = 10,
    iterations: int = 30,
    projection: Projection = project_c_eps,
    factory: Optional[InstanceFactory] = None,
) -> SuiteResult:
    """
    Todos los iterados de ambos algoritmos quedan en C_eps

    Usa pasos grandes para que la proyección esté activa; la proyección es
    inyectable para poder probar la suite contra una proyección defectuosa.
    """
    build = factory or instance_factory()
    rng = make_rng(seed)
    worst, witness = 0.0, None

    for index in range(instances):
        instance = build(rng)
        epsilon = instance.g.epsilon
        deterministic = LearningConfig(
            gamma=10.0, epsilon=epsilon, max_iterations=iterations, conductance_stride=1
        )
        stochastic = LearningConfig(
            schedule=PowerLawSchedule(10.0, 1.0),
            epsilon=epsilon,
            max_iterations=iterations,
            rng_seed=seed,
            conductance_stride=1,
        )
        traces = [
            run_contrastive_learning(instance.graph, instance.g, instance.sample, deterministic, projection),
            run_stochastic_cl(
                instance.graph, instance.g, TrainingSet.of([instance.sample]), stochastic, projection
            ),
        ]
        for trace in traces:
            stored = [r.conductances for r in trace.records if r.conductances is not None]
            lowest = min((float(g.min()) for g in stored if g.size), default=epsilon)
            worst = max(worst, epsilon - lowest)
            if (lowest < epsilon or trace.status == RunStatus.ERROR) and witness is None:
                witness = {"instance": index, "min_conductance": lowest, "status": trace.status.value, "message": trace.message}

    return _finish(SuiteResult("feasibility", witness is None, instances, worst, 0.0, witness))


def run_verification(
    seed: int,
    lipschitz_trials: int = 10_000,
    graph: Optional[CircuitGraph] = None,
    epsilon: float = 0.1,
    projection: Projection = project_c_eps,
) -> list[SuiteResult]:
    """
    Ejecuta todas las suites con semillas derivadas de seed

    Con graph, las instancias usan esa topología en lugar de grafos aleatorios
    """
    factory = instance_factory(graph, epsilon)
    seeds = np.random.SeedSequence(seed).generate_state(6, dtype=np.uint64)
    results = [
        jacobian_suite(int(seeds[0]), factory=factory),
        row_stochastic_suite(int(seeds[1]), factory=factory),
        lipschitz_cocoercive_suite(int(seeds[2]), lipschitz_trials, graph, epsilon),
        residual_monotonicity_suite(int(seeds[3]), factory=factory),
        minimum_power_suite(int(seeds[4]), factory=factory),
        feasibility_suite(int(seeds[5]), projection=projection, factory=factory),
    ]
    failed = [r.name for r in results if not r.passed]
    logger.info(f"Verificación seed={seed}: {len(results) - len(failed)}/{len(results)} suites OK {failed or ''}")
    return results
