"""
Domain Service: análisis numérico de la estructura del operador de aprendizaje

Matriz W, Jacobiano cerrado de h y su oráculo por diferencias finitas,
gradiente completo de Q, mapa entrada-salida y chequeos de Lipschitz y
cocoercividad.
"""
from dataclasses import dataclass, field
from typing import Optional
import logging
import math

import numpy as np
import pandas as pd
from numpy.typing import NDArray

from app.core.exceptions import InvalidArgumentError, PropertyViolationError
from app.domain.entities.circuit_graph import CircuitGraph
from app.domain.entities.training import TrainingSample
from app.domain.services.instances import make_rng
from app.domain.services.learning import lipschitz_bound_K, surrogate_gradient_h
from app.domain.services.network_solver import (
    factorize_output_block,
    network_power,
    solve_network,
)
from app.domain.value_objects.conductance import ConductanceVector

logger = logging.getLogger(__name__)

DIAGNOSTIC_COLUMNS = ["trial", "lipschitz_ratio", "cocoercivity_slack"]

# holgura relativa para redondeo en las desigualdades de Lipschitz/cocoercividad
INEQUALITY_RTOL = 1e-9


def w_matrix(graph: CircuitGraph, g: ConductanceVector) -> NDArray[np.float64]:
    """W(g) = D_O^T (D_O G D_O^T)^{-1} D_O, simétrica semidefinida positiva"""
    block = factorize_output_block(graph, g)
    return block.d_out.T @ block.solve(block.d_out)


def jacobian_closed_form(
    graph: CircuitGraph,
    g: ConductanceVector,
    sample: TrainingSample,
) -> NDArray[np.float64]:
    """J(g) = 2 diag(v) W diag(v), Jacobiano de h sobre C_eps"""
    v = solve_network(graph, g, sample.p_I).v
    return 2.0 * v[:, None] * w_matrix(graph, g) * v[None, :]


def jacobian_finite_difference(
    graph: CircuitGraph,
    g: ConductanceVector,
    sample: TrainingSample,
    step: float = 1e-6,
) -> NDArray[np.float64]:
    """
    Oráculo por diferencias centrales de h

    Columna k = (h(g + step e_k) - h(g - step e_k)) / (2 step)

    Raises:
        InvalidArgumentError: Si g no está en el interior de C_eps con margen step
    """
    if not step > 0:
        raise InvalidArgumentError("step", step, "debe ser positivo")
    if not g.is_interior(step):
        raise InvalidArgumentError("g", str(g), f"se requiere margen > {step:g} sobre epsilon")

    columns = []
    for k in range(g.size):
        offset = np.zeros(g.size)
        offset[k] = step
        forward = surrogate_gradient_h(graph, ConductanceVector(g.values + offset, g.epsilon), sample)
        backward = surrogate_gradient_h(graph, ConductanceVector(g.values - offset, g.epsilon), sample)
        columns.append((forward - backward) / (2.0 * step))
    return np.column_stack(columns) if columns else np.zeros((0, 0))


@dataclass
class JacobianReport:
    """
    Resumen del Jacobiano en un punto

    Los defectos usan la norma de máxima entrada
    """
    J: NDArray[np.float64]
    symmetry_defect: float
    min_eigenvalue: float
    max_eigenvalue: float
    fd_defect: float


def jacobian_report(
    graph: CircuitGraph,
    g: ConductanceVector,
    sample: TrainingSample,
    step: float = 1e-6,
) -> JacobianReport:
    J = jacobian_closed_form(graph, g, sample)
    J_fd = jacobian_finite_difference(graph, g, sample, step)
    # eigvalsh de la parte simétrica: robusto ante asimetría de redondeo
    eigenvalues = np.linalg.eigvalsh((J + J.T) / 2.0)
    return JacobianReport(
        J=J,
        symmetry_defect=float(np.max(np.abs(J - J.T), initial=0.0)),
        min_eigenvalue=float(eigenvalues.min()) if eigenvalues.size else 0.0,
        max_eigenvalue=float(eigenvalues.max()) if eigenvalues.size else 0.0,
        fd_defect=float(np.max(np.abs(J - J_fd), initial=0.0)),
    )


def full_gradient_q(
    graph: CircuitGraph,
    g: ConductanceVector,
    sample: TrainingSample,
) -> NDArray[np.float64]:
    """
    Gradiente completo de Q (no distribuido)

    dQ/dg_k = h_k + 2 (v^T G W e_k)(e_k^T v), usando dv/dg_k = -W e_k e_k^T v
    """
    v = solve_network(graph, g, sample.p_I).v
    W = w_matrix(graph, g)
    h = sample.v_desired ** 2 - v ** 2
    return h + 2.0 * (W @ (g.values * v)) * v


def gradient_gap(graph: CircuitGraph, g: ConductanceVector, sample: TrainingSample) -> float:
    """||grad Q - h||, solo diagnóstico"""
    return float(np.linalg.norm(full_gradient_q(graph, g, sample) - surrogate_gradient_h(graph, g, sample)))


def io_map_matrix(graph: CircuitGraph, g: ConductanceVector) -> NDArray[np.float64]:
    """M(g) = -(D_O G D_O^T)^{-1} D_O G D_I^T, con p_O = M p_I"""
    block = factorize_output_block(graph, g)
    return np.atleast_2d(block.solve(-block.d_out_g @ block.d_in.T)).reshape(
        graph.num_outputs, graph.num_inputs
    )


def _line_integral(
    graph: CircuitGraph,
    sample: TrainingSample,
    start: NDArray[np.float64],
    end: NDArray[np.float64],
    epsilon: float,
    nodes: NDArray[np.float64],
    weights: NDArray[np.float64],
) -> float:
    """Integral de h a lo largo del segmento start -> end (Gauss-Legendre)"""
    direction = end - start
    total = 0.0
    for node, weight in zip(nodes, weights):
        point = start + (node + 1.0) / 2.0 * direction
        h = surrogate_gradient_h(graph, ConductanceVector(np.maximum(point, epsilon), epsilon), sample)
        total += weight / 2.0 * float(np.dot(h, direction))
    return total


def path_independence_defect(
    graph: CircuitGraph,
    sample: TrainingSample,
    g_start: ConductanceVector,
    g_end: ConductanceVector,
    g_via: ConductanceVector,
    points: int = 32,
) -> float:
    """
    Diferencia entre la integral de h por el camino recto g_start -> g_end y
    por el camino quebrado g_start -> g_via -> g_end

    Los tres puntos están en C_eps y los segmentos también (convexidad), así
    que la diferencia es cero salvo error de cuadratura si h es conservativo.
    """
    if points < 1:
        raise InvalidArgumentError("points", points, "debe ser >= 1")
    epsilon = g_start.epsilon
    nodes, weights = np.polynomial.legendre.leggauss(points)
    direct = _line_integral(graph, sample, g_start.values, g_end.values, epsilon, nodes, weights)
    detour = _line_integral(graph, sample, g_start.values, g_via.values, epsilon, nodes, weights)
    detour += _line_integral(graph, sample, g_via.values, g_end.values, epsilon, nodes, weights)
    return abs(direct - detour)


@dataclass
class LipschitzDiagnostics:
    """
    Resultado del barrido de pares

    lipschitz_ratio = ||h(g) - h(g')|| / (K ||g - g'||), debe ser <= 1
    cocoercivity_slack = (h(g) - h(g'))^T (g - g') - ||h(g) - h(g')||^2 / K, debe ser >= 0
    """
    K: float
    trials: int
    lipschitz_ratios: list[float] = field(default_factory=list)
    cocoercivity_slacks: list[float] = field(default_factory=list)
    violations: list[int] = field(default_factory=list)

    @property
    def worst_lipschitz_ratio(self) -> float:
        return max(self.lipschitz_ratios, default=0.0)

    @property
    def worst_cocoercivity_slack(self) -> float:
        return min(self.cocoercivity_slacks, default=0.0)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "trial": np.arange(len(self.lipschitz_ratios)),
                "lipschitz_ratio": self.lipschitz_ratios,
                "cocoercivity_slack": self.cocoercivity_slacks,
            },
            columns=DIAGNOSTIC_COLUMNS,
        )

    def summary(self) -> str:
        return (
            f"K={self.K!r} trials={self.trials} violations={len(self.violations)} "
            f"worst_lipschitz_ratio={self.worst_lipschitz_ratio!r} "
            f"worst_cocoercivity_slack={self.worst_cocoercivity_slack!r}"
        )


def _pair_scores(
    h_a: NDArray[np.float64],
    h_b: NDArray[np.float64],
    g_a: NDArray[np.float64],
    g_b: NDArray[np.float64],
    K: float,
) -> tuple[float, float, bool]:
    dh = h_a - h_b
    dg = g_a - g_b
    dg_norm = float(np.linalg.norm(dg))
    dh_norm = float(np.linalg.norm(dh))
    inner = float(np.dot(dh, dg))

    if K == 0.0:
        # p_I = 0: h es constante y cualquier cambio en h viola ambas cotas
        if dh_norm == 0.0:
            return 0.0, inner, False
        return math.inf, -math.inf, True

    ratio = dh_norm / (K * dg_norm) if dg_norm > 0 else 0.0
    slack = inner - dh_norm ** 2 / K
    scale = max(abs(inner), dh_norm ** 2 / K, np.finfo(float).tiny)
    violated = ratio > 1.0 + INEQUALITY_RTOL or slack < -INEQUALITY_RTOL * scale
    return ratio, slack, violated


def check_lipschitz_cocoercive(
    graph: CircuitGraph,
    sample: TrainingSample,
    epsilon: float,
    trials: int,
    rng_seed: int,
    raise_on_violation: bool = True,
) -> LipschitzDiagnostics:
    """
    Verifica ||h(g) - h(g')|| <= K ||g - g'|| y la (1/K)-cocoercividad de h

    Los pares se muestrean log-uniformes en [eps, 10^3 eps] con un PCG64
    sembrado con rng_seed.

    Raises:
        PropertyViolationError: Con el primer par violador como testigo
    """
    if trials < 1:
        raise InvalidArgumentError("trials", trials, "debe ser >= 1")

    K = lipschitz_bound_K(graph, sample.p_I, epsilon)
    diagnostics = LipschitzDiagnostics(K=K, trials=trials)
    rng = make_rng(rng_seed)
    low, high = np.log(epsilon), np.log(1e3 * epsilon)

    for trial in range(trials):
        g_a = np.maximum(np.exp(rng.uniform(low, high, graph.num_branches)), epsilon)
        g_b = np.maximum(np.exp(rng.uniform(low, high, graph.num_branches)), epsilon)
        h_a = surrogate_gradient_h(graph, ConductanceVector(g_a, epsilon), sample)
        h_b = surrogate_gradient_h(graph, ConductanceVector(g_b, epsilon), sample)

        ratio, slack, violated = _pair_scores(h_a, h_b, g_a, g_b, K)
        diagnostics.lipschitz_ratios.append(ratio)
        diagnostics.cocoercivity_slacks.append(slack)
        if violated:
            diagnostics.violations.append(trial)
            if raise_on_violation:
                raise PropertyViolationError(
                    "lipschitz-cocoercive",
                    {"trial": trial, "lipschitz_ratio": ratio, "cocoercivity_slack": slack, "g": g_a, "g_prime": g_b},
                )

    logger.info(f"Lipschitz/cocoercividad: {diagnostics.summary()}")
    return diagnostics


def min_power_gap(
    graph: CircuitGraph,
    g: ConductanceVector,
    p_I: NDArray[np.float64],
    perturbations: NDArray[np.float64],
) -> Optional[float]:
    """
    min_delta S(p_I, p_O + delta) - S(p_I, p_O) sobre las filas de perturbations
    None si no hay perturbaciones
    """
    state = solve_network(graph, g, p_I)
    gaps = [
        network_power(graph, g, p_I, state.p_O + delta) - state.power
        for delta in np.atleast_2d(perturbations)
    ]
    return min(gaps) if gaps else None
