"""
Domain Service: generadores de instancias aleatorias reproducibles

Todos los generadores reciben un numpy Generator (PCG64); la misma semilla
produce exactamente las mismas instancias en cualquier plataforma.
"""
from dataclasses import dataclass
from typing import Optional
import logging

import numpy as np
from numpy.typing import NDArray

from app.core.exceptions import InvalidArgumentError
from app.domain.entities.circuit_graph import CircuitGraph
from app.domain.entities.training import TrainingSample, TrainingSet
from app.domain.services.network_solver import solve_output_potentials
from app.domain.value_objects.conductance import ConductanceVector

logger = logging.getLogger(__name__)

MAX_CONNECTIVITY_ATTEMPTS = 1000


def make_rng(seed: int) -> np.random.Generator:
    """Generador PCG64 sembrado"""
    return np.random.Generator(np.random.PCG64(seed))


def random_connected_graph(
    num_nodes: int,
    edge_probability: float,
    rng: np.random.Generator,
    num_inputs: Optional[int] = None,
) -> CircuitGraph:
    """
    Grafo de Erdős–Rényi G(n, p) muestreado por rechazo hasta que sea conexo

    Las entradas son num_inputs nodos elegidos al azar (por defecto la mitad);
    el resto son salidas.
    """
    if num_nodes < 2:
        raise InvalidArgumentError("num_nodes", num_nodes, "se requieren al menos 2 nodos")
    if not 0 < edge_probability <= 1:
        raise InvalidArgumentError("edge_probability", edge_probability, "debe estar en (0, 1]")
    inputs_count = num_nodes // 2 if num_inputs is None else num_inputs
    if not 1 <= inputs_count < num_nodes:
        raise InvalidArgumentError("num_inputs", inputs_count, f"debe estar en [1, {num_nodes})")

    pairs = [(k, l) for k in range(num_nodes) for l in range(k + 1, num_nodes)]
    for attempt in range(1, MAX_CONNECTIVITY_ATTEMPTS + 1):
        keep = rng.random(len(pairs)) < edge_probability
        branches = tuple(pair for pair, kept in zip(pairs, keep) if kept)
        order = rng.permutation(num_nodes)
        graph = CircuitGraph(
            num_nodes=num_nodes,
            branches=branches,
            input_nodes=tuple(sorted(int(n) for n in order[:inputs_count])),
            output_nodes=tuple(sorted(int(n) for n in order[inputs_count:])),
        )
        if graph.is_connected():
            if attempt > 1:
                logger.debug(f"Grafo conexo tras {attempt} intentos (n={num_nodes}, p={edge_probability})")
            return graph

    raise InvalidArgumentError(
        "edge_probability",
        edge_probability,
        f"no se obtuvo un grafo conexo en {MAX_CONNECTIVITY_ATTEMPTS} intentos",
    )


def log_uniform_conductances(
    size: int,
    epsilon: float,
    rng: np.random.Generator,
    high: float = 10.0,
) -> ConductanceVector:
    """Conductancias log-uniformes en [eps, high]"""
    if not high > epsilon:
        raise InvalidArgumentError("high", high, f"debe ser mayor que epsilon={epsilon}")
    values = np.exp(rng.uniform(np.log(epsilon), np.log(high), size))
    return ConductanceVector(np.clip(values, epsilon, high), epsilon)


def hidden_conductances(
    size: int,
    epsilon: float,
    rng: np.random.Generator,
    high: float = 10.0,
    low: Optional[float] = None,
) -> ConductanceVector:
    """
    Conductancias de la red oculta que genera los objetivos

    Uniformes en (low, high]: high - (high - low) U con U en [0, 1).
    Sin low, el extremo inferior es eps.
    """
    lower = epsilon if low is None else low
    if lower < epsilon:
        raise InvalidArgumentError("low", lower, f"debe ser >= epsilon={epsilon}")
    if not high > lower:
        raise InvalidArgumentError("high", high, f"debe ser mayor que {lower}")
    values = high - (high - lower) * rng.random(size)
    return ConductanceVector(values, epsilon)


def ramp_inputs(num_inputs: int) -> NDArray[np.float64]:
    """p_I = (1, 2, ..., N_I)"""
    return np.arange(1, num_inputs + 1, dtype=np.float64)


def uniform_inputs(
    num_inputs: int,
    count: int,
    rng: np.random.Generator,
    low: float = -5.0,
    high: float = 5.0,
) -> NDArray[np.float64]:
    """count vectores de entrada uniformes en [low, high], forma (count, N_I)"""
    if count < 1:
        raise InvalidArgumentError("count", count, "debe ser >= 1")
    if not high > low:
        raise InvalidArgumentError("high", high, f"debe ser mayor que low={low}")
    return rng.uniform(low, high, size=(count, num_inputs))


def realized_training_set(
    graph: CircuitGraph,
    target: ConductanceVector,
    inputs: NDArray[np.float64],
) -> TrainingSet:
    """
    Objetivos factibles por construcción: p_O^D es la salida de la red oculta
    para cada fila de inputs
    """
    rows = np.atleast_2d(inputs)
    samples = [
        TrainingSample.from_potentials(graph, p_in, solve_output_potentials(graph, target, p_in))
        for p_in in rows
    ]
    return TrainingSet.of(samples)


@dataclass(frozen=True)
class RandomInstance:
    """Instancia de prueba: topología, punto g, muestra y red oculta"""
    graph: CircuitGraph
    g: ConductanceVector
    sample: TrainingSample
    target: ConductanceVector


def instance_on_graph(
    graph: CircuitGraph,
    rng: np.random.Generator,
    epsilon: float = 0.1,
    input_low: float = -1.0,
    input_high: float = 1.0,
) -> RandomInstance:
    """Conductancias, entradas y red oculta aleatorias sobre una topología dada"""
    g = log_uniform_conductances(graph.num_branches, epsilon, rng)
    target = hidden_conductances(graph.num_branches, epsilon, rng)
    inputs = uniform_inputs(graph.num_inputs, 1, rng, input_low, input_high)
    sample = realized_training_set(graph, target, inputs)[0]
    return RandomInstance(graph=graph, g=g, sample=sample, target=target)


def random_instance(
    rng: np.random.Generator,
    epsilon: float = 0.1,
    min_nodes: int = 4,
    max_nodes: int = 8,
    edge_probability: float = 0.5,
) -> RandomInstance:
    """
    Instancia pequeña sobre un grafo de Erdős–Rényi conexo

    Con max_nodes = 8 hay a lo sumo 28 ramas; entradas en [-1, 1] V para
    voltajes de orden 1
    """
    if not 2 <= min_nodes <= max_nodes:
        raise InvalidArgumentError("min_nodes", min_nodes, f"debe estar en [2, {max_nodes}]")
    num_nodes = int(rng.integers(min_nodes, max_nodes + 1))
    graph = random_connected_graph(num_nodes, edge_probability, rng)
    return instance_on_graph(graph, rng, epsilon)
