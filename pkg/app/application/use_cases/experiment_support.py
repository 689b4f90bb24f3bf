"""
Piezas compartidas por los casos de uso de experimentos
"""
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar
import logging

import numpy as np
import pandas as pd
from numpy.typing import NDArray

from app.application.dtos.experiment_dtos import BOUND_COLUMNS
from app.application.dtos.experiment_spec import ExperimentSpec, InputSource
from app.core.exceptions import ConfigurationError
from app.domain.entities.circuit_graph import CircuitGraph, make_crossbar
from app.domain.entities.run_trace import RunStatus, RunTrace
from app.domain.entities.training import TrainingSet
from app.domain.repositories.i_repository import IGraphRepository
from app.domain.services.instances import ramp_inputs, uniform_inputs
from app.domain.services.learning import target_in_input_range

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def resolve_graph(spec: ExperimentSpec, graph_repository: IGraphRepository) -> CircuitGraph:
    """Topología del experimento: archivo de grafo o crossbar n_in x n_out"""
    if spec.graph_file is not None:
        return graph_repository.load_graph(spec.graph_file)
    if spec.n_in is None or spec.n_out is None:
        raise ConfigurationError("se requiere graph_file o n_in y n_out")
    return make_crossbar(spec.n_in, spec.n_out)


def input_rows(
    spec: ExperimentSpec,
    graph: CircuitGraph,
    rng: np.random.Generator,
    count: int,
) -> NDArray[np.float64]:
    """count filas de potenciales de entrada según input_source"""
    if spec.input_source == InputSource.RAMP:
        return np.tile(ramp_inputs(graph.num_inputs), (count, 1))
    return uniform_inputs(graph.num_inputs, count, rng, spec.input_low, spec.input_high)


def bound_frame(rows: Sequence[tuple[int, float]]) -> pd.DataFrame:
    """Tabla branches,K,two_over_K"""
    return pd.DataFrame(
        {
            "branches": [branches for branches, _ in rows],
            "K": [K for _, K in rows],
            "two_over_K": [2.0 / K if K > 0 else float("inf") for _, K in rows],
        },
        columns=BOUND_COLUMNS,
    )


def curves_frame(curves: dict[str, RunTrace], iterations: int) -> pd.DataFrame:
    """
    Una columna de error por corrida, indexada por t = 0..iterations
    Corridas que terminan antes quedan con celdas vacías
    """
    frame = pd.DataFrame({"t": np.arange(iterations + 1)})
    for column, trace in curves.items():
        errors = np.full(iterations + 1, np.nan)
        values = trace.errors()
        errors[: values.size] = values
        frame[column] = errors
    return frame


def unreachable_warnings(samples: TrainingSet) -> list[str]:
    return [
        f"muestra {index}: p_O^D fuera del rango de p_I, objetivo inalcanzable"
        for index, sample in enumerate(samples)
        if not target_in_input_range(sample)
    ]


def trace_failures(curves: dict[str, RunTrace]) -> list[str]:
    return [
        f"{label}: {trace.message}"
        for label, trace in curves.items()
        if trace.status == RunStatus.ERROR
    ]


def run_parallel(task: Callable[[T], R], items: Sequence[T], threads: int) -> list[R]:
    """
    Ejecuta task sobre items en un pool de hilos
    El orden de los resultados es el de items, independiente de la planificación
    """
    if threads <= 1 or len(items) <= 1:
        return [task(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(task, items))
