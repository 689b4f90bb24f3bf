"""
Fixtures compartidas: divisor de tensión de 3 nodos y crossbars pequeños
"""
import numpy as np
import pytest

from app.domain.entities.circuit_graph import CircuitGraph, make_crossbar
from app.domain.entities.training import TrainingSample
from app.domain.value_objects.conductance import ConductanceVector


@pytest.fixture
def divider() -> CircuitGraph:
    """Camino 1-2-3 con entradas {1, 3} y salida {2} (0-based: {0, 2} y {1})"""
    return CircuitGraph(
        num_nodes=3,
        branches=((0, 1), (1, 2)),
        input_nodes=(0, 2),
        output_nodes=(1,),
    )


@pytest.fixture
def divider_sample(divider: CircuitGraph) -> TrainingSample:
    """p_I = (1, 0), p_O^D = 2/3"""
    return TrainingSample.from_potentials(divider, [1.0, 0.0], [2.0 / 3.0])


@pytest.fixture
def unit_conductances() -> ConductanceVector:
    return ConductanceVector(np.array([1.0, 1.0]), 0.1)


@pytest.fixture
def small_crossbar() -> CircuitGraph:
    return make_crossbar(3, 2)


@pytest.fixture
def divider_file(tmp_path):
    path = tmp_path / "divider.graph"
    path.write_text(
        "# divisor de tensión: entradas 1, 2 y salida 3 en el centro\n"
        "nodes 3 inputs 2 outputs 1\n"
        "1 3\n"
        "3 2\n",
        encoding="utf-8",
    )
    return path


@pytest.fixture
def disconnected_file(tmp_path):
    path = tmp_path / "disconnected.graph"
    path.write_text(
        "nodes 4 inputs 2 outputs 2\n"
        "1 3\n"
        "2 4\n",
        encoding="utf-8",
    )
    return path
