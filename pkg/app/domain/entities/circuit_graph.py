"""
Entity: CircuitGraph
Topología de una red de resistencias con partición de nodos entrada/salida
"""
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from numpy.typing import NDArray
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from app.core.exceptions import (
    InvalidArgumentError,
    InvalidPartitionError,
    MalformedGraphError,
)


@dataclass(frozen=True)
class CircuitGraph:
    """
    Grafo no dirigido con orientación arbitraria por rama

    Índices 0-based. Cada rama (k, l) es una resistencia; se permiten ramas
    paralelas. Inmutable una vez construido: las matrices derivadas se
    calculan una sola vez y se devuelven como solo-lectura.
    """
    num_nodes: int
    branches: tuple[tuple[int, int], ...]
    input_nodes: tuple[int, ...]
    output_nodes: tuple[int, ...]

    def __post_init__(self) -> None:
        """Validación de invariantes estructurales"""
        object.__setattr__(self, "branches", tuple((int(k), int(l)) for k, l in self.branches))
        object.__setattr__(self, "input_nodes", tuple(int(n) for n in self.input_nodes))
        object.__setattr__(self, "output_nodes", tuple(int(n) for n in self.output_nodes))

        if self.num_nodes < 1:
            raise MalformedGraphError(f"num_nodes debe ser positivo, recibido {self.num_nodes}")

        for index, (k, l) in enumerate(self.branches):
            if not (0 <= k < self.num_nodes and 0 <= l < self.num_nodes):
                raise MalformedGraphError(
                    f"rama {index} = ({k}, {l}) fuera de rango [0, {self.num_nodes})"
                )
            if k == l:
                raise MalformedGraphError(f"rama {index} es un lazo sobre el nodo {k}")

        self._validate_partition()

    def _validate_partition(self) -> None:
        inputs, outputs = set(self.input_nodes), set(self.output_nodes)
        if len(inputs) != len(self.input_nodes) or len(outputs) != len(self.output_nodes):
            raise InvalidPartitionError("nodos repetidos dentro de un conjunto")
        for node in inputs | outputs:
            if not 0 <= node < self.num_nodes:
                raise MalformedGraphError(f"nodo {node} fuera de rango [0, {self.num_nodes})")
        if inputs & outputs:
            raise InvalidPartitionError(f"nodos en ambos conjuntos: {sorted(inputs & outputs)}")
        if len(inputs) + len(outputs) != self.num_nodes:
            missing = sorted(set(range(self.num_nodes)) - inputs - outputs)
            raise InvalidPartitionError(f"nodos sin asignar: {missing}")

    @property
    def num_branches(self) -> int:
        return len(self.branches)

    @property
    def num_inputs(self) -> int:
        return len(self.input_nodes)

    @property
    def num_outputs(self) -> int:
        return len(self.output_nodes)

    @cached_property
    def _incidence(self) -> NDArray[np.float64]:
        matrix = np.zeros((self.num_nodes, self.num_branches))
        for column, (k, l) in enumerate(self.branches):
            matrix[k, column] = 1.0
            matrix[l, column] = -1.0
        matrix.setflags(write=False)
        return matrix

    @cached_property
    def _partition(self) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        d_in = self._incidence[list(self.input_nodes), :]
        d_out = self._incidence[list(self.output_nodes), :]
        d_in.setflags(write=False)
        d_out.setflags(write=False)
        return d_in, d_out

    @cached_property
    def _component_count(self) -> int:
        if self.num_branches == 0:
            return self.num_nodes
        rows = [k for k, _ in self.branches]
        cols = [l for _, l in self.branches]
        adjacency = coo_matrix(
            (np.ones(self.num_branches), (rows, cols)),
            shape=(self.num_nodes, self.num_nodes),
        )
        count, _ = connected_components(adjacency, directed=False)
        return int(count)

    def incidence_matrix(self) -> NDArray[np.float64]:
        """
        Matriz de incidencia D (N x B)
        La columna de la rama (k, l) es e_k - e_l
        """
        return self._incidence

    def partition_incidence(self) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        """
        Filas de D restringidas a entradas y salidas, en el orden declarado

        Raises:
            InvalidPartitionError: Si alguno de los conjuntos está vacío
        """
        if not self.input_nodes:
            raise InvalidPartitionError("el conjunto de nodos de entrada está vacío")
        if not self.output_nodes:
            raise InvalidPartitionError("el conjunto de nodos de salida está vacío")
        return self._partition

    def connected_components(self) -> int:
        """Número de componentes conexas del grafo no dirigido"""
        return self._component_count

    def is_connected(self) -> bool:
        """Verifica si el grafo no dirigido es conexo"""
        return self._component_count == 1

    def __str__(self) -> str:
        return (
            f"CircuitGraph(N={self.num_nodes}, B={self.num_branches}, "
            f"N_I={self.num_inputs}, N_O={self.num_outputs})"
        )


def make_crossbar(n_in: int, n_out: int) -> CircuitGraph:
    """
    Factory: grafo bipartito completo entre entradas y salidas

    Entradas 0..n_in-1, salidas n_in..n_in+n_out-1. Ramas orientadas
    entrada -> salida en orden por filas sobre los pares (entrada, salida).
    """
    if n_in < 1:
        raise InvalidArgumentError("n_in", n_in, "debe ser >= 1")
    if n_out < 1:
        raise InvalidArgumentError("n_out", n_out, "debe ser >= 1")

    branches = tuple(
        (i, n_in + j)
        for i in range(n_in)
        for j in range(n_out)
    )
    return CircuitGraph(
        num_nodes=n_in + n_out,
        branches=branches,
        input_nodes=tuple(range(n_in)),
        output_nodes=tuple(range(n_in, n_in + n_out)),
    )
