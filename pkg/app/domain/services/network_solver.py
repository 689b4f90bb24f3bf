"""
Domain Service: solver de la física del circuito
Estado libre (p_O, v, i, potencia) y estado clampeado (v^D)

Todas las funciones son puras: cualquier factorización se hace por llamada.
"""
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.linalg
from numpy.typing import ArrayLike, NDArray

from app.core.exceptions import ShapeError, SingularLaplacianError
from app.domain.entities.circuit_graph import CircuitGraph
from app.domain.value_objects.conductance import ConductanceVector
from app.domain.value_objects.network_state import NetworkState


def as_vector(name: str, values: ArrayLike, size: int) -> NDArray[np.float64]:
    """Convierte a vector 1-D de floats y valida su longitud"""
    vector = np.asarray(values, dtype=np.float64).reshape(-1)
    if vector.size != size:
        raise ShapeError(name, size, vector.size)
    return vector


def _singular(graph: CircuitGraph, details: str) -> SingularLaplacianError:
    return SingularLaplacianError(
        num_nodes=graph.num_nodes,
        num_branches=graph.num_branches,
        components=graph.connected_components(),
        details=details,
    )


@dataclass(frozen=True, eq=False)
class OutputBlock:
    """
    Factorización de Cholesky de D_O G D_O^T junto con las matrices
    que la acompañan en todas las fórmulas del estado libre
    """
    factor: tuple[NDArray[np.float64], bool]
    d_in: NDArray[np.float64]
    d_out: NDArray[np.float64]
    d_out_g: NDArray[np.float64]  # D_O G

    def solve(self, rhs: NDArray[np.float64]) -> NDArray[np.float64]:
        """(D_O G D_O^T)^{-1} rhs; rhs puede ser vector o matriz"""
        return scipy.linalg.cho_solve(self.factor, rhs)


def factorize_output_block(graph: CircuitGraph, g: ConductanceVector) -> OutputBlock:
    """
    Factoriza D_O G D_O^T (simétrica definida positiva si el grafo es conexo)

    Raises:
        ShapeError: Si len(g) != B
        SingularLaplacianError: Si el grafo es disconexo o la matriz no es definida positiva
    """
    as_vector("g", g.values, graph.num_branches)
    d_in, d_out = graph.partition_incidence()

    if not graph.is_connected():
        raise _singular(graph, "el grafo no es conexo")

    d_out_g = d_out * g.values
    laplacian_block = d_out_g @ d_out.T
    try:
        factor = scipy.linalg.cho_factor(laplacian_block)
    except np.linalg.LinAlgError as e:
        raise _singular(graph, f"D_O G D_O^T no es definida positiva ({e})") from e

    return OutputBlock(factor=factor, d_in=d_in, d_out=d_out, d_out_g=d_out_g)


def _solve_sparse(graph: CircuitGraph, g: ConductanceVector, p_in: NDArray[np.float64]) -> NDArray[np.float64]:
    """Camino disperso: ensambla D_O G D_O^T en CSC y resuelve con LU disperso"""
    d_in, d_out = graph.partition_incidence()
    if not graph.is_connected():
        raise _singular(graph, "el grafo no es conexo")

    d_out_sparse = scipy.sparse.csr_matrix(d_out)
    d_in_sparse = scipy.sparse.csr_matrix(d_in)
    weights = scipy.sparse.diags(g.values)
    laplacian_block = (d_out_sparse @ weights @ d_out_sparse.T).tocsc()
    rhs = -(d_out_sparse @ weights @ (d_in_sparse.T @ p_in))
    try:
        solution = scipy.sparse.linalg.splu(laplacian_block).solve(np.asarray(rhs).reshape(-1))
    except RuntimeError as e:
        raise _singular(graph, f"factorización LU dispersa falló ({e})") from e
    return np.asarray(solution).reshape(-1)


def solve_output_potentials(
    graph: CircuitGraph,
    g: ConductanceVector,
    p_I: ArrayLike,
    sparse: bool = False,
) -> NDArray[np.float64]:
    """
    Potenciales de salida del estado libre

    Resuelve (D_O G D_O^T) p_O = -D_O G D_I^T p_I

    Args:
        graph: Topología conexa
        g: Conductancias en C_eps
        p_I: Potenciales de entrada (N_I)
        sparse: Usa ensamblado disperso en lugar de Cholesky denso

    Returns:
        p_O (N_O)
    """
    p_in = as_vector("p_I", p_I, graph.num_inputs)
    if sparse:
        as_vector("g", g.values, graph.num_branches)
        return _solve_sparse(graph, g, p_in)

    block = factorize_output_block(graph, g)
    rhs = -block.d_out_g @ (block.d_in.T @ p_in)
    return block.solve(rhs)


def branch_voltages(graph: CircuitGraph, g: ConductanceVector, p_I: ArrayLike) -> NDArray[np.float64]:
    """v = D_I^T p_I + D_O^T p_O(g)"""
    p_in = as_vector("p_I", p_I, graph.num_inputs)
    d_in, d_out = graph.partition_incidence()
    p_out = solve_output_potentials(graph, g, p_in)
    return d_in.T @ p_in + d_out.T @ p_out


def branch_voltages_reduced(graph: CircuitGraph, g: ConductanceVector, p_I: ArrayLike) -> NDArray[np.float64]:
    """
    Forma alternativa v = (I - D_O^T (D_O G D_O^T)^{-1} D_O G) D_I^T p_I
    Debe coincidir con branch_voltages
    """
    p_in = as_vector("p_I", p_I, graph.num_inputs)
    block = factorize_output_block(graph, g)
    source = block.d_in.T @ p_in
    return source - block.d_out.T @ block.solve(block.d_out_g @ source)


def clamped_voltages(graph: CircuitGraph, p_I: ArrayLike, p_O_desired: ArrayLike) -> NDArray[np.float64]:
    """v^D = D_I^T p_I + D_O^T p_O^D (independiente de g)"""
    p_in = as_vector("p_I", p_I, graph.num_inputs)
    p_out = as_vector("p_O_desired", p_O_desired, graph.num_outputs)
    d_in, d_out = graph.partition_incidence()
    return d_in.T @ p_in + d_out.T @ p_out


def total_power(g: ConductanceVector, v: ArrayLike) -> float:
    """Potencia disipada sum_k g_k v_k^2"""
    voltages = as_vector("v", v, g.size)
    return float(np.dot(g.values, voltages * voltages))


def network_power(
    graph: CircuitGraph,
    g: ConductanceVector,
    p_I: ArrayLike,
    p_O: ArrayLike,
) -> float:
    """S(p_I, p_O) para potenciales de salida arbitrarios"""
    v = clamped_voltages(graph, p_I, p_O)
    return total_power(g, v)


def solve_network(graph: CircuitGraph, g: ConductanceVector, p_I: ArrayLike) -> NetworkState:
    """Resuelve el estado libre completo con una sola factorización"""
    p_in = as_vector("p_I", p_I, graph.num_inputs)
    block = factorize_output_block(graph, g)
    p_out = block.solve(-block.d_out_g @ (block.d_in.T @ p_in))
    v = block.d_in.T @ p_in + block.d_out.T @ p_out
    currents = g.values * v
    return NetworkState(
        p_O=p_out,
        v=v,
        i=currents,
        power=float(np.dot(currents, v)),
        j_I=block.d_in @ currents,
    )
