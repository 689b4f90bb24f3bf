"""
File Graph Repository
Implementa IGraphRepository sobre archivos de texto
"""
from pathlib import Path

import numpy as np
from numpy.typing import NDArray

from app.domain.entities.circuit_graph import CircuitGraph
from app.domain.repositories.i_repository import IGraphRepository
from app.infrastructure.parsers.graph_parser import GraphFileParser, PotentialsFileParser


class FileGraphRepository(IGraphRepository):
    """Carga topologías y potenciales; cachea grafos por ruta"""

    def __init__(self) -> None:
        self._graphs: dict[Path, CircuitGraph] = {}

    def load_graph(self, path: Path) -> CircuitGraph:
        key = Path(path).resolve()
        if key not in self._graphs:
            self._graphs[key] = GraphFileParser(key).parse()
        return self._graphs[key]

    def load_potentials(self, path: Path, width: int) -> NDArray[np.float64]:
        return PotentialsFileParser(Path(path), width).parse()
