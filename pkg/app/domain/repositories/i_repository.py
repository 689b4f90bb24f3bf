"""
Repository Interface - Dependency Inversion Principle
El dominio define el contrato, la infraestructura lo implementa
"""
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Optional

import pandas as pd
from numpy.typing import NDArray

from app.domain.entities.circuit_graph import CircuitGraph
from app.domain.value_objects.provenance import Provenance


class IGraphRepository(ABC):
    """
    Interface de acceso a topologías y potenciales en disco

    El dominio no conoce el formato de los archivos
    """

    @abstractmethod
    def load_graph(self, path: Path) -> CircuitGraph:
        """Carga un grafo con su partición entrada/salida"""
        pass

    @abstractmethod
    def load_potentials(self, path: Path, width: int) -> NDArray:
        """Carga una o más filas de potenciales de longitud width"""
        pass


class IArtifactRepository(ABC):
    """Interface de escritura de artefactos tabulares"""

    @abstractmethod
    def render(self, frame: pd.DataFrame, provenance: Provenance, summary: Optional[str] = None) -> str:
        """Serializa la tabla con su cabecera de trazabilidad"""
        pass

    @abstractmethod
    def save(
        self,
        name: str,
        frame: pd.DataFrame,
        provenance: Provenance,
        summary: Optional[str] = None,
    ) -> Path:
        """Escribe el artefacto name.csv y devuelve su ruta"""
        pass
