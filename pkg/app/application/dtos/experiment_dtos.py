"""
DTOs (Data Transfer Objects)
Objetos para transferir datos entre capas
"""
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np
import pandas as pd
from numpy.typing import NDArray

from app.application.dtos.experiment_spec import ExperimentSpec
from app.domain.entities.circuit_graph import CircuitGraph
from app.domain.services.verification import SuiteResult

BOUND_COLUMNS = ["branches", "K", "two_over_K"]


@dataclass
class ExperimentResult:
    """Tablas producidas por un experimento, antes de escribirse"""
    spec: ExperimentSpec
    table: pd.DataFrame
    bound_table: pd.DataFrame
    failures: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    summary: str = ""  # línea final opcional del artefacto secundario

    @property
    def succeeded(self) -> bool:
        return not self.failures


@dataclass
class ExperimentRunResponse:
    """Resultado de ejecutar y persistir un experimento"""
    result: ExperimentResult
    artifacts: list[Path]


@dataclass
class BoundRequest:
    """Request para calcular K sobre una topología"""
    graph: CircuitGraph
    inputs: NDArray[np.float64]  # una fila por muestra
    epsilon: float


@dataclass
class BoundResponse:
    """K y 2/K por muestra, más K_max"""
    branches: int
    K: list[float]
    two_over_K: list[float]
    K_max: float


@dataclass
class VerificationRequest:
    """Request para las suites de verificación"""
    seed: int
    lipschitz_trials: int = 10_000
    epsilon: float = 0.1
    graph_file: Optional[Path] = None


@dataclass
class VerificationResponse:
    """Resultado de las suites"""
    seed: int
    suites: list[SuiteResult]

    @property
    def passed(self) -> bool:
        return all(suite.passed for suite in self.suites)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "suite": [s.name for s in self.suites],
                "passed": [s.passed for s in self.suites],
                "instances": [s.instances for s in self.suites],
                "worst_value": [s.worst_value for s in self.suites],
                "threshold": [s.threshold for s in self.suites],
            }
        )
