"""
Entity: RunTrace
Registro por iteración de una corrida de aprendizaje
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np
import pandas as pd
from numpy.typing import NDArray

TRACE_COLUMNS = ["t", "error", "residual", "gamma", "sample_index"]


class RunStatus(str, Enum):
    """
    Estado final de una corrida
    Hereda de str para serialización directa
    """
    RUNNING = "running"
    CONVERGED = "converged"
    MAX_ITERATIONS = "max-iterations"
    ERROR = "error"


@dataclass
class IterationRecord:
    """
    Registro de la iteración t

    error se evalúa en g^t; residual, gamma y sample_index describen el paso
    g^t -> g^{t+1} y quedan en None en el último registro
    """
    t: int
    error: float
    residual: Optional[float] = None
    gamma: Optional[float] = None
    sample_index: Optional[int] = None
    conductances: Optional[NDArray[np.float64]] = None


@dataclass
class RunTrace:
    """Traza completa de una corrida"""
    records: list[IterationRecord] = field(default_factory=list)
    status: RunStatus = RunStatus.RUNNING
    message: str = ""

    def append(self, record: IterationRecord) -> None:
        self.records.append(record)

    def finish(self, status: RunStatus, message: str = "") -> "RunTrace":
        self.status = status
        self.message = message
        return self

    @property
    def iterations(self) -> int:
        """Número de pasos aplicados"""
        return sum(1 for r in self.records if r.residual is not None)

    @property
    def final_error(self) -> float:
        if not self.records:
            return float("nan")
        return self.records[-1].error

    @property
    def converged(self) -> bool:
        return self.status == RunStatus.CONVERGED

    def errors(self) -> NDArray[np.float64]:
        return np.array([r.error for r in self.records])

    def residuals(self) -> NDArray[np.float64]:
        return np.array([r.residual for r in self.records if r.residual is not None])

    def to_frame(self) -> pd.DataFrame:
        """Exporta la traza con columnas t,error,residual,gamma,sample_index"""
        frame = pd.DataFrame(
            {
                "t": [r.t for r in self.records],
                "error": [r.error for r in self.records],
                "residual": [r.residual for r in self.records],
                "gamma": [r.gamma for r in self.records],
                "sample_index": pd.array(
                    [r.sample_index for r in self.records], dtype="Int64"
                ),
            },
            columns=TRACE_COLUMNS,
        )
        frame["residual"] = frame["residual"].astype("float64")
        frame["gamma"] = frame["gamma"].astype("float64")
        return frame

    def __str__(self) -> str:
        return f"RunTrace({len(self.records)} registros, {self.status.value}, error={self.final_error:.3e})"
