"""
Entities: TrainingSample, TrainingSet
Pares (p_I, p_O^D) con sus voltajes de estado clampeado
"""
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from app.core.exceptions import InvalidArgumentError
from app.domain.entities.circuit_graph import CircuitGraph


@dataclass(frozen=True, eq=False)
class TrainingSample:
    """
    Muestra de entrenamiento

    v_desired = D_I^T p_I + D_O^T p_O^D se deriva del grafo al construirla
    con from_potentials; se guarda para no recalcularla en cada iteración
    """
    p_I: NDArray[np.float64]
    p_O_desired: NDArray[np.float64]
    v_desired: NDArray[np.float64]

    def __post_init__(self) -> None:
        for name in ("p_I", "p_O_desired", "v_desired"):
            array = np.array(getattr(self, name), dtype=np.float64, copy=True).reshape(-1)
            array.setflags(write=False)
            object.__setattr__(self, name, array)

    @classmethod
    def from_potentials(
        cls,
        graph: CircuitGraph,
        p_I: ArrayLike,
        p_O_desired: ArrayLike,
    ) -> "TrainingSample":
        """Factory method: calcula v^D a partir de la topología"""
        from app.domain.services.network_solver import clamped_voltages

        p_in = np.asarray(p_I, dtype=np.float64).reshape(-1)
        p_out = np.asarray(p_O_desired, dtype=np.float64).reshape(-1)
        return cls(
            p_I=p_in,
            p_O_desired=p_out,
            v_desired=clamped_voltages(graph, p_in, p_out),
        )


@dataclass(frozen=True)
class TrainingSet:
    """
    Conjunto ordenado de muestras, n >= 1
    Aggregate para el modo estocástico y el modo batch
    """
    samples: tuple[TrainingSample, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "samples", tuple(self.samples))
        if not self.samples:
            raise InvalidArgumentError("samples", 0, "el conjunto de entrenamiento está vacío")

    @classmethod
    def of(cls, samples: Sequence[TrainingSample]) -> "TrainingSet":
        return cls(tuple(samples))

    def __len__(self) -> int:
        return len(self.samples)

    def __iter__(self) -> Iterator[TrainingSample]:
        return iter(self.samples)

    def __getitem__(self, index: int) -> TrainingSample:
        return self.samples[index]
