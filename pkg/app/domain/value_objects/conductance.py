"""
Value Object: ConductanceVector
Inmutable, self-validating: g pertenece a C_eps = {g | g_k >= eps}
"""
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from app.core.exceptions import InvalidArgumentError, InvalidConductanceError


@dataclass(frozen=True, eq=False)
class ConductanceVector:
    """
    Conductancias por rama en siemens con su cota inferior epsilon

    Inmutable - el arreglo interno es de solo lectura
    Self-validating - epsilon > 0 y g_k >= epsilon para toda rama
    """
    values: NDArray[np.float64]
    epsilon: float

    def __post_init__(self) -> None:
        """Validación de invariantes"""
        values = np.array(self.values, dtype=np.float64, copy=True).reshape(-1)
        epsilon = float(self.epsilon)

        if not np.isfinite(epsilon) or epsilon <= 0:
            raise InvalidArgumentError("epsilon", self.epsilon, "debe ser positivo")
        if not np.all(np.isfinite(values)):
            raise InvalidArgumentError("g", "no finito", "todas las conductancias deben ser finitas")
        if values.size and values.min() < epsilon:
            raise InvalidConductanceError(float(values.min()), epsilon)

        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "epsilon", epsilon)

    @classmethod
    def uniform(cls, size: int, value: float, epsilon: float) -> "ConductanceVector":
        """Factory: todas las ramas con la misma conductancia"""
        return cls(np.full(size, float(value)), epsilon)

    @property
    def size(self) -> int:
        return int(self.values.size)

    def diagonal(self) -> NDArray[np.float64]:
        """G = diag(g)"""
        return np.diag(self.values)

    def scaled(self, factor: float) -> "ConductanceVector":
        """c * g con la misma epsilon; falla si sale de C_eps"""
        return ConductanceVector(self.values * factor, self.epsilon)

    def is_interior(self, margin: float = 0.0) -> bool:
        """Verifica g_k > epsilon + margin para toda rama"""
        return bool(np.all(self.values > self.epsilon + margin))

    def __len__(self) -> int:
        return self.size

    def __str__(self) -> str:
        return (
            f"ConductanceVector(B={self.size}, min={self.values.min():.4g}, "
            f"max={self.values.max():.4g}, eps={self.epsilon:g})"
        )
