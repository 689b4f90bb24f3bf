"""
Value Object: NetworkState
Cantidades del estado libre resueltas para un vector de conductancias
"""
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray


@dataclass(frozen=True, eq=False)
class NetworkState:
    """
    Estado libre de la red

    p_O: potenciales de salida (V)
    v: voltajes de rama (V)
    i: corrientes de rama, i = G v (A)
    power: potencia disipada total v^T G v (W)
    j_I: corrientes nodales de entrada, j_I = D_I G v (A)
    """
    p_O: NDArray[np.float64]
    v: NDArray[np.float64]
    i: NDArray[np.float64]
    power: float
    j_I: NDArray[np.float64]

    def __post_init__(self) -> None:
        for name in ("p_O", "v", "i", "j_I"):
            array = np.asarray(getattr(self, name), dtype=np.float64)
            array.setflags(write=False)
            object.__setattr__(self, name, array)
