"""
Value Object: LearningConfig
Parámetros de los drivers de Contrastive Learning
"""
from dataclasses import dataclass
from typing import Optional

from app.core.exceptions import InvalidArgumentError
from app.domain.value_objects.step_schedule import StepSchedule

MAX_SEED = 2**64


@dataclass(frozen=True)
class LearningConfig:
    """
    Configuración de una corrida

    gamma: paso constante (modo determinista)
    schedule: secuencia t -> gamma_t (modo estocástico); si se define tiene prioridad
    stop_tolerance: criterio de parada sobre ||p_O - p_O^D||
    track_mean_error: en modo estocástico evalúa el error medio de todo el set
    conductance_stride: guarda g^t cada k iteraciones (0 = no guardar)
    """
    gamma: Optional[float] = None
    schedule: Optional[StepSchedule] = None
    epsilon: float = 0.1
    max_iterations: int = 1000
    stop_tolerance: float = 1e-10
    rng_seed: int = 0
    track_mean_error: bool = True
    conductance_stride: int = 0

    def __post_init__(self) -> None:
        """Validación de invariantes"""
        if self.gamma is None and self.schedule is None:
            raise InvalidArgumentError("gamma", None, "se requiere gamma o schedule")
        if self.gamma is not None and not self.gamma > 0:
            raise InvalidArgumentError("gamma", self.gamma, "debe ser positivo")
        if not self.epsilon > 0:
            raise InvalidArgumentError("epsilon", self.epsilon, "debe ser positivo")
        if self.max_iterations < 1:
            raise InvalidArgumentError("max_iterations", self.max_iterations, "debe ser >= 1")
        if self.stop_tolerance < 0:
            raise InvalidArgumentError("stop_tolerance", self.stop_tolerance, "debe ser >= 0")
        if not 0 <= self.rng_seed < MAX_SEED:
            raise InvalidArgumentError("rng_seed", self.rng_seed, "debe ser un entero de 64 bits")
        if self.conductance_stride < 0:
            raise InvalidArgumentError("conductance_stride", self.conductance_stride)

    def step_size(self, t: int) -> float:
        """gamma_t usado en la iteración t"""
        if self.schedule is not None:
            return float(self.schedule(t))
        return float(self.gamma)  # type: ignore[arg-type]

    def keeps_conductances(self, t: int) -> bool:
        return self.conductance_stride > 0 and t % self.conductance_stride == 0
