"""
Value Objects: secuencias de tamaños de paso t -> gamma_t
"""
from dataclasses import dataclass
from typing import Callable

from app.core.exceptions import InvalidArgumentError

StepSchedule = Callable[[int], float]


@dataclass(frozen=True)
class ConstantSchedule:
    """gamma_t = gamma para todo t"""
    gamma: float

    def __post_init__(self) -> None:
        if not self.gamma > 0:
            raise InvalidArgumentError("gamma", self.gamma, "debe ser positivo")

    def __call__(self, t: int) -> float:
        return float(self.gamma)

    def __str__(self) -> str:
        return f"gamma_t = {self.gamma:g}"


@dataclass(frozen=True)
class PowerLawSchedule:
    """
    Familia gamma_t = a / (1 + t)^p

    Con p en (1/2, 1] cumple sum gamma_t = inf y sum gamma_t^2 < inf
    """
    a: float
    p: float = 1.0

    def __post_init__(self) -> None:
        if not self.a > 0:
            raise InvalidArgumentError("a", self.a, "debe ser positivo")
        if self.p < 0:
            raise InvalidArgumentError("p", self.p, "debe ser no negativo")

    def __call__(self, t: int) -> float:
        return float(self.a / (1.0 + t) ** self.p)

    @property
    def divergent_sum(self) -> bool:
        """sum_t gamma_t = inf  <=>  p <= 1"""
        return self.p <= 1.0

    @property
    def square_summable(self) -> bool:
        """sum_t gamma_t^2 < inf  <=>  p > 1/2"""
        return self.p > 0.5

    def __str__(self) -> str:
        return f"gamma_t = {self.a:g}/(1+t)^{self.p:g}"
