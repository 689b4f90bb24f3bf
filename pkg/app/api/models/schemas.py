"""
Pydantic Schemas para la API
Validación automática de requests/responses
"""
from typing import Any, Optional

from pydantic import BaseModel, Field, model_validator


class BoundRequestSchema(BaseModel):
    """
    Topología como crossbar (n_in, n_out) o como lista explícita de ramas
    con índices 0-based
    """
    n_in: Optional[int] = Field(default=None, ge=1)
    n_out: Optional[int] = Field(default=None, ge=1)
    num_nodes: Optional[int] = Field(default=None, ge=1)
    branches: Optional[list[tuple[int, int]]] = None
    input_nodes: Optional[list[int]] = None
    output_nodes: Optional[list[int]] = None
    epsilon: float = Field(default=0.1, gt=0)
    p_I: Optional[list[list[float]]] = Field(
        default=None, description="Una fila por muestra; por defecto 1..N_I en crossbars"
    )

    @model_validator(mode="after")
    def check_topology(self) -> "BoundRequestSchema":
        crossbar = self.n_in is not None and self.n_out is not None
        explicit = self.num_nodes is not None and self.branches is not None
        if crossbar == explicit:
            raise ValueError("indique n_in y n_out o bien num_nodes y branches")
        if explicit and (self.input_nodes is None or self.output_nodes is None):
            raise ValueError("una topología explícita requiere input_nodes y output_nodes")
        if explicit and self.p_I is None:
            raise ValueError("una topología explícita requiere p_I")
        return self

    class Config:
        json_schema_extra = {
            "example": {"n_in": 40, "n_out": 30, "epsilon": 0.1}
        }


class BoundResponseSchema(BaseModel):
    """K y 2/K por muestra"""
    branches: int = Field(ge=0)
    K: list[float]
    two_over_K: list[float]
    K_max: float

    class Config:
        json_schema_extra = {
            "example": {
                "branches": 1200,
                "K": [2.233e10],
                "two_over_K": [8.9564e-11],
                "K_max": 2.233e10,
            }
        }


class SuiteSchema(BaseModel):
    """Resultado de una suite de verificación"""
    name: str
    passed: bool
    instances: int = Field(ge=0)
    worst_value: Optional[float] = None
    threshold: float
    witness: Optional[dict[str, Any]] = None


class VerificationResponseSchema(BaseModel):
    """Reporte de todas las suites"""
    seed: int
    passed: bool
    suites: list[SuiteSchema]


class ErrorResponse(BaseModel):
    """Schema para respuestas de error"""
    detail: str
    error_type: Optional[str] = None
