"""DTOs module"""
from .experiment_dtos import (
    BoundRequest,
    BoundResponse,
    ExperimentResult,
    ExperimentRunResponse,
    VerificationRequest,
    VerificationResponse,
)
from .experiment_spec import ExperimentKind, ExperimentSpec, InputSource

__all__ = [
    "BoundRequest",
    "BoundResponse",
    "ExperimentResult",
    "ExperimentRunResponse",
    "VerificationRequest",
    "VerificationResponse",
    "ExperimentKind",
    "ExperimentSpec",
    "InputSource",
]
