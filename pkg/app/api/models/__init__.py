"""API Models module"""
from .schemas import (
    BoundRequestSchema,
    BoundResponseSchema,
    ErrorResponse,
    SuiteSchema,
    VerificationResponseSchema,
)

__all__ = [
    "BoundRequestSchema",
    "BoundResponseSchema",
    "ErrorResponse",
    "SuiteSchema",
    "VerificationResponseSchema",
]
