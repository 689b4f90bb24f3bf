"""
Traducción de excepciones del dominio a respuestas HTTP
"""
from fastapi import HTTPException

from app.core.exceptions import (
    ConfigurationError,
    ResistNetError,
    SingularLaplacianError,
)


def http_error(error: ResistNetError) -> HTTPException:
    """422 para configuración, 409 para fallos del solver, 400 para el resto"""
    if isinstance(error, ConfigurationError):
        status_code = 422
    elif isinstance(error, SingularLaplacianError):
        status_code = 409
    else:
        status_code = 400
    return HTTPException(status_code=status_code, detail=str(error))
