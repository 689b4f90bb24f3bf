"""
Custom exceptions para el dominio
Aplicando Fail-Fast y Error Handling explícito
"""
from typing import Any


class ResistNetError(Exception):
    """Base exception para errores de la librería"""
    pass


class MalformedGraphError(ResistNetError):
    """Grafo con índices fuera de rango o ramas inválidas"""
    def __init__(self, details: str):
        self.details = details
        super().__init__(f"Grafo mal formado: {details}")


class InvalidPartitionError(ResistNetError):
    """Partición de nodos en entradas/salidas inválida"""
    def __init__(self, details: str):
        self.details = details
        super().__init__(f"Partición inválida: {details}")


class InvalidArgumentError(ResistNetError):
    """Argumento fuera del dominio permitido"""
    def __init__(self, argument: str, value: Any, details: str = ""):
        self.argument = argument
        self.value = value
        self.details = details
        suffix = f" ({details})" if details else ""
        super().__init__(f"Argumento inválido {argument}={value!r}{suffix}")


class ShapeError(ResistNetError):
    """Dimensiones incompatibles entre vectores/matrices"""
    def __init__(self, name: str, expected: Any, actual: Any):
        self.name = name
        self.expected = expected
        self.actual = actual
        super().__init__(f"Dimensión de {name} incorrecta: esperado {expected}, recibido {actual}")


class SingularLaplacianError(ResistNetError):
    """
    El bloque D_O G D_O^T no es invertible
    Incluye diagnósticos del grafo para localizar el problema
    """
    def __init__(self, num_nodes: int, num_branches: int, components: int, details: str = ""):
        self.num_nodes = num_nodes
        self.num_branches = num_branches
        self.components = components
        self.details = details
        message = (
            f"Laplaciano singular (nodos={num_nodes}, ramas={num_branches}, "
            f"componentes conexas={components})"
        )
        if details:
            message += f": {details}"
        super().__init__(message)


class InvalidConductanceError(ResistNetError):
    """Conductancias fuera del conjunto C_eps"""
    def __init__(self, minimum: float, epsilon: float):
        self.minimum = minimum
        self.epsilon = epsilon
        super().__init__(
            f"Conductancia mínima {minimum!r} por debajo de la cota epsilon={epsilon!r}"
        )


class PropertyViolationError(ResistNetError):
    """Una propiedad verificada numéricamente no se cumple"""
    def __init__(self, property_name: str, witness: Any):
        self.property_name = property_name
        self.witness = witness
        super().__init__(f"Propiedad '{property_name}' violada: {witness}")


class ConfigurationError(ResistNetError):
    """Especificación de experimento inválida"""
    def __init__(self, details: str):
        self.details = details
        super().__init__(f"Error de configuración: {details}")


class DataParsingError(ResistNetError):
    """Error al parsear archivos de datos"""
    def __init__(self, file_path: str, details: str):
        self.file_path = file_path
        self.details = details
        super().__init__(f"Error parseando {file_path}: {details}")
