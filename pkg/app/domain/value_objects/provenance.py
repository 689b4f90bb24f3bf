"""
Value Object: Provenance
Cabecera de trazabilidad de cada artefacto CSV
"""
from dataclasses import dataclass


@dataclass(frozen=True)
class Provenance:
    """Hash de la especificación, semilla y versión de la librería"""
    spec_hash: str
    seed: int
    version: str

    def header_lines(self) -> list[str]:
        return [
            f"# resistnet {self.version}",
            f"# spec_sha256: {self.spec_hash}",
            f"# seed: {self.seed}",
        ]
