"""
CSV Artifact Repository
Implementa IArtifactRepository escribiendo CSV deterministas

UTF-8, fin de línea LF, floats con 17 cifras significativas y una cabecera
de trazabilidad en comentarios '#'
"""
from pathlib import Path
from threading import Lock
from typing import Optional
import logging

import pandas as pd

from app.domain.repositories.i_repository import IArtifactRepository
from app.domain.value_objects.provenance import Provenance

logger = logging.getLogger(__name__)


class CsvArtifactRepository(IArtifactRepository):
    """Escribe artefactos en output_dir; la escritura está serializada"""

    def __init__(self, output_dir: Path, float_format: str = "%.17g"):
        self.output_dir = Path(output_dir)
        self.float_format = float_format
        self._lock = Lock()

    def render(self, frame: pd.DataFrame, provenance: Provenance, summary: Optional[str] = None) -> str:
        body = frame.to_csv(
            index=False,
            float_format=self.float_format,
            lineterminator="\n",
            na_rep="",
        )
        lines = provenance.header_lines()
        text = "\n".join(lines) + "\n" + body
        if summary:
            text += f"# summary: {summary}\n"
        return text

    def save(
        self,
        name: str,
        frame: pd.DataFrame,
        provenance: Provenance,
        summary: Optional[str] = None,
    ) -> Path:
        path = self.output_dir / f"{name}.csv"
        content = self.render(frame, provenance, summary)
        with self._lock:
            self.output_dir.mkdir(parents=True, exist_ok=True)
            with path.open("w", encoding="utf-8", newline="\n") as handle:
                handle.write(content)
        logger.info(f"Escrito {path} ({len(frame)} filas)")
        return path
