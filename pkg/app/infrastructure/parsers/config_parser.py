"""
Experiment Config Parser - Infrastructure Layer
Archivos key = value con secciones [experiment] o [experiment.<nombre>]
"""
from configparser import ConfigParser, Error as ConfigParserError
from pathlib import Path
import logging

from pydantic import ValidationError

from app.application.dtos.experiment_spec import ExperimentSpec
from app.core.exceptions import ConfigurationError, DataParsingError

logger = logging.getLogger(__name__)

SECTION = "experiment"
PATH_KEYS = ("graph_file", "output_dir")


class ExperimentConfigParser:
    """
    Convierte un archivo de configuración en una lista de ExperimentSpec

    Las rutas relativas se resuelven contra el directorio del archivo; los
    guiones en las claves equivalen a guiones bajos.
    """

    def __init__(self, file_path: Path):
        self.file_path = Path(file_path)

    def parse(self) -> list[ExperimentSpec]:
        parser = ConfigParser(inline_comment_prefixes=("#", ";"), interpolation=None)
        try:
            with self.file_path.open(encoding="utf-8") as handle:
                parser.read_file(handle)
        except OSError as e:
            raise DataParsingError(str(self.file_path), str(e)) from e
        except ConfigParserError as e:
            raise ConfigurationError(f"{self.file_path}: {e}") from e

        sections = [s for s in parser.sections() if s == SECTION or s.startswith(f"{SECTION}.")]
        if not sections:
            raise ConfigurationError(f"{self.file_path}: no hay secciones [{SECTION}]")

        specs = [self._build(section, dict(parser[section])) for section in sections]
        logger.info(f"Cargados {len(specs)} experimentos desde {self.file_path}")
        return specs

    def _build(self, section: str, raw: dict[str, str]) -> ExperimentSpec:
        values: dict[str, object] = {key.replace("-", "_"): value for key, value in raw.items()}
        if "name" not in values and section != SECTION:
            values["name"] = section.split(".", 1)[1]
        for key in PATH_KEYS:
            if key in values:
                path = Path(str(values[key]))
                values[key] = path if path.is_absolute() else self.file_path.parent / path

        try:
            return ExperimentSpec.model_validate(values)
        except ValidationError as e:
            problems = "; ".join(
                f"{'.'.join(str(p) for p in error['loc']) or 'spec'}: {error['msg']}"
                for error in e.errors()
            )
            raise ConfigurationError(f"[{section}] {problems}") from e
