"""
Graph / Potentials Parser - Infrastructure Layer
Convierte archivos de texto en entidades del dominio

Formato de grafo (índices de nodo 1-based, '#' inicia comentario):

    nodes 3 inputs 2 outputs 1
    1 3
    3 2

La cabecera fija las entradas en 1..N_I y las salidas en N_I+1..N. Cada
línea de dos enteros es una rama (k, l).

También se aceptan listas explícitas de nodos, sin mezclar ambas formas:

    nodes 3
    inputs 1 3
    outputs 2
"""
from pathlib import Path
from typing import Optional
import logging

import numpy as np
import pandas as pd
from numpy.typing import NDArray

from app.core.exceptions import DataParsingError, ResistNetError
from app.domain.entities.circuit_graph import CircuitGraph

logger = logging.getLogger(__name__)

KEYWORDS = ("nodes", "inputs", "outputs")


def _parse_counts(tokens: list[str]) -> tuple[int, int, int]:
    """'nodes N inputs N_I outputs N_O' -> (N, N_I, N_O)"""
    labels = [token.lower() for token in tokens[0::2]]
    if len(tokens) != 6 or labels != list(KEYWORDS):
        raise ValueError(f"se esperaba 'nodes N inputs N_I outputs N_O', recibido '{' '.join(tokens)}'")
    num_nodes, num_inputs, num_outputs = (int(token) for token in tokens[1::2])
    if num_inputs < 1 or num_outputs < 1:
        raise ValueError("se requieren N_I >= 1 y N_O >= 1")
    if num_inputs + num_outputs != num_nodes:
        raise ValueError(f"N_I + N_O = {num_inputs + num_outputs} no coincide con N = {num_nodes}")
    return num_nodes, num_inputs, num_outputs


class GraphFileParser:
    """
    Parser para archivos de topología
    Responsabilidad: Convertir archivo → CircuitGraph
    """

    def __init__(self, file_path: Path):
        self.file_path = Path(file_path)
        self._lines: Optional[list[str]] = None

    def load(self) -> None:
        """Lee el archivo"""
        try:
            self._lines = self.file_path.read_text(encoding="utf-8").splitlines()
        except OSError as e:
            raise DataParsingError(str(self.file_path), str(e)) from e

    def parse(self) -> CircuitGraph:
        if self._lines is None:
            self.load()

        header: dict[str, list[int]] = {}
        counts: Optional[tuple[int, int, int]] = None
        branches: list[tuple[int, int]] = []

        for number, raw in enumerate(self._lines or [], start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            tokens = line.split()
            keyword = tokens[0].lower()
            try:
                if keyword == "nodes" and len(tokens) > 2:
                    if counts is not None or header:
                        raise ValueError("cabecera repetida")
                    counts = _parse_counts(tokens)
                elif keyword in KEYWORDS:
                    if keyword in header:
                        raise ValueError(f"'{keyword}' repetido")
                    if counts is not None:
                        raise ValueError(f"'{keyword}' no se combina con la cabecera de una línea")
                    header[keyword] = [int(token) for token in tokens[1:]]
                elif len(tokens) == 2:
                    branches.append((int(tokens[0]) - 1, int(tokens[1]) - 1))
                else:
                    raise ValueError(f"se esperaba 'k l', recibido '{line}'")
            except ValueError as e:
                raise DataParsingError(str(self.file_path), f"línea {number}: {e}") from e

        if counts is not None:
            num_nodes, num_inputs, _ = counts
            input_nodes = tuple(range(num_inputs))
            output_nodes = tuple(range(num_inputs, num_nodes))
        else:
            missing = [keyword for keyword in KEYWORDS if keyword not in header]
            if missing:
                raise DataParsingError(str(self.file_path), f"faltan las claves {missing}")
            if len(header["nodes"]) != 1:
                raise DataParsingError(str(self.file_path), "'nodes' lleva un único entero")
            num_nodes = header["nodes"][0]
            input_nodes = tuple(n - 1 for n in header["inputs"])
            output_nodes = tuple(n - 1 for n in header["outputs"])

        try:
            graph = CircuitGraph(
                num_nodes=num_nodes,
                branches=tuple(branches),
                input_nodes=input_nodes,
                output_nodes=output_nodes,
            )
        except ResistNetError as e:
            raise DataParsingError(str(self.file_path), str(e)) from e

        logger.info(f"Cargado {graph} desde {self.file_path}")
        return graph


class PotentialsFileParser:
    """
    Parser para archivos de potenciales: una muestra por línea, valores
    separados por espacios o comas
    """

    def __init__(self, file_path: Path, width: int):
        self.file_path = Path(file_path)
        self.width = width

    def parse(self) -> NDArray[np.float64]:
        """Devuelve una matriz (filas, width)"""
        try:
            frame = pd.read_csv(
                self.file_path,
                sep=r"[\s,]+",
                header=None,
                comment="#",
                engine="python",
                dtype=np.float64,
            )
        except pd.errors.EmptyDataError as e:
            raise DataParsingError(str(self.file_path), "archivo sin potenciales") from e
        except (OSError, ValueError) as e:
            raise DataParsingError(str(self.file_path), str(e)) from e

        frame = frame.dropna(axis=1, how="all")
        if frame.empty:
            raise DataParsingError(str(self.file_path), "archivo sin potenciales")
        if frame.shape[1] != self.width:
            raise DataParsingError(
                str(self.file_path), f"se esperaban {self.width} valores por fila, hay {frame.shape[1]}"
            )
        if frame.isna().any().any():
            raise DataParsingError(str(self.file_path), "filas incompletas")

        logger.info(f"Cargadas {len(frame)} filas de potenciales desde {self.file_path}")
        return frame.to_numpy(dtype=np.float64)
