"""
Use Case: Cota de Lipschitz K y paso máximo 2/K
"""
import logging

import numpy as np

from app.application.dtos.experiment_dtos import BoundRequest, BoundResponse
from app.core.exceptions import InvalidArgumentError
from app.domain.services.learning import lipschitz_bound_K

logger = logging.getLogger(__name__)


class ComputeBoundUseCase:
    """K por cada fila de potenciales de entrada; K_max es el máximo"""

    def execute(self, request: BoundRequest) -> BoundResponse:
        rows = np.atleast_2d(np.asarray(request.inputs, dtype=np.float64))
        if rows.shape[0] == 0:
            raise InvalidArgumentError("inputs", 0, "se requiere al menos una fila de p_I")

        bounds = [lipschitz_bound_K(request.graph, row, request.epsilon) for row in rows]
        two_over_K = [2.0 / K if K > 0 else float("inf") for K in bounds]
        logger.info(f"Cota sobre {request.graph}: K_max = {max(bounds):.6e}")

        return BoundResponse(
            branches=request.graph.num_branches,
            K=bounds,
            two_over_K=two_over_K,
            K_max=max(bounds),
        )
