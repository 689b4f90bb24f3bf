"""
Routes para la cota de Lipschitz
"""
from fastapi import APIRouter, Depends

from app.api.dependencies import get_compute_bound_use_case
from app.api.errors import http_error
from app.api.models.schemas import BoundRequestSchema, BoundResponseSchema, ErrorResponse
from app.application.dtos.experiment_dtos import BoundRequest
from app.application.use_cases import ComputeBoundUseCase
from app.core.exceptions import ResistNetError
from app.domain.entities.circuit_graph import CircuitGraph, make_crossbar
from app.domain.services.instances import ramp_inputs

router = APIRouter(prefix="/bound", tags=["bound"])


def _graph(body: BoundRequestSchema) -> CircuitGraph:
    if body.n_in is not None and body.n_out is not None:
        return make_crossbar(body.n_in, body.n_out)
    return CircuitGraph(
        num_nodes=body.num_nodes,  # type: ignore[arg-type]
        branches=tuple(body.branches or ()),
        input_nodes=tuple(body.input_nodes or ()),
        output_nodes=tuple(body.output_nodes or ()),
    )


@router.post("", response_model=BoundResponseSchema, responses={400: {"model": ErrorResponse}})
async def calcular_cota(
    body: BoundRequestSchema,
    use_case: ComputeBoundUseCase = Depends(get_compute_bound_use_case),
) -> BoundResponseSchema:
    """
    Calcula K y el paso máximo 2/K

    Raises:
        400: Topología o potenciales inválidos
    """
    try:
        graph = _graph(body)
        inputs = body.p_I if body.p_I is not None else [ramp_inputs(graph.num_inputs).tolist()]
        response = use_case.execute(BoundRequest(graph=graph, inputs=inputs, epsilon=body.epsilon))
    except ResistNetError as e:
        raise http_error(e) from e

    return BoundResponseSchema(
        branches=response.branches,
        K=response.K,
        two_over_K=response.two_over_K,
        K_max=response.K_max,
    )
