"""
Use Case: Suites de verificación
"""
import logging

from app.application.dtos.experiment_dtos import VerificationRequest, VerificationResponse
from app.domain.repositories.i_repository import IGraphRepository
from app.domain.services.learning import Projection, project_c_eps
from app.domain.services.verification import run_verification

logger = logging.getLogger(__name__)


class VerificationUseCase:
    """
    Ejecuta las suites sobre instancias sembradas, o sobre la topología de un
    archivo de grafo si se indica

    Un grafo disconexo no se atrapa aquí: el SingularLaplacianError sube con
    los diagnósticos del grafo
    """

    def __init__(self, graph_repository: IGraphRepository, projection: Projection = project_c_eps):
        self._graph_repository = graph_repository
        self._projection = projection

    def execute(self, request: VerificationRequest) -> VerificationResponse:
        graph = None
        if request.graph_file is not None:
            graph = self._graph_repository.load_graph(request.graph_file)
            logger.info(f"Verificando sobre {graph} desde {request.graph_file}")

        suites = run_verification(
            seed=request.seed,
            lipschitz_trials=request.lipschitz_trials,
            graph=graph,
            epsilon=request.epsilon,
            projection=self._projection,
        )
        return VerificationResponse(seed=request.seed, suites=suites)
