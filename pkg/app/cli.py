"""
Línea de comandos resistnet

    resistnet run <spec-file> [--out DIR] [--seed N] [--threads N]
    resistnet verify [--seed N] [--graph FILE] [--trials N] [--eps E] [--out DIR]
    resistnet bound (--graph FILE --pin FILE | --crossbar N_IN N_OUT) [--eps E] [--pin FILE]

Códigos de salida: 0 éxito, 1 fallo de propiedad o de convergencia,
2 error de configuración o de datos de entrada.
"""
from pathlib import Path
from typing import Optional, Sequence
import argparse
import logging
import sys

from pydantic import ValidationError

from app import __version__
from app.application.dtos.experiment_dtos import BoundRequest
from app.application.dtos.experiment_spec import ExperimentKind, ExperimentSpec
from app.application.use_cases.compute_bound import ComputeBoundUseCase
from app.application.use_cases.run_experiment import RunExperimentUseCase
from app.core.config import Settings, get_settings
from app.core.exceptions import PropertyViolationError, ResistNetError
from app.domain.entities.circuit_graph import make_crossbar
from app.domain.services.instances import ramp_inputs
from app.infrastructure.parsers.config_parser import ExperimentConfigParser
from app.infrastructure.repositories.csv_artifact_repository import CsvArtifactRepository
from app.infrastructure.repositories.file_graph_repository import FileGraphRepository

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2


def build_parser(settings: Settings) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="resistnet",
        description="Contrastive Learning sobre redes de resistencias lineales",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Ejemplos:
  resistnet run experiments/step_size_sweep.ini --out results
  resistnet verify --seed 42
  resistnet bound --crossbar 40 30 --eps 0.1
        """,
    )
    parser.add_argument("--version", action="version", version=f"resistnet {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="Ejecuta los experimentos de un archivo de configuración")
    run.add_argument("spec_file", type=Path, help="Archivo key = value con secciones [experiment]")
    run.add_argument("--out", type=Path, default=None, help="Directorio de artefactos")
    run.add_argument("--seed", type=int, default=None, help="Reemplaza la semilla del archivo")
    run.add_argument("--threads", type=int, default=None, help="Hilos para los barridos")

    verify = commands.add_parser("verify", help="Ejecuta las suites de verificación")
    verify.add_argument("--seed", type=int, default=settings.default_seed)
    verify.add_argument("--graph", type=Path, default=None, help="Topología sobre la que verificar")
    verify.add_argument("--trials", type=int, default=settings.lipschitz_trials,
                        help="Pares del chequeo de Lipschitz/cocoercividad")
    verify.add_argument("--eps", type=float, default=settings.epsilon)
    verify.add_argument("--out", type=Path, default=settings.output_dir)

    bound = commands.add_parser("bound", help="Imprime K y 2/K")
    topology = bound.add_mutually_exclusive_group(required=True)
    topology.add_argument("--graph", type=Path, help="Archivo de grafo")
    topology.add_argument("--crossbar", type=int, nargs=2, metavar=("N_IN", "N_OUT"))
    bound.add_argument("--eps", type=float, default=settings.epsilon)
    bound.add_argument("--pin", type=Path, default=None,
                       help="Potenciales de entrada, una muestra por línea (por defecto 1..N_I con --crossbar)")
    return parser


def _report(name: str, failures: list[str], artifacts: list[Path]) -> None:
    status = "OK" if not failures else "FALLA"
    print(f"[{status}] {name}: {', '.join(str(p) for p in artifacts)}")
    for failure in failures:
        print(f"  - {failure}")


def command_run(args: argparse.Namespace, settings: Settings) -> int:
    specs = ExperimentConfigParser(args.spec_file).parse()
    exit_code = EXIT_OK
    for spec in specs:
        spec = spec.with_overrides(seed=args.seed, threads=args.threads, output_dir=args.out)
        use_case = RunExperimentUseCase(
            FileGraphRepository(),
            CsvArtifactRepository(spec.output_dir, settings.float_format),
            __version__,
        )
        response = use_case.execute(spec)
        _report(spec.artifact_name, response.result.failures, response.artifacts)
        if not response.result.succeeded:
            exit_code = EXIT_FAILURE
    return exit_code


def command_verify(args: argparse.Namespace, settings: Settings) -> int:
    spec = ExperimentSpec(
        name="verify",
        kind=ExperimentKind.VERIFY,
        seed=args.seed,
        epsilon=args.eps,
        graph_file=args.graph,
        verify_trials=args.trials,
        output_dir=args.out,
    )
    use_case = RunExperimentUseCase(
        FileGraphRepository(),
        CsvArtifactRepository(spec.output_dir, settings.float_format),
        __version__,
    )
    response = use_case.execute(spec)
    for row in response.result.table.itertuples(index=False):
        verdict = "OK" if row.passed else "FALLA"
        print(f"[{verdict}] {row.suite}: peor={row.worst_value:.3e} umbral={row.threshold:.1e}")
    _report(spec.artifact_name, response.result.failures, response.artifacts)
    return EXIT_OK if response.result.succeeded else EXIT_FAILURE


def command_bound(args: argparse.Namespace, settings: Settings) -> int:
    graph_repository = FileGraphRepository()
    if args.crossbar is not None:
        graph = make_crossbar(*args.crossbar)
    else:
        graph = graph_repository.load_graph(args.graph)

    if args.pin is not None:
        inputs = graph_repository.load_potentials(args.pin, graph.num_inputs)
    elif args.crossbar is not None:
        inputs = ramp_inputs(graph.num_inputs)
    else:
        print("error: --graph requiere --pin", file=sys.stderr)
        return EXIT_CONFIG

    response = ComputeBoundUseCase().execute(BoundRequest(graph=graph, inputs=inputs, epsilon=args.eps))
    for index, (K, two_over_K) in enumerate(zip(response.K, response.two_over_K)):
        prefix = f"[{index}] " if len(response.K) > 1 else ""
        print(f"{prefix}K = {K:.17g}")
        print(f"{prefix}2/K = {two_over_K:.17g}")
    if len(response.K) > 1:
        print(f"K_max = {response.K_max:.17g}")
    return EXIT_OK


COMMANDS = {
    "run": command_run,
    "verify": command_verify,
    "bound": command_bound,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Punto de entrada; devuelve el código de salida"""
    settings = get_settings()
    logging.basicConfig(
        level=settings.log_level.upper(),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )
    args = build_parser(settings).parse_args(argv)

    try:
        return COMMANDS[args.command](args, settings)
    except PropertyViolationError as e:
        logger.error(str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE
    except (ResistNetError, ValidationError) as e:
        logger.error(str(e))
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
