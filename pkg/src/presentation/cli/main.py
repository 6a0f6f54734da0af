"""
Interfaz de línea de comandos
cellshot

Subcomandos: fit, diagnose, simulate, bench-real, calibrate.

Códigos de salida:
- 0: éxito
- 2: error de entrada (CSV, columna, parámetros; también errores de argparse)
- 3: error de estimación (diseño degenerado, MAD nulo, calibración...)

Los reportes van a stdout o a --out; los logs a stderr.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Optional, Sequence

from src.application.services.benchmark_service import BenchmarkService
from src.application.services.calibration_service import CalibrationService
from src.application.services.estimator_service import EstimatorService
from src.application.services.fit_service import DEFAULT_THRESHOLD, FitService
from src.application.services.simulation_service import SimulationService
from src.domain.exceptions.domain_exceptions import (
    EstimationException,
    ValidationException,
)
from src.domain.value_objects.enums import (
    BenchMode,
    CellwiseScheme,
    Method,
    RhoKind,
    SimTable,
    SmallSlopeImputation,
)
from src.infrastructure.config.settings import configure_logging
from src.infrastructure.repositories.csv.csv_dataset_repository import CsvDatasetRepository
from src.infrastructure.repositories.csv.file_report_repository import FileReportRepository, to_json

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_ESTIMATION = 3

BOTH_MODES = "both"


def _enum(tipo) -> Callable[[str], object]:
    """Conversor de argparse que acepta '-' o '_' y falla con ArgumentTypeError"""
    def _convertir(texto: str):
        try:
            return tipo.desde_texto(texto)
        except ValueError as e:
            raise argparse.ArgumentTypeError(str(e)) from e
    _convertir.__name__ = tipo.__name__
    return _convertir


# ============================================================================
# Parser
# ============================================================================

def _agregar_datos(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--data", required=True, type=Path, help="CSV con encabezado")
    sub.add_argument("--response", required=True, help="Nombre de la columna respuesta")


def _agregar_estimadores(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--bdp", type=float, default=0.2,
                     help="Punto de ruptura de las regresiones S simples (default 0.2)")
    sub.add_argument("--cutoff", type=float, default=3.0,
                     help="Corte c del peso de rechazo duro (default 3)")
    sub.add_argument("--small-slope", type=_enum(SmallSlopeImputation),
                     default=SmallSlopeImputation.MEDIAN,
                     help="Imputación con pendiente chica: median | zero")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cellshot",
        description="Regresión S por coordenadas robusta a outliers celda a celda",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="-v: INFO, -vv: DEBUG (por defecto CELLSHOT_LOG_LEVEL)")
    subparsers = parser.add_subparsers(dest="command", required=True)

    fit = subparsers.add_parser("fit", help="Ajusta un estimador a un CSV")
    _agregar_datos(fit)
    fit.add_argument("--method", type=_enum(Method), default=Method.SHOOTING_BI,
                     help=f"Uno de {Method.valores_validos()}")
    _agregar_estimadores(fit)
    fit.add_argument("--seed", type=int, default=0)
    fit.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    fit.add_argument("--out", type=Path, help="Archivo JSON de salida (default stdout)")

    diagnose = subparsers.add_parser("diagnose", help="Lista celdas y filas marcadas")
    _agregar_datos(diagnose)
    diagnose.add_argument("--method", type=_enum(Method), default=Method.SHOOTING_BI,
                          help="Método shooting a usar")
    _agregar_estimadores(diagnose)
    diagnose.add_argument("--seed", type=int, default=0)
    diagnose.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    diagnose.add_argument("--out", type=Path, help="Archivo CSV de salida (default stdout)")

    simulate = subparsers.add_parser("simulate", help="Corre una tabla de simulación")
    simulate.add_argument("--table", required=True, type=_enum(SimTable),
                          help=f"Uno de {SimTable.valores_validos()}")
    simulate.add_argument("--eps", type=float, nargs="+", default=[0.0])
    simulate.add_argument("--replicates", type=int, default=200)
    simulate.add_argument("--seed", type=int, required=True)
    simulate.add_argument("--estimators", type=_enum(Method), nargs="+",
                          default=Method.benchmark_set())
    simulate.add_argument("--schemes", type=_enum(CellwiseScheme), nargs="+",
                          help="Esquemas a correr (default todos)")
    simulate.add_argument("--n", type=int, default=100)
    simulate.add_argument("--p", type=int, default=15)
    simulate.add_argument("--out", type=Path, required=True,
                          help="CSV de la tabla; el JSON va al lado con extensión .json")

    bench = subparsers.add_parser("bench-real", help="Benchmark AND sobre datos reales")
    _agregar_datos(bench)
    bench.add_argument("--mode", choices=BenchMode.valores_validos() + [BOTH_MODES],
                       default=BOTH_MODES)
    bench.add_argument("--replicates", type=int, default=100)
    bench.add_argument("--seed", type=int, required=True)
    bench.add_argument("--frac", type=float, default=0.8)
    bench.add_argument("--eps", type=float, default=0.05)
    bench.add_argument("--shift", type=float, default=10.0)
    bench.add_argument("--estimators", type=_enum(Method), nargs="+",
                       default=Method.benchmark_set())
    bench.add_argument("--out", type=Path, required=True,
                       help="CSV de la tabla; el JSON va al lado con extensión .json")

    calibrate = subparsers.add_parser("calibrate", help="Calibra la constante de una ρ")
    calibrate.add_argument("--rho", required=True, type=_enum(RhoKind),
                           help=f"Uno de {RhoKind.valores_validos()}")
    objetivo = calibrate.add_mutually_exclusive_group(required=True)
    objetivo.add_argument("--bdp", type=float)
    objetivo.add_argument("--efficiency", type=float)
    calibrate.add_argument("--out", type=Path)

    return parser


# ============================================================================
# Comandos
# ============================================================================

def _estimadores(args: argparse.Namespace) -> EstimatorService:
    return EstimatorService(
        shooting_bdp=getattr(args, "bdp", 0.2),
        cutoff_c=getattr(args, "cutoff", 3.0),
        small_slope_imputation=getattr(args, "small_slope", SmallSlopeImputation.MEDIAN),
    )


def _emitir(contenido: str, destino: Optional[Path], reportes: FileReportRepository) -> None:
    if destino is None:
        sys.stdout.write(contenido)
    else:
        reportes.escribir(contenido, destino)


def cmd_fit(args: argparse.Namespace) -> int:
    reportes = FileReportRepository()
    data = CsvDatasetRepository().cargar(args.data, args.response)
    reporte = FitService(_estimadores(args)).fit(data, args.method, seed=args.seed,
                                                 threshold=args.threshold)
    _emitir(reportes.fit_json(reporte), args.out, reportes)
    return EXIT_OK


def cmd_diagnose(args: argparse.Namespace) -> int:
    reportes = FileReportRepository()
    data = CsvDatasetRepository().cargar(args.data, args.response)
    reporte = FitService(_estimadores(args)).diagnose(data, args.method, seed=args.seed,
                                                      threshold=args.threshold)
    _emitir(reportes.diagnose_csv(reporte), args.out, reportes)
    return EXIT_OK


def _escribir_experimento(reporte, out: Path, by_block_columns: bool) -> None:
    reportes = FileReportRepository()
    reportes.escribir(reportes.experiment_csv(reporte, by_block_columns), out)
    reportes.escribir(reportes.experiment_json(reporte), out.with_suffix(".json"))


def cmd_simulate(args: argparse.Namespace) -> int:
    servicio = SimulationService(EstimatorService())
    reporte = servicio.run_table(
        args.table, args.estimators, args.eps, args.replicates, args.seed,
        schemes=args.schemes, n=args.n, p=args.p,
    )
    if reporte.failure_count():
        logger.warning("%d ajustes fallaron y se excluyeron", reporte.failure_count())
    _escribir_experimento(reporte, args.out, by_block_columns=False)
    return EXIT_OK


def cmd_bench_real(args: argparse.Namespace) -> int:
    data = CsvDatasetRepository().cargar(args.data, args.response)
    modos = (list(BenchMode) if args.mode == BOTH_MODES
             else [BenchMode.desde_texto(args.mode)])
    reporte = BenchmarkService(EstimatorService()).run(
        data, modos, args.replicates, args.estimators, args.seed,
        frac=args.frac, eps=args.eps, shift=args.shift,
    )
    _escribir_experimento(reporte, args.out, by_block_columns=True)
    return EXIT_OK


def cmd_calibrate(args: argparse.Namespace) -> int:
    resultado = CalibrationService().calibrate(args.rho, bdp=args.bdp, efficiency=args.efficiency)
    reportes = FileReportRepository()
    _emitir(to_json(resultado), args.out, reportes)
    return EXIT_OK


COMMANDS: dict[str, Callable[[argparse.Namespace], int]] = {
    "fit": cmd_fit,
    "diagnose": cmd_diagnose,
    "simulate": cmd_simulate,
    "bench-real": cmd_bench_real,
    "calibrate": cmd_calibrate,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_INPUT
    configure_logging(args.verbose)

    try:
        return COMMANDS[args.command](args)
    except ValidationException as e:
        print(f"cellshot {args.command}: error de entrada: {e}", file=sys.stderr)
        return EXIT_INPUT
    except EstimationException as e:
        print(f"cellshot {args.command}: error de estimación: {e}", file=sys.stderr)
        # la calibración no factible es un problema del objetivo pedido
        return EXIT_INPUT if args.command == "calibrate" else EXIT_ESTIMATION


if __name__ == "__main__":
    sys.exit(main())
