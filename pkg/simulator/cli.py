"""
Linha de comando do clipfl-sim

    clipfl-sim run --config exp.toml [--mode single|ab] [--seed N] [--out DIR]
                   [--threads N] [--set chave=valor ...] [--print-config]

Códigos de saída: 0 execução completa, 1 falha durante a execução,
2 configuração inválida.
"""

import argparse
import os
import sys
from typing import List, Optional, TextIO

from dotenv import load_dotenv

from federation.engine import prepare_federation, run_simulation
from federation.errors import ConfigurationError, FederationError
from simulator.config import ExperimentConfig, RunMode, THREADS_ENV, as_overrides, parse_config, render_config
from simulator.logging_config import LogContext, get_logger, setup_logging
from simulator.reporting import comparison_lines, write_artifacts

logger = get_logger(__name__, component="cli")

EXIT_OK = 0
EXIT_RUN_ERROR = 1
EXIT_CONFIG_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clipfl-sim",
        description="Simulador determinístico de aprendizado federado com poda de clientes ruidosos",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="Executa um experimento")
    run.add_argument("--config", help="Arquivo TOML de configuração (padrões se omitido)")
    run.add_argument("--mode", choices=[m.value for m in RunMode], default=RunMode.SINGLE.value,
                     help="single: uma execução; ab: vanilla vs ClipFL com a mesma semente")
    run.add_argument("--seed", type=int, help="Semente raiz (sobrepõe o arquivo)")
    run.add_argument("--out", help="Diretório de saída (sobrepõe output.dir)")
    run.add_argument("--threads", type=int, help=f"Workers do treino local (padrão: ${THREADS_ENV} ou CPUs)")
    run.add_argument("--set", dest="overrides", action="append", default=[], metavar="CHAVE=VALOR",
                     help="Sobrepõe qualquer chave, ex: --set clipfl.p=0.3")
    run.add_argument("--print-config", action="store_true",
                     help="Imprime a configuração efetiva e sai")
    return parser


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    """Arquivo → --set → flags dedicadas (as flags vencem)"""
    overrides = as_overrides(args.overrides)
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.out is not None:
        overrides["output.dir"] = args.out
    if args.threads is not None:
        overrides["threads"] = args.threads
    return parse_config(args.config, overrides)


def run_command(cfg: ExperimentConfig, mode: RunMode, stdout: Optional[TextIO] = None) -> int:
    """
    Executa o experimento e grava os artefatos em cfg.output.dir

    No modo ab as duas execuções partem do mesmo setup (mesma semente) e a
    tabela de comparação vai para stdout.

    Returns:
        EXIT_OK quando todas as rodadas terminaram
    """
    stdout = stdout or sys.stdout
    setup = prepare_federation(cfg)

    if mode == RunMode.AB:
        vanilla = run_simulation(cfg.with_clipfl(False), setup)
        clipfl = run_simulation(cfg.with_clipfl(True), setup)
        write_artifacts(cfg.output.dir, setup, clipfl, baseline=vanilla)
        for line in comparison_lines(vanilla, clipfl):
            print(line, file=stdout)
        return EXIT_OK

    report = run_simulation(cfg, setup)
    write_artifacts(cfg.output.dir, setup, report)
    ident = report.identification_accuracy
    print(
        f"{report.mode}: acurácia final {100 * report.final_accuracy:.2f}%, "
        f"transferências {report.total_comm_units}, "
        f"identificação {'n/a' if ident is None else f'{100 * ident:.2f}%'}",
        file=stdout,
    )
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    json_env = os.getenv("JSON_LOGS")
    setup_logging(
        level=os.getenv("LOG_LEVEL", "INFO"),
        json_logs=None if json_env is None else json_env.lower() == "true",
        log_file=os.getenv("LOG_FILE"),
    )

    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        if args.print_config:
            print(render_config(cfg))
            return EXIT_OK
        with LogContext(run_seed=cfg.seed, cli_mode=args.mode):
            return run_command(cfg, RunMode(args.mode))
    except ConfigurationError as e:
        logger.error("Configuração inválida", extra={"error": str(e), "key": e.key})
        print(f"erro de configuração: {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except FederationError as e:
        logger.error("Execução interrompida", extra={"error": str(e), "error_type": type(e).__name__})
        print(f"erro: {e}", file=sys.stderr)
        return EXIT_RUN_ERROR
    except OSError as e:
        print(f"erro de E/S: {e}", file=sys.stderr)
        return EXIT_RUN_ERROR


if __name__ == "__main__":
    sys.exit(main())
