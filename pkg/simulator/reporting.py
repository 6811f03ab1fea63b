"""
Serialização dos artefatos de resultado

Todos os arquivos são determinísticos: mesma configuração e mesma semente
produzem os mesmos bytes. Nada de horário, caminho absoluto ou contagem de
threads entra nos artefatos.
"""

import csv
import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from federation.engine import FederationSetup, RunReport, projected_comm_units
from federation.partition import class_histogram
from simulator.logging_config import get_logger

logger = get_logger(__name__, component="cli")

ROUNDS_HEADER = (
    "round",
    "test_accuracy",
    "n_sampled",
    "n_clean_candidates",
    "n_noisy_candidates",
    "comm_units",
)
CURVE_HEADER = ("round", "vanilla_acc", "clipfl_acc")
MISSING = "n/a"


def _fmt(value: float) -> str:
    return f"{value:.6f}"


def rounds_rows(report: RunReport) -> List[List[str]]:
    """Linhas do rounds.csv (sem o cabeçalho)"""
    return [
        [
            str(metrics.round),
            _fmt(metrics.test_accuracy),
            str(len(metrics.sampled)),
            str(len(metrics.clean_candidates)),
            str(len(metrics.noisy_candidates)),
            str(metrics.comm_units),
        ]
        for metrics in report.per_round
    ]


def write_rounds_csv(path: Union[str, Path], report: RunReport) -> Path:
    """Uma linha por rodada, cabeçalho fixo"""
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(ROUNDS_HEADER)
        writer.writerows(rounds_rows(report))
    return path


def write_json(path: Union[str, Path], payload: Dict[str, Any]) -> Path:
    path = Path(path)
    text = json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False)
    path.write_text(text + "\n", encoding="utf-8")
    return path


def write_curve_tsv(
    path: Union[str, Path],
    vanilla: Optional[RunReport],
    clipfl: Optional[RunReport],
) -> Path:
    """
    Curvas de convergência para plotagem externa

    Colunas sem execução correspondente ficam "n/a".
    """
    path = Path(path)
    reports = [r for r in (vanilla, clipfl) if r is not None]
    total = max(len(r.per_round) for r in reports)

    def _column(report: Optional[RunReport], index: int) -> str:
        if report is None or index >= len(report.per_round):
            return MISSING
        return _fmt(report.per_round[index].test_accuracy)

    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, delimiter="\t", lineterminator="\n")
        writer.writerow(CURVE_HEADER)
        for index in range(total):
            writer.writerow([index + 1, _column(vanilla, index), _column(clipfl, index)])
    return path


def write_clients_tsv(path: Union[str, Path], setup: FederationSetup) -> Path:
    """
    Distribuição de classes por cliente antes e depois do ruído

    Colunas: client_id, noisy, n_samples, flips, clean_0..clean_{K-1},
    observed_0..observed_{K-1}
    """
    path = Path(path)
    k = setup.num_classes
    clean = class_histogram(setup.clean_shards, k)
    observed = class_histogram(setup.shards, k)
    header = ["client_id", "noisy", "n_samples", "flips"]
    header += [f"clean_{c}" for c in range(k)] + [f"observed_{c}" for c in range(k)]

    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, delimiter="\t", lineterminator="\n")
        writer.writerow(header)
        for row, shard in enumerate(setup.shards):
            writer.writerow(
                [
                    shard.client_id,
                    int(shard.client_id in setup.noisy.noisy_ids),
                    shard.size,
                    setup.flips.get(shard.client_id, 0),
                ]
                + [int(v) for v in clean[row]]
                + [int(v) for v in observed[row]]
            )
    return path


def comparison_summary(vanilla: RunReport, clipfl: RunReport) -> Dict[str, Any]:
    """Bloco baseline/delta adicionado ao summary.json no modo ab"""
    vanilla_comm = vanilla.total_comm_units
    reduction = 1.0 - clipfl.total_comm_units / vanilla_comm if vanilla_comm else 0.0
    block = {
        "baseline": {
            "mode": vanilla.mode,
            "final_accuracy": vanilla.final_accuracy,
            "total_comm_units": vanilla_comm,
            "rounds_to_target": MISSING if vanilla.rounds_to_target is None else vanilla.rounds_to_target,
        },
        "delta": clipfl.final_accuracy - vanilla.final_accuracy,
        "comm_reduction": reduction,
    }
    schedule = _schedule(clipfl.config)
    if schedule is not None:
        # cronograma sem shards vazios; diverge do medido quando há clientes sem amostras
        projected = projected_comm_units(*schedule, True)
        baseline = projected_comm_units(*schedule, False)
        block["projected_comm_reduction"] = 1.0 - projected / baseline
    return block


def _schedule(config: Dict[str, Any]) -> Optional[tuple]:
    try:
        return (
            config["federation"]["clients"],
            config["federation"]["sample_rate"],
            config["clipfl"]["t_pre"],
            config["clipfl"]["t_post"],
            config["clipfl"]["p"],
        )
    except KeyError:
        return None


def comparison_lines(vanilla: RunReport, clipfl: RunReport) -> List[str]:
    """
    Tabela de comparação impressa no modo ab

    A linha Δ é clipfl_final − vanilla_final em pontos percentuais.
    """
    def _pct(value: Optional[float]) -> str:
        return MISSING if value is None else f"{100 * value:.2f}%"

    block = comparison_summary(vanilla, clipfl)
    lines = [
        f"{'execução':<10} {'acurácia final':>15} {'transferências':>15}",
        f"{'vanilla':<10} {_pct(vanilla.final_accuracy):>15} {vanilla.total_comm_units:>15}",
        f"{'clipfl':<10} {_pct(clipfl.final_accuracy):>15} {clipfl.total_comm_units:>15}",
        f"Δ = {100 * block['delta']:+.2f} p.p.",
        f"identificação: acurácia {_pct(clipfl.identification_accuracy)}, "
        f"recall {_pct(clipfl.identification_recall)}",
        f"redução de comunicação: {_pct(block['comm_reduction'])}",
    ]
    if clipfl.target_accuracy is not None:
        lines.append(
            f"rodadas até {_pct(clipfl.target_accuracy)}: "
            f"vanilla {vanilla.rounds_to_target or MISSING}, clipfl {clipfl.rounds_to_target or MISSING}"
        )
    return lines


def write_artifacts(
    out_dir: Union[str, Path],
    setup: FederationSetup,
    primary: RunReport,
    baseline: Optional[RunReport] = None,
) -> Dict[str, Path]:
    """
    Grava rounds.csv, summary.json, curve.tsv e clients.tsv

    Args:
        out_dir: Diretório de saída (criado se necessário)
        setup: Setup compartilhado pelas execuções
        primary: Execução principal (a de ClipFL no modo ab)
        baseline: Execução vanilla do modo ab

    Returns:
        Nome do artefato → caminho gravado
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    summary = primary.to_dict()
    written = {"rounds.csv": write_rounds_csv(out / "rounds.csv", primary)}
    if baseline is not None:
        summary.update(comparison_summary(baseline, primary))
        written["rounds_vanilla.csv"] = write_rounds_csv(out / "rounds_vanilla.csv", baseline)
        vanilla, clipfl = baseline, primary
    elif primary.mode == "vanilla":
        vanilla, clipfl = primary, None
    else:
        vanilla, clipfl = None, primary

    written["summary.json"] = write_json(out / "summary.json", summary)
    written["curve.tsv"] = write_curve_tsv(out / "curve.tsv", vanilla, clipfl)
    written["clients.tsv"] = write_clients_tsv(out / "clients.tsv", setup)

    logger.info(
        "Artefatos gravados",
        extra={"event_type": "artifacts", "out_dir": str(out), "files": sorted(written)}
    )
    return written

