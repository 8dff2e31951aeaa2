"""Batch execution: simulate a configured run and write its tables.

Every run writes a manifest that echoes the validated config and the
exact phase schedules used, so any run can be replayed bit-for-bit from
its manifest alone, without regenerating disorder from the seed.
"""

from __future__ import annotations

import datetime
import json
from pathlib import Path

import numpy as np

from . import __version__
from .apparatus import layout_table
from .config import DISORDERED, RunConfig, SimilarityVs, config_echo, load_config, parse_config
from .errors import ConfigError, NumericalInvariantError
from .evolution import evolve
from .measure import (
    DistributionSeries,
    LossModel,
    bhattacharyya_partials,
    ensemble_mean_series,
    series_from_trajectory,
    similarity,
    variance,
)
from .oracle import MAX_ENUMERATION_STEPS, oracle_state
from .schedules import PhaseSchedule, ensemble_schedules, ordered_schedule
from .state import WalkerState, initial_state

__all__ = ["NORM_TOLERANCE", "ORACLE_TOLERANCE", "run", "replay"]

NORM_TOLERANCE = 1e-10
ORACLE_TOLERANCE = 1e-10


def _fmt(value: float) -> str:
    # 12 significant digits keeps the tables diffable and reproducible.
    return format(value, ".12g")


def _write_lines(path: Path, lines: list[str]) -> None:
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def _schedules_for(config: RunConfig) -> list[PhaseSchedule]:
    if config.schedule_kind == DISORDERED:
        assert config.disorder is not None
        return ensemble_schedules(config.steps, config.disorder)
    return [ordered_schedule(config.steps, config.theta)]


def _simulate(
    config: RunConfig, schedules: list[PhaseSchedule]
) -> tuple[list[DistributionSeries], list[WalkerState]]:
    """Evolve every realization; returns per-realization series (steps
    0..N, loss-emulated measurement) and the final states."""
    loss = LossModel(config.loss_eta)
    series_all: list[DistributionSeries] = []
    finals: list[WalkerState] = []
    for index, schedule in enumerate(schedules):
        trajectory = evolve(initial_state(config.steps, config.initial_coin),
                            schedule, config.reflectivity)
        for state in trajectory:
            drift = abs(float(np.sum(np.abs(state.amplitudes) ** 2)) - 1.0)
            if drift > NORM_TOLERANCE:
                raise NumericalInvariantError(
                    f"norm drift {drift:.3e} at step {state.step_index} of "
                    f"realization {index} exceeds {NORM_TOLERANCE:.0e}"
                )
        series_all.append(series_from_trajectory(trajectory, loss=loss))
        finals.append(trajectory[-1])
    return series_all, finals


def _write_distributions(path: Path, series: DistributionSeries, to_step_max: bool) -> None:
    lines = ["step,site,p"]
    for row in series.rows:
        values = row.probs
        if to_step_max:
            values = values / values.max()
        for site, p in zip(row.sites, values):
            lines.append(f"{row.step},{site},{_fmt(float(p))}")
    _write_lines(path, lines)


def _write_variances(path: Path, series: DistributionSeries) -> None:
    lines = ["step,variance"]
    for row in series.rows:
        lines.append(f"{row.step},{_fmt(variance(row))}")
    _write_lines(path, lines)


def _write_layout(path: Path, num_steps: int) -> None:
    lines = ["step,site,coin,interferometer,plane,direction"]
    for step, site, coin, interferometer, plane, direction in layout_table(num_steps):
        lines.append(f"{step},{site},{coin},{interferometer},{plane},{direction}")
    _write_lines(path, lines)


def _oracle_check(
    config: RunConfig,
    schedules: list[PhaseSchedule],
    finals: list[WalkerState],
    path: Path,
) -> None:
    lines = [f"tolerance {_fmt(ORACLE_TOLERANCE)}"]
    worst = 0.0
    for index, (schedule, final) in enumerate(zip(schedules, finals)):
        reference = oracle_state(config.initial_coin, schedule,
                                 config.reflectivity, config.steps)
        deviation = float(np.max(np.abs(reference.amplitudes - final.amplitudes)))
        worst = max(worst, deviation)
        lines.append(f"realization {index} max_deviation {_fmt(deviation)}")
    lines.append(f"overall_max_deviation {_fmt(worst)}")
    lines.append("status " + ("pass" if worst <= ORACLE_TOLERANCE else "fail"))
    _write_lines(path, lines)
    if worst > ORACLE_TOLERANCE:
        raise NumericalInvariantError(
            f"path-sum check deviates by {worst:.3e} (tolerance {ORACLE_TOLERANCE:.0e}); "
            f"see {path}"
        )


def _write_similarity(path: Path, mean: DistributionSeries,
                      reference_mean: DistributionSeries) -> None:
    value = similarity(mean, reference_mean)
    partials = bhattacharyya_partials(mean, reference_mean)
    lines = [f"similarity {_fmt(value)}"]
    for step, partial in zip(mean.steps, partials):
        lines.append(f"step {step} partial {_fmt(partial)}")
    _write_lines(path, lines)


def _schedule_to_json(index: int, schedule: PhaseSchedule) -> dict:
    return {
        "realization_index": index,
        "entries": [[k, i, theta] for k, i, theta in schedule.entries()],
    }


def _schedule_from_json(obj: dict, num_steps: int, source: str) -> PhaseSchedule:
    try:
        thetas: dict[int, dict[int, float]] = {}
        for k, i, theta in obj["entries"]:
            thetas.setdefault(int(k), {})[int(i)] = float(theta)
        return PhaseSchedule(num_steps, thetas)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"{source}: bad serialized schedule: {exc}") from exc


def _validate_outputs(config: RunConfig) -> None:
    references = [item for item in config.outputs if isinstance(item, SimilarityVs)]
    if len(references) > 1:
        raise ConfigError("outputs: at most one similarity_vs comparison per run")
    if "oracle_check" in config.outputs and config.steps > MAX_ENUMERATION_STEPS:
        raise ConfigError(
            f"outputs: oracle_check enumerates 2^steps paths and is limited to "
            f"steps <= {MAX_ENUMERATION_STEPS}, got {config.steps}"
        )


def _reference_request(config: RunConfig) -> SimilarityVs | None:
    for item in config.outputs:
        if isinstance(item, SimilarityVs):
            return item
    return None


def _execute(
    config: RunConfig,
    schedules: list[PhaseSchedule],
    reference: tuple[RunConfig, list[PhaseSchedule]] | None,
    out_dir: Path,
) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    series_all, finals = _simulate(config, schedules)
    mean = ensemble_mean_series(series_all)
    walk_steps = range(1, config.steps + 1)

    for item in config.outputs:
        if item == "distributions":
            _write_distributions(out_dir / "distributions.csv", mean,
                                 config.normalize_to_step_max)
        elif item == "variances":
            _write_variances(out_dir / "variances.csv", mean.subseries(walk_steps))
            if config.schedule_kind == DISORDERED:
                for j, series in enumerate(series_all):
                    _write_variances(out_dir / f"variances_r{j}.csv",
                                     series.subseries(walk_steps))
        elif item == "layout":
            _write_layout(out_dir / "layout.csv", config.steps)
        elif item == "oracle_check":
            _oracle_check(config, schedules, finals, out_dir / "oracle_check.txt")
        elif isinstance(item, SimilarityVs):
            assert reference is not None
            ref_config, ref_schedules = reference
            ref_series, _ = _simulate(ref_config, ref_schedules)
            ref_mean = ensemble_mean_series(ref_series)
            _write_similarity(out_dir / "similarity.txt",
                              mean.subseries(walk_steps),
                              ref_mean.subseries(walk_steps))

    manifest = {
        "artifact": {"name": "beamwalk", "version": __version__},
        "created_utc": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "config": config_echo(config),
        "schedules": [_schedule_to_json(j, s) for j, s in enumerate(schedules)],
        "reference": None,
    }
    if reference is not None:
        ref_config, ref_schedules = reference
        manifest["reference"] = {
            "config": config_echo(ref_config),
            "schedules": [_schedule_to_json(j, s) for j, s in enumerate(ref_schedules)],
        }
    manifest_path = out_dir / "manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2) + "\n",
                             encoding="utf-8", newline="\n")
    return manifest_path


def run(
    config: RunConfig,
    base_dir: str | Path | None = None,
    output_dir: str | Path | None = None,
) -> Path:
    """Execute a run; returns the path of the manifest it wrote.

    ``base_dir`` anchors relative similarity_vs references (defaults to
    the working directory); ``output_dir`` overrides the config's.
    """
    _validate_outputs(config)
    base = Path(base_dir) if base_dir is not None else Path.cwd()
    schedules = _schedules_for(config)

    reference = None
    request = _reference_request(config)
    if request is not None:
        ref_path = Path(request.reference)
        if not ref_path.is_absolute():
            ref_path = base / ref_path
        ref_config = load_config(ref_path)
        if ref_config.steps != config.steps:
            raise ConfigError(
                f"{ref_path}: reference run has {ref_config.steps} steps, "
                f"this run has {config.steps}; similarity needs matching steps"
            )
        reference = (ref_config, _schedules_for(ref_config))

    out_dir = Path(output_dir) if output_dir is not None else Path(config.output_dir)
    return _execute(config, schedules, reference, out_dir)


def replay(manifest_path: str | Path, output_dir: str | Path | None = None) -> Path:
    """Re-run a manifest using its serialized schedules.

    Reproduces every data file of the original run byte for byte; only
    the new manifest's timestamp differs.
    """
    manifest_path = Path(manifest_path)
    try:
        document = json.loads(manifest_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{manifest_path}: invalid manifest JSON: {exc.msg}") from exc
    if not isinstance(document, dict) or "config" not in document:
        raise ConfigError(f"{manifest_path}: not a run manifest")

    config = parse_config(document["config"], source=f"{manifest_path}:config")
    _validate_outputs(config)
    raw_schedules = document.get("schedules", [])
    expected = (config.disorder.realization_count
                if config.schedule_kind == DISORDERED else 1)
    if len(raw_schedules) != expected:
        raise ConfigError(
            f"{manifest_path}: expected {expected} serialized schedule(s), "
            f"found {len(raw_schedules)}"
        )
    schedules = [_schedule_from_json(obj, config.steps, str(manifest_path))
                 for obj in raw_schedules]

    reference = None
    if _reference_request(config) is not None:
        bundle = document.get("reference")
        if not isinstance(bundle, dict):
            raise ConfigError(f"{manifest_path}: manifest lacks the reference run data")
        ref_config = parse_config(bundle["config"], source=f"{manifest_path}:reference")
        ref_schedules = [
            _schedule_from_json(obj, ref_config.steps, str(manifest_path))
            for obj in bundle.get("schedules", [])
        ]
        reference = (ref_config, ref_schedules)

    out_dir = Path(output_dir) if output_dir is not None else Path(config.output_dir)
    return _execute(config, schedules, reference, out_dir)
