"""Dataset files (JSON manifest + per-trial CSVs) and the synthetic trial generator.

The generator is the test substrate standing in for real recordings: a
damped sinusoid starting at the stimulus, scaled per sensor by a random
gain, plus white Gaussian noise. Randomness comes from a SplitMix64
stream with a pinned draw order (sensor gains first, then noise in
trial-major/sensor-major/time-major order), so a seed fully determines
the dataset bytes.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .denoise import TrialSet
from .errors import DatasetError

__all__ = [
    "Manifest",
    "SplitMix64",
    "SyntheticConfig",
    "generate_synthetic",
    "load_dataset",
    "load_manifest",
    "load_matrix",
    "load_trials",
    "save_manifest",
    "save_matrix",
    "write_dataset",
]

MANIFEST_NAME = "manifest.json"


@dataclass(frozen=True)
class Manifest:
    """Dataset geometry and units; one JSON document per dataset directory."""

    sensors: int
    pre_samples: int
    post_samples: int
    trials: int
    unit: str = "fT"
    sample_period_ms: float = 1.0

    def __post_init__(self) -> None:
        for name in ("sensors", "pre_samples", "post_samples", "trials"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1, got {getattr(self, name)}")
        if self.unit != "fT":
            raise ValueError(f"unit must be 'fT', got {self.unit!r}")
        if self.sample_period_ms <= 0:
            raise ValueError(f"sample_period_ms must be positive, got {self.sample_period_ms}")


@dataclass(frozen=True)
class SyntheticConfig:
    """Knobs for the synthetic generator; defaults mirror the 274-sensor setup."""

    seed: int = 0
    sensors: int = 274
    pre_samples: int = 120
    post_samples: int = 241
    trials: int = 10
    noise_sigma: float = 40.0
    response_amp: float = 120.0
    response_freq_hz: float = 11.0
    response_decay_ms: float = 60.0

    def __post_init__(self) -> None:
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must fit in 64 bits, got {self.seed}")
        for name in ("sensors", "pre_samples", "post_samples", "trials"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1, got {getattr(self, name)}")
        if self.noise_sigma < 0:
            raise ValueError(f"noise_sigma must be >= 0, got {self.noise_sigma}")
        if self.response_decay_ms <= 0:
            raise ValueError(f"response_decay_ms must be positive, got {self.response_decay_ms}")


class SplitMix64:
    """SplitMix64 stream with vectorized draws.

    Draw i (1-based) mixes the state seed + i*0x9E3779B97F4A7C15 mod 2^64,
    identical to advancing the scalar generator i times. Uniforms map the
    top 53 bits to [0, 1); Gaussians pair consecutive uniforms through
    Box-Muller (cosine first, then sine).
    """

    _GOLDEN = np.uint64(0x9E3779B97F4A7C15)
    _MIX1 = np.uint64(0xBF58476D1CE4E5B9)
    _MIX2 = np.uint64(0x94D049BB133111EB)

    def __init__(self, seed: int) -> None:
        self._seed = np.uint64(seed & 0xFFFFFFFFFFFFFFFF)
        self._drawn = 0

    def next_block(self, count: int) -> np.ndarray:
        """Next ``count`` raw 64-bit outputs."""
        idx = np.arange(self._drawn + 1, self._drawn + count + 1, dtype=np.uint64)
        self._drawn += count
        z = self._seed + idx * self._GOLDEN
        z = (z ^ (z >> np.uint64(30))) * self._MIX1
        z = (z ^ (z >> np.uint64(27))) * self._MIX2
        return z ^ (z >> np.uint64(31))

    def uniform(self, count: int) -> np.ndarray:
        """Next ``count`` uniforms in [0, 1)."""
        return (self.next_block(count) >> np.uint64(11)).astype(np.float64) * 2.0**-53

    def gaussian(self, count: int) -> np.ndarray:
        """Next ``count`` standard normals; one uniform pair feeds two outputs."""
        pairs = (count + 1) // 2
        u = self.uniform(2 * pairs)
        radius = np.sqrt(-2.0 * np.log1p(-u[0::2]))  # 1-u keeps the log argument in (0, 1]
        theta = (2.0 * math.pi) * u[1::2]
        out = np.empty(2 * pairs)
        out[0::2] = radius * np.cos(theta)
        out[1::2] = radius * np.sin(theta)
        return out[:count]


def generate_synthetic(config: SyntheticConfig) -> TrialSet:
    """Deterministic synthetic trials for the given config (1 ms sample period)."""
    rng = SplitMix64(config.seed)
    gains = 2.0 * rng.uniform(config.sensors) - 1.0

    total = config.pre_samples + config.post_samples
    t_ms = np.arange(config.post_samples, dtype=np.float64)  # time since stimulus
    response = (
        config.response_amp
        * np.exp(-t_ms / config.response_decay_ms)
        * np.sin(2.0 * math.pi * config.response_freq_hz * t_ms / 1000.0)
    )
    base = np.zeros((config.sensors, total))
    base[:, config.pre_samples :] = gains[:, None] * response[None, :]

    if config.noise_sigma > 0.0:
        noise = rng.gaussian(config.trials * config.sensors * total)
        noise = config.noise_sigma * noise.reshape(config.trials, config.sensors, total)
        mats = [base + noise[i] for i in range(config.trials)]
    else:
        mats = [base.copy() for _ in range(config.trials)]
    return TrialSet(
        tuple(mats), config.sensors, config.pre_samples, config.post_samples
    )


def save_matrix(matrix, path) -> None:
    """Write a 2-D matrix as header-less CSV, 17 significant digits per value."""
    m = np.asarray(matrix, dtype=np.float64)
    if m.ndim != 2:
        raise ValueError(f"matrix must be 2-D, got shape {m.shape}")
    with open(path, "w", encoding="ascii") as f:
        for row in m:
            f.write(",".join(format(v, ".17g") for v in row))
            f.write("\n")


def load_matrix(path) -> np.ndarray:
    """Parse a CSV matrix; errors name the file and 1-based line number."""
    path = Path(path)
    rows: list[list[float]] = []
    width = -1
    with open(path, encoding="ascii") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                raise DatasetError(f"{path}:{lineno}: blank line in data file")
            try:
                row = [float(tok) for tok in line.split(",")]
            except ValueError:
                raise DatasetError(f"{path}:{lineno}: malformed row") from None
            if width < 0:
                width = len(row)
            elif len(row) != width:
                raise DatasetError(
                    f"{path}:{lineno}: expected {width} columns, got {len(row)}"
                )
            rows.append(row)
    if not rows:
        raise DatasetError(f"{path}:1: empty data file")
    return np.array(rows, dtype=np.float64)


def save_manifest(manifest: Manifest, path) -> None:
    with open(path, "w", encoding="ascii") as f:
        json.dump(asdict(manifest), f, indent=2)
        f.write("\n")


def load_manifest(path) -> Manifest:
    path = Path(path)
    with open(path, encoding="ascii") as f:
        try:
            raw = json.load(f)
        except json.JSONDecodeError as exc:
            raise DatasetError(f"{path}:{exc.lineno}: invalid JSON: {exc.msg}") from None
    try:
        return Manifest(
            sensors=int(raw["sensors"]),
            pre_samples=int(raw["pre_samples"]),
            post_samples=int(raw["post_samples"]),
            trials=int(raw["trials"]),
            unit=str(raw["unit"]),
            sample_period_ms=float(raw["sample_period_ms"]),
        )
    except KeyError as exc:
        raise DatasetError(f"{path}: missing manifest key {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        raise DatasetError(f"{path}: invalid manifest: {exc}") from None


def load_trials(manifest_path, data_paths) -> TrialSet:
    """Load a manifest plus its trial files, validating counts against the manifest."""
    manifest = load_manifest(manifest_path)
    paths = [Path(p) for p in data_paths]
    if len(paths) != manifest.trials:
        raise DatasetError(
            f"{manifest_path}: manifest declares {manifest.trials} trials, "
            f"got {len(paths)} data files"
        )
    total = manifest.pre_samples + manifest.post_samples
    mats = []
    for p in paths:
        m = load_matrix(p)
        if m.shape[0] != manifest.sensors:
            raise DatasetError(f"{p}: expected {manifest.sensors} rows, found {m.shape[0]}")
        if m.shape[1] != total:
            raise DatasetError(f"{p}: expected {total} columns, found {m.shape[1]}")
        mats.append(m)
    return TrialSet(
        tuple(mats), manifest.sensors, manifest.pre_samples, manifest.post_samples
    )


def trial_filename(index: int) -> str:
    return f"trial_{index}.csv"


def write_dataset(trials: TrialSet, directory) -> list[Path]:
    """Write manifest.json plus trial_<i>.csv files; returns the written paths."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    manifest = Manifest(
        sensors=trials.sensors,
        pre_samples=trials.pre_samples,
        post_samples=trials.post_samples,
        trials=len(trials),
    )
    written = [directory / MANIFEST_NAME]
    save_manifest(manifest, written[0])
    for i, mat in enumerate(trials.trials):
        p = directory / trial_filename(i)
        save_matrix(mat, p)
        written.append(p)
    return written


def load_dataset(directory) -> TrialSet:
    """Load manifest.json and its trial_<i>.csv files from a dataset directory."""
    directory = Path(directory)
    manifest_path = directory / MANIFEST_NAME
    manifest = load_manifest(manifest_path)
    paths = [directory / trial_filename(i) for i in range(manifest.trials)]
    return load_trials(manifest_path, paths)
