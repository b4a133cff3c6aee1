"""Monte Carlo oracle over Haar-random unitary matrices.

Samples are drawn in fixed-size blocks.  Block ``b`` of a run with seed ``s``
uses a Philox generator keyed by ``(s, b)``, so the sample stream depends only
on the seed and never on how blocks are spread over worker threads.  Only the
eigenangles of each matrix are kept.

At θ = 0 with ``e_j = exp(i θ_j)``:

* ``Z = prod_j (1 - e_j)``
* ``Z'/Z = sum_j i e_j / (1 - e_j)`` (derivative of ``log(1 - exp(i(θ_j - θ)))``)
* ``V'/V = i N / 2 + Z'/Z = -(1/2) sum_j cot(θ_j / 2)``, a real number.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np

from .errors import DegenerateSampleError, DomainError
from .moments import moment_zero_finite

log = logging.getLogger(__name__)

BLOCK_SIZE = 256
ANGLE_TOLERANCE = 1e-12
MIN_MODULUS = 1e-300
MAX_RESAMPLE_FRACTION = 1e-4
MIN_SAMPLES = 1000


@dataclass(frozen=True)
class EigenangleSample:
    angles: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.angles, dtype=float).reshape(-1)
        if np.any(a <= -math.pi) or np.any(a > math.pi):
            raise DomainError("eigenangles must lie in (-pi, pi]")
        object.__setattr__(self, "angles", a)

    @property
    def N(self) -> int:
        return len(self.angles)


@dataclass(frozen=True)
class McEstimate:
    mean_real: float
    mean_imag: float
    std_error: float
    std_error_imag: float
    samples: int
    seed: int
    resampled: int = 0
    kurtosis: float = float("nan")

    def z_score(self, target: float) -> float:
        if self.std_error == 0:
            return 0.0 if self.mean_real == target else math.inf
        return (self.mean_real - target) / self.std_error

    def agrees(self, target: float, n_se: float = 4.0) -> bool:
        return abs(self.mean_real - target) <= n_se * self.std_error


class RandomStream:
    """Counter-based substreams keyed by ``(seed, block index)``."""

    def __init__(self, seed: int):
        if not 0 <= seed < 2**64:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {seed}")
        self.seed = seed

    def substream(self, index: int, attempt: int = 0) -> np.random.Generator:
        bitgen = np.random.Philox(key=self.seed | (index << 64), counter=[0, 0, 0, attempt])
        return np.random.Generator(bitgen)


def _haar_angles(N: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """Eigenangles of ``size`` Haar unitaries, shape ``(size, N)``."""
    g = (rng.standard_normal((size, N, N)) + 1j * rng.standard_normal((size, N, N))) / math.sqrt(2)
    q, r = np.linalg.qr(g)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    mod = np.abs(d)
    if np.any(mod == 0):
        raise DegenerateSampleError("QR factorization of a Ginibre matrix degenerated")
    q = q * (d / mod)[..., None, :]
    angles = np.angle(np.linalg.eigvals(q))
    angles[angles <= -math.pi] = math.pi
    return angles


def _is_degenerate(angles: np.ndarray) -> np.ndarray:
    return np.any(np.abs(angles) < ANGLE_TOLERANCE, axis=-1)


def sample_haar(N: int, stream: RandomStream | np.random.Generator) -> EigenangleSample:
    """One Haar-distributed spectrum.  A degenerate QR is retried once."""
    if N < 1:
        raise DomainError(f"requires N >= 1, got N={N}")
    rng = stream.substream(0) if isinstance(stream, RandomStream) else stream
    for attempt in range(2):
        try:
            return EigenangleSample(_haar_angles(N, 1, rng)[0])
        except DegenerateSampleError:
            if attempt:
                raise
    raise AssertionError("unreachable")


def sample_block(N: int, size: int, stream: RandomStream, index: int) -> tuple[np.ndarray, int]:
    """Block ``index`` of a run: angles of shape ``(size, N)`` and the number of redraws."""
    angles = _haar_angles(N, size, stream.substream(index))
    bad = _is_degenerate(angles)
    redraws = 0
    attempt = 0
    while bad.any():
        attempt += 1
        if attempt > 8:
            raise DegenerateSampleError(f"block {index} kept producing eigenvalues at 1")
        fresh = _haar_angles(N, int(bad.sum()), stream.substream(index, attempt))
        redraws += len(fresh)
        angles[bad] = fresh
        bad = _is_degenerate(angles)
    return angles, redraws


def spectral_terms(angles: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``Z(0)`` and ``Z'(0)/Z(0)`` for an array of spectra along the last axis."""
    e = np.exp(1j * np.asarray(angles, dtype=float))
    one_minus = 1 - e
    Z = np.prod(one_minus, axis=-1)
    logd = np.sum(1j * e / one_minus, axis=-1)
    return Z, logd


def _check_sample(s: EigenangleSample) -> None:
    if np.any(np.abs(s.angles) < ANGLE_TOLERANCE):
        raise DegenerateSampleError("eigenvalue within tolerance of 1")


def z_log_deriv(s: EigenangleSample) -> tuple[complex, complex]:
    _check_sample(s)
    Z, logd = spectral_terms(s.angles)
    Z, logd = complex(Z), complex(logd)
    if abs(Z) < MIN_MODULUS:
        raise DegenerateSampleError(f"|Z(0)| = {abs(Z)} is numerically zero")
    return Z, logd


def v_log_deriv(s: EigenangleSample) -> tuple[complex, float]:
    """``V'(0)/V(0)`` and ``|V(0)|``."""
    Z, logd = z_log_deriv(s)
    N = s.N
    V = complex(np.exp(1j * N * math.pi / 2 - 1j * np.sum(s.angles) / 2)) * Z
    if abs(abs(V) - abs(Z)) > 1e-9 * abs(Z):
        raise DegenerateSampleError("|V(0)| differs from |Z(0)|")
    return 1j * N / 2 + logd, abs(V)


def _summarize(values: np.ndarray, seed: int, resampled: int) -> McEstimate:
    n = len(values)
    re, im = values.real, values.imag
    mean_re = math.fsum(re) / n
    mean_im = math.fsum(im) / n
    if n > 1:
        var_re = math.fsum((re - mean_re) ** 2) / (n - 1)
        var_im = math.fsum((im - mean_im) ** 2) / (n - 1)
    else:
        var_re = var_im = 0.0
    kurt = math.fsum((re - mean_re) ** 4) / n / var_re**2 - 3 if var_re > 0 else float("nan")
    return McEstimate(
        mean_real=mean_re,
        mean_imag=mean_im,
        std_error=math.sqrt(var_re / n),
        std_error_imag=math.sqrt(var_im / n),
        samples=n,
        seed=seed,
        resampled=resampled,
        kurtosis=kurt,
    )


def estimate_statistics(
    statistics: Mapping[str, Callable[[np.ndarray], np.ndarray]],
    N: int,
    samples: int,
    seed: int,
    threads: int = 1,
    block_size: int = BLOCK_SIZE,
) -> dict[str, McEstimate]:
    """Monte Carlo means of several statistics over one shared sample stream.

    Each statistic maps a ``(size, N)`` array of eigenangles to ``size``
    complex values.  Results are identical for every ``threads`` value.
    """
    if samples < 1:
        raise DomainError("need at least one sample")
    if N < 1:
        raise DomainError(f"requires N >= 1, got N={N}")
    stream = RandomStream(seed)
    names = list(statistics)
    n_blocks = -(-samples // block_size)
    sizes = [min(block_size, samples - b * block_size) for b in range(n_blocks)]

    def run(b: int) -> tuple[list[np.ndarray], int]:
        angles, redraws = sample_block(N, sizes[b], stream, b)
        return [np.asarray(statistics[name](angles), dtype=complex) for name in names], redraws

    if threads > 1 and n_blocks > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, range(n_blocks)))
    else:
        parts = [run(b) for b in range(n_blocks)]

    resampled = sum(p[1] for p in parts)
    if resampled > MAX_RESAMPLE_FRACTION * samples and resampled > 1:
        raise DegenerateSampleError(f"{resampled} of {samples} draws had to be resampled")
    return {
        name: _summarize(np.concatenate([p[0][i] for p in parts]), seed, resampled)
        for i, name in enumerate(names)
    }


def estimate_statistic(
    statistic: Callable[[np.ndarray], np.ndarray],
    N: int,
    samples: int,
    seed: int,
    threads: int = 1,
    block_size: int = BLOCK_SIZE,
) -> McEstimate:
    """Monte Carlo mean of one statistic with standard errors."""
    return estimate_statistics({"value": statistic}, N, samples, seed, threads, block_size)["value"]


def m_statistic(k: int, r: int, N: int) -> Callable[[np.ndarray], np.ndarray]:
    """Per-draw ``i^r |Z|^{2k} (Z'/Z)^r / M_N(2k, 0)``; its mean is ``m_ratio_finite(k, r, N)``."""
    if k < 1 or r < 0 or r > 2 * k:
        raise DomainError(f"requires 0 <= r <= 2k, got r={r}, k={k}")
    norm = float(moment_zero_finite(k, N))
    phase = 1j**r

    def statistic(angles: np.ndarray) -> np.ndarray:
        Z, logd = spectral_terms(angles)
        return phase * np.abs(Z) ** (2 * k) * logd**r / norm

    return statistic


def v_statistic(k: int, h: int) -> Callable[[np.ndarray], np.ndarray]:
    """Per-draw ``|V|^{2k} |V'/V|^{2h}``; its mean is ``v_moment_finite(k, h, N)``."""
    if k < 1 or h < 0 or h > k:
        raise DomainError(f"requires 0 <= h <= k, got h={h}, k={k}")

    def statistic(angles: np.ndarray) -> np.ndarray:
        Z, logd = spectral_terms(angles)
        v_ratio = 1j * angles.shape[-1] / 2 + logd
        return (np.abs(Z) ** (2 * k) * np.abs(v_ratio) ** (2 * h)).astype(complex)

    return statistic


def _check_samples(samples: int) -> None:
    if samples < MIN_SAMPLES:
        raise DomainError(f"requires at least {MIN_SAMPLES} samples, got {samples}")


def estimate_m_moment(
    k: int, r: int, N: int, samples: int, seed: int, threads: int = 1
) -> McEstimate:
    """Estimate ``i^r E[|Z|^{2k} (Z'/Z)^r] / M_N(2k, 0)``, whose exact value is ``m_ratio_finite``."""
    statistic = m_statistic(k, r, N)
    _check_samples(samples)
    est = estimate_statistic(statistic, N, samples, seed, threads)
    _warn_heavy_tail(k, N, est)
    return est


def estimate_v_moment(
    k: int, h: int, N: int, samples: int, seed: int, threads: int = 1
) -> McEstimate:
    """Estimate ``E[|V|^{2k} |V'/V|^{2h}]``, whose exact value is ``v_moment_finite``."""
    statistic = v_statistic(k, h)
    _check_samples(samples)
    est = estimate_statistic(statistic, N, samples, seed, threads)
    _warn_heavy_tail(k, N, est)
    return est


def _warn_heavy_tail(k: int, N: int, est: McEstimate) -> None:
    if k >= 4 and est.kurtosis > 50:
        log.warning(
            "k=%d, N=%d: excess kurtosis %.1f, the standard error is unreliable", k, N, est.kurtosis
        )
