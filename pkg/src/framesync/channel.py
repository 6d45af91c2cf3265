"""BPSK modulation, AWGN / fast-Rayleigh simulation, and per-bit likelihoods.

SNR convention: SNR = Es/N0 with unit symbol energy and N0 = 2 * sigma^2,
so sigma^2 = 1 / (2 * 10^(snr_db/10)).  A direct ``sigma2`` override is
available for callers that want to bypass the convention.  Bit mapping is
s(0) = +1, s(1) = -1.

Fading amplitudes are drawn independently per bit with unit mean square
power and are treated as known at the receiver (perfect channel state
information).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ChannelConfig",
    "Observation",
    "LikelihoodTable",
    "transmit",
    "bit_likelihood",
    "log_likelihood_table",
]

# Likelihood-evaluation variance used when the channel itself is noiseless;
# any positive value works since the received samples are exact.
NOISELESS_EVAL_SIGMA2 = 0.5


@dataclass(frozen=True)
class ChannelConfig:
    """Channel kind plus noise level.

    ``kind`` is "awgn" or "rayleigh".  ``snr_db`` sets the noise variance
    unless ``sigma2`` overrides it directly.  With ``noiseless`` set the
    transmitter adds no noise at all and decoders evaluate likelihoods at
    ``NOISELESS_EVAL_SIGMA2``.
    """

    kind: str
    snr_db: float | None = None
    sigma2: float | None = None
    noiseless: bool = False

    def __post_init__(self) -> None:
        if self.kind not in ("awgn", "rayleigh"):
            raise ValueError(f"unknown channel kind {self.kind!r}")
        if not self.noiseless and self.snr_db is None and self.sigma2 is None:
            raise ValueError("need snr_db or sigma2 unless noiseless")

    @property
    def noise_variance(self) -> float:
        """Per-sample noise variance applied by the transmitter."""
        if self.noiseless:
            return 0.0
        if self.sigma2 is not None:
            if self.sigma2 <= 0 or not math.isfinite(self.sigma2):
                raise ValueError("sigma2 must be finite and positive")
            return self.sigma2
        var = 1.0 / (2.0 * 10.0 ** (self.snr_db / 10.0))
        if not math.isfinite(var) or var <= 0:
            raise ValueError("snr_db yields a degenerate noise variance")
        return var

    @property
    def eval_variance(self) -> float:
        """Variance the receiver plugs into the Gaussian likelihood."""
        return NOISELESS_EVAL_SIGMA2 if self.noiseless else self.noise_variance


@dataclass
class Observation:
    """Soft channel output: one real sample and fading amplitude per bit."""

    y: np.ndarray
    a: np.ndarray

    def __post_init__(self) -> None:
        if self.y.shape != self.a.shape:
            raise ValueError("y and a must have equal length")
        if np.any(self.a < 0):
            raise ValueError("fading amplitudes must be non-negative")

    def __len__(self) -> int:
        return len(self.y)


def _symbols(bits: np.ndarray) -> np.ndarray:
    return 1.0 - 2.0 * np.asarray(bits, dtype=float)


def transmit(bits: np.ndarray, config: ChannelConfig, rng: np.random.Generator) -> Observation:
    """Send bits through the configured channel: y = a * s(b) + n."""
    bits = np.asarray(bits)
    if bits.size == 0:
        raise ValueError("cannot transmit an empty bit-string")
    if config.kind == "rayleigh":
        # Unit mean-square amplitude: E[a^2] = 2 * scale^2 = 1.
        a = rng.rayleigh(scale=1.0 / math.sqrt(2.0), size=bits.size)
    else:
        a = np.ones(bits.size)
    sigma = math.sqrt(config.noise_variance)
    noise = rng.standard_normal(bits.size) * sigma if sigma > 0 else 0.0
    return Observation(y=a * _symbols(bits) + noise, a=a)


def bit_likelihood(y: float, a: float, bit: int, sigma2: float) -> float:
    """Gaussian density of observing ``y`` given the bit and fading amplitude."""
    if sigma2 <= 0:
        raise ValueError("sigma2 must be positive")
    s = 1.0 - 2.0 * (bit & 1)
    return math.exp(-((y - a * s) ** 2) / (2.0 * sigma2)) / math.sqrt(2.0 * math.pi * sigma2)


@dataclass
class LikelihoodTable:
    """Per-bit log densities for bit values 0 and 1, shared by all decoders."""

    log_p0: np.ndarray
    log_p1: np.ndarray

    def __len__(self) -> int:
        return len(self.log_p0)

    @property
    def p0(self) -> np.ndarray:
        return np.exp(self.log_p0)

    @property
    def p1(self) -> np.ndarray:
        return np.exp(self.log_p1)

    @classmethod
    def from_linear(cls, p0: np.ndarray, p1: np.ndarray) -> "LikelihoodTable":
        p0 = np.asarray(p0, dtype=float)
        p1 = np.asarray(p1, dtype=float)
        if p0.shape != p1.shape:
            raise ValueError("likelihood columns must have equal length")
        if np.any(p0 <= 0) or np.any(p1 <= 0):
            raise ValueError("likelihoods must be strictly positive")
        return cls(np.log(p0), np.log(p1))

    def view(self, start_bit: int, end_bit: int) -> "LikelihoodTable":
        """Zero-copy slice covering bits [start_bit, end_bit)."""
        return LikelihoodTable(self.log_p0[start_bit:end_bit], self.log_p1[start_bit:end_bit])


def log_likelihood_table(obs: Observation, sigma2: float) -> LikelihoodTable:
    """Evaluate the two-column log-likelihood table for a whole observation."""
    if sigma2 <= 0:
        raise ValueError("sigma2 must be positive")
    norm = -0.5 * math.log(2.0 * math.pi * sigma2)
    inv = 1.0 / (2.0 * sigma2)
    log_p0 = norm - (obs.y - obs.a) ** 2 * inv
    log_p1 = norm - (obs.y + obs.a) ** 2 * inv
    return LikelihoodTable(log_p0, log_p1)
