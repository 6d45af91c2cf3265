"""Frame syntax, length prior, Markov boundary model, and burst generation.

A burst is a fixed container of ``burst_len`` alignment units (bytes for the
WiMAX MAC profile) filled with variable-length frames.  Every data frame
starts with a fixed-size header split into four consecutive fields:

* a constant field whose bit values never change between frames,
* a length field carrying the frame length in alignment units (header
  included),
* an opaque field with unknown content (the CID in WiMAX),
* a header check sequence: the CRC remainder of the three fields above.

Leftover space too small for another data frame is filled with padding units
of all-one bits (0xFF bytes in the WiMAX profile).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "HeaderSpec",
    "LengthDistribution",
    "Burst",
    "crc_remainder",
    "transition_prob",
    "padding_prob",
    "generate_burst",
    "wimax_mac_header",
    "toy_header",
]


def crc_remainder(bits: Iterable[int], generator: int) -> int:
    """CRC register value of ``bits`` under the given generator polynomial.

    Computes the GF(2) remainder of ``bits * x^deg(generator)`` divided by
    the generator (zero initial register, no final inversion).  The generator
    is given with its leading term, e.g. ``0x107`` for x^8 + x^2 + x + 1.
    Empty input leaves the register at zero.
    """
    width = generator.bit_length() - 1
    if width <= 0:
        raise ValueError("generator must have degree >= 1")
    mask = (1 << width) - 1
    low = generator & mask
    top = 1 << (width - 1)
    reg = 0
    for b in bits:
        feedback = ((reg & top) != 0) ^ (int(b) & 1)
        reg = (reg << 1) & mask
        if feedback:
            reg ^= low
    return reg


def _int_to_bits(value: int, width: int) -> np.ndarray:
    """MSB-first bit vector of ``value`` in ``width`` bits."""
    if value < 0 or value >= (1 << width):
        raise ValueError(f"value {value} does not fit in {width} bits")
    return np.array([(value >> (width - 1 - i)) & 1 for i in range(width)], dtype=np.uint8)


@dataclass(frozen=True)
class HeaderSpec:
    """Layout of the fixed-size frame header.

    Fields are laid out consecutively: constant | length | other | hec.
    ``hec_generator`` carries the CRC generator polynomial including its
    leading term; the check covers exactly the bits before the hec field.
    """

    constant_bits: tuple[int, ...]
    length_width: int
    other_width: int
    hec_generator: int

    def __post_init__(self) -> None:
        if any(b not in (0, 1) for b in self.constant_bits):
            raise ValueError("constant_bits must be 0/1 values")
        if self.length_width <= 0:
            raise ValueError("length field must be at least one bit wide")
        if self.other_width < 0:
            raise ValueError("other field width must be non-negative")
        if self.hec_width <= 0:
            raise ValueError("hec generator must have degree >= 1")

    @property
    def constant_width(self) -> int:
        return len(self.constant_bits)

    @property
    def hec_width(self) -> int:
        return self.hec_generator.bit_length() - 1

    @property
    def header_len(self) -> int:
        """Total header size in bits."""
        return self.constant_width + self.length_width + self.other_width + self.hec_width

    # Bit offsets of each field within the header.
    @property
    def length_offset(self) -> int:
        return self.constant_width

    @property
    def other_offset(self) -> int:
        return self.constant_width + self.length_width

    @property
    def hec_offset(self) -> int:
        return self.constant_width + self.length_width + self.other_width

    def header_units(self, granularity: int) -> int:
        if self.header_len % granularity:
            raise ValueError(
                f"header of {self.header_len} bits is not aligned to {granularity}-bit units"
            )
        return self.header_len // granularity

    def length_bits(self, length_units: int) -> np.ndarray:
        """Length-field encoding of a frame length given in alignment units."""
        return _int_to_bits(length_units, self.length_width)

    def build_header(self, length_units: int, other_value: int) -> np.ndarray:
        """Assemble a full header (constant, length, other, hec) as bits."""
        working = np.concatenate(
            [
                np.asarray(self.constant_bits, dtype=np.uint8),
                self.length_bits(length_units),
                _int_to_bits(other_value, self.other_width) if self.other_width else
                np.zeros(0, dtype=np.uint8),
            ]
        )
        hec = crc_remainder(working, self.hec_generator)
        return np.concatenate([working, _int_to_bits(hec, self.hec_width)])


def wimax_mac_header() -> HeaderSpec:
    """Generic MAC header profile: 48 bits, byte units.

    Constant field covers HT, EC, Type, Rsv, CI, EKS, Rsv (13 bits, all zero
    for plain data frames); LEN is 11 bits counting bytes including the
    header; CID is 16 opaque bits; the HCS is an 8-bit CRC with generator
    x^8 + x^2 + x + 1.
    """
    return HeaderSpec(
        constant_bits=(0,) * 13,
        length_width=11,
        other_width=16,
        hec_generator=0x107,
    )


def toy_header(
    constant_bits: tuple[int, ...] = (1, 0),
    length_width: int = 4,
    other_width: int = 3,
    hec_generator: int = 0b1011,
) -> HeaderSpec:
    """Small header used by brute-force tests (12 bits, 3-bit CRC by default)."""
    return HeaderSpec(constant_bits, length_width, other_width, hec_generator)


@dataclass(frozen=True, eq=False)
class LengthDistribution:
    """Prior over admissible frame lengths, in alignment units.

    ``pmf[i]`` is the probability of length ``min_len + i``; the support is
    exactly [min_len, max_len].  ``granularity`` is the number of bits per
    alignment unit (8 for byte-aligned WiMAX frames).
    """

    min_len: int
    max_len: int
    pmf: np.ndarray
    granularity: int = 8

    def __post_init__(self) -> None:
        pmf = np.asarray(self.pmf, dtype=float)
        object.__setattr__(self, "pmf", pmf)
        if self.min_len <= 0 or self.max_len < self.min_len:
            raise ValueError("need 0 < min_len <= max_len")
        if self.granularity <= 0:
            raise ValueError("granularity must be positive")
        if pmf.shape != (self.max_len - self.min_len + 1,):
            raise ValueError("pmf must cover [min_len, max_len]")
        if np.any(pmf <= 0):
            raise ValueError("pmf must be strictly positive on its support")
        if not np.isclose(pmf.sum(), 1.0, atol=1e-12):
            raise ValueError("pmf must sum to 1")
        # Tail sums used by the boundary transition model; suffix[i] is the
        # probability of a length >= min_len + i.
        suffix = np.concatenate([np.cumsum(pmf[::-1])[::-1], [0.0]])
        object.__setattr__(self, "_suffix", suffix)

    @classmethod
    def uniform(cls, min_len: int, max_len: int, granularity: int = 8) -> "LengthDistribution":
        n = max_len - min_len + 1
        return cls(min_len, max_len, np.full(n, 1.0 / n), granularity)

    def prob(self, length: int) -> float:
        """Probability of a frame length, zero outside the support."""
        if self.min_len <= length <= self.max_len:
            return float(self.pmf[length - self.min_len])
        return 0.0

    def prob_at_least(self, length: int) -> float:
        """Probability of a frame length >= ``length``."""
        if length <= self.min_len:
            return 1.0
        if length > self.max_len:
            return 0.0
        return float(self._suffix[length - self.min_len])

    def validate_header(self, spec: HeaderSpec) -> None:
        """Check that this prior is compatible with a header layout."""
        units = spec.header_units(self.granularity)
        if self.min_len < units:
            raise ValueError("min_len must be at least the header size")
        if self.max_len >= (1 << spec.length_width):
            raise ValueError("max_len does not fit in the length field")


def transition_prob(l_prev: int, l: int, burst_len: int, dist: LengthDistribution) -> float:
    """Prior probability of the boundary state moving from l_prev to l.

    For interior targets this is the length pmf at the gap.  For the final
    state (l == burst_len) the move aggregates every way the burst can end
    there: zero if the gap exceeds max_len, certain if the residual space is
    positive but below min_len (only padding fits), otherwise the tail mass
    of lengths >= gap.
    """
    if not (0 <= l_prev < l <= burst_len):
        raise ValueError("need 0 <= l_prev < l <= burst_len")
    gap = l - l_prev
    if l < burst_len:
        return dist.prob(gap)
    if gap > dist.max_len:
        return 0.0
    if gap < dist.min_len:
        return 1.0
    return dist.prob_at_least(gap)


def padding_prob(l_prev: int, burst_len: int, dist: LengthDistribution) -> float:
    """Probability that the frame following state l_prev is a padding frame."""
    if l_prev >= burst_len:
        raise ValueError("l_prev must be before the burst end")
    gap = burst_len - l_prev
    if gap >= dist.max_len:
        return 0.0
    if gap < dist.min_len:
        return 1.0
    return dist.prob_at_least(gap + 1)


@dataclass
class Burst:
    """A generated burst with its ground-truth segmentation.

    ``boundaries`` holds the cumulative end position of every frame in
    alignment units; the last entry equals ``burst_len``.  When padding is
    present it is the final frame and has no header.
    """

    bits: np.ndarray
    boundaries: list[int]
    lengths: list[int]
    padding_present: bool
    burst_len: int
    granularity: int

    @property
    def n_frames(self) -> int:
        return len(self.boundaries)

    @property
    def n_data_frames(self) -> int:
        return self.n_frames - (1 if self.padding_present else 0)

    def frame_spans(self) -> list[tuple[int, int]]:
        """(start, end) unit positions of every frame, padding included."""
        starts = [0] + self.boundaries[:-1]
        return list(zip(starts, self.boundaries))

    def data_spans(self) -> list[tuple[int, int]]:
        spans = self.frame_spans()
        return spans[:-1] if self.padding_present else spans

    def audit_lines(self) -> list[str]:
        """Line-oriented ground-truth record: index, start, end, padding flag."""
        lines = []
        for i, (start, end) in enumerate(self.frame_spans(), start=1):
            pad = self.padding_present and i == self.n_frames
            lines.append(f"frame {i} {start} {end} {'pad' if pad else 'data'}")
        return lines


def generate_burst(
    rng: np.random.Generator,
    burst_len: int,
    dist: LengthDistribution,
    spec: HeaderSpec,
) -> Burst:
    """Fill a burst with random frames drawn from the length prior.

    Lengths are drawn i.i.d.; a draw that no longer fits ends the fill and
    the remaining units (if any) become a padding frame of all-one bits.
    Each data frame is a header (constants, true length, random opaque
    field, check sequence) followed by uniform random payload bits.
    """
    dist.validate_header(spec)
    if burst_len < dist.min_len:
        raise ValueError("burst must fit at least one minimum-length frame")
    g = dist.granularity
    lengths_support = np.arange(dist.min_len, dist.max_len + 1)

    bits = np.zeros(burst_len * g, dtype=np.uint8)
    boundaries: list[int] = []
    lengths: list[int] = []
    pos = 0
    padding = False
    while pos < burst_len:
        lam = int(rng.choice(lengths_support, p=dist.pmf))
        if lam > burst_len - pos:
            # No room for this draw: the remainder is padding.
            bits[pos * g : burst_len * g] = 1
            lengths.append(burst_len - pos)
            boundaries.append(burst_len)
            padding = True
            break
        other = int(rng.integers(0, 1 << spec.other_width)) if spec.other_width else 0
        header = spec.build_header(lam, other)
        start_bit = pos * g
        bits[start_bit : start_bit + spec.header_len] = header
        n_payload = lam * g - spec.header_len
        if n_payload:
            bits[start_bit + spec.header_len : start_bit + lam * g] = rng.integers(
                0, 2, size=n_payload, dtype=np.uint8
            )
        pos += lam
        boundaries.append(pos)
        lengths.append(lam)
    return Burst(
        bits=bits,
        boundaries=boundaries,
        lengths=lengths,
        padding_present=padding,
        burst_len=burst_len,
        granularity=g,
    )
