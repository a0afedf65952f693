"""
Population Spectra
Declarative spike specifications and the eigenvalue ladders they produce
"""

import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple, Union

import numpy as np

from common.errors import NotMonotone, SpecTooLarge, ValidationError


@dataclass(frozen=True)
class SingleSpike:
    """lambda_1 = coefficient * d^alpha"""

    alpha: float
    coefficient: float = 1.0

    def __post_init__(self):
        if self.alpha < 0:
            raise ValidationError('alpha', f"must be >= 0, got {self.alpha}")
        if self.coefficient <= 0:
            raise ValidationError('coefficient', f"must be > 0, got {self.coefficient}")


@dataclass(frozen=True)
class MultiSpike:
    """
    lambda_j = c_j * d^alpha for j = 1..m with c_1 > c_2 > ... > c_m > 1

    Without explicit constants, c_j = 2^(m - j + 1) for the given count.
    """

    alpha: float
    constants: Tuple[float, ...] = ()
    count: Optional[int] = None

    def __post_init__(self):
        if self.alpha < 0:
            raise ValidationError('alpha', f"must be >= 0, got {self.alpha}")
        constants = tuple(float(c) for c in self.constants)
        if not constants:
            if not self.count or self.count < 1:
                raise ValidationError('constants', "give constants or a positive count")
            m = self.count
            constants = tuple(2.0 ** (m - j + 1) for j in range(1, m + 1))
        for j, c in enumerate(constants):
            nxt = constants[j + 1] if j + 1 < len(constants) else 1.0
            if not c > nxt:
                raise ValidationError('constants', f"need c_j > c_(j+1) > 1, got {list(constants)}")
        object.__setattr__(self, 'constants', constants)
        object.__setattr__(self, 'count', len(constants))


@dataclass(frozen=True)
class Tier:
    """q equal eigenvalues coefficient * d^scale_exponent"""

    scale_exponent: float
    multiplicity: int
    coefficient: float = 1.0

    def __post_init__(self):
        if self.multiplicity < 1:
            raise ValidationError('multiplicity', f"must be >= 1, got {self.multiplicity}")
        if self.coefficient <= 0:
            raise ValidationError('coefficient', f"must be > 0, got {self.coefficient}")


@dataclass(frozen=True)
class Tiered:
    tiers: Tuple[Tier, ...]

    def __post_init__(self):
        tiers = tuple(self.tiers)
        if not tiers:
            raise ValidationError('tiers', "need at least one tier")
        exps = [t.scale_exponent for t in tiers]
        if any(b >= a for a, b in zip(exps, exps[1:])):
            raise ValidationError('tiers', f"scale exponents must strictly decrease, got {exps}")
        object.__setattr__(self, 'tiers', tiers)


@dataclass(frozen=True)
class Explicit:
    """
    Leading eigenvalues given verbatim; the rest are filled with the base level

    spike_count defaults to the number of leading values above the base level.
    """

    values: Tuple[float, ...]
    spike_count: Optional[int] = None

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        if any(v < 0 for v in values):
            raise NotMonotone(f"explicit values must be nonnegative, got {list(values)}")
        if any(b > a for a, b in zip(values, values[1:])):
            raise NotMonotone(f"explicit values must be nonincreasing, got {list(values)}")
        object.__setattr__(self, 'values', values)


SpikeKind = Union[SingleSpike, MultiSpike, Tiered, Explicit]


@dataclass(frozen=True)
class SpectrumSpec:
    kind: SpikeKind
    base_level: float = 1.0
    zero_tail: int = 0

    def __post_init__(self):
        if self.base_level <= 0:
            raise ValidationError('base_level', f"must be > 0, got {self.base_level}")
        if self.zero_tail < 0:
            raise ValidationError('zero_tail', f"must be >= 0, got {self.zero_tail}")


@dataclass(frozen=True)
class ScalingLaw:
    """n ~ d^gamma, or a fixed n (HDLSS) that overrides gamma"""

    gamma: float = 0.0
    fixed_n: Optional[int] = None
    d_values: Tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.gamma < 0:
            raise ValidationError('gamma', f"must be >= 0, got {self.gamma}")
        if self.fixed_n is not None and self.fixed_n < 1:
            raise ValidationError('fixed_n', f"must be a positive int, got {self.fixed_n}")
        if any(d < 2 for d in self.d_values):
            raise ValidationError('d_values', f"every d must be >= 2, got {list(self.d_values)}")

    @property
    def is_fixed_n(self) -> bool:
        """Fixed n, either explicit or implied by gamma = 0"""
        return self.fixed_n is not None or self.gamma == 0


def spike_count(spec: SpectrumSpec) -> int:
    kind = spec.kind
    if isinstance(kind, SingleSpike):
        return 1
    if isinstance(kind, MultiSpike):
        return len(kind.constants)
    if isinstance(kind, Tiered):
        return sum(t.multiplicity for t in kind.tiers)
    if kind.spike_count is not None:
        return kind.spike_count
    return sum(1 for v in kind.values if v > spec.base_level)


def spike_values(spec: SpectrumSpec, d: int) -> List[float]:
    """Leading (spike) eigenvalues at dimension d"""
    kind = spec.kind
    if isinstance(kind, SingleSpike):
        return [kind.coefficient * d ** kind.alpha]
    if isinstance(kind, MultiSpike):
        return [c * d ** kind.alpha for c in kind.constants]
    if isinstance(kind, Tiered):
        out = []
        for tier in kind.tiers:
            out.extend([tier.coefficient * d ** tier.scale_exponent] * tier.multiplicity)
        return out
    return list(kind.values)


def _check_fits(spec: SpectrumSpec, d: int, leading: int) -> None:
    m = spike_count(spec)
    if m + spec.zero_tail >= d or leading + spec.zero_tail > d:
        raise SpecTooLarge(f"{m} spikes + {spec.zero_tail} zero eigenvalues do not fit in d={d}")


def build_spectrum(spec: SpectrumSpec, d: int) -> np.ndarray:
    """
    Population eigenvalues lambda_1 >= ... >= lambda_d

    Spikes first, then base_level, then zero_tail exact zeros.
    """
    leading = spike_values(spec, d)
    _check_fits(spec, d, len(leading))

    out = np.full(d, float(spec.base_level))
    out[:len(leading)] = leading
    if spec.zero_tail:
        out[d - spec.zero_tail:] = 0.0
    if np.any(np.diff(out) > 0):
        raise NotMonotone(f"spectrum is not nonincreasing at d={d}: leading values {leading}, base {spec.base_level}")
    return out


def resolve_n(law: ScalingLaw, d: int) -> int:
    """fixed_n if given, else max(2, round(d^gamma)) with halves rounded up"""
    if law.fixed_n is not None:
        return law.fixed_n
    return max(2, int(math.floor(d ** law.gamma + 0.5)))


def effective_dimension(spec: SpectrumSpec, d: int) -> int:
    """Dimension left after dropping the exact-zero tail"""
    if spec.zero_tail >= d:
        raise SpecTooLarge(f"zero tail {spec.zero_tail} leaves no dimension out of d={d}")
    return d - spec.zero_tail
