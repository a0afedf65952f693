"""
Tier Index Sets
Partition of eigen-indices into spike tiers and the noise block, plus gap ratios
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from common.errors import UnsupportedSpec, ZeroDivisionRatio
from .spectrum import (
    MultiSpike,
    SingleSpike,
    SpectrumSpec,
    Tiered,
    build_spectrum,
    effective_dimension,
    spike_count,
)


@dataclass(frozen=True)
class TierIndex:
    """
    1-based index sets H_1..H_r (spike tiers) and H_(r+1) (noise block)

    The noise block stops before the zero tail. `zero_tail` holds the indices
    of the exact-zero eigenvalues so the sets plus tail cover 1..d.
    """

    sets: List[range]
    zero_tail: range

    @property
    def tier_count(self) -> int:
        """r, the number of spike tiers"""
        return len(self.sets) - 1

    @property
    def noise(self) -> range:
        return self.sets[-1]

    @property
    def spike_tiers(self) -> List[range]:
        return self.sets[:-1]

    @property
    def spike_count(self) -> int:
        return sum(len(h) for h in self.spike_tiers)

    def tier_of(self, j: int) -> int:
        """1-based tier number containing index j (r + 1 for the noise block)"""
        for l, h in enumerate(self.sets, start=1):
            if j in h:
                return l
        raise IndexError(f"index {j} is in the zero tail or out of range")


def _runs(items: Sequence[float]) -> List[int]:
    """Lengths of runs of equal consecutive items"""
    sizes: List[int] = []
    for k, v in enumerate(items):
        if k > 0 and v == items[k - 1]:
            sizes[-1] += 1
        else:
            sizes.append(1)
    return sizes


def spike_exponents(spec: SpectrumSpec) -> List[float]:
    """Growth exponent of each spike eigenvalue, in index order"""
    kind = spec.kind
    if isinstance(kind, SingleSpike):
        return [kind.alpha]
    if isinstance(kind, MultiSpike):
        return [kind.alpha] * len(kind.constants)
    if isinstance(kind, Tiered):
        out: List[float] = []
        for tier in kind.tiers:
            out.extend([tier.scale_exponent] * tier.multiplicity)
        return out
    raise UnsupportedSpec("explicit spectra carry no growth exponents")


def tier_sizes(spec: SpectrumSpec, by_order: bool = False) -> List[int]:
    """
    Multiplicities q_1..q_r of the spike tiers

    With by_order, spikes sharing a growth exponent form one tier (the
    fixed-n view); otherwise tiers follow the declared values.
    """
    if by_order:
        return _runs(spike_exponents(spec))

    kind = spec.kind
    if isinstance(kind, SingleSpike):
        return [1]
    if isinstance(kind, MultiSpike):
        return [1] * len(kind.constants)
    if isinstance(kind, Tiered):
        return [t.multiplicity for t in kind.tiers]
    # Explicit: consecutive equal spike values form one tier
    return _runs(list(kind.values[:spike_count(spec)]))


def _partition(sizes: Sequence[int], spec: SpectrumSpec, d: int) -> TierIndex:
    build_spectrum(spec, d)
    d_eff = effective_dimension(spec, d)
    sets = []
    start = 1
    for size in sizes:
        sets.append(range(start, start + size))
        start += size
    sets.append(range(start, d_eff + 1))
    return TierIndex(sets=sets, zero_tail=range(d_eff + 1, d + 1))


def tier_index(spec: SpectrumSpec, d: int) -> TierIndex:
    """
    Tier partition at dimension d

    Single spike gives H_1 = {1}; multi-spike gives one singleton per spike;
    tiered gives one set per tier.

    Args:
        spec: Spectrum specification
        d: Dimension

    Returns:
        TierIndex with r + 1 sets
    """
    return _partition(tier_sizes(spec), spec, d)


def order_tiers(spec: SpectrumSpec, d: int) -> TierIndex:
    """
    Partition by growth order instead of by value

    Spikes sharing an exponent fall into one tier. This is how fixed-n
    asymptotics see a multi-spike model.
    """
    return _partition(tier_sizes(spec, by_order=True), spec, d)


def gap_ratios(spectrum: np.ndarray, tiers: TierIndex, base_level: Optional[float] = None) -> List[float]:
    """
    a_l = max over k <= l of delta_(k+1) / delta_k

    delta_k is the common value of tier k (its first entry) and
    delta_(r+1) is the base level.

    Args:
        spectrum: Population eigenvalues
        tiers: Tier partition of the same spectrum
        base_level: Noise level; defaults to the first noise-block value

    Returns:
        [a_1, ..., a_r]
    """
    spectrum = np.asarray(spectrum, dtype=float)
    deltas = [float(spectrum[h[0] - 1]) for h in tiers.spike_tiers]
    if base_level is None:
        base_level = float(spectrum[tiers.noise[0] - 1])
    deltas.append(float(base_level))

    out: List[float] = []
    running = 0.0
    for k in range(tiers.tier_count):
        if deltas[k] == 0:
            raise ZeroDivisionRatio(f"tier {k + 1} has zero value")
        running = max(running, deltas[k + 1] / deltas[k])
        out.append(running)
    return out
