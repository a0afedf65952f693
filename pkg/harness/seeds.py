"""
Trial Seeds
Reproducible per-trial seeds and the deterministic Wielandt spot-check selection
"""

from common.settings import WIELANDT_SPOT_FRACTION, WIELANDT_SPOT_MAX_D
from sampler import derive_seed, mix64

SPOT_CHECK_SALT = 0x5EED_CAFE
SPOT_CHECK_BUCKETS = 10_000


def trial_seed(master_seed: int, grid_index: int, replicate: int) -> int:
    return derive_seed(master_seed, grid_index, replicate)


def wielandt_selected(seed: int, d: int) -> bool:
    """Pick WIELANDT_SPOT_FRACTION of trials with d <= WIELANDT_SPOT_MAX_D from their seed alone"""
    if d > WIELANDT_SPOT_MAX_D:
        return False
    bucket = mix64(seed ^ SPOT_CHECK_SALT) % SPOT_CHECK_BUCKETS
    return bucket < int(WIELANDT_SPOT_FRACTION * SPOT_CHECK_BUCKETS)
