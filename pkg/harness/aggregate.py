"""
Aggregation
Mean and standard error per (d, j) over replicates
"""

import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .trial import TrialRecord

AGGREGATED_MEASURES = ('eigen_ratio', 'abs_inner', 'inner_sq', 'subspace_cos')


@dataclass(frozen=True)
class AggregateRow:
    d: int
    n: int
    j: int
    count: int
    mean: Dict[str, Optional[float]]
    stderr: Dict[str, Optional[float]]

    def as_dict(self) -> Dict[str, object]:
        row: Dict[str, object] = {'d': self.d, 'n': self.n, 'j': self.j, 'count': self.count}
        for name in AGGREGATED_MEASURES:
            row[f'{name}_mean'] = self.mean.get(name)
            row[f'{name}_stderr'] = self.stderr.get(name)
        return row


def _mean_stderr(values: List[float]) -> Tuple[Optional[float], Optional[float]]:
    if not values:
        return None, None
    k = len(values)
    mean = math.fsum(values) / k
    if k == 1:
        return mean, None
    var = math.fsum((v - mean) ** 2 for v in values) / (k - 1)
    return mean, math.sqrt(var / k)


def aggregate(records: Sequence[TrialRecord]) -> List[AggregateRow]:
    """
    Fold records into per-(d, j) statistics

    Records are folded in (d, replicate) order so the result does not depend
    on how the trials were scheduled.
    """
    buffer: Dict[Tuple[int, int], Dict[str, List[float]]] = defaultdict(lambda: defaultdict(list))
    sizes: Dict[int, int] = {}
    counts: Dict[Tuple[int, int], int] = defaultdict(int)

    for rec in sorted(records, key=lambda r: (r.d, r.replicate)):
        sizes[rec.d] = rec.n
        for row in rec.rows():
            key = (rec.d, row['j'])
            counts[key] += 1
            for name in AGGREGATED_MEASURES:
                if row[name] is not None:
                    buffer[key][name].append(row[name])

    out = []
    for (d, j) in sorted(counts):
        means, errs = {}, {}
        for name in AGGREGATED_MEASURES:
            means[name], errs[name] = _mean_stderr(buffer[(d, j)][name])
        out.append(AggregateRow(d=d, n=sizes[d], j=j, count=counts[(d, j)], mean=means, stderr=errs))
    return out
