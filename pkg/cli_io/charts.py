"""
Rate Chart
Log-log plot of mean responses against predicted rates with the fitted line
"""

import logging
from pathlib import Path
from typing import Sequence, Union

import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt
import numpy as np

from common.errors import IoError, ValidationError
from harness import RateFit, RatePoint

logger = logging.getLogger(__name__)


def emit_rate_chart(fit: RateFit, points: Sequence[RatePoint], path: Union[str, Path]) -> Path:
    """
    Save a PNG of log(response) against log(rate)

    Args:
        fit: Result of fit_rate over the same points
        points: Mean response per d
        path: Output PNG

    Returns:
        Path of the written chart
    """
    kept = [p for p in points if p.rate > 0 and p.response > 0]
    if not kept:
        raise ValidationError('points', "no positive points to plot")

    rates = np.array([p.rate for p in kept])
    responses = np.array([p.response for p in kept])

    fig, ax = plt.subplots(figsize=(8, 6))
    ax.loglog(rates, responses, marker='o', linestyle='none', markersize=7,
              color='#2E86AB', label=f"mean response ({len(kept)} dimensions)")
    for p in kept:
        ax.annotate(f"d={p.d}", (p.rate, p.response), textcoords='offset points', xytext=(5, 5), fontsize=8)

    grid = np.geomspace(rates.min(), rates.max(), 50)
    ax.loglog(grid, np.exp(fit.intercept) * grid ** fit.slope, linestyle='--', linewidth=2,
              color='#A23B72', label=f"fit: slope={fit.slope:.3f}, R^2={fit.r_squared:.3f}")

    ax.set_xlabel('Predicted rate', fontsize=12, fontweight='bold')
    ax.set_ylabel('Mean response', fontsize=12, fontweight='bold')
    ax.set_title(f"Rate check (O-constant {fit.o_constant:.3g})", fontsize=14, fontweight='bold')
    ax.grid(True, which='both', alpha=0.3, linestyle='--')
    ax.legend(loc='best', framealpha=0.9, fontsize=10)
    plt.tight_layout()

    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(path, dpi=150, bbox_inches='tight')
    except OSError as e:
        raise IoError(f"cannot write {path}: {e}") from e
    finally:
        plt.close(fig)

    logger.info(f"Rate chart saved to {path}")
    return path
