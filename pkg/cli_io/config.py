"""
Config Loader
JSON experiment configs parsed into validated ExperimentConfig objects
"""

import json
from pathlib import Path
from typing import Any, Dict, Iterable, Tuple, Union

from common.errors import IoError, ParseError, ValidationError, ValidationFailure
from common.settings import DEFAULT_BASIS, DEFAULT_DIST, DEFAULT_MEASURES, DEFAULT_REPLICATES
from harness import ExperimentConfig, PhaseSettings, RateSettings
from sampler import Basis, BasisKind, ScoreDistribution
from spike_model import (
    Explicit,
    MultiSpike,
    ScalingLaw,
    SingleSpike,
    SpectrumSpec,
    Tier,
    Tiered,
)

CONFIG_KEYS = (
    'spec', 'law', 'd_grid', 'replicates', 'dist', 'basis', 'master_seed',
    'measures', 'output_dir', 'solver', 'phase', 'rate',
)
REQUIRED_KEYS = ('spec', 'law', 'd_grid', 'master_seed')

SPEC_KEYS = {
    'single': ('kind', 'alpha', 'coefficient', 'base_level', 'zero_tail'),
    'multi': ('kind', 'alpha', 'constants', 'count', 'base_level', 'zero_tail'),
    'tiered': ('kind', 'tiers', 'base_level', 'zero_tail'),
    'explicit': ('kind', 'values', 'spike_count', 'base_level', 'zero_tail'),
}
LAW_KEYS = ('gamma', 'fixed_n')
PHASE_KEYS = ('alpha_grid', 'gamma_grid', 'd', 'replicates')
RATE_KEYS = ('index', 'response', 'power')
TIER_KEYS = ('exponent', 'multiplicity', 'coefficient')


def _check_keys(obj: Any, allowed: Iterable[str], where: str) -> Dict[str, Any]:
    if not isinstance(obj, dict):
        raise ValidationError(where or "config", f"expected an object, got {type(obj).__name__}")
    for key in obj:
        if key not in allowed:
            name = f"{where}.{key}" if where else key
            raise ValidationError(name, "unknown key")
    return obj


def _number(value: Any, key: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(key, f"expected a number, got {value!r}")
    return float(value)


def _integer(value: Any, key: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(key, f"expected an integer, got {value!r}")
    return value


def _numbers(value: Any, key: str) -> Tuple[float, ...]:
    if not isinstance(value, list):
        raise ValidationError(key, f"expected a list, got {value!r}")
    return tuple(_number(v, key) for v in value)


def _tier(obj: Any) -> Tier:
    if isinstance(obj, list):
        if len(obj) not in (2, 3):
            raise ValidationError('tiers', f"expected [exponent, multiplicity(, coefficient)], got {obj!r}")
        obj = dict(zip(TIER_KEYS, obj))
    obj = _check_keys(obj, TIER_KEYS, 'tiers')
    return Tier(
        scale_exponent=_number(obj.get('exponent'), 'tiers'),
        multiplicity=_integer(obj.get('multiplicity'), 'tiers'),
        coefficient=_number(obj.get('coefficient', 1.0), 'tiers'),
    )


def parse_spec(obj: Any) -> SpectrumSpec:
    """Build a SpectrumSpec from its JSON object form"""
    if not isinstance(obj, dict):
        raise ValidationError('spec', f"expected an object, got {type(obj).__name__}")
    kind = obj.get('kind')
    if kind not in SPEC_KEYS:
        raise ValidationError('spec.kind', f"expected one of {sorted(SPEC_KEYS)}, got {kind!r}")
    _check_keys(obj, SPEC_KEYS[kind], 'spec')

    try:
        if kind == 'single':
            shape = SingleSpike(alpha=_number(obj.get('alpha'), 'alpha'),
                                coefficient=_number(obj.get('coefficient', 1.0), 'coefficient'))
        elif kind == 'multi':
            count = obj.get('count')
            shape = MultiSpike(alpha=_number(obj.get('alpha'), 'alpha'),
                               constants=_numbers(obj.get('constants', []), 'constants'),
                               count=None if count is None else _integer(count, 'count'))
        elif kind == 'tiered':
            tiers = obj.get('tiers')
            if not isinstance(tiers, list):
                raise ValidationError('tiers', f"expected a list, got {tiers!r}")
            shape = Tiered(tiers=tuple(_tier(t) for t in tiers))
        else:
            spike_count = obj.get('spike_count')
            shape = Explicit(values=_numbers(obj.get('values'), 'values'),
                             spike_count=None if spike_count is None else _integer(spike_count, 'spike_count'))

        return SpectrumSpec(
            kind=shape,
            base_level=_number(obj.get('base_level', 1.0), 'base_level'),
            zero_tail=_integer(obj.get('zero_tail', 0), 'zero_tail'),
        )
    except ValidationError:
        raise
    except ValidationFailure as e:
        raise ValidationError('spec', str(e)) from e


def parse_law(obj: Any) -> ScalingLaw:
    _check_keys(obj, LAW_KEYS, 'law')
    fixed_n = obj.get('fixed_n')
    return ScalingLaw(
        gamma=_number(obj.get('gamma', 0.0), 'gamma'),
        fixed_n=None if fixed_n is None else _integer(fixed_n, 'fixed_n'),
    )


def _basis(value: Any) -> Basis:
    if isinstance(value, str):
        value = {'kind': value}
    _check_keys(value, ('kind', 'seed'), 'basis')
    try:
        kind = BasisKind(value.get('kind', DEFAULT_BASIS))
    except ValueError:
        raise ValidationError('basis', f"expected one of {[b.value for b in BasisKind]}, got {value.get('kind')!r}")
    seed = value.get('seed')
    return Basis(kind=kind, seed=None if seed is None else _integer(seed, 'basis'))


def _dist(value: Any) -> ScoreDistribution:
    try:
        return ScoreDistribution(value)
    except ValueError:
        raise ValidationError('dist', f"expected one of {[s.value for s in ScoreDistribution]}, got {value!r}")


def _phase(obj: Any) -> PhaseSettings:
    _check_keys(obj, PHASE_KEYS, 'phase')
    return PhaseSettings(
        alpha_grid=_numbers(obj.get('alpha_grid', []), 'phase'),
        gamma_grid=_numbers(obj.get('gamma_grid', []), 'phase'),
        d=_integer(obj.get('d', 300), 'phase'),
        replicates=_integer(obj.get('replicates', 5), 'phase'),
    )


def _rate(obj: Any) -> RateSettings:
    _check_keys(obj, RATE_KEYS, 'rate')
    response = obj.get('response', 'inner_sq')
    if not isinstance(response, str):
        raise ValidationError('rate', f"response must be a string, got {response!r}")
    return RateSettings(
        index=_integer(obj.get('index', 1), 'rate'),
        response=response,
        power=_number(obj.get('power', 1.0), 'rate'),
    )


def config_from_dict(raw: Any) -> ExperimentConfig:
    """Validate a decoded JSON document and apply defaults"""
    _check_keys(raw, CONFIG_KEYS, '')
    for key in REQUIRED_KEYS:
        if key not in raw:
            raise ValidationError(key, "missing required key")

    d_grid = raw['d_grid']
    if not isinstance(d_grid, list):
        raise ValidationError('d_grid', f"expected a list, got {d_grid!r}")
    measures = raw.get('measures', list(DEFAULT_MEASURES))
    if not isinstance(measures, list) or not all(isinstance(m, str) for m in measures):
        raise ValidationError('measures', f"expected a list of names, got {measures!r}")
    output_dir = raw.get('output_dir', 'results')
    if not isinstance(output_dir, str):
        raise ValidationError('output_dir', f"expected a path string, got {output_dir!r}")

    return ExperimentConfig(
        spec=parse_spec(raw['spec']),
        law=parse_law(raw['law']),
        d_grid=tuple(_integer(d, 'd_grid') for d in d_grid),
        master_seed=_integer(raw['master_seed'], 'master_seed'),
        replicates=_integer(raw.get('replicates', DEFAULT_REPLICATES), 'replicates'),
        dist=_dist(raw.get('dist', DEFAULT_DIST)),
        basis=_basis(raw.get('basis', DEFAULT_BASIS)),
        measures=tuple(measures),
        output_dir=Path(output_dir),
        solver=raw.get('solver'),
        phase=_phase(raw['phase']) if 'phase' in raw else None,
        rate=_rate(raw['rate']) if 'rate' in raw else None,
    )


def parse_config(path: Union[str, Path]) -> ExperimentConfig:
    """
    Load and validate an experiment config file

    Args:
        path: UTF-8 JSON file

    Returns:
        ExperimentConfig with defaults applied

    Raises:
        ParseError: text is not JSON (carries line and column)
        ValidationError: a key is missing, unknown or invalid
    """
    try:
        text = Path(path).read_text(encoding='utf-8')
    except (OSError, UnicodeDecodeError) as e:
        raise IoError(f"cannot read config {path}: {e}") from e
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON in {path}: {e.msg}", e.lineno, e.colno) from e
    return config_from_dict(raw)
