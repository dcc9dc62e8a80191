"""
Run configuration for the command-line front end
Parses flat key = value files and merges them with command-line flags
"""

import logging
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from config.config import GRID_CONFIG, MC_CONFIG, MODEL_DEFAULTS
from core.exceptions import DomainError
from core.model_core import AveragingMethod, AveragingSpec, GridSpec, ModelParams, OptionKind

logger = logging.getLogger(__name__)

# keys that map onto the typed fields; everything else is command-specific
CORE_KEYS = ('r', 'q', 'sigma', 'T', 'avg', 'lambda', 'kind', 'n', 'm', 'L', 'out', 'seed')


class RunConfig(BaseModel):
    """Parameter bundle of one command invocation"""

    model_config = ConfigDict(frozen=True)

    command: str
    params: ModelParams
    avg: AveragingSpec
    kind: OptionKind = OptionKind.CALL
    grid: GridSpec = Field(default_factory=GridSpec)
    out: Optional[str] = None
    seed: int = MC_CONFIG['seed']
    extras: Dict[str, str] = Field(default_factory=dict)

    def header(self) -> Dict[str, Any]:
        """Every parameter of the run, in a stable order, for output provenance"""
        items: Dict[str, Any] = {
            'command': self.command,
            'r': self.params.r,
            'q': self.params.q,
            'sigma': self.params.sigma,
            'T': self.params.T,
            'avg': self.avg.method.value,
        }
        if self.avg.lam is not None:
            items['lambda'] = self.avg.lam
        items.update({'kind': self.kind.value, 'n': self.grid.n, 'm': self.grid.m, 'L': self.grid.L, 'seed': self.seed})
        items.update({key: self.extras[key] for key in sorted(self.extras)})
        return items

    def extra_float(self, key: str, default: Optional[float] = None) -> Optional[float]:
        value = self.extras.get(key)
        return default if value is None else float(value)

    def extra_int(self, key: str, default: Optional[int] = None) -> Optional[int]:
        value = self.extras.get(key)
        return default if value is None else int(value)

    def extra_bool(self, key: str, default: bool = False) -> bool:
        value = self.extras.get(key)
        if value is None:
            return default
        return value.strip().lower() in ('1', 'true', 'yes', 'on')

    def extra_floats(self, key: str, default: Optional[List[float]] = None) -> Optional[List[float]]:
        """Comma-separated list of floats"""
        value = self.extras.get(key)
        if value is None:
            return default
        return [float(item) for item in value.split(',') if item.strip()]


def parse_config_text(text: str) -> Dict[str, str]:
    """
    Parse flat key = value lines

    Blank lines and lines starting with '#' are skipped; a trailing '#'
    comment after a value is stripped.

    Args:
        text: File contents

    Returns:
        Dictionary of raw string values, later keys win
    """
    values: Dict[str, str] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise DomainError(f"config line {number} is not of the form key = value: {raw!r}")
        key, value = (part.strip() for part in line.split('=', 1))
        if not key:
            raise DomainError(f"config line {number} has an empty key")
        values[key] = value
    return values


def load_config_file(path: str) -> Dict[str, str]:
    """Read and parse a config file"""
    config_path = Path(path)
    if not config_path.is_file():
        raise DomainError(f"config file not found: {path}")
    logger.debug(f"Loading run config from {path}")
    return parse_config_text(config_path.read_text(encoding='utf-8'))


def build_run_config(
    command: str,
    flags: Mapping[str, Any],
    file_values: Optional[Mapping[str, str]] = None,
) -> RunConfig:
    """
    Merge file values and flags into a validated RunConfig

    Flags that are not None override file values, which override the
    configured defaults.

    Args:
        command: Subcommand name
        flags: Parsed command-line values keyed like the config file
        file_values: Values from a config file

    Returns:
        RunConfig
    """
    merged: Dict[str, Any] = {
        'r': MODEL_DEFAULTS['r'],
        'q': MODEL_DEFAULTS['q'],
        'sigma': MODEL_DEFAULTS['sigma'],
        'T': MODEL_DEFAULTS['T'],
        'avg': MODEL_DEFAULTS['averaging'],
        'kind': MODEL_DEFAULTS['kind'],
        'n': GRID_CONFIG['n'],
        'm': GRID_CONFIG['m'],
        'L': GRID_CONFIG['L'],
        'seed': MC_CONFIG['seed'],
    }
    merged.update(file_values or {})
    merged.update({key: value for key, value in flags.items() if value is not None})

    try:
        method = AveragingMethod(str(merged['avg']))
        lam = merged.get('lambda')
        avg = AveragingSpec(method=method, lam=float(lam) if lam is not None and method is AveragingMethod.WEIGHTED else None)
        return RunConfig(
            command=command,
            params=ModelParams(r=float(merged['r']), q=float(merged['q']), sigma=float(merged['sigma']), T=float(merged['T'])),
            avg=avg,
            kind=OptionKind(str(merged['kind'])),
            grid=GridSpec(n=int(merged['n']), m=int(merged['m']), L=float(merged['L'])),
            out=merged.get('out'),
            seed=int(merged['seed']),
            extras={key: str(value) for key, value in merged.items() if key not in CORE_KEYS},
        )
    except (ValidationError, ValueError) as e:
        raise DomainError(f"invalid run configuration: {e}") from e
