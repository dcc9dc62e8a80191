"""
CSV output with self-describing comment headers
"""

import io
import logging
import sys
from pathlib import Path
from typing import Any, Dict, Optional, TextIO, Tuple

import numba
import numpy as np
import pandas as pd
import pydantic
import scipy

from analytics.integral_pricer import BoundaryCurve
from config.config import OUTPUT_CONFIG, TOOLKIT_VERSION
from core.exceptions import DomainError

logger = logging.getLogger(__name__)


def module_versions() -> Dict[str, str]:
    return {
        'toolkit': TOOLKIT_VERSION,
        'numpy': np.__version__,
        'scipy': scipy.__version__,
        'pandas': pd.__version__,
        'numba': numba.__version__,
        'pydantic': pydantic.VERSION,
    }


def float_format() -> str:
    return f"%.{OUTPUT_CONFIG['significant_digits']}g"


def render_csv(frame: pd.DataFrame, header: Optional[Dict[str, Any]] = None) -> str:
    """
    CSV text with '# key = value' comment lines before the column row

    The header carries the given parameters followed by module versions;
    no timestamps, so identical runs give identical files.
    """
    prefix = OUTPUT_CONFIG['comment_prefix']
    buffer = io.StringIO()
    for key, value in (header or {}).items():
        buffer.write(f"{prefix}{key} = {value}\n")
    for key, value in module_versions().items():
        buffer.write(f"{prefix}version.{key} = {value}\n")
    frame.to_csv(buffer, index=False, float_format=float_format(), lineterminator='\n')
    return buffer.getvalue()


def write_csv(
    frame: pd.DataFrame,
    path: Optional[str],
    header: Optional[Dict[str, Any]] = None,
    stream: Optional[TextIO] = None,
) -> Optional[str]:
    """
    Write a frame as commented CSV

    Args:
        frame: Data to write
        path: Output file; None writes to the stream
        header: Parameters echoed as comment lines
        stream: Fallback stream, stdout by default

    Returns:
        The path written, or None for stream output
    """
    text = render_csv(frame, header)
    if path is None:
        (stream or sys.stdout).write(text)
        return None
    target = Path(path)
    if target.parent and not target.parent.exists():
        target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text, encoding='utf-8')
    logger.info(f"Wrote {len(frame)} rows to {target}")
    return str(target)


def sibling_path(path: Optional[str], suffix: str) -> Optional[str]:
    """'out.csv' -> 'out_<suffix>.csv'"""
    if path is None:
        return None
    target = Path(path)
    return str(target.with_name(f"{target.stem}_{suffix}{target.suffix or '.csv'}"))


def read_csv_with_header(path: str) -> Tuple[Dict[str, str], pd.DataFrame]:
    """Comment header as a dict plus the data rows"""
    target = Path(path)
    if not target.is_file():
        raise DomainError(f"CSV file not found: {path}")
    prefix = OUTPUT_CONFIG['comment_prefix'].strip()
    header: Dict[str, str] = {}
    with target.open(encoding='utf-8') as handle:
        for line in handle:
            if not line.startswith(prefix):
                break
            body = line[len(prefix):].strip()
            if '=' in body:
                key, value = (part.strip() for part in body.split('=', 1))
                header[key] = value
    frame = pd.read_csv(target, comment=prefix)
    return header, frame


def read_boundary(path: str, T: Optional[float] = None) -> BoundaryCurve:
    """
    Load a boundary written by the boundary command

    Args:
        path: CSV with tau and rho columns
        T: Maturity; taken from the file header when omitted

    Returns:
        BoundaryCurve
    """
    header, frame = read_csv_with_header(path)
    missing = {'tau', 'rho'} - set(frame.columns)
    if missing:
        raise DomainError(f"boundary file {path} lacks columns {sorted(missing)}")
    if T is None:
        if 'T' not in header:
            raise DomainError(f"boundary file {path} does not record the maturity T")
        T = float(header['T'])
    frame = frame.sort_values('tau')
    return BoundaryCurve(T=T, taus=frame['tau'].to_numpy(), rhos=frame['rho'].to_numpy())
