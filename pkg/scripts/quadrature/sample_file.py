#!/usr/bin/env python3
"""
Sample File Reader/Writer

Format:
    # optional comment lines anywhere
    a=<real> m=<int>
    <f(t_0)>
    ...
    <f(t_m)>

Numbers are parsed with float(), which always uses '.' as the decimal point
regardless of locale. Values are written with 17 significant digits so a
written file reads back to the same doubles.
"""

import logging
import math
from pathlib import Path
from typing import List, Union

from .bernstein_gb import GridFunction, make_grid
from .errors import DomainError, SampleFileError

logger = logging.getLogger(__name__)

FLOAT_FORMAT = '{:.16e}'


def _parse_header(line: str, path: Path) -> dict:
    fields = {}
    for token in line.split():
        if '=' not in token:
            raise SampleFileError(f"{path}: malformed header token '{token}' (expected key=value)")
        key, value = token.split('=', 1)
        fields[key.strip()] = value.strip()

    missing = {'a', 'm'} - fields.keys()
    if missing:
        raise SampleFileError(f"{path}: header missing {', '.join(sorted(missing))}")

    try:
        a = float(fields['a'])
        m = int(fields['m'])
    except ValueError as e:
        raise SampleFileError(f"{path}: cannot parse header '{line}': {e}")
    return {'a': a, 'm': m}


def read_sample_file(path: Union[str, Path]) -> GridFunction:
    """
    Read a sample file into a GridFunction.

    Args:
        path: File to read

    Returns:
        GridFunction on the grid named by the header

    Raises:
        OSError: If the file cannot be read
        SampleFileError: Non-ASCII content, wrong value count, unparsable or
            non-finite values
    """
    path = Path(path)
    try:
        with open(path, 'r', encoding='ascii', errors='strict') as f:
            lines = [line.strip() for line in f]
    except UnicodeDecodeError as e:
        raise SampleFileError(f"{path}: not ASCII text: {e}")

    content = [line for line in lines if line and not line.startswith('#')]
    if not content:
        raise SampleFileError(f"{path}: empty sample file")

    header = _parse_header(content[0], path)
    raw = content[1:]
    if len(raw) != header['m'] + 1:
        raise SampleFileError(
            f"{path}: expected {header['m'] + 1} values for m={header['m']}, found {len(raw)}"
        )

    values: List[float] = []
    for lineno, text in enumerate(raw, start=1):
        try:
            value = float(text)
        except ValueError:
            raise SampleFileError(f"{path}: value {lineno} is not a number: '{text}'")
        if not math.isfinite(value):
            raise SampleFileError(f"{path}: value {lineno} is not finite: '{text}'")
        values.append(value)

    try:
        grid = make_grid(header['m'], header['a'])
    except DomainError as e:
        raise SampleFileError(f"{path}: invalid header: {e}")

    logger.debug(f"Read {len(values)} samples (m={grid.m}, a={grid.a}) from {path}")
    return GridFunction(grid=grid, values=values)


def write_sample_file(path: Union[str, Path], fs: GridFunction, comment: str = '') -> Path:
    """Write a GridFunction in sample-file format."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='ascii') as f:
        if comment:
            f.write(f"# {comment}\n")
        f.write(f"a={fs.a!r} m={fs.m}\n")
        for value in fs.values:
            f.write(FLOAT_FORMAT.format(value) + '\n')
    return path
