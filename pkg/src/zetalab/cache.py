"""Binary cache of Z(t) on a uniform grid.

Layout (all little-endian):

    offset  size  field
    0       4     magic  b"ZMC1"
    4       4     version (uint32, = 1)
    8       8     t_start (float64)
    16      8     dt (float64)
    24      8     count (uint64)
    32      8*n   Z(t_start + i dt), float64

theta(t) is not stored; it is recomputed on load.
"""

from __future__ import annotations

import os
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .zeta_engine import CriticalGrid

MAGIC = b"ZMC1"
VERSION = 1
HEADER = struct.Struct("<4sIddQ")


class CacheFormatError(ValueError):
    pass


@dataclass(frozen=True)
class SampleCacheHeader:
    magic: bytes
    version: int
    t_start: float
    dt: float
    count: int


def write_cache(path, grid: CriticalGrid) -> None:
    path = Path(path)
    values = np.ascontiguousarray(grid.z, dtype="<f8")
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "wb") as fh:
        fh.write(HEADER.pack(MAGIC, VERSION, grid.t_start, grid.dt, values.size))
        fh.write(values.tobytes())
    os.replace(tmp, path)


def read_header(path) -> SampleCacheHeader:
    with open(path, "rb") as fh:
        raw = fh.read(HEADER.size)
    if len(raw) < HEADER.size:
        raise CacheFormatError(f"{path}: truncated header")
    header = SampleCacheHeader(*HEADER.unpack(raw))
    if header.magic != MAGIC:
        raise CacheFormatError(f"{path}: bad magic {header.magic!r}, expected {MAGIC!r}")
    if header.version != VERSION:
        raise CacheFormatError(f"{path}: unsupported version {header.version}")
    return header


def read_cache(path) -> CriticalGrid:
    header = read_header(path)
    values = np.fromfile(path, dtype="<f8", offset=HEADER.size)
    if values.size != header.count:
        raise CacheFormatError(f"{path}: header says {header.count} samples, file holds {values.size}")
    return CriticalGrid(header.t_start, header.dt, values.astype(np.float64))
