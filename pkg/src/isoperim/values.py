"""Tabulated P/Q values and their on-disk binary cache."""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .numeric import f_of

ENGINES = ("oracle", "dp", "fast", "direct")
_ENGINE_TAGS = {name: i for i, name in enumerate(ENGINES)}
CACHE_MAGIC = b"ISOP1\n"


@dataclass
class ValueTable:
    N: int
    P: np.ndarray | None
    Q: np.ndarray | None
    engine: str

    def __post_init__(self):
        if self.engine not in ENGINES:
            raise ValueError(f"unknown engine {self.engine!r}")
        for name in ("P", "Q"):
            arr = getattr(self, name)
            if arr is None:
                continue
            arr = np.asarray(arr, dtype=np.int64)
            if arr.shape != (self.N + 1,):
                raise ValueError(f"{name} must have {self.N + 1} entries")
            if arr[0] != 0:
                raise ValueError(f"{name}[0] must be 0")
            setattr(self, name, arr)

    def validate(self) -> None:
        """Check the crude lower bounds P >= f and Q >= f + 1."""
        f = np.array([f_of(n) for n in range(self.N + 1)])
        if self.P is not None and np.any(self.P < f):
            bad = int(np.argmax(self.P < f))
            raise ValueError(f"P[{bad}] = {self.P[bad]} below f = {f[bad]}")
        if self.Q is not None and np.any(self.Q[1:] < f[1:] + 1):
            bad = 1 + int(np.argmax(self.Q[1:] < f[1:] + 1))
            raise ValueError(f"Q[{bad}] = {self.Q[bad]} below f + 1 = {f[bad] + 1}")

    def truncate(self, N: int) -> ValueTable:
        if N > self.N:
            raise ValueError(f"table only reaches {self.N}")
        return ValueTable(
            N,
            None if self.P is None else self.P[: N + 1].copy(),
            None if self.Q is None else self.Q[: N + 1].copy(),
            self.engine,
        )


def save_cache(table: ValueTable, path: str | Path) -> None:
    """Layout: magic, engine tag byte, u64 N, (N+1) u32 P values, (N+1) u32 Q values."""
    if table.P is None or table.Q is None:
        raise ValueError("cache needs both P and Q")
    with open(path, "wb") as fh:
        fh.write(CACHE_MAGIC)
        fh.write(bytes([_ENGINE_TAGS[table.engine]]))
        fh.write(struct.pack("<Q", table.N))
        fh.write(table.P.astype("<u4").tobytes())
        fh.write(table.Q.astype("<u4").tobytes())


def load_cache(path: str | Path) -> ValueTable:
    raw = Path(path).read_bytes()
    head = len(CACHE_MAGIC)
    if raw[:head] != CACHE_MAGIC:
        raise ValueError(f"{path}: bad magic")
    tag = raw[head]
    if tag >= len(ENGINES):
        raise ValueError(f"{path}: unknown engine tag {tag}")
    (N,) = struct.unpack_from("<Q", raw, head + 1)
    body = raw[head + 9 :]
    if len(body) != 8 * (N + 1):
        raise ValueError(f"{path}: expected {8 * (N + 1)} payload bytes, found {len(body)}")
    vals = np.frombuffer(body, dtype="<u4").astype(np.int64)
    return ValueTable(N, vals[: N + 1], vals[N + 1 :], ENGINES[tag])
