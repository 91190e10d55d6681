"""Exact word lengths by breadth-first search in the Cayley graph."""
from __future__ import annotations

import hashlib
import json
import os
import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from metadist.group import Element, GroupSpec, Word, step

DEFAULT_NODE_LIMIT = 20_000_000


class BallLimitExceeded(RuntimeError):
    """Raised when a ball outgrows ``node_limit``; carries the completed part."""

    def __init__(self, completed_radius: int, partial: "Ball"):
        super().__init__(f"node limit exceeded; complete up to radius {completed_radius}")
        self.completed_radius = completed_radius
        self.partial = partial


@dataclass
class Ball:
    spec: GroupSpec
    radius: int
    table: dict = field(repr=False)  # Element -> (length, parent, letter)
    sphere_sizes: list = field(default_factory=list)

    def __contains__(self, g: Element) -> bool:
        return g in self.table

    def __len__(self) -> int:
        return len(self.table)

    def items(self):
        return self.table.items()

    def elements_in_B(self):
        return [g for g in self.table if g.is_in_B()]


def _expand(spec: GroupSpec, chunk: list, letters: list) -> list:
    return [(g, letter, step(g, letter, spec)) for g in chunk for letter in letters]


def bfs_ball(spec: GroupSpec, radius: int, node_limit: int = DEFAULT_NODE_LIMIT, threads: Optional[int] = None) -> Ball:
    """All elements of length <= radius with exact lengths.

    Layers are expanded in a fixed order (frontier order, then the letter order
    of ``spec.letters()``); with several threads the frontier is chunked and
    results are merged in chunk order, so the table does not depend on the
    thread count.
    """
    if radius < 0 or node_limit < 1:
        raise ValueError("radius must be >= 0 and node_limit >= 1")
    threads = threads or int(os.environ.get("METADIST_THREADS", "1"))
    identity = Element.identity(spec)
    table = {identity: (0, None, None)}
    sizes = [1]
    frontier = [identity]
    letters = spec.letters()
    pool = ThreadPoolExecutor(threads) if threads > 1 else None
    try:
        for r in range(1, radius + 1):
            if pool is not None:
                size = max(1, -(-len(frontier) // threads))
                chunks = [frontier[i:i + size] for i in range(0, len(frontier), size)]
                results = pool.map(lambda c: _expand(spec, c, letters), chunks)
                candidates = (x for res in results for x in res)
            else:
                candidates = _expand(spec, frontier, letters)
            new = []
            for parent, letter, child in candidates:
                if child not in table:
                    table[child] = (r, parent, letter)
                    new.append(child)
                    if len(table) > node_limit:
                        partial = {g: v for g, v in table.items() if v[0] < r}
                        raise BallLimitExceeded(r - 1, Ball(spec, r - 1, partial, sizes[:]))
            sizes.append(len(new))
            frontier = new
    finally:
        if pool is not None:
            pool.shutdown()
    return Ball(spec, radius, table, sizes)


def word_length(ball: Ball, g: Element) -> Optional[int]:
    """Exact |g|_G, or None when g lies outside the ball (|g| > radius)."""
    entry = ball.table.get(g)
    return None if entry is None else entry[0]


def geodesic_word(ball: Ball, g: Element) -> Word:
    if g not in ball.table:
        raise KeyError("element is not in the ball")
    letters = []
    while True:
        _, parent, letter = ball.table[g]
        if letter is None:
            break
        letters.append(letter)
        g = parent
    return Word(tuple(reversed(letters)))


# -- cache file ---------------------------------------------------------------
# Layout (little-endian), see docs/ball_cache.md:
#   magic b"MDBALL\0\0" | version u16 | reserved u16 | spec sha256 (32 bytes)
#   | radius u32 | count u64 | count records sorted by key bytes:
#   key_len u32 | key utf-8 | length u32 | letter index i32 (-1: none) | sign i8

MAGIC = b"MDBALL\0\0"
CACHE_VERSION = 1


def spec_hash(spec: GroupSpec) -> bytes:
    payload = json.dumps({"labels": list(spec.labels), "actions": [M.to_strings() for M in spec.actions]}, sort_keys=True)
    return hashlib.sha256(payload.encode()).digest()


def write_ball_cache(ball: Ball, path) -> None:
    records = sorted((g.key().encode(), v[0], v[2]) for g, v in ball.table.items())
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<HH", CACHE_VERSION, 0))
        fh.write(spec_hash(ball.spec))
        fh.write(struct.pack("<IQ", ball.radius, len(records)))
        for key, length, letter in records:
            idx, sign = letter if letter is not None else (-1, 0)
            fh.write(struct.pack("<I", len(key)))
            fh.write(key)
            fh.write(struct.pack("<Iib", length, idx, sign))


def read_ball_cache(path, spec: GroupSpec) -> Ball:
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:8] != MAGIC:
        raise ValueError("not a ball cache file")
    version, _ = struct.unpack_from("<HH", data, 8)
    if version != CACHE_VERSION:
        raise ValueError(f"unsupported ball cache version {version}")
    if data[12:44] != spec_hash(spec):
        raise ValueError("ball cache was written for a different spec")
    radius, count = struct.unpack_from("<IQ", data, 44)
    pos = 56
    raw = {}
    for _ in range(count):
        (klen,) = struct.unpack_from("<I", data, pos)
        pos += 4
        g = Element.from_key(data[pos:pos + klen].decode())
        pos += klen
        length, idx, sign = struct.unpack_from("<Iib", data, pos)
        pos += 9
        raw[g] = (length, None if idx < 0 else (idx, sign))
    table = {}
    for g, (length, letter) in raw.items():
        parent = None if letter is None else step(g, (letter[0], -letter[1]), spec)
        table[g] = (length, parent, letter)
    sizes = [0] * (radius + 1)
    for length, _, _ in table.values():
        sizes[length] += 1
    return Ball(spec, radius, table, sizes)
