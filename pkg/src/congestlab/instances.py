"""Two-party bit-vector instances: DISJ, INT and the index helpers used by the gadgets.

Positions are 1-based throughout (``x[1]`` is the first bit) to line up with
the ``[k] = {1, ..., k}`` convention of the reductions; internally a bit
vector is a plain tuple and ``x[p - 1]`` is bit ``p``.
"""

from __future__ import annotations

import random
from collections.abc import Sequence
from dataclasses import dataclass

Bits = tuple[int, ...]


def parse_bits(text: str) -> Bits:
    """Parse ``"0110"`` into ``(0, 1, 1, 0)``; the first character is bit 1."""
    if not text or any(c not in "01" for c in text):
        raise ValueError(f"bit string must be non-empty and contain only 0/1, got {text!r}")
    return tuple(int(c) for c in text)


def format_bits(bits: Sequence[int]) -> str:
    return "".join("1" if b else "0" for b in bits)


def random_bits(k: int, rng: random.Random) -> Bits:
    return tuple(rng.randrange(2) for _ in range(k))


def _check_bits(bits: Sequence[int], name: str) -> None:
    if any(b not in (0, 1) for b in bits):
        raise ValueError(f"{name} must contain only 0/1 entries")


def intersection_size(x: Sequence[int], y: Sequence[int]) -> int:
    """Number of positions where both ``x`` and ``y`` are 1."""
    if len(x) != len(y):
        raise ValueError(f"length mismatch: |x|={len(x)}, |y|={len(y)}")
    _check_bits(x, "x")
    _check_bits(y, "y")
    return sum(1 for a, b in zip(x, y) if a and b)


@dataclass(frozen=True)
class IntersectionInstance:
    x: Bits
    y: Bits
    rho: int = 1

    def __post_init__(self) -> None:
        if len(self.x) != len(self.y) or not self.x:
            raise ValueError("x and y must be non-empty and of equal length")
        _check_bits(self.x, "x")
        _check_bits(self.y, "y")
        if not 1 <= self.rho <= self.k:
            raise ValueError(f"rho must lie in [1, {self.k}], got {self.rho}")

    @property
    def k(self) -> int:
        return len(self.x)


def eval_int(inst: IntersectionInstance) -> int:
    """INT_{k,rho}: 0 iff fewer than rho common 1-positions."""
    return int(intersection_size(inst.x, inst.y) >= inst.rho)


def eval_disj(x: Sequence[int], y: Sequence[int]) -> int:
    """DISJ_k: 0 iff some position is 1 in both inputs."""
    return int(intersection_size(x, y) == 0)


def pair_count(s: int) -> int:
    return s * (s - 1) // 2


def pair_to_index(i: int, j: int, s: int) -> int:
    """Lexicographic rank (1-based) of the pair ``1 <= i < j <= s``."""
    if not 1 <= i < j <= s:
        raise ValueError(f"need 1 <= i < j <= s, got i={i}, j={j}, s={s}")
    return (i - 1) * (2 * s - i) // 2 + (j - i)


def index_to_pair(p: int, s: int) -> tuple[int, int]:
    """Inverse of :func:`pair_to_index`."""
    if not 1 <= p <= pair_count(s):
        raise ValueError(f"index {p} out of range [1, {pair_count(s)}] for s={s}")
    i = 1
    # pairs starting with i occupy a block of s - i indices
    while p > s - i:
        p -= s - i
        i += 1
    return i, i + p


def bit_b(p: int, i: int) -> int:
    """The i-th least significant bit (1-based) of ``p - 1``."""
    if p < 1 or i < 1:
        raise ValueError(f"need p >= 1 and i >= 1, got p={p}, i={i}")
    return ((p - 1) >> (i - 1)) & 1
