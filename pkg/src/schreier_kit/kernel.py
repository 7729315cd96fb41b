"""The two-valued parity kernel on pairs (s, t) of finite sets.

Every t in S2 (= prod(schreier, schreier)) splits uniquely into consecutive
blocks t[0] < t[1] < ... < t[l] where every block before the last is a
*maximal* schreier set (#block = min block), the last block is schreier, and
the block minima again form a schreier set.  The kernel counts positional
hits of s against those blocks and keeps only the parity:

    inner(s, t) = #{ i <= min(k, l) : s's i-th element lies in t[i] }
    parity(s, t) = (inner(s, t) + 1) mod 2

with s = {m_0 < ... < m_k}.  Conventions: inner(empty, t) = 0 and
inner(s, empty) = 0, so parity(empty, t) = parity(s, empty) = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .finset import FinSet


class NotInS2Error(ValueError):
    """The set admits no block decomposition of the required shape."""


@dataclass(frozen=True)
class Decomposition:
    blocks: tuple[FinSet, ...]

    def __post_init__(self):
        bs = self.blocks
        if not bs:
            raise ValueError("a decomposition has at least one block")
        for i, b in enumerate(bs):
            if not b:
                raise ValueError("blocks are nonempty")
            final = i == len(bs) - 1
            if not final and len(b) != b.min:
                raise ValueError(f"non-final block {b} is not maximal schreier")
            if final and len(b) > b.min:
                raise ValueError(f"final block {b} is not schreier")
            if i and not bs[i - 1].precedes(b):
                raise ValueError("blocks must be strictly increasing")
        mins = [b.min for b in bs]
        if len(mins) > mins[0]:
            raise ValueError("block minima do not form a schreier set")

    @property
    def support(self) -> FinSet:
        out: tuple[int, ...] = ()
        for b in self.blocks:
            out += b.elems
        return FinSet(out)

    @property
    def minima(self) -> FinSet:
        return FinSet(tuple(b.min for b in self.blocks))

    def __str__(self) -> str:
        return " | ".join(str(b) for b in self.blocks)


@lru_cache(maxsize=1 << 16)
def _decompose_elems(elems: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    if not elems:
        raise ValueError("cannot decompose the empty set")
    blocks = []
    i = 0
    n = len(elems)
    while i < n:
        c = elems[i]
        if n - i >= c:
            # forced cut: a non-final block must be maximal schreier and
            # consecutive, so it is exactly the next c elements
            blocks.append(elems[i:i + c])
            i += c
        else:
            blocks.append(elems[i:])  # short final block, schreier by #<min
            i = n
    if len(blocks) > blocks[0][0]:
        raise NotInS2Error(f"block minima of {elems} exceed the schreier bound")
    return tuple(blocks)


def decompose(t: FinSet) -> Decomposition:
    """The unique block decomposition of a nonempty t in S2."""
    return Decomposition(tuple(FinSet(b) for b in _decompose_elems(t.elems)))


def inner(s: FinSet, t) -> int:
    """Positional hit count of s against the blocks of t.

    ``t`` may be a FinSet (decomposed on the fly) or a ready Decomposition.
    """
    if isinstance(t, Decomposition):
        blocks = t.blocks
    elif isinstance(t, FinSet):
        if not t:
            return 0
        blocks = decompose(t).blocks
    else:
        raise TypeError(f"expected FinSet or Decomposition, got {t!r}")
    return sum(1 for i, m in enumerate(s.elems[:len(blocks)]) if m in blocks[i])


def parity(s: FinSet, t) -> int:
    """1 for an even hit count, 0 for odd."""
    c = inner(s, t)
    value = (c + 1) % 2
    # the sign form ((-1)^c + 1)/2 must agree term for term
    assert value == ((-1) ** c + 1) // 2
    return value


def dependency_radius(fixed: FinSet) -> int:
    """With one coordinate fixed to a nonempty ``fixed``, the kernel reads
    the other coordinate only inside [1..max fixed]."""
    if not fixed:
        raise ValueError("the radius of an empty coordinate is undefined")
    return fixed.max


def _parity_blocks(s_elems: tuple[int, ...], block_sets: tuple) -> int:
    """Hot-path kernel over pre-built block membership sets (frozensets)."""
    c = 0
    for i, m in enumerate(s_elems[:len(block_sets)]):
        if m in block_sets[i]:
            c += 1
    return (c + 1) & 1


def block_sets(t) -> tuple:
    """Frozenset view of the blocks of t, for sweep loops."""
    if isinstance(t, Decomposition):
        return tuple(frozenset(b.elems) for b in t.blocks)
    if not t:
        return ()
    return tuple(frozenset(b) for b in _decompose_elems(t.elems))
