"""
The parity kernel and its block decomposition
=============================================

The kernel takes two finite sets and returns a bit.  The second set is
split into blocks in exactly one way; the bit then reports whether an even
number of the first set's elements land in their matching blocks.
"""

from schreier_kit.finset import EMPTY, FinSet
from schreier_kit.kernel import decompose, dependency_radius, inner, parity

# The split: leading blocks are as large as their own minimum allows and
# must be full; the last block may fall short.  The block minima themselves
# satisfy the same size-versus-minimum bound, or the set is rejected.
t = FinSet((2, 3, 5, 8, 9))
d = decompose(t)
print("blocks of", t, "->", d)
print("minima:", d.minima)

# Hits are positional: the i-th element of s is checked against the i-th
# block, nothing else.  Here 2 lands in {2,3} and 5 lands in {5,8,9},
# so the count is 2 and the parity bit is 1 (even).
s = FinSet((2, 5, 8))
print("hits:", inner(s, t), " parity:", parity(s, t))

# An element sitting in the wrong slot does not count.  4 belongs to the
# second block of {2,3,4} but appears first in s, so it never matches.
print("misaligned:", inner(FinSet((4, 9)), FinSet((2, 3, 4))))

# Both empty-set conventions give parity 1: an empty side scores no hits.
print("empty sides:", parity(EMPTY, t), parity(s, EMPTY))

# The kernel is local: with one side fixed, only the other side's trace
# below the fixed maximum matters.  Pad t beyond max(s) however the block
# rules allow and the bit cannot move.
radius = dependency_radius(s)
padded = FinSet((2, 3)) | FinSet((5, 8, 9, 10, 11))
print("radius:", radius)
print("same trace below", radius, ":",
      padded.restrict_to(radius) == t.restrict_to(radius))
print("same parity:", parity(s, padded) == parity(s, t))

# Sets whose minima grow too slowly have no valid split at all.
try:
    decompose(FinSet((1, 2)))
except ValueError as err:
    print("rejected:", err)
