"""
Hereditary families: the expression language, membership, and ranks
===================================================================

A family here is a downward-closed collection of finite subsets of
{1, 2, 3, ...}, written in a small expression language.  This script walks
through the built-in constructors and what can be asked of them.
"""

from schreier_kit import family
from schreier_kit.finset import FinSet

# The basic admissibility family: a set belongs when its size is at most
# its minimum.  {2,3} qualifies (two elements, minimum 2); {1,2} does not.
print("member {2,3}:", family.member(family.SCHREIER, FinSet((2, 3))))
print("member {1,2}:", family.member(family.SCHREIER, FinSet((1, 2))))

# Expressions parse from text and print back in one canonical spelling.
expr = family.parse_family("prod( schreier ,cube(3,3) )")
print("canonical:", family.format_family(expr))

# cube(a,k) holds the sets with at most k elements, all of them >= a.
# prod(F, G) glues blocks from F along minima taken from G: a set belongs
# when it splits into consecutive blocks, each in F, whose minima form a
# set in G.
print("split member:", family.member(expr, FinSet((4, 5, 6, 7, 11))))

# Enumeration lists every member inside a truncation [1..max], smallest
# first.  The maximal members are the ones no tail element can extend.
for s in family.enumerate_members(family.SCHREIER, 4):
    tag = " (maximal)" if family.is_maximal(family.SCHREIER, s) else ""
    print("  ", s, tag)

# restrict(F, M) keeps the members lying inside an index set M.  Index
# sets can be arithmetic progressions, powers, tails, or explicit lists.
powers = family.parse_family("restrict(schreier, powers(2))")
print("powers members to 8:",
      [str(s) for s in family.enumerate_members(powers, 8)])

# The derivative keeps the members that still extend; iterating it peels
# a family down to nothing in finitely or transfinitely many steps.
cube = family.Cube(2, 2)
for j in range(4):
    step = family.iterated_derivative(cube, j)
    print(f"derivative^{j} of cube(2,2) up to 6:",
          [str(s) for s in family.enumerate_members(step, 6)])

# The number of steps is what the symbolic rank records, as an ordinal in
# Cantor normal form. cube(n,n) dies after n+1 steps; the admissibility
# family needs w+1; products multiply the indices.
for text in ["cube(4,4)", "schreier", "prod(schreier, cube(3,3))", "S2"]:
    print(f"rank {text}:", family.rank(family.parse_family(text)))
