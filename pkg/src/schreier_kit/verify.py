"""Named verification suites, one per library invariant.

Every suite replays one documented invariant, exhaustively at a truncation
that a laptop handles in seconds.  ``run_suite`` returns a report whose
serialized form is byte-stable across runs and worker counts; wall time is
carried on the report object but never serialized.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache
from typing import Callable, Optional

import numpy as np

from . import averaging, compacta, family, ordinal
from .family import (SCHREIER, SCHREIER_SQUARE, All, Cube, Powers, Restrict,
                     enumerate_members, member, member_by_composition_search,
                     product_family, tail_threshold)
from .finset import EMPTY, FinSet, interval
from .ordinal import Ordinal
from .kernel import (NotInS2Error, _parity_blocks, block_sets, decompose,
                     inner, parity)

_MAX_RECORDED_FAILURES = 20


@dataclass
class VerifyReport:
    suite: str
    cases: int
    failures: list[dict]
    wall_time: float = field(default=0.0, compare=False)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> str:
        """Stable serialization: wall time deliberately left out."""
        return json.dumps({"suite": self.suite, "cases": self.cases,
                           "failures": self.failures},
                          sort_keys=True, separators=(",", ":"))


class _Collector:
    def __init__(self):
        self.cases = 0
        self.failures: list[dict] = []

    def check(self, ok: bool, case: str, expected, actual):
        self.cases += 1
        if not ok and len(self.failures) < _MAX_RECORDED_FAILURES:
            self.failures.append({"case": case, "expected": str(expected),
                                  "actual": str(actual)})


def _eff(default: int, cap: Optional[int]) -> int:
    return default if cap is None else max(1, min(default, cap))


@cache
def _members(expr, bound: int) -> tuple[FinSet, ...]:
    return tuple(enumerate_members(expr, bound))


def _subsets(universe: range):
    for k in range(len(universe) + 1):
        yield from itertools.combinations(universe, k)


# ---------------------------------------------------------------------------
# ordinal
# ---------------------------------------------------------------------------


def _ordinal_corpus() -> list[Ordinal]:
    """Every normal form with exponents from {0,1,2}, coefficients 1..3,
    and at most three terms."""
    exps = [Ordinal.zero(), Ordinal.nat(1), Ordinal.nat(2)]
    out = [Ordinal.zero()]
    for r in (1, 2, 3):
        for es in itertools.combinations(sorted(exps, reverse=True), r):
            for cs in itertools.product((1, 2, 3), repeat=r):
                out.append(Ordinal(tuple(zip(es, cs))))
    return out


def _suite_ordinal_associativity(cap):
    col = _Collector()
    corpus = _ordinal_corpus()
    if cap is not None:
        corpus = corpus[:max(4, cap * 4)]
    for a in corpus:
        for b in corpus:
            ab_add = a + b
            ab_mul = a * b
            for c in corpus:
                col.check((ab_add + c) == (a + (b + c)),
                          f"add {a}|{b}|{c}", a + (b + c), ab_add + c)
                col.check((ab_mul * c) == (a * (b * c)),
                          f"mul {a}|{b}|{c}", a * (b * c), ab_mul * c)
    return col


def _suite_ordinal_distributivity(cap):
    col = _Collector()
    corpus = _ordinal_corpus()
    if cap is not None:
        corpus = corpus[:max(4, cap * 4)]
    for a in corpus:
        for b in corpus:
            for c in corpus:
                lhs = a * (b + c)
                rhs = a * b + a * c
                col.check(lhs == rhs, f"{a}|{b}|{c}", rhs, lhs)
    return col


def _suite_ordinal_order(cap):
    col = _Collector()
    corpus = _ordinal_corpus()
    if cap is not None:
        corpus = corpus[:max(4, cap * 4)]
    for a in corpus:
        for b in corpus:
            lt, gt, eq = a < b, b < a, a == b
            col.check(lt + gt + eq == 1, f"trichotomy {a}|{b}",
                      "exactly one of <,>,=", f"{lt},{gt},{eq}")
    # transitivity on a thinner slice to stay quadratic-ish
    small = corpus[::3]
    for a in small:
        for b in small:
            if not a < b:
                continue
            for c in small:
                if b < c:
                    col.check(a < c, f"transitivity {a}|{b}|{c}", True, False)
    for a in corpus:
        for b in corpus:
            for c in corpus:
                if b < c:
                    col.check(a + b < a + c, f"monotone {a}|{b}|{c}",
                              True, a + b < a + c)
    return col


def _random_ordinal(rng: random.Random, depth: int = 2) -> Ordinal:
    if depth == 0:
        return Ordinal.nat(rng.randrange(0, 5))
    n_terms = rng.randrange(0, 4)
    exps: set = set()
    while len(exps) < n_terms:
        exps.add(_random_ordinal(rng, depth - 1))
    terms = tuple((e, rng.randrange(1, 6))
                  for e in sorted(exps, reverse=True))
    return Ordinal(terms)


def _suite_ordinal_roundtrip(cap):
    col = _Collector()
    rng = random.Random(4020)
    n = _eff(1000, None if cap is None else cap * 80)
    for _ in range(n):
        x = _random_ordinal(rng)
        text = str(x)
        back = Ordinal.parse(text)
        col.check(back == x, text, x, back)
    return col


# ---------------------------------------------------------------------------
# finset
# ---------------------------------------------------------------------------


def _suite_precedes_transitive(cap):
    bound = _eff(8, cap)
    col = _Collector()
    subs = [FinSet(e) for e in _subsets(range(1, bound + 1))]
    nonempty = [s for s in subs if s]
    mx = np.array([s.max for s in nonempty])
    mn = np.array([s.min for s in nonempty])
    P = mx[:, None] < mn[None, :]          # precedes on nonempty sets
    reach2 = (P.astype(np.uint8) @ P.astype(np.uint8)) > 0
    bad = reach2 & ~P
    col.cases += len(nonempty) ** 3
    for i, j in zip(*np.nonzero(bad)):
        col.check(False, f"{nonempty[i]} .. {nonempty[j]}",
                  "two-step precedes implies precedes", "violated")
        if len(col.failures) >= _MAX_RECORDED_FAILURES:
            break
    for s in subs:
        col.check(EMPTY.precedes(s), f"empty precedes {s}", True, False)
        if s:
            col.check(not s.precedes(EMPTY), f"{s} precedes empty", False, True)
    return col


def _suite_interval_structure(cap):
    bound = _eff(12, cap)
    col = _Collector()
    for a in range(1, bound + 1):
        for b in range(a, bound + 1):
            iv = interval(a, b)
            ok = len(iv) == b - a + 1 and iv.min == a and iv.max == b
            col.check(ok, f"[{a},{b}]", "size/min/max consistent", str(iv))
    for a in range(1, bound + 1):
        for b in range(a, bound + 1):
            for c in range(1, bound + 1):
                for d in range(c, bound + 1):
                    got = interval(a, b).precedes(interval(c, d))
                    col.check(got == (b < c), f"[{a},{b}] vs [{c},{d}]",
                              b < c, got)
    return col


# ---------------------------------------------------------------------------
# family
# ---------------------------------------------------------------------------


def _family_corpus() -> list:
    out = [SCHREIER, SCHREIER_SQUARE,
           Restrict(SCHREIER, Powers(2)), Restrict(SCHREIER_SQUARE, Powers(2))]
    for n in range(1, 5):
        out.append(Cube(n, n))
        out.append(product_family(n))
    return out


def _suite_family_hereditary(cap):
    bound = _eff(10, cap)
    col = _Collector()
    for expr in _family_corpus():
        for s in _members(expr, bound):
            for r in range(len(s) + 1):
                for sub in itertools.combinations(s.elems, r):
                    col.check(family._member(expr, sub),
                              f"{family.format_family(expr)}: {FinSet(sub)} "
                              f"under {s}", True, False)
    return col


def _suite_family_tail_uniformity(cap):
    bound = _eff(10, cap)
    horizon = _eff(40, None if cap is None else cap * 4)
    col = _Collector()
    for expr in _family_corpus():
        idx = family.effective_index(expr)
        for elems in _subsets(range(1, bound + 1)):
            s = FinSet(elems)
            lo = max(s.max_or_0, tail_threshold(expr, s))
            probes = family.index_elements_between(idx, lo, horizon)
            vals = {family._member(expr, elems + (m,)) for m in probes}
            col.check(len(vals) <= 1,
                      f"{family.format_family(expr)}: {s}",
                      "constant tail membership", f"{sorted(vals)}")
    return col


def _suite_family_enumeration(cap):
    bound = _eff(12, cap)
    col = _Collector()
    for expr in _family_corpus():
        fast = list(_members(expr, bound))
        naive = family.enumerate_members_naive(expr, bound)
        col.check(fast == naive, family.format_family(expr),
                  f"{len(naive)} members", f"{len(fast)} members")
        sizes = [len(_members(expr, m)) for m in range(1, bound + 1)]
        col.check(all(x <= y for x, y in zip(sizes, sizes[1:])),
                  f"{family.format_family(expr)} monotone counts",
                  "nondecreasing", sizes)
    return col


def _suite_family_rank_consistency(cap):
    bound = _eff(12, cap)
    col = _Collector()
    for n in range(1, 5):
        expr = Cube(n, n)
        at_n = enumerate_members(family.iterated_derivative(expr, n), bound)
        col.check(at_n == [EMPTY], f"cube({n},{n}) after {n} derivatives",
                  "only the empty set", [str(s) for s in at_n])
        at_n1 = enumerate_members(family.iterated_derivative(expr, n + 1), bound)
        col.check(at_n1 == [], f"cube({n},{n}) after {n + 1} derivatives",
                  "empty", [str(s) for s in at_n1])
    small = _eff(10, cap)
    for a, k in ((1, 3), (2, 2), (3, 4)):
        lhs = enumerate_members(family.derivative(Cube(a, k)), small)
        rhs = enumerate_members(Cube(a, k - 1), small)
        col.check(lhs == rhs, f"derivative of cube({a},{k})",
                  f"cube({a},{k - 1})", f"{len(lhs)} members")
    golds = [(SCHREIER, "w+1"), (SCHREIER_SQUARE, "w^2+1")]
    golds += [(Cube(n, n), str(n + 1)) for n in range(1, 7)]
    golds += [(product_family(1), "w+1")]
    golds += [(product_family(n), f"w*{n}+1") for n in range(2, 7)]
    golds += [(Restrict(SCHREIER_SQUARE, Powers(2)), "w^2+1")]
    for expr, want in golds:
        got = str(family.rank(expr))
        col.check(got == want, family.format_family(expr), want, got)
    return col


def _suite_family_level_union(cap):
    bound = _eff(12, cap)
    col = _Collector()
    s_all = set(_members(SCHREIER, bound))
    s2_all = set(_members(SCHREIER_SQUARE, bound))
    base_union: set = set()
    prod_union: set = set()
    for n in range(1, bound + 1):
        base_n = set(_members(Cube(n, n), bound))
        prod_n = set(_members(product_family(n), bound))
        col.check(base_n <= s_all, f"cube({n},{n}) inside schreier",
                  "subset", sorted(str(s) for s in base_n - s_all)[:3])
        col.check(prod_n <= s2_all, f"level-{n} product inside S2",
                  "subset", sorted(str(s) for s in prod_n - s2_all)[:3])
        base_union |= base_n
        prod_union |= prod_n
    col.check(base_union == s_all, "union of cube levels",
              f"{len(s_all)} sets", f"{len(base_union)} sets")
    col.check(prod_union == s2_all, "union of product levels",
              f"{len(s2_all)} sets", f"{len(prod_union)} sets")
    return col


# ---------------------------------------------------------------------------
# parity kernel
# ---------------------------------------------------------------------------


def _valid_composition(blocks: list[tuple[int, ...]]) -> bool:
    for i, b in enumerate(blocks):
        final = i == len(blocks) - 1
        if final:
            if len(b) > b[0]:
                return False
        elif len(b) != b[0]:
            return False
    mins = [b[0] for b in blocks]
    return len(mins) <= mins[0]


def _suite_parity_decomposition_unique(cap):
    bound = _eff(12, cap)
    col = _Collector()
    for elems in _subsets(range(1, bound + 1)):
        if not elems:
            continue
        valid = []
        n = len(elems)
        for cuts in itertools.product((0, 1), repeat=n - 1):
            blocks, start = [], 0
            for i, c in enumerate(cuts, start=1):
                if c:
                    blocks.append(elems[start:i])
                    start = i
            blocks.append(elems[start:])
            if _valid_composition(blocks):
                valid.append(tuple(blocks))
        is_member = member(SCHREIER_SQUARE, FinSet(elems))
        col.check(len(valid) == (1 if is_member else 0),
                  f"{FinSet(elems)}", "one composition iff member",
                  f"member={is_member}, {len(valid)} compositions")
        if is_member and valid:
            got = tuple(b.elems for b in decompose(FinSet(elems)).blocks)
            col.check(got == valid[0], f"greedy at {FinSet(elems)}",
                      valid[0], got)
    return col


def _schreier_upto(bound: int) -> list[FinSet]:
    return list(compacta.schreier_sets_upto(bound))


def _pads_for(t: FinSet, hi: int):
    """Singleton and dyadic-interval pads whose elements all exceed max t."""
    lo = t.max_or_0
    for a in range(lo + 1, hi + 1):
        yield FinSet((a,))
    a = lo + 1
    while 2 * a - 1 <= hi:
        yield interval(a, 2 * a - 1)
        a += 1


def _parity_vector(s_arr: np.ndarray, s_len: np.ndarray,
                   blocks, value_hi: int) -> np.ndarray:
    """Kernel values for many first coordinates at once.

    ``s_arr`` holds one row per set, zero-padded; ``s_len`` the true sizes.
    Must agree with the scalar kernel, and the caller spot-checks that.
    """
    hits = np.zeros(len(s_arr), dtype=np.int64)
    for i in range(min(s_arr.shape[1], len(blocks))):
        lut = np.zeros(value_hi + 1, dtype=bool)
        lut[list(blocks[i])] = True
        hits += lut[s_arr[:, i]] & (s_len > i)
    return ((hits + 1) & 1).astype(np.uint8)


def _suite_parity_local_constancy(cap):
    bound = _eff(12, cap)
    horizon = _eff(40, None if cap is None else cap * 4)
    col = _Collector()
    ss = _schreier_upto(bound)
    ts = list(_members(SCHREIER_SQUARE, bound))
    tb = {t: block_sets(t) for t in ts}

    # the kernel reads the first coordinate only inside [1..max t]
    for t in ts:
        bs = tb[t]
        mt = t.max_or_0
        seen: dict = {}
        for s in ss:
            key = s.restrict_to(mt).elems
            v = _parity_blocks(s.elems, bs)
            col.cases += 1
            if key in seen:
                if seen[key][0] != v and len(col.failures) < _MAX_RECORDED_FAILURES:
                    col.failures.append({
                        "case": f"t={t}, s={s} vs s'={seen[key][1]}",
                        "expected": str(seen[key][0]), "actual": str(v)})
            else:
                seen[key] = (v, s)

    # and the second coordinate only inside [1..max s]
    for s in ss:
        ms = s.max_or_0
        seen = {}
        for t in ts:
            key = t.restrict_to(ms).elems
            v = _parity_blocks(s.elems, tb[t])
            col.cases += 1
            if key in seen:
                if seen[key][0] != v and len(col.failures) < _MAX_RECORDED_FAILURES:
                    col.failures.append({
                        "case": f"s={s}, t={t} vs t'={seen[key][1]}",
                        "expected": str(seen[key][0]), "actual": str(v)})
            else:
                seen[key] = (v, t)

    # padding the second coordinate beyond max s never moves the kernel
    import bisect

    ss_by_max = sorted(ss, key=lambda s: s.max_or_0)
    maxes = [s.max_or_0 for s in ss_by_max]
    width = max(len(s) for s in ss_by_max)
    s_arr = np.zeros((len(ss_by_max), width), dtype=np.int64)
    s_len = np.array([len(s) for s in ss_by_max])
    for i, s in enumerate(ss_by_max):
        s_arr[i, :len(s)] = s.elems
    spot = 0
    for t in ts:
        base = _parity_vector(s_arr, s_len, tb[t], horizon)
        for pad in _pads_for(t, horizon):
            t2 = t | pad
            if not member(SCHREIER_SQUARE, t2):
                continue
            bs2 = block_sets(t2)
            cut = bisect.bisect_left(maxes, pad.min)
            padded = _parity_vector(s_arr[:cut], s_len[:cut], bs2, horizon)
            col.cases += cut
            if not np.array_equal(padded, base[:cut]):
                for i in np.nonzero(padded != base[:cut])[0]:
                    if len(col.failures) >= _MAX_RECORDED_FAILURES:
                        break
                    col.failures.append({
                        "case": f"s={ss_by_max[i]}, t={t}, pad={pad}",
                        "expected": str(base[i]), "actual": str(padded[i])})
            spot += 1
            if spot % 97 == 0 and cut:
                i = spot % cut
                want = _parity_blocks(ss_by_max[i].elems, bs2)
                col.check(padded[i] == want,
                          f"vector spot-check s={ss_by_max[i]}, t2={t2}",
                          want, int(padded[i]))
    return col


def _suite_parity_sign_formula(cap):
    bound = _eff(12, cap)
    col = _Collector()
    ss = _schreier_upto(bound)
    ts = list(_members(SCHREIER_SQUARE, bound))
    for t in ts:
        if not t:
            continue
        d = decompose(t)
        for s in ss:
            c = inner(s, d)
            col.check((c + 1) % 2 == ((-1) ** c + 1) // 2,
                      f"s={s}, t={t}", "congruent forms", c)
    return col


def _suite_parity_decompose_member(cap):
    bound = _eff(12, cap)
    col = _Collector()
    for elems in _subsets(range(1, bound + 1)):
        if not elems:
            continue
        t = FinSet(elems)
        greedy = member(SCHREIER_SQUARE, t)
        exhaustive = member_by_composition_search(SCHREIER_SQUARE, t)
        col.check(greedy == exhaustive, f"{t} membership routes",
                  exhaustive, greedy)
        try:
            d = decompose(t)
            ok = greedy and d.support == t
            col.check(ok, f"{t} decompose", "member and support preserved",
                      f"member={greedy}, support={d.support}")
        except NotInS2Error:
            col.check(not greedy, f"{t} decompose refused", "non-member",
                      f"member={greedy}")
    return col


# ---------------------------------------------------------------------------
# compacta
# ---------------------------------------------------------------------------


def _powers_schreier(top_exp: int, max_size: int) -> list[FinSet]:
    powers = [1 << e for e in range(top_exp + 1)]
    out = [EMPTY]
    for r in range(1, max_size + 1):
        for els in itertools.combinations(powers, r):
            s = FinSet(els)
            if len(s) <= s.min:
                out.append(s)
    return out


def _suite_compacta_witness_separates(cap):
    top = _eff(10, cap)
    col = _Collector()
    rows = _powers_schreier(top, 4)
    for s0, s1 in itertools.combinations(rows, 2):
        try:
            t = compacta.powers_witness(s0, s1)
        except (ValueError, AssertionError) as e:
            col.check(False, f"{s0} vs {s1}", "witness", repr(e))
            continue
        ok = member(SCHREIER_SQUARE, t)
        d = decompose(t)
        sep = parity(s0, d) != parity(s1, d)
        col.check(ok and sep, f"{s0} vs {s1}",
                  "witness in S2 and separating", f"in_S2={ok}, separates={sep}")
    return col


def _suite_compacta_witness_matrix(cap):
    top = _eff(6, cap)
    col = _Collector()
    rows = _powers_schreier(top, 4)
    cols_set = []
    seen = set()
    for s0, s1 in itertools.combinations(rows, 2):
        t = compacta.powers_witness(s0, s1)
        if t not in seen:
            seen.add(t)
            cols_set.append(t)
    m = compacta.matrix_from_sets("K", rows, cols_set)
    rep = compacta.injectivity_report(m)
    col.check(rep.all_distinct, f"{len(rows)} rows x {len(cols_set)} witnesses",
              "pairwise distinct rows",
              f"{len(rep.collision_classes)} collision classes")
    col.cases = len(rows) * (len(rows) - 1) // 2
    return col


def _suite_compacta_matrix_determinism(cap):
    import os

    col = _Collector()
    outputs = []
    for workers in ("1", "4"):
        old = os.environ.get("SCHREIER_KIT_THREADS")
        os.environ["SCHREIER_KIT_THREADS"] = workers
        try:
            m1 = compacta.build_matrix("K", 2, All(), _eff(8, cap), _eff(8, cap))
            m2 = compacta.build_matrix("L", "w", Powers(2),
                                       _eff(16, cap), _eff(16, cap))
            outputs.append((compacta.to_csv(m1), compacta.to_pbm(m1),
                            compacta.to_csv(m2), compacta.to_pbm(m2)))
        finally:
            if old is None:
                del os.environ["SCHREIER_KIT_THREADS"]
            else:
                os.environ["SCHREIER_KIT_THREADS"] = old
    col.check(outputs[0] == outputs[1], "workers 1 vs 4",
              "identical bytes", "diverged")
    col.cases = sum(len(x) for x in outputs[0])
    return col


def _suite_compacta_search_bound(cap):
    t_bound = _eff(10, cap)
    s_bound = min(22, 2 * t_bound + 2)
    col = _Collector()
    ts = [t for t in _members(SCHREIER_SQUARE, t_bound)]
    for t0, t1 in itertools.combinations(ts, 2):
        s = compacta.distinguishing_search(t0, t1, s_bound)
        col.check(s is not None, f"{t0} vs {t1}",
                  f"separator within {s_bound}", "none found")
    return col


# ---------------------------------------------------------------------------
# averaging trees
# ---------------------------------------------------------------------------


def _chain_supports(bound: int, max_size: int) -> list[FinSet]:
    out = []
    for r in range(1, max_size + 1):
        out.extend(FinSet(e) for e in itertools.combinations(
            range(1, bound + 1), r))
    return out


def _suite_averaging_level_parity(cap):
    bound = _eff(7, cap)
    seeds = _eff(100, cap)
    col = _Collector()
    gens = [averaging.CanonicalBlocks()]
    gens += [averaging.SeededBlocks(seed) for seed in range(1, seeds + 1)]
    supports = _chain_supports(bound, 4)
    for gen in gens:
        for s in supports:
            chain = averaging.build_chain(4, s, gen)
            for j in range(chain.depth + 1):
                pre = chain.prefix(j)
                got = averaging.self_pairing(pre)
                want = Fraction(1 if j % 2 == 0 else 0)
                col.check(got == want,
                          f"{gen.describe()} s={s} level {j}", want, got)
    return col


def _suite_averaging_cancellation(cap):
    bound = _eff(9, cap)
    m_hi = _eff(12, cap)
    seeds = _eff(100, cap)
    col = _Collector()
    gens = [averaging.CanonicalBlocks()]
    gens += [averaging.SeededBlocks(seed) for seed in range(1, seeds + 1)]
    empty_chain = averaging.build_chain(1, EMPTY)
    base = averaging.evaluate(averaging.union_functional(empty_chain),
                              averaging.block_average(empty_chain))
    col.check(base == 1, "empty functional on empty average", 1, base)
    for n in range(1, 5):
        supports = [EMPTY] + _chain_supports(bound, n - 1)
        for s in supports:
            for gen in gens:
                chain = averaging.build_chain(n, s, gen)
                for m in range(s.max_or_0 + 1, m_hi + 1):
                    try:
                        got = averaging.cancellation_value(chain, m)
                    except AssertionError as e:
                        col.check(False, f"n={n} s={s} m={m} {gen.describe()}",
                                  f"(-1)^{len(s)}", repr(e))
                        continue
                    want = Fraction(-1) ** len(s)
                    col.check(got == want,
                              f"n={n} s={s} m={m} {gen.describe()}", want, got)
    return col


def _suite_averaging_parity_table(cap):
    bound = _eff(6, cap)
    col = _Collector()
    gens = [averaging.CanonicalBlocks(),
            averaging.SeededBlocks(7), averaging.SeededBlocks(99)]
    for n in range(1, 4):
        supports = [EMPTY] + _chain_supports(bound, n - 1)
        for s in supports:
            for gen in gens:
                chain = averaging.build_chain(n, s, gen)
                m = s.max_or_0 + 1
                ext = chain.extend(m)
                if (averaging.block_average(ext).index_count > 10_000):
                    continue
                k = chain.depth
                t1 = averaging.union_functional(ext)
                t0 = averaging.union_functional(chain)
                b1 = block_sets(t1.decomposition) if t1.decomposition else ()
                b0 = block_sets(t0.decomposition) if t0.decomposition else ()
                want_v = 1 if k % 2 == 0 else 0
                for v in averaging.block_average(chain).indices():
                    got0 = _parity_blocks(v.elems, b0)
                    got1 = _parity_blocks(v.elems, b1)
                    col.check(got0 == want_v and got1 == want_v,
                              f"n={n} s={s} v={v} {gen.describe()}",
                              want_v, (got0, got1))
                want_w = 1 if k % 2 == 1 else 0
                for w in averaging.block_average(ext).indices():
                    got = _parity_blocks(w.elems, b1)
                    col.check(got == want_w,
                              f"n={n} s={s} w={w} {gen.describe()}",
                              want_w, got)
    return col


def _suite_averaging_evaluator_equivalence(cap):
    trials = _eff(200, None if cap is None else cap * 16)
    col = _Collector()
    rng = random.Random(90125)
    done = 0
    attempt = 0
    while done < trials:
        attempt += 1
        n = rng.randrange(1, 5)
        size_v = rng.randrange(0, n + 1)
        size_f = rng.randrange(0, n + 1)
        sv = FinSet.of(rng.sample(range(1, 10), size_v))
        sf = FinSet.of(rng.sample(range(1, 10), size_f))
        gen_v = averaging.SeededBlocks(rng.randrange(1, 10 ** 6))
        gen_f = averaging.SeededBlocks(rng.randrange(1, 10 ** 6))
        v = averaging.block_average(averaging.build_chain(n, sv, gen_v))
        if v.index_count > 10_000:
            continue
        f = averaging.union_functional(averaging.build_chain(n, sf, gen_f))
        fast = averaging.evaluate(f, v)
        slow = averaging.evaluate_enumerated(f, v)
        col.check(fast == slow,
                  f"n={n} v-blocks={[str(b) for b in v.blocks]} "
                  f"f={f.support}", slow, fast)
        done += 1
        if attempt > trials * 50:
            col.check(False, "generation", "enough small cases", "starved")
            break
    return col


def _suite_averaging_convexity(cap):
    bound = _eff(6, cap)
    col = _Collector()
    for n in (2, 3):
        for s in _chain_supports(bound, n):
            chain = averaging.build_chain(n, s, averaging.SeededBlocks(5))
            v = averaging.block_average(chain)
            if v.index_count > 10_000:
                continue
            table = v.explicit()
            total = sum(table.values(), Fraction(0))
            ok = (len(table) == v.index_count
                  and all(w > 0 for w in table.values()) and total == 1)
            col.check(ok, f"n={n} s={s}", "positive weights summing to 1",
                      f"count={len(table)}, sum={total}")
    return col


# ---------------------------------------------------------------------------
# cli
# ---------------------------------------------------------------------------


def _capture_cli(argv: list[str]) -> tuple[int, str]:
    import contextlib
    import io

    from . import cli

    out = io.StringIO()
    err = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = cli.main(argv)
    return code, out.getvalue()


def _suite_cli_byte_determinism(cap):
    import os

    col = _Collector()
    commands = [
        ["compacta", "matrix", "--mode", "K", "--alpha", "2",
         "--rows", str(_eff(7, cap)), "--cols", str(_eff(7, cap)),
         "--format", "csv"],
        ["fam", "enum", "restrict(schreier, powers(2))",
         "--max", str(_eff(16, cap))],
        ["theta", "eval", "--s", "{2,5,8}", "--t", "{2,3,5,8,9}"],
        ["verify", "--suite", "finset.interval_structure", "--max", "6"],
    ]
    for argv in commands:
        outputs = []
        for workers in ("1", "4"):
            old = os.environ.get("SCHREIER_KIT_THREADS")
            os.environ["SCHREIER_KIT_THREADS"] = workers
            try:
                outputs.append(_capture_cli(list(argv)))
                outputs.append(_capture_cli(list(argv)))
            finally:
                if old is None:
                    del os.environ["SCHREIER_KIT_THREADS"]
                else:
                    os.environ["SCHREIER_KIT_THREADS"] = old
        distinct = {o for o in outputs}
        col.check(len(distinct) == 1, " ".join(argv),
                  "one output across runs and workers", f"{len(distinct)}")
    return col


def _suite_cli_coverage(cap):
    col = _Collector()
    col.check(tuple(SUITES) == EXPECTED_SUITES, "registry",
              list(EXPECTED_SUITES), list(SUITES))
    return col


# ---------------------------------------------------------------------------
# registry and runner
# ---------------------------------------------------------------------------

SUITES: dict[str, Callable] = {
    "ordinal.associativity": _suite_ordinal_associativity,
    "ordinal.left_distributivity": _suite_ordinal_distributivity,
    "ordinal.order_and_monotonicity": _suite_ordinal_order,
    "ordinal.parse_roundtrip": _suite_ordinal_roundtrip,
    "finset.precedes_transitive": _suite_precedes_transitive,
    "finset.interval_structure": _suite_interval_structure,
    "family.hereditary": _suite_family_hereditary,
    "family.tail_uniformity": _suite_family_tail_uniformity,
    "family.enumeration_agreement": _suite_family_enumeration,
    "family.rank_consistency": _suite_family_rank_consistency,
    "family.level_union": _suite_family_level_union,
    "kernel.decomposition_unique": _suite_parity_decomposition_unique,
    "kernel.local_constancy": _suite_parity_local_constancy,
    "kernel.sign_formula": _suite_parity_sign_formula,
    "kernel.decompose_member_coherence": _suite_parity_decompose_member,
    "compacta.witness_separates": _suite_compacta_witness_separates,
    "compacta.witness_matrix_injective": _suite_compacta_witness_matrix,
    "compacta.matrix_determinism": _suite_compacta_matrix_determinism,
    "compacta.search_within_bound": _suite_compacta_search_bound,
    "averaging.level_parity": _suite_averaging_level_parity,
    "averaging.cancellation_exact": _suite_averaging_cancellation,
    "averaging.parity_table": _suite_averaging_parity_table,
    "averaging.evaluator_equivalence": _suite_averaging_evaluator_equivalence,
    "averaging.convexity": _suite_averaging_convexity,
    "cli.byte_determinism": _suite_cli_byte_determinism,
    "cli.suite_coverage": _suite_cli_coverage,
}

EXPECTED_SUITES = tuple(SUITES)


def run_suite(name: str, cap: Optional[int] = None) -> VerifyReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    started = time.perf_counter()
    col = SUITES[name](cap)
    return VerifyReport(suite=name, cases=col.cases, failures=col.failures,
                        wall_time=time.perf_counter() - started)


def run_all(cap: Optional[int] = None) -> list[VerifyReport]:
    return [run_suite(name, cap) for name in SUITES]
