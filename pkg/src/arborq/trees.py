"""Canonical unlabeled rooted trees and their combinatorics.

Trees are interned in a process-global table and referenced by dense integer
ids.  The canonical encoding of a tree is "(" + the encodings of its children
in shortlex order + ")", so two trees are isomorphic exactly when their
encodings are equal.  Heights count vertices: a single vertex has height 1.

Besides enumeration, automorphism counts and statistics, this module holds
the pruning combinatorics the insertion product runs on: leaf-subset pruning
(grouped with binomial multiplicities) and root-subtree decompositions.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement, product

from .algebra import QPoly, QRat, q_int_poly


def _shortlex(s: str):
    return (len(s), s)


@dataclass(frozen=True)
class Tree:
    """One interned isomorphism class of unlabeled rooted trees."""

    tid: int
    children: tuple[int, ...]
    size: int
    height: int
    encoding: str


class TreeTable:
    """Insert-only interning table; ids are stable for the process lifetime."""

    def __init__(self):
        self._lock = threading.Lock()
        self._by_encoding: dict[str, int] = {}
        self._trees: list[Tree] = []
        self._by_size: dict[int, tuple[int, ...]] = {}

    def intern(self, children_ids: tuple[int, ...]) -> int:
        enc = "(" + "".join(self._trees[c].encoding for c in children_ids) + ")"
        tid = self._by_encoding.get(enc)
        if tid is not None:
            return tid
        with self._lock:
            tid = self._by_encoding.get(enc)
            if tid is not None:
                return tid
            size = 1 + sum(self._trees[c].size for c in children_ids)
            height = 1 + max((self._trees[c].height for c in children_ids), default=0)
            tid = len(self._trees)
            self._trees.append(Tree(tid, children_ids, size, height, enc))
            self._by_encoding[enc] = tid
            return tid

    def tree(self, tid: int) -> Tree:
        return self._trees[tid]

    def of_size(self, n: int) -> tuple[int, ...]:
        cached = self._by_size.get(n)
        if cached is not None:
            return cached
        if n < 1:
            raise ValueError("tree size must be >= 1")
        if n == 1:
            ids: list[int] = [self.intern(())]
        else:
            ids = []
            for part in _partitions(n - 1):
                groups: list[tuple[int, int]] = []
                for s in sorted(set(part), reverse=True):
                    groups.append((s, part.count(s)))
                pools = [
                    list(combinations_with_replacement(self.of_size(s), k))
                    for s, k in groups
                ]
                for choice in product(*pools):
                    kids: list[int] = []
                    for combo in choice:
                        kids.extend(combo)
                    ids.append(b_plus(kids))
            ids = sorted(set(ids), key=lambda t: self._trees[t].encoding)
        out = tuple(ids)
        self._by_size[n] = out
        return out


_TABLE = TreeTable()


@lru_cache(maxsize=None)
def _partitions(m: int) -> tuple[tuple[int, ...], ...]:
    """Weakly decreasing partitions of m (m >= 0)."""
    if m == 0:
        return ((),)
    out = []
    for first in range(m, 0, -1):
        for rest in _partitions(m - first):
            if not rest or first >= rest[0]:
                out.append((first,) + rest)
    return tuple(out)


def tree(tid: int) -> Tree:
    return _TABLE.tree(tid)


def size(tid: int) -> int:
    return _TABLE.tree(tid).size


def height(tid: int) -> int:
    return _TABLE.tree(tid).height


def encoding(tid: int) -> str:
    return _TABLE.tree(tid).encoding


def children(tid: int) -> tuple[int, ...]:
    return _TABLE.tree(tid).children


def tree_sort_key(tid: int):
    return _shortlex(_TABLE.tree(tid).encoding)


def leaf() -> int:
    """The one-vertex tree."""
    return _TABLE.intern(())


def b_plus(child_ids) -> int:
    """Graft the given trees onto a fresh common root."""
    kids = tuple(sorted(child_ids, key=tree_sort_key))
    return _TABLE.intern(kids)


def crl(n: int) -> int:
    """Corolla: a root carrying n leaf children."""
    return b_plus([leaf()] * n)


def lnr(n: int) -> int:
    """Linear tree: the path on n vertices rooted at one end."""
    t = leaf()
    for _ in range(n - 1):
        t = b_plus([t])
    return t


def parse(enc: str) -> int:
    """Parse a parenthesis encoding (the wire format) into a canonical tree."""
    pos = 0

    def node() -> int:
        nonlocal pos
        if pos >= len(enc) or enc[pos] != "(":
            raise ValueError(f"malformed tree encoding at position {pos}: {enc!r}")
        pos += 1
        kids = []
        while pos < len(enc) and enc[pos] == "(":
            kids.append(node())
        if pos >= len(enc) or enc[pos] != ")":
            raise ValueError(f"malformed tree encoding at position {pos}: {enc!r}")
        pos += 1
        return b_plus(kids)

    t = node()
    if pos != len(enc):
        raise ValueError(f"trailing characters in tree encoding: {enc!r}")
    return t


def canonicalize(expr) -> int:
    """Build a tree from a nested-children description.

    Accepts an encoding string, a tree id (int), or a nested sequence where
    each node is the list of its children, e.g. [] is the single vertex and
    [[], [[]]] grafts a leaf and a 2-chain on a root.
    """
    if isinstance(expr, str):
        return parse(expr)
    if isinstance(expr, int):
        return expr
    if isinstance(expr, (list, tuple)):
        return b_plus([canonicalize(c) for c in expr])
    raise ValueError(f"malformed tree description: {expr!r}")


def enumerate_trees(n: int) -> tuple[int, ...]:
    """All isomorphism classes with n vertices, sorted by encoding."""
    return _TABLE.of_size(n)


# ---------------------------------------------------------------------------
# Automorphisms and statistics

_AUT: dict[int, int] = {}


def aut_order(tid: int) -> int:
    """Order of the automorphism group: product over vertices of the
    factorials of the multiplicities of identical child subtrees."""
    cached = _AUT.get(tid)
    if cached is not None:
        return cached
    out = 1
    kids = children(tid)
    i = 0
    while i < len(kids):
        j = i
        while j < len(kids) and kids[j] == kids[i]:
            j += 1
        mult = j - i
        out *= math.factorial(mult) * aut_order(kids[i]) ** mult
        i = j
    _AUT[tid] = out
    return out


def parent_array(tid: int) -> list[int]:
    """Parents of the canonical representative in preorder (root first,
    parent[0] == -1, children visited in canonical order)."""
    parents = [-1]

    def walk(t: int, at: int):
        for c in children(t):
            parents.append(at)
            walk(c, len(parents) - 1)

    walk(tid, 0)
    return parents


@dataclass(frozen=True)
class TreeStats:
    height: int
    leaf_count: int
    leaf_positions: tuple[int, ...]
    height_histogram: dict[int, int]
    subtree_sizes: tuple[int, ...]


_STATS: dict[int, TreeStats] = {}


def tree_stats(tid: int) -> TreeStats:
    cached = _STATS.get(tid)
    if cached is not None:
        return cached
    parents = parent_array(tid)
    n = len(parents)
    depth = [0] * n
    for v in range(1, n):
        depth[v] = depth[parents[v]] + 1
    has_child = [False] * n
    for v in range(1, n):
        has_child[parents[v]] = True
    leaves = tuple(v for v in range(n) if not has_child[v])
    hist: dict[int, int] = {}
    for v in range(n):
        h = depth[v] + 1
        hist[h] = hist.get(h, 0) + 1
    sub = [1] * n
    for v in range(n - 1, 0, -1):
        sub[parents[v]] += sub[v]
    st = TreeStats(
        height=max(depth) + 1,
        leaf_count=len(leaves),
        leaf_positions=leaves,
        height_histogram=hist,
        subtree_sizes=tuple(sorted(sub)),
    )
    _STATS[tid] = st
    return st


def q_factorial(tid: int) -> QRat:
    """The q-analog of the tree factorial, with the q^(-sum of subtree sizes)
    normalization; at q=1 it reduces to the product of subtree sizes."""
    sizes = tree_stats(tid).subtree_sizes
    num = QPoly((1,))
    for s in sizes:
        num = num * q_int_poly(s)
    return QRat(num, QPoly.q_power(sum(sizes)))


# ---------------------------------------------------------------------------
# Pruning combinatorics

# options for a subtree hanging inside a larger tree:
#   (resulting class or None, number of removed leaves) -> count
_PRUNE: dict[int, dict[tuple[int | None, int], int]] = {}


def _prune_options(tid: int) -> dict[tuple[int | None, int], int]:
    cached = _PRUNE.get(tid)
    if cached is not None:
        return cached
    kids = children(tid)
    if not kids:
        out: dict[tuple[int | None, int], int] = {(tid, 0): 1, (None, 1): 1}
    else:
        # survivors-multiset x removed-count accumulator over grouped children
        acc: dict[tuple[tuple[int, ...], int], int] = {((), 0): 1}
        i = 0
        while i < len(kids):
            j = i
            while j < len(kids) and kids[j] == kids[i]:
                j += 1
            opts = _prune_options(kids[i])
            for _ in range(j - i):
                nxt: dict[tuple[tuple[int, ...], int], int] = {}
                for (surv, rem), c1 in acc.items():
                    for (res, dr), c2 in opts.items():
                        ns = surv if res is None else tuple(
                            sorted(surv + (res,), key=tree_sort_key)
                        )
                        key = (ns, rem + dr)
                        nxt[key] = nxt.get(key, 0) + c1 * c2
                acc = nxt
            i = j
        out = {}
        for (surv, rem), c in acc.items():
            key = (b_plus(surv), rem)
            out[key] = out.get(key, 0) + c
    _PRUNE[tid] = out
    return out


def prune_leaf_subsets(tid: int, proper_only: bool = False) -> dict[tuple[int, int], int]:
    """Classes of T minus a subset of its leaves, keyed by (class, |subset|).

    Identical sibling leaves are grouped with binomial multiplicities, so the
    cost stays polynomial in the corolla width.  Removing the root (the
    single-vertex tree's only leaf) is excluded; with proper_only the empty
    subset is excluded as well.
    """
    out = {
        (res, rem): c
        for (res, rem), c in _prune_options(tid).items()
        if res is not None
    }
    if proper_only:
        out = {k: c for k, c in out.items() if k[1] > 0}
    return out


# root-containing subtree decompositions:
#   (kept class, multiset of complement component classes) -> count
_DECOMP: dict[int, dict[tuple[int, tuple[int, ...]], int]] = {}


def root_subtree_decompositions(tid: int) -> dict[tuple[int, tuple[int, ...]], int]:
    """All root-containing vertex subsets of the canonical representative,
    as (kept class, sorted multiset of complement component classes) with
    multiplicities.  Enumeration is per child: cut the whole child subtree,
    or keep its root and recurse."""
    cached = _DECOMP.get(tid)
    if cached is not None:
        return cached
    kids = children(tid)
    acc: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {((), ()): 1}
    i = 0
    while i < len(kids):
        j = i
        while j < len(kids) and kids[j] == kids[i]:
            j += 1
        child = kids[i]
        opts: dict[tuple[int | None, tuple[int, ...]], int] = {(None, (child,)): 1}
        for (kept, comps), c in root_subtree_decompositions(child).items():
            key = (kept, comps)
            opts[key] = opts.get(key, 0) + c
        for _ in range(j - i):
            nxt: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {}
            for (kept_kids, comps), c1 in acc.items():
                for (kept, dcomps), c2 in opts.items():
                    nk = kept_kids if kept is None else tuple(
                        sorted(kept_kids + (kept,), key=tree_sort_key)
                    )
                    nc = tuple(sorted(comps + dcomps, key=tree_sort_key))
                    key2 = (nk, nc)
                    nxt[key2] = nxt.get(key2, 0) + c1 * c2
            acc = nxt
        i = j
    out: dict[tuple[int, tuple[int, ...]], int] = {}
    for (kept_kids, comps), c in acc.items():
        key3 = (b_plus(kept_kids), comps)
        out[key3] = out.get(key3, 0) + c
    _DECOMP[tid] = out
    return out


# ---------------------------------------------------------------------------
# Partition-shaped trees and vertex covers


def partition_tree(lam) -> int:
    """Graft linear trees of the partition's part sizes on a common root."""
    parts = list(lam)
    if any(p < 1 for p in parts):
        raise ValueError("partition parts must be positive")
    return b_plus([lnr(p) for p in parts])


@dataclass(frozen=True)
class CoverInfo:
    cover_size: int
    root_in_some: bool
    root_in_none: bool


_COVER: dict[int, tuple[int, int]] = {}


def _cover_dp(tid: int) -> tuple[int, int]:
    """(min cover size with root included, min size with root excluded)."""
    cached = _COVER.get(tid)
    if cached is not None:
        return cached
    incl, excl = 1, 0
    for c in children(tid):
        ci, ce = _cover_dp(c)
        incl += min(ci, ce)
        excl += ci
    _COVER[tid] = (incl, excl)
    return incl, excl


def min_vertex_covers_root(tid: int) -> CoverInfo:
    """Minimum vertex cover size and whether any minimum cover contains the
    root; the two booleans are complementary by construction."""
    incl, excl = _cover_dp(tid)
    best = min(incl, excl)
    return CoverInfo(best, incl == best, incl != best)
