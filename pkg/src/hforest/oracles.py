"""Brute-force oracles and exhaustive corpus enumeration.

Everything here recomputes results from first principles (enumerating all
maps, all candidate bounds, all posets) so the optimized implementations
can be validated against an independent authority.
"""

from __future__ import annotations

from functools import lru_cache

from .forest import EMPTY, Forest, Tree, node_count, normalize, sort_key
from .nested import flatten, morphism_exists, nesting_level
from .space import FiniteSpace


# ---------------------------------------------------------------------------
# corpus enumeration


@lru_cache(maxsize=None)
def flat_trees(nodes: int, k: int) -> tuple:
    """All flat trees with exactly `nodes` nodes, children canonically sorted."""
    if nodes < 1:
        return ()
    return tuple(
        Tree(color, f)
        for color in range(k)
        for f in flat_forests_exact(nodes - 1, k)
    )


@lru_cache(maxsize=None)
def flat_forests_exact(nodes: int, k: int) -> tuple:
    """All flat forests with exactly `nodes` nodes, one order per multiset."""
    if nodes == 0:
        return (EMPTY,)
    out = []
    trees_by_size = {m: sorted(flat_trees(m, k), key=sort_key) for m in range(1, nodes + 1)}

    def extend(prefix: tuple, remaining: int, min_size: int, min_index: int):
        if remaining == 0:
            out.append(prefix)
            return
        for size in range(min_size, remaining + 1):
            pool = trees_by_size[size]
            start = min_index if size == min_size else 0
            for idx in range(start, len(pool)):
                extend(prefix + (pool[idx],), remaining - size, size, idx)

    extend((), nodes, 1, 0)
    return tuple(out)


def flat_forests(max_nodes: int, k: int, include_empty: bool = True) -> list:
    out = [EMPTY] if include_empty else []
    for n in range(1, max_nodes + 1):
        out.extend(flat_forests_exact(n, k))
    return out


@lru_cache(maxsize=None)
def nested_trees(nodes: int, k: int, level: int) -> tuple:
    """Trees of nesting level <= level with `nodes` flattened elements."""
    if nodes < 1:
        return ()
    labels: list = []
    labels.extend((1, c) for c in range(k))
    if level >= 2:
        for size in range(1, nodes + 1):
            for f in nested_forests_exact(size, k, level - 1):
                # skip singleton color forests: identified with the color
                if f and not (
                    len(f) == 1
                    and isinstance(f[0].label, int)
                    and not f[0].children
                ):
                    labels.append((size, f))
    out = []
    for label_size, label in labels:
        for f in nested_forests_exact(nodes - label_size, k, level):
            out.append(Tree(label, f))
    return tuple(out)


@lru_cache(maxsize=None)
def nested_forests_exact(nodes: int, k: int, level: int) -> tuple:
    if nodes == 0:
        return (EMPTY,)
    out = []
    trees_by_size = {
        m: sorted(nested_trees(m, k, level), key=sort_key)
        for m in range(1, nodes + 1)
    }

    def extend(prefix: tuple, remaining: int, min_size: int, min_index: int):
        if remaining == 0:
            out.append(prefix)
            return
        for size in range(min_size, remaining + 1):
            pool = trees_by_size[size]
            start = min_index if size == min_size else 0
            for idx in range(start, len(pool)):
                extend(prefix + (pool[idx],), remaining - size, size, idx)

    extend((), nodes, 1, 0)
    return tuple(out)


def nested_forests(max_nodes: int, k: int, level: int,
                   include_empty: bool = True) -> list:
    out = [EMPTY] if include_empty else []
    for n in range(1, max_nodes + 1):
        out.extend(nested_forests_exact(n, k, level))
    return out


def normalized_corpus(forests) -> list:
    """Distinct normal forms of the given forests."""
    seen = set()
    out = []
    for f in forests:
        n = normalize(f)
        if n not in seen:
            seen.add(n)
            out.append(n)
    return out


# ---------------------------------------------------------------------------
# map-enumeration oracle for the h-preorder


def oracle_h_leq(f: Forest, g: Forest) -> bool:
    """Backtracking enumeration of label-respecting layer-monotone maps.

    Works through the flattened presentation, so nested labels are handled
    by the same element-map search rather than by the recursive h_leq.
    """
    if not f:
        return True
    if not g:
        return False
    depth = max(nesting_level(f), nesting_level(g), 1)
    return morphism_exists(flatten(f, depth), flatten(g, depth))


# ---------------------------------------------------------------------------
# bound oracles over an enumerated universe


class BoundOracle:
    """Least-upper/greatest-lower bound checks over a fixed corpus.

    Rows of the order matrix are int bitsets over corpus indices, so the
    bound checks are a few word operations per candidate.
    """

    def __init__(self, corpus, leq):
        self.corpus = list(corpus)
        self.index = {f: i for i, f in enumerate(self.corpus)}
        n = len(self.corpus)
        self.below = [0] * n  # below[i]: bitset of j with corpus[j] <= corpus[i]
        self.above = [0] * n
        for i in range(n):
            for j in range(n):
                if leq(self.corpus[j], self.corpus[i]):
                    self.below[i] |= 1 << j
                    self.above[j] |= 1 << i

    def is_glb(self, m: Forest, f: Forest, g: Forest) -> bool:
        im, i, j = self.index[m], self.index[f], self.index[g]
        common = self.below[i] & self.below[j]
        return bool(common & (1 << im)) and common & ~self.below[im] == 0

    def is_lub(self, m: Forest, f: Forest, g: Forest) -> bool:
        im, i, j = self.index[m], self.index[f], self.index[g]
        common = self.above[i] & self.above[j]
        return bool(common & (1 << im)) and common & ~self.above[im] == 0


# ---------------------------------------------------------------------------
# poset enumeration


def all_posets(n: int) -> list:
    """Every labeled partial order on n points."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    out = []
    for bits in range(1 << len(pairs)):
        up = [1 << i for i in range(n)]
        for idx, (i, j) in enumerate(pairs):
            if bits >> idx & 1:
                up[i] |= 1 << j
        if _is_partial_order(n, up):
            out.append(FiniteSpace(n, tuple(up)))
    return out


def _is_partial_order(n: int, up) -> bool:
    for i in range(n):
        for j in range(n):
            if i != j and up[i] >> j & 1:
                if up[j] >> i & 1:
                    return False
                if up[j] & ~up[i]:
                    return False
    return True


def all_posets_up_to(max_points: int) -> list:
    return [p for n in range(1, max_points + 1) for p in all_posets(n)]
