"""Finite labeled forests and trees with the h-preorder.

A forest is a tuple of trees; the empty tuple is the bottom element.
A tree has a label and a forest of children; the root of a tree is its
biggest element.  Labels are either colors (small non-negative ints) or,
in the iterated case, forests one level down.

F <= G in the h-preorder iff there is a monotone map from F to G whose
labels satisfy the label order pointwise: colors must coincide, nested
labels are compared recursively.
"""

from __future__ import annotations

import json
from functools import lru_cache
from typing import Iterator, Union


class ForestError(ValueError):
    """Domain error on forest inputs."""


class Tree:
    """Immutable labeled tree; hashable with a precomputed hash."""

    __slots__ = ("label", "children", "_hash")

    def __init__(self, label: "Label", children: "Forest" = ()):
        if isinstance(label, list):
            label = tuple(label)
        if not isinstance(label, (int, tuple)):
            raise ForestError(f"bad label {label!r}")
        object.__setattr__(self, "label", label)
        object.__setattr__(self, "children", tuple(children))
        object.__setattr__(self, "_hash", hash((self.label, self.children)))

    def __setattr__(self, *args):
        raise AttributeError("Tree is immutable")

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return (
            isinstance(other, Tree)
            and self._hash == other._hash
            and self.label == other.label
            and self.children == other.children
        )

    def __repr__(self):
        if not self.children:
            return f"Tree({self.label!r})"
        return f"Tree({self.label!r}, {self.children!r})"


Forest = tuple  # tuple[Tree, ...]
Label = Union[int, Forest]

EMPTY: Forest = ()


def singleton(label: Label) -> Forest:
    """The forest consisting of one labeled point (the paper's s)."""
    return (Tree(label),)


def as_forest(x) -> Forest:
    if isinstance(x, Tree):
        return (x,)
    return tuple(x)


def wrap(label: Label, forest: Forest) -> Tree:
    """Adjoin a new biggest element carrying the label (p_i / the * operation)."""
    return Tree(label, as_forest(forest))


def join(*forests: Forest) -> Forest:
    """Disjoint union of forests."""
    out: list[Tree] = []
    for f in forests:
        out.extend(as_forest(f))
    return tuple(out)


def node_count(f: Forest) -> int:
    """Number of nodes, counting nodes inside nested labels."""
    return sum(_label_size(t.label) + node_count(t.children) for t in as_forest(f))


def _label_size(label: Label) -> int:
    return 1 if isinstance(label, int) else node_count(label)


def max_color(f: Forest) -> int:
    """Largest color occurring anywhere (-1 for the empty forest)."""
    best = -1
    for t in as_forest(f):
        c = t.label if isinstance(t.label, int) else max_color(t.label)
        best = max(best, c, max_color(t.children))
    return best


def validate_forest(f: Forest, k: int) -> None:
    """Check every color is < k."""
    if max_color(f) >= k:
        raise ForestError(f"color {max_color(f)} out of range for k={k}")


def rank(f: Forest) -> int:
    """Length of the longest root chain; undefined on the empty forest."""
    f = as_forest(f)
    if not f:
        raise ForestError("rank of the empty forest is undefined")
    return max(_tree_rank(t) for t in f)


def _tree_rank(t: Tree) -> int:
    if not t.children:
        return 0
    return 1 + max(_tree_rank(c) for c in t.children)


# ---------------------------------------------------------------------------
# h-preorder


def label_leq(a: Label, b: Label) -> bool:
    if isinstance(a, int) and isinstance(b, int):
        return a == b
    return h_leq(_lift(a), _lift(b))


def label_equiv(a: Label, b: Label) -> bool:
    return label_leq(a, b) and label_leq(b, a)


def _lift(label: Label) -> Forest:
    return singleton(label) if isinstance(label, int) else label


def h_leq(f: Forest, g: Forest) -> bool:
    """True iff a monotone label-respecting map from f into g exists."""
    f, g = as_forest(f), as_forest(g)
    return all(any(tree_leq(s, t) for t in g) for s in f)


def h_equiv(f: Forest, g: Forest) -> bool:
    return h_leq(f, g) and h_leq(g, f)


@lru_cache(maxsize=None)
def tree_leq(s: Tree, t: Tree) -> bool:
    """s <= t for trees: s embeds with its root at some node of t."""
    return _embeds_at_root(s, t) or any(tree_leq(s, c) for c in t.children)


@lru_cache(maxsize=None)
def _embeds_at_root(s: Tree, t: Tree) -> bool:
    if not label_leq(s.label, t.label):
        return False
    return all(tree_leq(c, t) for c in s.children)


# ---------------------------------------------------------------------------
# canonical form


def sort_key(t: Tree):
    lk = (0, t.label) if isinstance(t.label, int) else (1, tuple(sorted(sort_key(c) for c in t.label)))
    return (lk, tuple(sorted(sort_key(c) for c in t.children)))


def normalize_label(label: Label) -> Label:
    """Canonical label: singleton color forests collapse to the color itself."""
    if isinstance(label, int):
        return label
    norm = normalize(label)
    if len(norm) == 1 and isinstance(norm[0].label, int) and not norm[0].children:
        return norm[0].label
    return norm


def normalize(f: Forest) -> Forest:
    """Canonical representative of the h-equivalence class.

    Removes components subsumed by siblings, contracts children whose label
    is h-equivalent to their parent's, recursively minimizes labels, and
    sorts components by a structural key.  Idempotent.
    """
    trees = [_normalize_tree(t) for t in as_forest(f)]
    return _dedupe(trees)


def _dedupe(trees: list[Tree]) -> Forest:
    """One representative per equivalence class, maximal classes only, sorted."""
    classes: list[list[Tree]] = []
    for s in set(trees):
        for cls in classes:
            if tree_leq(s, cls[0]) and tree_leq(cls[0], s):
                cls.append(s)
                break
        else:
            classes.append([s])
    reps = [min(cls, key=sort_key) for cls in classes]
    kept = [s for s in reps if not any(tree_leq(s, t) and not tree_leq(t, s) for t in reps)]
    return tuple(sorted(kept, key=sort_key))


def _normalize_tree(t: Tree) -> Tree:
    label = normalize_label(t.label)
    kids = list(normalize(t.children))
    while True:
        spliced: list[Tree] = []
        changed = False
        for c in kids:
            if label_equiv(c.label, label):
                spliced.extend(c.children)
                changed = True
            else:
                spliced.append(c)
        kids = spliced
        if not changed:
            break
    return Tree(label, _dedupe(kids))


def tree_components(f: Forest) -> tuple:
    """Top-level trees of the forest."""
    return as_forest(f)


def is_join_irreducible(f: Forest) -> bool:
    return len(normalize(f)) == 1


# ---------------------------------------------------------------------------
# meet

# The infimum in the lattice of forests-with-bottom.  The recursion below is
# not in any reference; it is validated against a brute-force glb oracle over
# the exhaustively enumerated small-forest universe.


def meet(f: Forest, g: Forest) -> Forest:
    f, g = normalize(f), normalize(g)
    return normalize(join(*(meet_trees(s, t) for s in f for t in g)))


@lru_cache(maxsize=None)
def meet_trees(s: Tree, t: Tree) -> Forest:
    if tree_leq(s, t):
        return (s,)
    if tree_leq(t, s):
        return (t,)
    parts: list[Forest] = []
    m = label_meet(s.label, t.label)
    if m is not None:
        parts.append((Tree(m, meet(s.children, t.children)),))
    parts.append(_meet_tree_forest(s, t.children))
    parts.append(_meet_tree_forest(t, s.children))
    return normalize(join(*parts))


def _meet_tree_forest(s: Tree, g: Forest) -> Forest:
    return join(*(meet_trees(s, t) for t in g))


def label_meet(a: Label, b: Label) -> Label | None:
    """Greatest lower bound of two labels, or None when only bottom is below both."""
    if isinstance(a, int) and isinstance(b, int):
        return a if a == b else None
    m = meet(_lift(a), _lift(b))
    if not m:
        return None
    return normalize_label(m)


# ---------------------------------------------------------------------------
# JSON interchange: {"label": int | [tree...], "children": [tree...]}


def forest_to_json(f: Forest) -> list:
    return [tree_to_json(t) for t in as_forest(f)]


def tree_to_json(t: Tree) -> dict:
    label = t.label if isinstance(t.label, int) else forest_to_json(t.label)
    return {"label": label, "children": forest_to_json(t.children)}


def forest_from_json(data) -> Forest:
    if not isinstance(data, list):
        raise ForestError("forest JSON must be an array of trees")
    return tuple(tree_from_json(item) for item in data)


def tree_from_json(data) -> Tree:
    if not isinstance(data, dict) or "label" not in data:
        raise ForestError("tree JSON must be an object with a 'label'")
    label = data["label"]
    if isinstance(label, list):
        label = forest_from_json(label)
    elif not isinstance(label, int):
        raise ForestError(f"bad label {label!r}")
    return Tree(label, forest_from_json(data.get("children", [])))


def dumps(f: Forest) -> str:
    return json.dumps(forest_to_json(f))


def loads(text: str) -> Forest:
    return forest_from_json(json.loads(text))
