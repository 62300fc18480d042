"""Finite T0 spaces, bases, and difference/fine hierarchies of k-partitions.

A finite T0 space is a finite poset carrying the topology whose opens are
the up-sets; continuous maps are exactly the monotone ones.  Subsets are
int bitmasks.  A base is a family of subsets closed under union and
intersection that contains the empty set; an omega-base is a sequence of
bases, each containing the previous one and its complements.

A k-partition is defined by a family of base sets indexed by the nodes of
a forest (flat case) or by tuples of nodes walking through nested labels
(fine-hierarchy case): the "new part" of a node's set is what remains
after subtracting the sets of all strictly smaller nodes, and the colors
of the nodes whose new parts contain a point determine its class.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from .forest import (
    Forest,
    ForestError,
    Tree,
    as_forest,
    h_equiv,
    h_leq,
    normalize,
    rank,
)
from .nested import nesting_level

SOFT_POINT_LIMIT = 5
SOFT_COLOR_LIMIT = 4


class SpaceError(ValueError):
    """Domain error on space, base, partition or family inputs."""


# ---------------------------------------------------------------------------
# spaces


@dataclass(frozen=True)
class FiniteSpace:
    """Finite poset; up[i] is the bitmask of points j with i <= j."""

    n: int
    up: tuple

    def __post_init__(self):
        for i in range(self.n):
            if not self.up[i] & (1 << i):
                raise SpaceError("order must be reflexive")
            for j in range(self.n):
                if i != j and self.up[i] & (1 << j) and self.up[j] & (1 << i):
                    raise SpaceError(f"points {i} and {j} violate antisymmetry")
                if self.up[i] & (1 << j) and self.up[j] & ~self.up[i]:
                    raise SpaceError("order must be transitive")

    @staticmethod
    def from_pairs(n: int, pairs) -> "FiniteSpace":
        """Build from a list of i <= j pairs; reflexive-transitive closure taken."""
        up = [1 << i for i in range(n)]
        for i, j in pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise SpaceError(f"pair ({i}, {j}) out of range")
            up[i] |= 1 << j
        changed = True
        while changed:
            changed = False
            for i in range(n):
                reach = up[i]
                for j in range(n):
                    if reach & (1 << j):
                        reach |= up[j]
                if reach != up[i]:
                    up[i] = reach
                    changed = True
        return FiniteSpace(n, tuple(up))

    @staticmethod
    def from_json(data) -> "FiniteSpace":
        if not isinstance(data, dict) or "points" not in data:
            raise SpaceError("space JSON must have 'points' and 'le'")
        return FiniteSpace.from_pairs(data["points"], data.get("le", []))

    def to_json(self) -> dict:
        pairs = [
            [i, j]
            for i in range(self.n)
            for j in range(self.n)
            if i != j and self.leq(i, j)
        ]
        return {"points": self.n, "le": pairs}

    def leq(self, i: int, j: int) -> bool:
        return bool(self.up[i] & (1 << j))

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def is_upset(self, mask: int) -> bool:
        return all(
            self.up[i] & ~mask == 0 for i in range(self.n) if mask & (1 << i)
        )


def chain_space(n: int) -> FiniteSpace:
    """The n-point chain 0 < 1 < ... < n-1."""
    return FiniteSpace.from_pairs(n, [(i, i + 1) for i in range(n - 1)])


def antichain_space(n: int) -> FiniteSpace:
    return FiniteSpace.from_pairs(n, [])


def diamond_space() -> FiniteSpace:
    """Two bottoms (0, 1) below two tops (2, 3)."""
    return FiniteSpace.from_pairs(4, [(0, 2), (0, 3), (1, 2), (1, 3)])


def check_size_guard(n_points: int, k: int, override: bool = False) -> None:
    if override:
        return
    if n_points > SOFT_POINT_LIMIT or k > SOFT_COLOR_LIMIT:
        raise SpaceError(
            f"{n_points} points / {k} colors exceeds the soft limit "
            f"({SOFT_POINT_LIMIT} points, {SOFT_COLOR_LIMIT} colors); "
            "pass override to proceed"
        )


# ---------------------------------------------------------------------------
# bases


Base = frozenset  # frozenset[int]


def close_base(seed, n_points: int) -> Base:
    """Least family containing seed closed under union and intersection, with 0."""
    full = (1 << n_points) - 1
    family = {0}
    for s in seed:
        if s & ~full:
            raise SpaceError(f"set {s:b} has points outside the space")
        family.add(s)
    while True:
        new = {
            op
            for a in family
            for b in family
            for op in (a | b, a & b)
            if op not in family
        }
        if not new:
            return frozenset(family)
        family |= new


def validate_base(family, n_points: int) -> Base:
    base = frozenset(family)
    if close_base(base, n_points) != base:
        raise SpaceError("family is not closed under union/intersection")
    return base


def up_sets(space: FiniteSpace) -> Base:
    """The Alexandrov opens."""
    return frozenset(
        mask for mask in range(space.full + 1) if space.is_upset(mask)
    )


def powerset_base(space: FiniteSpace) -> Base:
    return frozenset(range(space.full + 1))


def complements(base: Base, n_points: int) -> Base:
    full = (1 << n_points) - 1
    return frozenset(full & ~s for s in base)


def validate_omega_base(levels, n_points: int) -> tuple:
    levels = tuple(validate_base(level, n_points) for level in levels)
    for lower, upper in zip(levels, levels[1:]):
        if not (lower | complements(lower, n_points)) <= upper:
            raise SpaceError(
                "omega-base level must contain the previous level and its complements"
            )
    return levels


def base_from_json(data, n_points: int) -> Base:
    if not isinstance(data, list):
        raise SpaceError("base JSON must be a list of point lists")
    return validate_base(
        close_base((_mask_of(points, n_points) for points in data), n_points),
        n_points,
    )


def base_to_json(base: Base) -> list:
    return [sorted(_points_of(mask)) for mask in sorted(base)]


def _mask_of(points, n_points: int) -> int:
    mask = 0
    for p in points:
        if not 0 <= p < n_points:
            raise SpaceError(f"point {p} out of range")
        mask |= 1 << p
    return mask


def _points_of(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


# ---------------------------------------------------------------------------
# partitions


@dataclass(frozen=True)
class KPartition:
    """Total coloring of the points by 0..k-1."""

    labels: tuple
    k: int

    def __post_init__(self):
        if any(not 0 <= c < self.k for c in self.labels):
            raise SpaceError("partition label out of range")

    @property
    def n(self) -> int:
        return len(self.labels)

    def mask(self, color: int) -> int:
        out = 0
        for i, c in enumerate(self.labels):
            if c == color:
                out |= 1 << i
        return out

    @staticmethod
    def from_json(data, k: int) -> "KPartition":
        if not isinstance(data, dict) or "labels" not in data:
            raise SpaceError("partition JSON must have 'labels'")
        return KPartition(tuple(data["labels"]), k)

    def to_json(self) -> dict:
        return {"labels": list(self.labels)}


def all_partitions(n_points: int, k: int):
    for labels in product(range(k), repeat=n_points):
        yield KPartition(labels, k)


# ---------------------------------------------------------------------------
# the difference operation


def difference_kernel(alpha: int, sets) -> int:
    """Union of the new parts of the sets whose index parity differs from alpha's.

    The new part of the beta-th set is what it adds over all earlier sets.
    """
    sets = list(sets)
    if len(sets) != alpha:
        raise SpaceError(f"expected {alpha} sets, got {len(sets)}")
    out = 0
    seen = 0
    for beta, a in enumerate(sets):
        if beta % 2 != alpha % 2:
            out |= a & ~seen
        seen |= a
    return out


# ---------------------------------------------------------------------------
# families
#
# A family indexes sets by prefixes: tuples of node paths, the first path
# into the forest itself, the next into the first node's label forest, and
# so on.  Flat families have depth 1 (prefixes are single paths).


@dataclass
class PFamily:
    forest: Forest
    depth: int
    sets: dict  # prefix tuple -> mask

    def __post_init__(self):
        self.forest = as_forest(self.forest)
        expected = {pfx for pfx, _, _ in family_prefixes(self.forest, self.depth)}
        if set(self.sets) != expected:
            raise SpaceError("family must assign a set to every node tuple")


def _paths(f: Forest, prefix=()):
    for i, t in enumerate(as_forest(f)):
        path = prefix + (i,)
        yield path, t
        yield from _paths(t.children, path)


def node_at(f: Forest, path) -> Tree:
    t = as_forest(f)[path[0]]
    for i in path[1:]:
        t = t.children[i]
    return t


def _lift_label(label) -> Forest:
    return (Tree(label),) if isinstance(label, int) else as_forest(label)


def family_prefixes(forest: Forest, depth: int):
    """Yield (prefix, level, color or None); color set on full-depth prefixes."""
    if depth < 1:
        raise SpaceError("depth must be positive")
    if nesting_level(forest) > depth:
        raise SpaceError(
            f"nesting level {nesting_level(forest)} exceeds depth {depth}")

    def walk(f: Forest, level: int, acc: tuple):
        for path, t in _paths(f):
            pfx = acc + (path,)
            if level + 1 == depth:
                color = t.label if isinstance(t.label, int) else None
                if color is None:
                    raise SpaceError("non-color label at the deepest level")
                yield pfx, level, color
            else:
                yield pfx, level, None
                yield from walk(_lift_label(t.label), level + 1, pfx)

    yield from walk(forest, 0, ())


def _new_part(fam: PFamily, prefix) -> int:
    """The set at prefix minus the sets of the strictly smaller sibling-layer nodes."""
    path = prefix[-1]
    mask = fam.sets[prefix]
    for other in fam.sets:
        if len(other) != len(prefix) or other[:-1] != prefix[:-1]:
            continue
        r = other[-1]
        if len(r) > len(path) and r[: len(path)] == path:
            mask &= ~fam.sets[other]
    return mask


def family_defines(fam: PFamily, space: FiniteSpace):
    """The k-partition the family defines, or (None, diagnostic).

    Checks the chain condition at inner levels, consistency of colors on
    overlapping components, and that the top-level sets cover the space.
    """
    prefixes = list(family_prefixes(fam.forest, fam.depth))
    new_parts = {pfx: _new_part(fam, pfx) for pfx, _, _ in prefixes}
    for pfx, level, _ in prefixes:
        if level + 1 == fam.depth:
            continue
        children = 0
        for other in fam.sets:
            if len(other) == len(pfx) + 1 and other[: len(pfx)] == pfx:
                children |= fam.sets[other]
        if children != new_parts[pfx]:
            return None, f"chain condition fails at {pfx}"
    full_prefixes = [(pfx, color) for pfx, lvl, color in prefixes
                     if lvl + 1 == fam.depth]
    for (p, cp), (q, cq) in combinations(full_prefixes, 2):
        if cp != cq and new_parts[p] & new_parts[q]:
            return None, f"components at {p} and {q} overlap with distinct colors"
    covered = 0
    for pfx, level, _ in prefixes:
        if level == 0:
            covered |= fam.sets[pfx]
    if covered != space.full:
        missing = next(i for i in range(space.n) if not covered & (1 << i))
        return None, f"point {missing} is not covered"
    labels = []
    for i in range(space.n):
        bit = 1 << i
        color = next(c for pfx, c in full_prefixes if new_parts[pfx] & bit)
        labels.append(color)
    k = max(max(labels), max(c for _, c in full_prefixes)) + 1
    return KPartition(tuple(labels), k), None


# ---------------------------------------------------------------------------
# membership
#
# A family defines the partition A exactly when the top-level sets cover
# the space and every deepest new part lies inside its color's class, so
# membership reduces to a feasibility sweep computing, per subtree, the
# achievable (union, root set) pairs.


def dh_membership(a: KPartition, forest: Forest, base: Base,
                  space: FiniteSpace, monotone: bool = False) -> bool:
    """Is the partition definable by a family of base sets over the flat forest?"""
    forest = as_forest(forest)
    color_masks = [a.mask(i) for i in range(a.k)]
    choices = sorted(base)

    def tree_pairs(t: Tree):
        if not isinstance(t.label, int):
            raise SpaceError("dh membership needs a flat forest")
        allowed = color_masks[t.label] if t.label < a.k else 0
        child_states = [tree_pairs(c) for c in t.children]
        out = set()
        for combo in product(*child_states):
            below = 0
            tops = []
            for u, b in combo:
                below |= u
                tops.append(b)
            for b in choices:
                if b & ~below & ~allowed:
                    continue
                if monotone and any(cb & ~b for cb in tops):
                    continue
                out.add((b | below, b))
        return out

    unions = {0}
    for t in forest:
        unions = {u | p[0] for u in unions for p in tree_pairs(t)}
    return space.full in unions


def dh_witness_family(a: KPartition, forest: Forest, base: Base,
                      space: FiniteSpace) -> PFamily | None:
    """A family of base sets over the flat forest defining the partition, if any."""
    forest = as_forest(forest)
    color_masks = [a.mask(i) for i in range(a.k)]
    choices = sorted(base)

    def tree_options(path, t: Tree):
        """Map from achievable subtree union to one witness assignment."""
        if not isinstance(t.label, int):
            raise SpaceError("witness search needs a flat forest")
        allowed = color_masks[t.label] if t.label < a.k else 0
        child_opts = [
            tree_options(path + (i,), c) for i, c in enumerate(t.children)
        ]
        out: dict = {}
        for combo in product(*(opts.items() for opts in child_opts)):
            below = 0
            assignment: dict = {}
            for u, sub in combo:
                below |= u
                assignment.update(sub)
            for b in choices:
                if b & ~below & ~allowed:
                    continue
                u = b | below
                if u not in out:
                    out[u] = {**assignment, (path,): b}
        return out

    options = {0: {}}
    for i, t in enumerate(forest):
        merged: dict = {}
        for u, sub in options.items():
            for v, tsub in tree_options((i,), t).items():
                if u | v not in merged:
                    merged[u | v] = {**sub, **tsub}
        options = merged
    witness = options.get(space.full)
    if witness is None:
        return None
    return PFamily(forest, 1, witness)


def fh_membership(a: KPartition, forest: Forest, omega_base,
                  space: FiniteSpace) -> bool:
    """Is the partition definable by a family over the omega-base?"""
    forest = as_forest(forest)
    depth = max(1, nesting_level(forest))
    if depth > len(omega_base):
        raise SpaceError(
            f"nesting level {depth} exceeds the {len(omega_base)}-level base")
    color_masks = [a.mask(i) for i in range(a.k)]

    @lru_cache(maxsize=None)
    def feasible(f: Forest, level: int, target: int) -> bool:
        """Can sets from base level `level`, inside target, be put on f's nodes
        so that their overall union is exactly target and every node's new
        part is realizable one level deeper (or lies in its color's class)?"""
        choices = [b for b in sorted(omega_base[level]) if not b & ~target]

        def node_ok(t: Tree, new_part: int) -> bool:
            if level + 1 == depth:
                if not isinstance(t.label, int):
                    raise SpaceError("non-color label at the deepest level")
                allowed = color_masks[t.label] if t.label < a.k else 0
                return not new_part & ~allowed
            return feasible(_lift_label(t.label), level + 1, new_part)

        def tree_unions(t: Tree):
            child_states = [tree_unions(c) for c in t.children]
            out = set()
            for combo in product(*child_states):
                below = 0
                for u in combo:
                    below |= u
                for b in choices:
                    if node_ok(t, b & ~below):
                        out.add(b | below)
            return out

        unions = {0}
        for t in f:
            unions = {u | v for u in unions for v in tree_unions(t)}
        return target in unions

    return feasible(forest, 0, space.full)


# ---------------------------------------------------------------------------
# difference sequences (flat 2-partitions over the alternating chain)


def _ranked_paths(forest: Forest):
    """Paths of a flat forest with their ranks (leaf rank 0)."""
    return [(path, t, rank((t,))) for path, t in _paths(forest)]


def family_to_diff_sequence(fam: PFamily) -> tuple:
    """The difference sequence recovering the family's color-1 class.

    The family must live on the rank-alpha alternating chain; the beta-th
    output set collects the node sets of rank at most beta carrying color
    0 when beta's parity matches alpha's, color 1 otherwise.
    """
    if fam.depth != 1:
        raise SpaceError("difference sequences need a flat family")
    nodes = _ranked_paths(fam.forest)
    alpha = max(r for _, _, r in nodes)
    seq = []
    for beta in range(alpha):
        want = 0 if beta % 2 == alpha % 2 else 1
        mask = 0
        for path, t, r in nodes:
            if r <= beta and t.label == want:
                mask |= fam.sets[(path,)]
        seq.append(mask)
    return tuple(seq)


def diff_sequence_to_family(seq, base: Base, space: FiniteSpace) -> PFamily:
    """The canonical-chain family defining the characteristic 2-partition."""
    from .canonical import t_flat

    for s in seq:
        if s not in base:
            raise SpaceError("sequence set is not in the base")
    alpha = len(seq)
    forest = (t_flat(alpha),)
    sets = {
        (path,): space.full if r == alpha else seq[r]
        for path, _, r in _ranked_paths(forest)
    }
    return PFamily(forest, 1, sets)


# ---------------------------------------------------------------------------
# reduction


def reduce_pair(a: int, b: int, base: Base):
    """Disjoint base subsets with the same union, or None."""
    for a2 in sorted(base):
        if a2 & ~a:
            continue
        b2 = (a | b) & ~a2
        if b2 in base and not b2 & ~b:
            return a2, b2
    return None


def has_reduction_property(base: Base) -> bool:
    return all(
        reduce_pair(a, b, base) is not None for a in base for b in base
    )


def is_reduced(fam: PFamily) -> bool:
    """Monotone, with disjoint sets on incomparable nodes (flat families)."""
    if fam.depth != 1:
        raise SpaceError("the reduced predicate is implemented for flat families")
    items = [(pfx[0], mask) for pfx, mask in fam.sets.items()]
    for (p, mp), (q, mq) in combinations(items, 2):
        p_below_q = len(p) > len(q) and p[: len(q)] == q
        q_below_p = len(q) > len(p) and q[: len(p)] == p
        if p_below_q and mp & ~mq:
            return False
        if q_below_p and mq & ~mp:
            return False
        if not p_below_q and not q_below_p and mp & mq:
            return False
    return True


def reduce_family(fam: PFamily, base: Base, space: FiniteSpace) -> PFamily:
    """An equivalent reduced family: monotonized, then siblings disjointified.

    Monotonization replaces each node's set by the union over its subtree,
    which keeps every new part; disjointification walks the sibling groups
    from the roots down, replaces their sets by a disjoint reduction with
    the same union, and clips each subtree to its root's new set.
    """
    if fam.depth != 1:
        raise SpaceError("reduce_family is implemented for flat families")
    if not has_reduction_property(base):
        raise SpaceError("base lacks the reduction property")
    sets = {}
    for pfx in fam.sets:
        mask = 0
        for other, m in fam.sets.items():
            if other[0][: len(pfx[0])] == pfx[0]:
                mask |= m
        sets[pfx] = mask

    def disjointify(group):
        """Make the sets of these sibling paths pairwise disjoint."""
        while True:
            overlap = next(
                (
                    (p, q)
                    for p, q in combinations(group, 2)
                    if sets[(p,)] & sets[(q,)]
                ),
                None,
            )
            if overlap is None:
                return
            p, q = overlap
            reduced = reduce_pair(sets[(p,)], sets[(q,)], base)
            sets[(p,)], sets[(q,)] = reduced

    def clip(root_path):
        for other in sets:
            path = other[0]
            if len(path) > len(root_path) and path[: len(root_path)] == root_path:
                sets[other] &= sets[(root_path,)]

    def walk(paths):
        disjointify(paths)
        for p in paths:
            clip(p)
            children = [
                other[0]
                for other in sets
                if len(other[0]) == len(p) + 1 and other[0][: len(p)] == p
            ]
            walk(children)

    roots = [pfx[0] for pfx in sets if len(pfx[0]) == 1]
    walk(roots)
    return PFamily(fam.forest, 1, sets)


# ---------------------------------------------------------------------------
# hierarchy report


def hierarchy_report(space: FiniteSpace, bases, forests, k: int,
                     override_size_guard: bool = False) -> dict:
    """Membership sets, their inclusion order, and the constituents.

    bases is a single base (flat forests) or a sequence of bases (nested).
    Levels are intersections over antichains of forests; the constituent
    of an antichain removes every membership set not above the antichain.
    """
    from .nested import print_term

    check_size_guard(space.n, k, override_size_guard)
    omega = not isinstance(bases, frozenset)
    reps = []
    for f in forests:
        f = normalize(as_forest(f))
        if not any(h_equiv(f, g) for g in reps):
            reps.append(f)
    partitions = list(all_partitions(space.n, k))
    member_sets = []
    for f in reps:
        if omega:
            members = {a for a in partitions if fh_membership(a, f, bases, space)}
        else:
            members = {a for a in partitions if dh_membership(a, f, bases, space)}
        member_sets.append(frozenset(members))

    idx = range(len(reps))
    below = [[h_leq(reps[i], reps[j]) for j in idx] for i in idx]
    antichains = [
        combo
        for r in range(1, len(reps) + 1)
        for combo in combinations(idx, r)
        if all(
            not below[i][j] and not below[j][i]
            for i, j in combinations(combo, 2)
        )
    ]
    constituents = []
    for combo in antichains:
        level = frozenset.intersection(*(member_sets[i] for i in combo))
        outside = [
            j for j in idx if not any(below[i][j] for i in combo)
        ]
        constituent = level.difference(*(member_sets[j] for j in outside)) \
            if outside else level
        constituents.append((combo, level, constituent))

    terms = [print_term(f) for f in reps]
    return {
        "points": space.n,
        "k": k,
        "forests": terms,
        "levels": [
            {"forest": terms[i], "size": len(member_sets[i]),
             "members": sorted(list(a.labels) for a in member_sets[i])}
            for i in idx
        ],
        "inclusions": [
            [terms[i], terms[j]]
            for i in idx
            for j in idx
            if i != j and member_sets[i] <= member_sets[j]
        ],
        "constituents": [
            {"antichain": [terms[i] for i in combo],
             "level_size": len(level),
             "size": len(constituent),
             "members": sorted(list(a.labels) for a in constituent)}
            for combo, level, constituent in constituents
        ],
    }


def report_to_dot(report: dict) -> str:
    """Hasse diagram of the level inclusions."""
    terms = report["forests"]
    edges = {(a, b) for a, b in report["inclusions"]}
    hasse = [
        (a, b)
        for a, b in edges
        if not any((a, c) in edges and (c, b) in edges
                   for c in terms if c not in (a, b))
    ]
    lines = ["digraph levels {", "  rankdir=BT;"]
    for t in terms:
        lines.append(f'  "{t}";')
    for a, b in hasse:
        lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines)
