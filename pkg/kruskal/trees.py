"""Finite labeled ordered trees and the homeomorphic embedding between them.

``LabeledTree(l, [t0, ..., tk])`` is the tree ``l*(t0 ... tk)``: a root labeled
``l`` whose children, from left to right, are the given trees. The universe
``T^m_n`` holds the trees with labels below ``m`` and branching degrees below
``n``; ``n = None`` leaves the branching unbounded.
"""
from functools import lru_cache
from itertools import product
from typing import Iterator, List, Optional, Sequence, Tuple

from .exceptions import PreconditionError, ResourceLimitError
from .options import KruskalOptions, resolve
from .orders import higman_leq
from .utils import Verdict, compare_with, logger


class LabeledTree:
    """An immutable labeled ordered tree.

    Parameters:
        label: a natural number
        children: the subtrees, from left to right
    """
    __slots__ = ('label', 'children', 'size', 'depth', '_hash')
    __match_args__ = ('label', 'children')

    label: int
    children: Tuple['LabeledTree', ...]

    def __init__(self, label: int, children: Sequence['LabeledTree'] = ()) -> None:
        if not isinstance(label, int) or label < 0:
            raise PreconditionError("Tree labels are natural numbers, got %r" % (label,))
        kids = tuple(children)
        object.__setattr__(self, 'label', label)
        object.__setattr__(self, 'children', kids)
        object.__setattr__(self, 'size', 1 + sum(c.size for c in kids))
        object.__setattr__(self, 'depth', 1 + max([c.depth for c in kids], default=0))
        object.__setattr__(self, '_hash', hash((label, kids)))

    def __setattr__(self, name, value):
        raise AttributeError("LabeledTree is immutable")

    def __eq__(self, other):
        try:
            return self._hash == other._hash and self.label == other.label and self.children == other.children
        except AttributeError:
            return False

    def __ne__(self, other):
        return not (self == other)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self):
        return 'LabeledTree(%r, %r)' % (self.label, list(self.children))

    def __str__(self):
        return '%d*(%s)' % (self.label, ' '.join(str(c) for c in self.children))

    def iter_subtrees_topdown(self) -> Iterator['LabeledTree']:
        "Preorder: every vertex before its descendants, siblings from left to right."
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def pretty(self, indent_str: str = '  ') -> str:
        lines = []

        def walk(t: LabeledTree, level: int) -> None:
            lines.append('%s%d\n' % (indent_str * level, t.label))
            for c in t.children:
                walk(c, level + 1)

        walk(self, 0)
        return ''.join(lines)

    def max_label(self) -> int:
        return max(t.label for t in self.iter_subtrees_topdown())

    def max_branching(self) -> int:
        return max(len(t.children) for t in self.iter_subtrees_topdown())


def vertex_count(t: LabeledTree) -> int:
    return t.size


def in_universe(t: LabeledTree, m: int, n: Optional[int]) -> bool:
    "Is ``t`` in ``T^m_n``?"
    return t.max_label() < m and (n is None or t.max_branching() < n)


def check_universe(t: LabeledTree, m: int, n: Optional[int]) -> None:
    if t.max_label() >= m:
        raise PreconditionError("%s has a label >= %d" % (t, m))
    if n is not None and t.max_branching() >= n:
        raise PreconditionError("%s has a vertex with %d or more children" % (t, n))


# The embedding relation
# ----------------------

@lru_cache(maxsize=None)
def tree_leq(s: LabeledTree, t: LabeledTree) -> bool:
    """``s`` embeds into ``t``.

    Either the labels of the roots agree and the children of ``s`` embed, in
    order, into distinct children of ``t``; or ``s`` embeds into a child of ``t``.
    """
    if s.size > t.size:
        return False
    if s.label == t.label and higman_leq(tree_leq, s.children, t.children):
        return True
    return any(tree_leq(s, c) for c in t.children)


def tree_compare(s: LabeledTree, t: LabeledTree) -> str:
    return compare_with(tree_leq, s, t)


class _Flat:
    "A tree listed in preorder, with labels, parents and ancestor sets."

    def __init__(self, t: LabeledTree) -> None:
        self.labels: List[int] = []
        self.parent: List[int] = []
        self.ancestors: List[frozenset] = []

        def visit(node: LabeledTree, parent: int) -> None:
            i = len(self.labels)
            self.labels.append(node.label)
            self.parent.append(parent)
            self.ancestors.append(frozenset([i]) | (self.ancestors[parent] if parent >= 0 else frozenset()))
            for c in node.children:
                visit(c, i)

        visit(t, -1)
        self.size = len(self.labels)

    def meet(self, u: int, v: int) -> int:
        return max(self.ancestors[u] & self.ancestors[v])


def tree_leq_oracle(s: LabeledTree, t: LabeledTree, options: Optional[KruskalOptions] = None) -> bool:
    """Search for an injective vertex map from ``s`` into ``t`` that keeps labels,
    meets and the left-to-right order.

    Meets determine ancestry, so ancestry is kept in both directions. This is an
    exhaustive backtracking search, independent of :func:`tree_leq`.
    """
    bound = resolve(options).oracle_vertex_bound
    for tree in (s, t):
        if tree.size > bound:
            raise ResourceLimitError('oracle tree', tree.size, bound)
    fs, ft = _Flat(s), _Flat(t)
    image: List[int] = []

    def consistent(u: int, w: int) -> bool:
        if fs.labels[u] != ft.labels[w]:
            return False
        # every earlier vertex v is mapped, and so is the meet of u and v
        return all(ft.meet(w, image[v]) == image[fs.meet(u, v)] for v in range(u))

    def extend(u: int, start: int) -> bool:
        if u == fs.size:
            return True
        # images of a preorder listing appear in preorder
        for w in range(start, ft.size):
            if consistent(u, w):
                image.append(w)
                if extend(u + 1, w + 1):
                    return True
                image.pop()
        return False

    return extend(0, 0)


# Constructions
# -------------

def full_tree(k: int, j: int) -> LabeledTree:
    "The full ``k``-branching tree of height ``j``, all labels ``0``."
    if k < 1 or j < 0:
        raise PreconditionError("full_tree needs k >= 1 and j >= 0, got k=%r, j=%r" % (k, j))
    t = LabeledTree(0)
    for _ in range(j):
        t = LabeledTree(0, [t] * k)
    return t


def label_gadget(m: int, l: int) -> LabeledTree:
    """The unlabeled stand-in for label ``l`` of ``T^m``: ``full_tree(l+1, m-l)``.

    Gadgets of distinct labels are incomparable.
    """
    if not 0 <= l < m:
        raise PreconditionError("label_gadget needs 0 <= l < m, got l=%r, m=%r" % (l, m))
    return full_tree(l + 1, m - l)


@lru_cache(maxsize=None)
def _trees_of_size(m: int, n: Optional[int], v: int) -> Tuple[LabeledTree, ...]:
    found: List[LabeledTree] = []
    for children in _forests(m, n, v - 1, n - 1 if n is not None else v - 1):
        for label in range(m):
            found.append(LabeledTree(label, children))
    return tuple(found)


def _forests(m: int, n: Optional[int], v: int, width: int) -> Iterator[Tuple[LabeledTree, ...]]:
    "Sequences of at most ``width`` trees with ``v`` vertices in total."
    if v == 0:
        yield ()
        return
    if width == 0:
        return
    for first in range(1, v + 1):
        for rest in _forests(m, n, v - first, width - 1):
            for t in _trees_of_size(m, n, first):
                yield (t,) + rest


def enumerate_trees(m: int, n: Optional[int], max_vertices: int, options: Optional[KruskalOptions] = None) -> List[LabeledTree]:
    """All trees of ``T^m_n`` with at most ``max_vertices`` vertices, smaller trees first."""
    if m < 1 or (n is not None and n < 1):
        raise PreconditionError("The universe T^%r_%r is empty" % (m, n))
    bound = resolve(options).oracle_vertex_bound
    if max_vertices > bound:
        raise ResourceLimitError('tree enumeration', max_vertices, bound)
    trees = [t for v in range(1, max_vertices + 1) for t in _trees_of_size(m, n, v)]
    logger.debug("T^%d_%s up to %d vertices: %d trees", m, n, max_vertices, len(trees))
    return trees


def oracle_equivalence(trees: Sequence[LabeledTree], options: Optional[KruskalOptions] = None) -> Verdict:
    "Compare :func:`tree_leq` and :func:`tree_leq_oracle` on all pairs of ``trees``."
    for s, t in product(trees, repeat=2):
        if tree_leq(s, t) != tree_leq_oracle(s, t, options):
            return Verdict.failed('tree-oracle-equivalence', (s, t), '%s vs %s' % (s, t))
    return Verdict.passed('tree-oracle-equivalence', '%d pairs' % len(trees) ** 2)
