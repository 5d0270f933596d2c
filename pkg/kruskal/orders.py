"""Finite partial orders, their morphisms and canonical representatives.

Elements of a ``FinPoset`` of size k are the integers ``0 .. k-1``. A poset is
an immutable value; every function in this module is pure, and the caches
below only ever memoize pure results.
"""
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product
from typing import Callable, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .exceptions import ResourceLimitError, ValidationError, assert_config
from .options import KruskalOptions, resolve
from .utils import logger

Matrix = Tuple[Tuple[bool, ...], ...]

MORPHISM_NONE = 'none'
MORPHISM_QUASI = 'quasi-embedding'
MORPHISM_EMBEDDING = 'embedding'


@dataclass(frozen=True)
class FinPoset:
    """A finite partial order on ``{0, ..., size-1}``.

    ``matrix[i][j]`` is true iff ``i <= j``. Use :func:`make_poset` to build a
    validated instance from a list of related pairs.
    """
    size: int
    matrix: Matrix

    def leq(self, i: int, j: int) -> bool:
        return self.matrix[i][j]

    def lt(self, i: int, j: int) -> bool:
        return i != j and self.matrix[i][j]

    def comparable(self, i: int, j: int) -> bool:
        return self.matrix[i][j] or self.matrix[j][i]

    @property
    def elements(self) -> range:
        return range(self.size)

    def strict_pairs(self) -> List[Tuple[int, int]]:
        return [(i, j) for i in range(self.size) for j in range(self.size) if i != j and self.matrix[i][j]]

    def covers(self) -> List[Tuple[int, int]]:
        "The Hasse diagram: pairs i < j with nothing strictly between them."
        return [(i, j) for (i, j) in self.strict_pairs()
                if not any(self.lt(i, k) and self.lt(k, j) for k in range(self.size))]

    def restrict(self, members: Sequence[int]) -> 'FinPoset':
        "The induced order on ``members``, relabeled by position in the sequence."
        return FinPoset(len(members), tuple(tuple(self.matrix[a][b] for b in members) for a in members))

    def dual(self) -> 'FinPoset':
        return FinPoset(self.size, tuple(tuple(self.matrix[j][i] for j in range(self.size)) for i in range(self.size)))

    def __repr__(self):
        return 'FinPoset(%d, %r)' % (self.size, self.strict_pairs())


@dataclass(frozen=True, repr=False)
class CanonicalPoset(FinPoset):
    """The representative of an isomorphism class of finite posets.

    Its ``code`` (size followed by the covering pairs) names it in token ids
    and file formats.
    """

    @property
    def code(self) -> str:
        return str(self.size) + ''.join('_%d%d' % pair for pair in self.covers())

    def __repr__(self):
        return 'CanonicalPoset(%s)' % self.code


@dataclass(frozen=True)
class OrderMap:
    "A total function between the elements of two finite posets."
    domain: FinPoset
    codomain: FinPoset
    values: Tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.values[x]

    def image(self, a: Iterable[int]) -> FrozenSet[int]:
        return frozenset(self.values[x] for x in a)

    def compose(self, before: 'OrderMap') -> 'OrderMap':
        "``self`` after ``before``."
        if before.codomain != self.domain:
            raise ValidationError("Cannot compose maps with mismatched domains")
        return OrderMap(before.domain, self.codomain, tuple(self.values[v] for v in before.values))

    def inverse(self) -> 'OrderMap':
        if sorted(self.values) != list(range(self.codomain.size)):
            raise ValidationError("Only bijections can be inverted")
        inv = [0] * len(self.values)
        for i, v in enumerate(self.values):
            inv[v] = i
        return OrderMap(self.codomain, self.domain, tuple(inv))

    def __repr__(self):
        return 'OrderMap(%r)' % (self.values,)


@dataclass(frozen=True)
class SubsetEnum:
    """A finite subset ``members`` of ``host`` with its chosen enumeration.

    ``en`` maps the canonical shape ``|a|`` isomorphically onto the subset.
    """
    host: FinPoset
    members: FrozenSet[int]
    shape: CanonicalPoset
    en: OrderMap


def identity_map(p: FinPoset) -> OrderMap:
    return OrderMap(p, p, tuple(range(p.size)))


def validate_partial_order(size: int, matrix: Matrix) -> None:
    "Raise ValidationError unless the matrix is reflexive, antisymmetric and transitive."
    if len(matrix) != size or any(len(row) != size for row in matrix):
        raise ValidationError("Relation matrix does not have shape %dx%d" % (size, size))
    for i in range(size):
        if not matrix[i][i]:
            raise ValidationError("Relation is not reflexive at %d" % i)
    for i in range(size):
        for j in range(size):
            if i != j and matrix[i][j] and matrix[j][i]:
                raise ValidationError("Relation is not antisymmetric: %d <= %d <= %d" % (i, j, i))
    ups = [frozenset(j for j in range(size) if matrix[i][j]) for i in range(size)]
    for i in range(size):
        for j in sorted(ups[i]):
            missing = ups[j] - ups[i]
            if missing:
                raise ValidationError("Relation is not transitive: %d <= %d <= %d" % (i, j, min(missing)))


def make_poset(size: int, pairs: Iterable[Tuple[int, int]] = (), close: bool = False) -> FinPoset:
    """Build a validated poset from its related pairs; reflexive pairs are implicit.

    With ``close=True`` the transitive closure of the pairs is taken first.
    """
    rel = [[i == j for j in range(size)] for i in range(size)]
    for (i, j) in pairs:
        if not (0 <= i < size and 0 <= j < size):
            raise ValidationError("Pair %r is outside of a poset of size %d" % ((i, j), size))
        rel[i][j] = True
    if close:
        for k in range(size):
            for i in range(size):
                if rel[i][k]:
                    for j in range(size):
                        if rel[k][j]:
                            rel[i][j] = True
    matrix = tuple(tuple(row) for row in rel)
    validate_partial_order(size, matrix)
    return FinPoset(size, matrix)


def chain(k: int) -> FinPoset:
    return FinPoset(k, tuple(tuple(i <= j for j in range(k)) for i in range(k)))


def antichain(k: int) -> FinPoset:
    return FinPoset(k, tuple(tuple(i == j for j in range(k)) for i in range(k)))


EMPTY = FinPoset(0, ())


def _check_bound(what: str, size: int, options: Optional[KruskalOptions]) -> None:
    bound = resolve(options).poset_bound
    if size > bound:
        raise ResourceLimitError(what, size, bound)


# Canonical forms
# ---------------

def _canonical_permutation(size: int, matrix: Matrix) -> Tuple[int, ...]:
    # Minimise the 0/1 matrix of non-relations, read block by block: for each
    # position p the column entries above the diagonal, then the row entries
    # left of it. The key prefix is fixed once a prefix of the permutation is,
    # so the search can prune. Ties go to the least permutation, because the
    # candidates are tried in increasing order and only a strictly smaller key
    # replaces the incumbent.
    best_key: List[List[int]] = []
    best_perm: List[Tuple[int, ...]] = []
    perm: List[int] = []
    key: List[int] = []
    used = [False] * size

    def extend(pos: int) -> None:
        if pos == size:
            if not best_key or key < best_key[0]:
                best_key[:] = [list(key)]
                best_perm[:] = [tuple(perm)]
            return
        for cand in range(size):
            if used[cand]:
                continue
            added = [0 if matrix[perm[i]][cand] else 1 for i in range(pos)]
            added += [0 if matrix[cand][perm[i]] else 1 for i in range(pos)]
            key.extend(added)
            if not best_key or key <= best_key[0][:len(key)]:
                used[cand] = True
                perm.append(cand)
                extend(pos + 1)
                perm.pop()
                used[cand] = False
            del key[len(key) - len(added):]

    extend(0)
    return best_perm[0] if best_perm else ()


@lru_cache(maxsize=None)
def _canonical_form(p: FinPoset) -> Tuple[CanonicalPoset, Tuple[int, ...]]:
    perm = _canonical_permutation(p.size, p.matrix)
    matrix = tuple(tuple(p.matrix[perm[i]][perm[j]] for j in range(p.size)) for i in range(p.size))
    return CanonicalPoset(p.size, matrix), perm


def canonical_form(p: FinPoset) -> Tuple[CanonicalPoset, OrderMap]:
    """The canonical representative of ``p`` and an isomorphism from it onto ``p``.

    The output poset is the same for every relabeling of ``p``.
    """
    validate_partial_order(p.size, p.matrix)
    c, perm = _canonical_form(FinPoset(p.size, p.matrix))
    return c, OrderMap(c, p, perm)


def canonicalize(p: FinPoset) -> CanonicalPoset:
    return _canonical_form(FinPoset(p.size, p.matrix))[0]


def poset_from_code(code: str) -> CanonicalPoset:
    "Inverse of ``CanonicalPoset.code``; raises ValidationError if the code is not canonical."
    head, *covers = code.split('_')
    try:
        size = int(head)
        pairs = [(int(c[0]), int(c[1])) for c in covers]
    except (ValueError, IndexError):
        raise ValidationError("Malformed poset code %r" % code)
    if any(len(c) != 2 for c in covers):
        raise ValidationError("Malformed poset code %r" % code)
    p = make_poset(size, pairs, close=True)
    c = canonicalize(p)
    if c.matrix != p.matrix:
        raise ValidationError("Poset code %r is not in canonical form" % code)
    return c


def _down_closed(p: FinPoset, s: FrozenSet[int]) -> bool:
    return all(j in s for i in s for j in range(p.size) if p.leq(j, i))


def _up_closed(p: FinPoset, s: FrozenSet[int]) -> bool:
    return all(j in s for i in s for j in range(p.size) if p.leq(i, j))


@lru_cache(maxsize=None)
def _canonical_of_size(k: int) -> Tuple[CanonicalPoset, ...]:
    if k == 0:
        return (CanonicalPoset(0, ()),)
    found = {}
    for base in _canonical_of_size(k - 1):
        subsets = [frozenset(s) for r in range(k) for s in combinations(range(k - 1), r)]
        downs = [s for s in subsets if _down_closed(base, s)]
        ups = [s for s in subsets if _up_closed(base, s)]
        for down, up in product(downs, ups):
            if down & up or not all(base.leq(d, u) for d in down for u in up):
                continue
            rows = [list(row) + [i in down] for i, row in enumerate(base.matrix)]
            rows.append([j in up for j in range(k - 1)] + [True])
            c = canonicalize(FinPoset(k, tuple(tuple(r) for r in rows)))
            found[c.matrix] = c
    logger.debug("Enumerated %d canonical posets of size %d", len(found), k)
    return tuple(sorted(found.values(), key=lambda c: c.matrix, reverse=True))


def enumerate_canonical(k: int, options: Optional[KruskalOptions] = None) -> Tuple[CanonicalPoset, ...]:
    "All canonical posets with exactly ``k`` elements, in a fixed order."
    _check_bound('canonical poset enumeration', k, options)
    return _canonical_of_size(k)


def enumerate_canonical_upto(k: int, options: Optional[KruskalOptions] = None) -> List[CanonicalPoset]:
    return [c for i in range(k + 1) for c in enumerate_canonical(i, options)]


# Subsets and their enumerations
# ------------------------------

@lru_cache(maxsize=None)
def _induced(host: FinPoset, members: Tuple[int, ...]) -> SubsetEnum:
    c, iso = canonical_form(host.restrict(members))
    en = OrderMap(c, host, tuple(members[i] for i in iso.values))
    return SubsetEnum(host, frozenset(members), c, en)


def induced_suborder(host: FinPoset, a: Iterable[int]) -> SubsetEnum:
    """The canonical shape ``|a|`` of a subset and its fixed enumeration ``en_a``.

    Among all isomorphisms ``|a| -> a`` the chosen one lists host elements in
    the lexicographically least order.
    """
    members = tuple(sorted(set(a)))
    if any(not (0 <= x < host.size) for x in members):
        raise ValidationError("%r is not a subset of a poset of size %d" % (members, host.size))
    return _induced(host, members)


# Morphisms
# ---------

def is_quasi_embedding(f: OrderMap) -> bool:
    dom, cod, v = f.domain, f.codomain, f.values
    return all(not cod.leq(v[x], v[y]) or dom.leq(x, y) for x in range(dom.size) for y in range(dom.size))


def is_embedding(f: OrderMap) -> bool:
    dom, cod, v = f.domain, f.codomain, f.values
    return all(cod.leq(v[x], v[y]) == dom.leq(x, y) for x in range(dom.size) for y in range(dom.size))


def _check_total(f: OrderMap) -> None:
    if len(f.values) != f.domain.size or any(not (0 <= v < f.codomain.size) for v in f.values):
        raise ValidationError("%r is not a total map into a poset of size %d" % (f, f.codomain.size))


def morphism_checks(f: OrderMap) -> str:
    "Classify ``f`` as ``'embedding'``, ``'quasi-embedding'`` or ``'none'``."
    _check_total(f)
    if not is_quasi_embedding(f):
        return MORPHISM_NONE
    if is_embedding(f):
        return MORPHISM_EMBEDDING
    return MORPHISM_QUASI


def pointwise_leq(f: OrderMap, g: OrderMap) -> bool:
    if f.domain != g.domain or f.codomain != g.codomain:
        raise ValidationError("pointwise comparison needs maps with a shared domain and codomain")
    return all(f.codomain.leq(a, b) for a, b in zip(f.values, g.values))


def iter_maps(p: FinPoset, q: FinPoset, kind: str = MORPHISM_QUASI, surjective_onto: Optional[FrozenSet[int]] = None) -> Iterator[OrderMap]:
    # Quasi-embeddings are injective, so injections suffice.
    assert_config(kind, (MORPHISM_QUASI, MORPHISM_EMBEDDING))
    for values in permutations(range(q.size), p.size):
        f = OrderMap(p, q, values)
        if not is_quasi_embedding(f):
            continue
        if kind == MORPHISM_EMBEDDING and not is_embedding(f):
            continue
        yield f


def enumerate_maps(p: FinPoset, q: FinPoset, kind: str = MORPHISM_QUASI,
                   options: Optional[KruskalOptions] = None) -> List[OrderMap]:
    "All quasi-embeddings (or embeddings) from ``p`` to ``q``, ordered by their value tuples."
    _check_bound('map enumeration', max(p.size, q.size), options)
    return list(iter_maps(p, q, kind))


@lru_cache(maxsize=None)
def bijective_quasi_embeddings(p: CanonicalPoset, q: CanonicalPoset) -> Tuple[OrderMap, ...]:
    if p.size != q.size:
        return ()
    return tuple(iter_maps(p, q, MORPHISM_QUASI))


@lru_cache(maxsize=None)
def automorphisms(c: FinPoset) -> Tuple[OrderMap, ...]:
    return tuple(f for f in iter_maps(c, c, MORPHISM_EMBEDDING))


# Sequences
# ---------

LeqArg = Union[FinPoset, Callable[[object, object], bool]]


def _as_leq(order: LeqArg) -> Callable[[object, object], bool]:
    if isinstance(order, FinPoset):
        return order.leq  # type: ignore[return-value]
    return order


def higman_leq(order: LeqArg, s: Sequence, t: Sequence) -> bool:
    """Is there a strictly increasing index map ``f`` with ``s[i] <= t[f(i)]``?

    ``order`` is either a FinPoset (entries are its elements) or a comparison function.
    Matching each entry of ``s`` with the earliest possible entry of ``t`` is optimal.
    """
    leq = _as_leq(order)
    j = 0
    for x in s:
        while j < len(t) and not leq(x, t[j]):
            j += 1
        if j == len(t):
            return False
        j += 1
    return True


# Order constructions
# -------------------

def sum_offsets(parts: Sequence[FinPoset]) -> List[int]:
    offsets, total = [], 0
    for p in parts:
        offsets.append(total)
        total += p.size
    return offsets


def sum_order(parts: Sequence[FinPoset], reversed_flags: Optional[Sequence[bool]] = None) -> FinPoset:
    """The disjoint sum; part ``i`` occupies the block starting at ``sum_offsets(parts)[i]``.

    Parts flagged as reversed contribute their dual order. Elements of different
    parts are incomparable.
    """
    flags = list(reversed_flags) if reversed_flags is not None else [False] * len(parts)
    if len(flags) != len(parts):
        raise ValidationError("sum_order needs one reversal flag per part")
    offsets = sum_offsets(parts)
    total = sum(p.size for p in parts)
    rows = [[False] * total for _ in range(total)]
    for p, flag, off in zip(parts, flags, offsets):
        q = p.dual() if flag else p
        for i in range(q.size):
            for j in range(q.size):
                rows[off + i][off + j] = q.matrix[i][j]
    return FinPoset(total, tuple(tuple(r) for r in rows))


def lex_double(y: FinPoset) -> FinPoset:
    """The lexicographic ``Y x 2``: element ``2*v + i`` stands for ``(v, i)``.

    ``(v, 0) < (v, 1)``, and ``(v, i) < (w, j)`` whenever ``v < w`` in ``Y``.
    """
    n = 2 * y.size

    def leq(a: int, b: int) -> bool:
        (v, i), (w, j) = divmod(a, 2), divmod(b, 2)
        return y.lt(v, w) or (v == w and i <= j)

    return FinPoset(n, tuple(tuple(leq(a, b) for b in range(n)) for a in range(n)))


def discrete_times_chain(n: int, k: int) -> FinPoset:
    """The product of the ``n``-element antichain with the chain of length ``k``.

    Element ``i * k + m`` stands for ``(i, m)``.
    """
    return sum_order([chain(k)] * n)


# Ordinal terms below omega^(omega^omega)
# ---------------------------------------

@dataclass(frozen=True)
class OrdTerm:
    """A non-increasing finite sequence in the order of the level below.

    Level 0 is the one-point order (its only element is ``0``), so a level-1
    term is a natural number written in unary; level 2 describes omega^omega and
    level 3 omega^(omega^omega).
    """
    level: int
    entries: Tuple[Union['OrdTerm', int], ...]

    def __post_init__(self):
        assert_config(self.level, (1, 2, 3), "Unsupported ordinal level %r, expected one of %s")
        for e in self.entries:
            if self.level == 1:
                if e != 0:
                    raise ValidationError("level-1 entries are elements of the one-point order")
            elif not isinstance(e, OrdTerm) or e.level != self.level - 1:
                raise ValidationError("entries of a level-%d term must have level %d" % (self.level, self.level - 1))
        for a, b in zip(self.entries, self.entries[1:]):
            if _ord_cmp(a, b) < 0:
                raise ValidationError("entries of an ordinal term must be non-increasing")

    @classmethod
    def natural(cls, n: int) -> 'OrdTerm':
        return cls(1, (0,) * n)

    def __len__(self) -> int:
        return len(self.entries)

    def __str__(self):
        if self.level == 1:
            return str(len(self.entries))
        return '<%s>' % ','.join(str(e) for e in self.entries)


def ordterm(level: int, entries: Iterable) -> OrdTerm:
    "Convenience constructor: at level 2 naturals stand for level-1 terms."
    items = []
    for e in entries:
        if level == 2 and isinstance(e, int):
            e = OrdTerm.natural(e)
        items.append(e)
    if level == 1:
        return OrdTerm.natural(len(items))
    return OrdTerm(level, tuple(items))


def _ord_cmp(a: Union[OrdTerm, int], b: Union[OrdTerm, int]) -> int:
    if not isinstance(a, OrdTerm):
        return 0
    assert isinstance(b, OrdTerm)
    for x, y in zip(a.entries, b.entries):
        c = _ord_cmp(x, y)
        if c:
            return c
    return (len(a.entries) > len(b.entries)) - (len(a.entries) < len(b.entries))


def ord_leq(s: OrdTerm, t: OrdTerm) -> bool:
    "Lexicographic comparison; a proper prefix precedes its extensions."
    if s.level != t.level:
        raise ValidationError("Cannot compare ordinal terms of levels %d and %d" % (s.level, t.level))
    return _ord_cmp(s, t) <= 0


def ord_lt(s: OrdTerm, t: OrdTerm) -> bool:
    return ord_leq(s, t) and s != t


def enumerate_ord_terms(level: int, max_entry: int, max_length: int) -> List[OrdTerm]:
    """All terms of the level with at most ``max_length`` entries.

    At level 1 these are the naturals up to ``max_entry``; at higher levels the
    entries range over the enumeration of the level below.
    """
    if level == 1:
        return [OrdTerm.natural(n) for n in range(max_entry + 1)]
    below = sorted(enumerate_ord_terms(level - 1, max_entry, max_length),
                   key=lambda t: _OrdKey(t), reverse=True)
    found: List[OrdTerm] = [OrdTerm(level, ())]

    def extend(prefix: Tuple[OrdTerm, ...], start: int) -> None:
        if len(prefix) == max_length:
            return
        for i in range(start, len(below)):
            seq = prefix + (below[i],)
            found.append(OrdTerm(level, seq))
            extend(seq, i)

    extend((), 0)
    return found


class _OrdKey:
    __slots__ = ('term',)

    def __init__(self, term: OrdTerm) -> None:
        self.term = term

    def __lt__(self, other: '_OrdKey') -> bool:
        return _ord_cmp(self.term, other.term) < 0

    def __eq__(self, other: object) -> bool:
        return isinstance(other, _OrdKey) and _ord_cmp(self.term, other.term) == 0