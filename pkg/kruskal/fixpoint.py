"""The initial Kruskal fixed point of a coded dilator, as a system of terms.

A term ``(a, s)`` has a finite set ``a`` of earlier terms as children and a
trace token ``s`` whose shape is the order that ``a`` inherits. Terms are
compared by the fixed point equivalence: ``s <= t`` iff the underlying
elements of ``W`` compare over ``a_s + a_t``, or ``s`` is below a child of ``t``.
"""
from itertools import combinations
from typing import Any, Dict, List, NamedTuple, Optional, Sequence, Tuple

from .dilator import CodedDilator, DilElem, TraceToken, as_value, elements_over, is_degenerate, leq_W, normal_form, semantics
from .exceptions import ConstructionError, PreconditionError, ValidationError
from .options import KruskalOptions, resolve
from .orders import EMPTY, FinPoset, canonical_form, induced_suborder
from .utils import Verdict, compare_with, logger


class FixTerm:
    """A term ``(children, token)``.

    Children are kept sorted by :attr:`rank` and are pairwise distinct. Terms
    are immutable; equality and hashing go through the serialized form.
    """
    __slots__ = ('children', 'token', 'height', 'length', 'serialized', '_hash')

    def __init__(self, children: Tuple['FixTerm', ...], token: TraceToken) -> None:
        object.__setattr__(self, 'children', children)
        object.__setattr__(self, 'token', token)
        object.__setattr__(self, 'height', max([c.height + 1 for c in children], default=0))
        object.__setattr__(self, 'length', 1 + sum(c.length for c in children))
        object.__setattr__(self, 'serialized', '(%s:%s)' % (token.id, ' '.join(c.serialized for c in children)))
        object.__setattr__(self, '_hash', hash(self.serialized))

    def __setattr__(self, name, value):
        raise AttributeError("FixTerm is immutable")

    @property
    def rank(self) -> Tuple[int, int, str]:
        "The structural total order: height, then length, then the serialized form."
        return (self.height, self.length, self.serialized)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FixTerm) and self.serialized == other.serialized

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self):
        return self.serialized

    def __str__(self):
        return self.serialized


def rank_sorted(terms: Sequence[FixTerm]) -> Tuple[FixTerm, ...]:
    "Deduplicate and sort by rank."
    return tuple(sorted(set(terms), key=lambda t: t.rank))


class TermEnumeration(NamedTuple):
    terms: List[FixTerm]
    truncated: bool


class TermSystem:
    """The term order of one dilator, with its memo tables.

    Use :func:`term_system` to get the shared instance of a dilator.
    """

    def __init__(self, d: CodedDilator) -> None:
        self.d = d
        self._leq: Dict[Tuple[FixTerm, FixTerm], bool] = {}
        self._hosts: Dict[Tuple[FixTerm, ...], FinPoset] = {}

    def host(self, terms: Tuple[FixTerm, ...]) -> FinPoset:
        "The order that ``leq`` induces on a rank-sorted tuple of terms."
        try:
            return self._hosts[terms]
        except KeyError:
            pass
        matrix = tuple(tuple(self.leq(s, t) for t in terms) for s in terms)
        p = self._hosts[terms] = FinPoset(len(terms), matrix)
        return p

    def leq(self, s: FixTerm, t: FixTerm) -> bool:
        if s is t or s == t:
            return True
        key = (s, t)
        try:
            return self._leq[key]
        except KeyError:
            pass
        result = self._first_disjunct(s, t) or any(self.leq(s, x) for x in t.children)
        self._leq[key] = result
        return result

    def _first_disjunct(self, s: FixTerm, t: FixTerm) -> bool:
        # Both sets of children live in the finite suborder spanned by their union.
        union = rank_sorted(s.children + t.children)
        host = self.host(union)
        position = {u: i for i, u in enumerate(union)}
        x = DilElem(host, frozenset(position[c] for c in s.children), s.token)
        y = DilElem(host, frozenset(position[c] for c in t.children), t.token)
        return leq_W(self.d, x, y)

    def mk_term(self, children: Sequence[FixTerm], token: TraceToken) -> FixTerm:
        """Build ``(children, token)``, rejecting it unless the children carry the token's shape."""
        if not self.d.has_token(token.id) or self.d.token(token.id) != token:
            raise ConstructionError("%s is not a token of %s" % (token.id, self.d.name))
        for c in children:
            if not self.d.has_token(c.token.id):
                raise ConstructionError("Child %s was not built over %s" % (c, self.d.name))
        kids = rank_sorted(children)
        try:
            shape = canonical_form(self.host(kids))[0]
        except ValidationError as e:
            raise ConstructionError("The children of %s do not form a partial order: %s" % (token.id, e))
        if shape != token.shape:
            raise ConstructionError("Token %s has shape %s, but its %d children have shape %s"
                                    % (token.id, token.shape.code, len(kids), shape.code))
        return FixTerm(kids, token)

    def kappa(self, terms: Sequence[FixTerm], value: Any) -> FixTerm:
        """The term of a value of ``W`` over ``terms`` (element ``i`` of the value is ``terms[i]``).

        This is the bijection from ``W(T)`` to ``T``.
        """
        kids = rank_sorted(terms)
        if len(kids) != len(terms):
            raise ConstructionError("kappa needs distinct terms")
        position = {t: i for i, t in enumerate(kids)}
        relabel = [position[t] for t in terms]
        sem = semantics(self.d)
        value = sem.fmap(relabel.__getitem__, value)
        elem = normal_form(self.d, self.host(kids), value)
        return self.mk_term([kids[i] for i in sorted(elem.support)], elem.token)

    def decompose(self, t: FixTerm) -> Tuple[Tuple[FixTerm, ...], Any]:
        """Inverse of :meth:`kappa`: the children and ``W(en_a)(token)`` as a value over them."""
        host = self.host(t.children)
        return t.children, as_value(self.d, DilElem(host, frozenset(range(len(t.children))), t.token))

    def compare(self, s: FixTerm, t: FixTerm) -> str:
        return compare_with(self.leq, s, t)

    def enumerate_terms(self, max_height: int, max_count: int) -> TermEnumeration:
        """All terms of height at most ``max_height``, level by level, sorted by rank.

        At most ``max_count`` terms are returned; ``truncated`` says whether more exist.
        """
        found: List[FixTerm] = []
        truncated = False
        for h in range(max_height + 1):
            pool = sorted(found, key=lambda t: t.rank)
            fresh: List[FixTerm] = []
            sizes = [0] if h == 0 else range(1, self.d.n_max + 1)
            for r in sizes:
                for combo in combinations(pool, r):
                    if h > 0 and combo[-1].height != h - 1:
                        # pool is rank-sorted, so the highest child comes last
                        continue
                    shape = induced_suborder(self.host(combo), range(r)).shape
                    for token in self.d.tokens_of_shape(shape):
                        if len(found) + len(fresh) >= max_count:
                            truncated = True
                            break
                        fresh.append(FixTerm(combo, token))
                    if truncated:
                        break
                if truncated:
                    break
            found.extend(fresh)
            logger.debug("%s: %d terms of height %d", self.d.name, len(fresh), h)
            if truncated:
                logger.warning("Term enumeration of %s truncated at %d terms", self.d.name, max_count)
                break
            if not fresh:
                break
        return TermEnumeration(sorted(found, key=lambda t: t.rank), truncated)


def term_system(d: CodedDilator) -> TermSystem:
    "The shared term system of a dilator; it lives as long as the dilator."
    system = d.__dict__.get("_term_system")
    if system is None:
        system = d.__dict__["_term_system"] = TermSystem(d)
    return system


def mk_term(d: CodedDilator, children: Sequence[FixTerm], token: TraceToken) -> FixTerm:
    return term_system(d).mk_term(children, token)


def leq_T(d: CodedDilator, s: FixTerm, t: FixTerm) -> bool:
    return term_system(d).leq(s, t)


def height(t: FixTerm) -> int:
    return t.height


def length(t: FixTerm) -> int:
    return t.length


def enumerate_terms(d: CodedDilator, max_height: Optional[int] = None, max_count: Optional[int] = None,
                    options: Optional[KruskalOptions] = None) -> TermEnumeration:
    opts = resolve(options)
    return term_system(d).enumerate_terms(opts.term_height if max_height is None else max_height,
                                          opts.term_count if max_count is None else max_count)


def leaf(d: CodedDilator, token_id: str) -> FixTerm:
    "The term ``(empty, token)`` of an empty-shape token."
    return mk_term(d, [], d.token(token_id))


def degenerate_isomorphism(d: CodedDilator, options: Optional[KruskalOptions] = None) -> Verdict:
    """For a dilator whose tokens all have empty shape, the terms are exactly the
    leaves and their order is the order of ``W(0)``.
    """
    if not is_degenerate(d):
        raise PreconditionError("%s has tokens with non-empty shape" % d.name)
    terms, truncated = enumerate_terms(d, max(1, resolve(options).term_height), options=options)
    if truncated or any(t.height for t in terms):
        return Verdict.failed('degenerate-isomorphism', terms, 'terms of positive height exist')
    zero = elements_over(d, EMPTY)
    by_token = {e.token: e for e in zero}
    if sorted(t.token.id for t in terms) != sorted(e.token.id for e in zero):
        return Verdict.failed('degenerate-isomorphism', (terms, zero), 'leaves and W(0) differ')
    system = term_system(d)
    for s in terms:
        for t in terms:
            if system.leq(s, t) != leq_W(d, by_token[s.token], by_token[t.token]):
                return Verdict.failed('degenerate-isomorphism', (s, t), 'orders differ')
    return Verdict.passed('degenerate-isomorphism', '%d leaves' % len(terms))
