"""Direct semantics of the built-in dilators.

A functor describes ``W(X)`` for a finite poset ``X`` as a list of plain
Python values, together with supports, the action of maps and the order.
Coded dilators are derived from these descriptions, and the same
descriptions serve as the independent side of the oracle-agreement checks.
"""
import re
from itertools import product
from typing import Any, Callable, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .exceptions import ConfigurationError, ValidationError, assert_config
from .orders import CanonicalPoset, FinPoset, antichain, higman_leq, induced_suborder
from .utils import invert

Value = Any
ElementMap = Callable[[int], int]

NAME_RE = re.compile(r'^[A-Za-z0-9_.\-]+$')

# Order of the tuple in a unary value relative to the host order.
RELATION_UP = 'up'
RELATION_DOWN = 'down'
RELATION_SAME = 'same'
RELATIONS = (RELATION_UP, RELATION_DOWN, RELATION_SAME)


def _digits(values: Iterable[int]) -> str:
    return ''.join(str(v) for v in values)


class Functor:
    """The interface shared by all direct semantics.

    Subclasses describe one endofunctor on finite posets. ``fmap`` is only
    ever called with quasi-embeddings (or with partial inverses of
    enumerations), so it does not need to check its argument.
    """
    name: str = '?'
    n_max: int = 0

    def elements(self, x: FinPoset) -> List[Value]:
        raise NotImplementedError(self)

    def support(self, v: Value) -> FrozenSet[int]:
        raise NotImplementedError(self)

    def fmap(self, f: ElementMap, v: Value) -> Value:
        raise NotImplementedError(self)

    def leq(self, x: FinPoset, v: Value, w: Value) -> bool:
        raise NotImplementedError(self)

    def normal(self, x: FinPoset, v: Value) -> Value:
        return v

    def tag(self, v: Value) -> str:
        raise NotImplementedError(self)

    def token_id(self, c: CanonicalPoset, v: Value) -> str:
        tag = self.tag(v)
        return tag if c.size == 0 else '%s@%s' % (tag, c.code)

    def full_support_values(self, c: FinPoset) -> List[Value]:
        everything = frozenset(range(c.size))
        return [v for v in self.elements(c) if self.support(v) == everything]

    def __repr__(self):
        return '%s(%s)' % (type(self).__name__, self.name)


class _TupleFunctor(Functor):
    "Shared plumbing for functors whose values are tuples of host elements."
    prefix = ''

    def support(self, v):
        return frozenset(v)

    def fmap(self, f, v):
        return tuple(f(e) for e in v)

    def tag(self, v):
        return self.prefix + _digits(v) if v else 'empty'


class SeqFunctor(_TupleFunctor):
    """Sequences of length below ``n`` with the order from Higman's lemma."""
    prefix = 's'

    def __init__(self, n: int) -> None:
        if n < 1:
            raise ConfigurationError("seq needs n >= 1, got %r" % n)
        self.n = n
        self.n_max = n - 1
        self.name = 'seq:%d' % n

    def elements(self, x):
        return [v for k in range(self.n) for v in product(range(x.size), repeat=k)]

    def leq(self, x, v, w):
        return higman_leq(x, v, w)


class ProductFunctor(_TupleFunctor):
    """``X^n`` with the componentwise order."""
    prefix = 'p'

    def __init__(self, n: int) -> None:
        if n < 1:
            raise ConfigurationError("prod needs n >= 1, got %r" % n)
        self.n = n
        self.n_max = n
        self.name = 'prod:%d' % n

    def elements(self, x):
        return list(product(range(x.size), repeat=self.n))

    def leq(self, x, v, w):
        return all(x.leq(a, b) for a, b in zip(v, w))


class DualProductFunctor(ProductFunctor):
    """``X^n`` ordered by reverse domination in every component.

    Embeddings preserve and reflect this order, so it is a dilator, but it is
    neither normal nor monotone.
    """
    prefix = 'q'

    def __init__(self, n: int) -> None:
        super(DualProductFunctor, self).__init__(n)
        self.name = 'dual:%d' % n

    def leq(self, x, v, w):
        return all(x.leq(b, a) for a, b in zip(v, w))


class LexProductFunctor(ProductFunctor):
    """``X^n`` ordered lexicographically: the first differing component decides, strictly.

    Monotone, but not normal: over the 3-chain ``(0, 2) <= (1, 0)`` holds while
    ``2`` lies above the whole support of the right side.
    """
    prefix = 'l'

    def __init__(self, n: int) -> None:
        super(LexProductFunctor, self).__init__(n)
        self.name = 'lex:%d' % n

    def leq(self, x, v, w):
        for a, b in zip(v, w):
            if a != b:
                return x.lt(a, b)
        return True


class WZFunctor(Functor):
    """``1 + Z x X``: one isolated point and pairs ordered componentwise."""

    def __init__(self, z: FinPoset, label: Optional[str] = None) -> None:
        self.z = z
        self.n_max = 1
        self.name = 'wz:%s' % (label if label is not None else z.size)

    def elements(self, x):
        return [None] + [(zi, xi) for zi in range(self.z.size) for xi in range(x.size)]

    def support(self, v):
        return frozenset() if v is None else frozenset([v[1]])

    def fmap(self, f, v):
        return None if v is None else (v[0], f(v[1]))

    def leq(self, x, v, w):
        if v is None or w is None:
            return v is None and w is None
        return self.z.leq(v[0], w[0]) and x.leq(v[1], w[1])

    def tag(self, v):
        return 'one' if v is None else 'z%d' % v[0]


class UnaryFunctor(Functor):
    """Constants (empty support) plus named unary constructors ``(u, x)``.

    ``const_order`` and ``unary_order`` order the constants and the constructor
    names; ``const_below`` lists pairs ``(c, u)`` with ``c <= (u, x)`` for every
    ``x`` (closed upwards along both orders). ``relation`` says how the host
    elements of two unary values must compare:

    - ``'up'``: ``x <= x'`` (monotone)
    - ``'down'``: ``x' <= x`` (the reversed action)
    - ``'same'``: ``x == x'``
    """

    def __init__(self, constants: Sequence[str] = (), unaries: Sequence[str] = (),
                 const_order: Optional[FinPoset] = None, unary_order: Optional[FinPoset] = None,
                 const_below: Iterable[Tuple[str, str]] = (), relation: str = RELATION_UP,
                 name: str = 'unary') -> None:
        assert_config(relation, RELATIONS, "Unknown unary relation %r, expected one of %s")
        names = list(constants) + list(unaries)
        for n in names:
            if not NAME_RE.match(n) or n in ('star', 'plus'):
                raise ConfigurationError("Invalid token name %r" % n)
        if len(set(names)) != len(names):
            raise ConfigurationError("Token names must be distinct: %r" % names)
        self.constants = tuple(constants)
        self.unaries = tuple(unaries)
        self.const_order = const_order if const_order is not None else antichain(len(self.constants))
        self.unary_order = unary_order if unary_order is not None else antichain(len(self.unaries))
        if self.const_order.size != len(self.constants) or self.unary_order.size != len(self.unaries):
            raise ValidationError("Order sizes do not match the number of token names")
        self.relation = relation
        self._ci = invert(self.constants)
        self._ui = invert(self.unaries)
        below = set()
        for c, u in const_below:
            if c not in self._ci or u not in self._ui:
                raise ValidationError("Unknown names in const_below pair %r" % ((c, u),))
            for c2 in self.constants:
                for u2 in self.unaries:
                    if self.const_order.leq(self._ci[c2], self._ci[c]) and self.unary_order.leq(self._ui[u], self._ui[u2]):
                        below.add((c2, u2))
        self.const_below = frozenset(below)
        self.n_max = 1 if self.unaries else 0
        self.name = name

    def elements(self, x):
        return list(self.constants) + [(u, xi) for u in self.unaries for xi in range(x.size)]

    def support(self, v):
        return frozenset() if isinstance(v, str) else frozenset([v[1]])

    def fmap(self, f, v):
        return v if isinstance(v, str) else (v[0], f(v[1]))

    def leq(self, x, v, w):
        if isinstance(v, str):
            if isinstance(w, str):
                return self.const_order.leq(self._ci[v], self._ci[w])
            return (v, w[0]) in self.const_below
        if isinstance(w, str):
            return False
        if not self.unary_order.leq(self._ui[v[0]], self._ui[w[0]]):
            return False
        if self.relation == RELATION_UP:
            return x.leq(v[1], w[1])
        if self.relation == RELATION_DOWN:
            return x.leq(w[1], v[1])
        return v[1] == w[1]

    def tag(self, v):
        return v if isinstance(v, str) else v[0]


STAR = 'star'
PLUS = 'plus'


class PrimeFunctor(Functor):
    """``W'(X) = {star, plus} + {(x, y, s) | x != y, s in W(X)}``.

    ``star`` and ``plus`` have empty support and are incomparable with every
    other value; triples compare componentwise. ``base`` is the coded dilator
    of ``W`` (it names the inner tokens) and ``inner`` its direct semantics.
    """

    def __init__(self, base, inner: Functor) -> None:
        self.base = base
        self.inner = inner
        self.n_max = base.n_max + 2
        self.name = 'prime:%s' % base.name

    def elements(self, x):
        inner = self.inner.elements(x)
        return [STAR, PLUS] + [(a, b, s) for a in range(x.size) for b in range(x.size) if a != b for s in inner]

    def support(self, v):
        if isinstance(v, str):
            return frozenset()
        return frozenset([v[0], v[1]]) | self.inner.support(v[2])

    def fmap(self, f, v):
        if isinstance(v, str):
            return v
        return (f(v[0]), f(v[1]), self.inner.fmap(f, v[2]))

    def normal(self, x, v):
        if isinstance(v, str):
            return v
        return (v[0], v[1], self.inner.normal(x, v[2]))

    def leq(self, x, v, w):
        if isinstance(v, str) or isinstance(w, str):
            return v == w
        return x.leq(v[0], w[0]) and x.leq(v[1], w[1]) and self.inner.leq(x, v[2], w[2])

    def inner_token(self, c: FinPoset, s: Value):
        "The trace token of ``base`` that the inner value ``s`` over ``c`` normalizes to."
        sub = induced_suborder(c, self.inner.support(s))
        position = invert(sub.en.values)
        rho = self.inner.normal(sub.shape, self.inner.fmap(position.__getitem__, s))
        return sub, self.base.token(self.inner.token_id(sub.shape, rho))

    def token_id(self, c, v):
        if isinstance(v, str):
            return v
        sub, token = self.inner_token(c, v[2])
        tag = 't%d%d_%s_%s' % (v[0], v[1], _digits(sub.en.values), token.id)
        return tag if c.size == 0 else '%s@%s' % (tag, c.code)
