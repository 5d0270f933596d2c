"""Order-reflecting maps between trees, term systems and sequence orders.

Each map comes with its reflection property: when the images compare, the
arguments compare. :func:`check_bridge` verifies that on a finite domain and
measures, without asserting, how often the order is also preserved.
"""
from itertools import product
from typing import Any, Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

from .dilator import (
    CodedDilator, as_value, eval_order, full_elem, is_unary, prime_transform, prod_embed, prod_embed_leq,
    product_dilator, semantics, seq_dilator, unary_dilator, wz_dilator,
)
from .exceptions import PreconditionError, assert_config
from .fixpoint import FixTerm, enumerate_terms, leaf, term_system
from .functors import PLUS, STAR, WZFunctor
from .options import KruskalOptions, resolve
from .orders import EMPTY, FinPoset, OrderMap, chain, higman_leq, induced_suborder, is_quasi_embedding, sum_order
from .trees import LabeledTree, check_universe, enumerate_trees, label_gadget, tree_leq
from .utils import Verdict, dedup_list, invert, logger


# Trees into the fixed point of seq(n)
# ------------------------------------

def tree_to_fixpoint(n: int, t: LabeledTree, d: Optional[CodedDilator] = None) -> FixTerm:
    """Send ``0*(t0 ... tk)`` to the term of the sequence ``<f(t0), ..., f(tk)>``.

    ``d`` defaults to ``seq_dilator(n)``; pass it to stay in one term system.
    """
    check_universe(t, 1, n)
    if d is None:
        d = seq_dilator(n)
    system = term_system(d)
    memo: Dict[LabeledTree, FixTerm] = {}

    def f(node: LabeledTree) -> FixTerm:
        try:
            return memo[node]
        except KeyError:
            pass
        images = [f(c) for c in node.children]
        terms = dedup_list(images)
        position = invert(terms)
        result = memo[node] = system.kappa(terms, tuple(position[x] for x in images))
        return result

    return f(t)


def delabel(m: int, n: int, t: LabeledTree) -> LabeledTree:
    """Trade the labels of ``T^m_n`` for gadgets: ``l*(t0 ... tk)`` becomes
    ``0*(g(t0) ... g(tk) t(l) ... t(l))`` with exactly ``n`` children, where
    ``t(l)`` is :func:`~kruskal.trees.label_gadget`.

    The result lives in ``T_(n+1)``.
    """
    if m >= n:
        raise PreconditionError("delabel: m < n required, got m=%d, n=%d" % (m, n))
    check_universe(t, m, n)
    gadgets = [label_gadget(m, l) for l in range(m)]

    def g(node: LabeledTree) -> LabeledTree:
        kids = [g(c) for c in node.children]
        return LabeledTree(0, kids + [gadgets[node.label]] * (n - len(kids)))

    return g(t)


def default_labels(d: CodedDilator) -> Dict[str, int]:
    "Number the trace tokens in trace order."
    return {token.id: i for i, token in enumerate(d.trace)}


def fixpoint_to_tree(d: CodedDilator, t: FixTerm, e: Optional[Dict[str, int]] = None) -> LabeledTree:
    """Send ``(a, s)`` to ``e(s)*(j(t0) ... tk)``, where ``t_i`` is the child at
    position ``i`` of the enumeration of ``a``.

    ``e`` labels trace tokens injectively; it defaults to the trace order.
    The result lives in ``T^m_n`` with ``m`` the number of labels and ``n`` one
    more than the largest shape.
    """
    labels = default_labels(d) if e is None else e
    missing = [token.id for token in d.trace if token.id not in labels]
    if missing:
        raise PreconditionError("The token labeling misses %s" % ', '.join(missing))
    if len(set(labels[token.id] for token in d.trace)) != len(d.trace):
        raise PreconditionError("The token labeling is not injective")
    system = term_system(d)

    def j(s: FixTerm) -> LabeledTree:
        en = induced_suborder(system.host(s.children), range(len(s.children))).en.values
        return LabeledTree(labels[s.token.id], [j(s.children[i]) for i in en])

    return j(t)


# Unary dilators into sequences
# -----------------------------

UnaryLetter = Tuple[int, str]


class UnaryTarget(NamedTuple):
    """``Y = W(0) + W(1)``; letter ``(0, s)`` is the element ``s`` of ``W(0)``,
    letter ``(1, s)`` the element of ``W(1)`` with token ``s``.
    """
    poset: FinPoset
    letters: List[UnaryLetter]
    index: Dict[UnaryLetter, int]

    def leq(self, a: UnaryLetter, b: UnaryLetter) -> bool:
        return self.poset.leq(self.index[a], self.index[b])


def unary_target_order(d: CodedDilator, options: Optional[KruskalOptions] = None) -> UnaryTarget:
    if not is_unary(d):
        raise PreconditionError("%s is not unary" % d.name)
    zero = eval_order(d, EMPTY, options)
    one = eval_order(d, chain(1), options)
    poset = sum_order([zero.poset, one.poset])
    letters = [(0, x.token.id) for x in zero.elements] + [(1, x.token.id) for x in one.elements]
    return UnaryTarget(poset, letters, invert(letters))


def unary_to_seq(d: CodedDilator, t: FixTerm) -> Tuple[UnaryLetter, ...]:
    """Unfold a term of a unary dilator: ``(empty, s)`` gives ``<(0, s)>`` and
    ``({u}, s)`` gives ``(1, s)`` followed by the sequence of ``u``.
    """
    if not is_unary(d):
        raise PreconditionError("%s is not unary" % d.name)
    letters: List[UnaryLetter] = []
    while t.children:
        letters.append((1, t.token.id))
        t, = t.children
    letters.append((0, t.token.id))
    return tuple(letters)


def unary_seq_leq(target: UnaryTarget, s: Sequence[UnaryLetter], t: Sequence[UnaryLetter]) -> bool:
    return higman_leq(target.leq, s, t)


# The transform W -> W'
# ---------------------

class PrimeBridge:
    """Send the terms of ``d`` into the terms of ``prime_transform(d)``.

    ``(a, s)`` goes to the term of ``<star, plus, W(j . en_a)(s)>``, where star
    and plus are the leaves of the two isolated tokens.
    """

    def __init__(self, d: CodedDilator, options: Optional[KruskalOptions] = None,
                 target: Optional[CodedDilator] = None) -> None:
        self.d = d
        self.target = target if target is not None else prime_transform(d, options)
        self.system = term_system(self.target)
        self.star = leaf(self.target, STAR)
        self.plus = leaf(self.target, PLUS)
        self.defaulted = 0
        self._memo: Dict[FixTerm, FixTerm] = {}

    def __call__(self, t: FixTerm) -> FixTerm:
        try:
            return self._memo[t]
        except KeyError:
            pass
        result = self._memo[t] = self._image(t)
        return result

    def _image(self, t: FixTerm) -> FixTerm:
        source = term_system(self.d)
        en = induced_suborder(source.host(t.children), range(len(t.children))).en.values
        images = [self(t.children[i]) for i in en]
        terms = [self.star, self.plus] + images
        if len(set(terms)) != len(terms) or not self._reflects(t.token.shape, images):
            # j . en_a is not a quasi-embedding; only possible on inputs that fail validation
            self.defaulted += 1
            logger.warning("to_prime: %s has no proper image, using the star leaf", t)
            return self.star
        inner = semantics(self.d).fmap(lambda i: i + 2, as_value(self.d, full_elem(t.token)))
        return self.system.kappa(terms, (0, 1, inner))

    def _reflects(self, shape: FinPoset, images: List[FixTerm]) -> bool:
        host = self.system.host(tuple(images))
        return is_quasi_embedding(OrderMap(shape, host, tuple(range(len(images)))))


def to_prime(d: CodedDilator, t: FixTerm, options: Optional[KruskalOptions] = None) -> FixTerm:
    return PrimeBridge(d, options)(t)


# Sequences over Z
# ----------------

TO_SEQUENCES = 'to-seq'
FROM_SEQUENCES = 'from-seq'


def _wz(d: Union[CodedDilator, FinPoset]) -> CodedDilator:
    if isinstance(d, FinPoset):
        return wz_dilator(d)
    if not isinstance(d.functor, WZFunctor):
        raise PreconditionError("%s is not of the form 1 + Z x X" % d.name)
    return d


def wz_iso(d: Union[CodedDilator, FinPoset], direction: str = TO_SEQUENCES) -> Callable:
    """The isomorphism between the terms of ``1 + Z x X`` and the sequences over ``Z``.

    The leaf is the empty sequence, and the term with token ``z`` over the
    child ``s`` is ``z`` followed by the sequence of ``s``. With a poset
    argument the dilator is built here; pass the dilator to stay in its term system.
    """
    assert_config(direction, (TO_SEQUENCES, FROM_SEQUENCES))
    d = _wz(d)
    z = d.functor.z  # type: ignore[union-attr]
    system = term_system(d)
    one = leaf(d, 'one')

    def to_sequence(t: FixTerm) -> Tuple[int, ...]:
        letters: List[int] = []
        while t.children:
            letters.append(t.token.value[0])
            t, = t.children
        return tuple(letters)

    def from_sequence(s: Sequence[int]) -> FixTerm:
        t = one
        for letter in reversed(s):
            if not 0 <= letter < z.size:
                raise PreconditionError("%r is not an element of Z" % (letter,))
            t = system.kappa([t], (letter, 0))
        return t

    return to_sequence if direction == TO_SEQUENCES else from_sequence


def higman_sequences(z: FinPoset, max_length: int) -> List[Tuple[int, ...]]:
    return [s for k in range(max_length + 1) for s in product(range(z.size), repeat=k)]


def check_wz_iso(z: FinPoset, max_height: int, options: Optional[KruskalOptions] = None) -> Verdict:
    "Terms up to ``max_height`` and sequences up to that length correspond, with the same order."
    d = wz_dilator(z, options)
    terms, _ = enumerate_terms(d, max_height, options=options)
    to_seq, from_seq = wz_iso(d, TO_SEQUENCES), wz_iso(d, FROM_SEQUENCES)
    images = [to_seq(t) for t in terms]
    if sorted(images) != sorted(higman_sequences(z, max_height)):
        return Verdict.failed('wz-iso', images, 'not a bijection onto the sequences', max_height)
    system = term_system(d)
    for t, s in zip(terms, images):
        if from_seq(s) != t:
            return Verdict.failed('wz-iso', (t, s), 'the two directions are not inverse', max_height)
    for (s, a), (t, b) in product(zip(terms, images), repeat=2):
        if system.leq(s, t) != higman_leq(z, a, b):
            return Verdict.failed('wz-iso', (s, t), 'orders differ', max_height)
    return Verdict.passed('wz-iso', '%d terms' % len(terms), max_height)


# Reflection checks
# -----------------

class BridgeCheck(NamedTuple):
    """Reflection is asserted; ``preserved`` out of ``comparable`` source pairs is only measured."""
    name: str
    reflection: Verdict
    injective: bool
    comparable: int
    preserved: int

    @property
    def ok(self) -> bool:
        return self.reflection.ok and self.injective

    def as_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name, 'reflection': self.reflection.as_dict(), 'injective': self.injective,
            'comparable': self.comparable, 'preserved': self.preserved,
        }


def check_bridge(name: str, domain: Sequence, leq_in: Callable[[Any, Any], bool], f: Callable,
                 leq_out: Callable[[Any, Any], bool]) -> BridgeCheck:
    images = [f(a) for a in domain]
    witness = None
    comparable = preserved = 0
    for (a, x), (b, y) in product(zip(domain, images), repeat=2):
        below = leq_in(a, b)
        after = leq_out(x, y)
        if below:
            comparable += 1
            preserved += after
        elif after and witness is None:
            witness = (a, b)
    injective = len(set(map(_hashable, images))) == len(images)
    reflection = Verdict('reflection:' + name, witness is None, witness, '%d pairs' % len(domain) ** 2)
    logger.info("bridge %s: reflection %s, %d of %d comparable pairs preserved",
                name, 'ok' if reflection else 'FAILED', preserved, comparable)
    return BridgeCheck(name, reflection, injective, comparable, preserved)


def _hashable(x: Any) -> Any:
    return tuple(x) if isinstance(x, list) else x


def embedding_report(options: Optional[KruskalOptions] = None) -> List[BridgeCheck]:
    """Run every bridge on its test domain at the configured bounds."""
    opts = resolve(options)
    checks = []

    seq3 = seq_dilator(3, options)
    sys3 = term_system(seq3)
    trees3 = enumerate_trees(1, 3, opts.tree_vertices, options)
    checks.append(check_bridge('tree-to-fix', trees3, tree_leq, lambda t: tree_to_fixpoint(3, t, seq3), sys3.leq))

    small = enumerate_trees(2, 3, min(opts.tree_vertices, 4), options)
    checks.append(check_bridge('delabel', small, tree_leq, lambda t: delabel(2, 3, t), tree_leq))

    seq2 = seq_dilator(2, options)
    terms2, _ = enumerate_terms(seq2, opts.term_height, options=options)
    checks.append(check_bridge('fix-to-tree', terms2, term_system(seq2).leq,
                               lambda t: fixpoint_to_tree(seq2, t), tree_leq))

    unary = unary_dilator(['c', 'd'], ['u', 'v'], name='unary:up', options=options)
    target = unary_target_order(unary, options)
    terms_u, _ = enumerate_terms(unary, opts.term_height + 1, options=options)
    checks.append(check_bridge('unary-to-seq', terms_u, term_system(unary).leq,
                               lambda t: unary_to_seq(unary, t), lambda s, t: unary_seq_leq(target, s, t)))

    for d in (seq2, wz_dilator(chain(2), options, label='2_01'), product_dilator(1, options)):
        bridge = PrimeBridge(d, options)
        terms, _ = enumerate_terms(d, min(opts.term_height, 2), options=options)
        checks.append(check_bridge('to-prime(%s)' % d.name, terms, term_system(d).leq, bridge, bridge.system.leq))

    prod2 = product_dilator(2, options)
    host = chain(2)
    elements = eval_order(prod2, host, options)
    checks.append(check_bridge('prod-embed', elements.elements, elements.leq,
                               lambda x: prod_embed(prod2, host, x), lambda g, h: prod_embed_leq(host, g, h)))
    return checks

