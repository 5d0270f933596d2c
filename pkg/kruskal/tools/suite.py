"""The property suite: every invariant of the package, checked at the bounds of a size profile.

Each check returns verdicts; a check that hits a resource limit fails with
the limit as its message instead of aborting the run.
"""
from itertools import product
from typing import Callable, Iterable, List, Optional, Sequence

from ..bridges import check_wz_iso, embedding_report
from ..dilator import (
    CodedDilator, eval_order, finite_at_one, is_monotone, leq_W, oracle_agreement, prime_transform,
    product_dilator, seq_dilator, unary_dilator, unary_wpo_decision, validate, wz_dilator, dual_product_dilator,
)
from ..exceptions import ResourceLimitError, ValidationError
from ..falsify import (
    NONE, bad_search, descent_search, is_antichain, is_bad, ladder_bad_sequence, lemma32_antichain, pigeonhole_bound,
)
from ..fixpoint import degenerate_isomorphism, enumerate_terms, term_system
from ..options import KruskalOptions, resolve
from ..orders import antichain, chain, enumerate_ord_terms, ord_leq, ord_lt, validate_partial_order
from ..trees import enumerate_trees, full_tree, label_gadget, oracle_equivalence, tree_leq
from ..utils import ValidationReport, Verdict, logger


def order_laws(name: str, items: Sequence, leq: Callable, bound: Optional[int] = None) -> Verdict:
    "Reflexivity, antisymmetry and transitivity of ``leq`` on ``items``."
    matrix = tuple(tuple(bool(leq(a, b)) for b in items) for a in items)
    try:
        validate_partial_order(len(items), matrix)
    except ValidationError as e:
        return Verdict.failed(name, str(e), '%d elements' % len(items), bound)
    return Verdict.passed(name, '%d elements' % len(items), bound)


def semantic_corpus(options: Optional[KruskalOptions] = None) -> List[CodedDilator]:
    "The built-ins whose coded order is compared with the direct semantics."
    return [
        seq_dilator(2, options),
        seq_dilator(3, options),
        product_dilator(1, options),
        product_dilator(2, options),
        wz_dilator(antichain(1), options, label='1'),
        wz_dilator(antichain(2), options, label='2'),
    ]


def rigged_corpus(options: Optional[KruskalOptions] = None) -> List[CodedDilator]:
    "Dilators that are not monotone."
    return [
        dual_product_dilator(2, options),
        unary_dilator(['c'], ['u', 'v'], relation='down', name='unary:down', options=options),
        unary_dilator(['c'], ['u', 'v'], relation='same', name='unary:same', options=options),
    ]


def unary_corpus(options: Optional[KruskalOptions] = None) -> List[CodedDilator]:
    "Monotone unary dilators, then the reversed-action one."
    return [
        unary_dilator(['c'], ['u', 'v'], name='unary:up', options=options),
        unary_dilator(['c', 'd'], ['u'], const_order=chain(2), const_below=[('c', 'u')], name='unary:below', options=options),
        unary_dilator(['c'], ['u', 'v'], relation='down', name='unary:down', options=options),
    ]


def _trees(options: KruskalOptions) -> Iterable[Verdict]:
    trees = enumerate_trees(options.tree_labels, options.tree_branching, options.tree_vertices, options)
    v = oracle_equivalence(trees, options)
    yield Verdict(v.name, v.ok, v.witness, v.message, options.tree_vertices)
    yield order_laws('tree-order', trees, tree_leq, options.tree_vertices)


def _semantics(options: KruskalOptions) -> Iterable[Verdict]:
    for d in semantic_corpus(options):
        v = oracle_agreement(d, options)
        yield Verdict('%s(%s)' % (v.name, d.name), v.ok, v.witness, v.message, v.bound)


def _fixpoint_laws(options: KruskalOptions) -> Iterable[Verdict]:
    for d in semantic_corpus(options):
        terms, _ = enumerate_terms(d, options=options)
        yield order_laws('fixpoint-order(%s)' % d.name, terms[:options.law_terms], term_system(d).leq, options.term_height)


def _wz_iso(options: KruskalOptions) -> Iterable[Verdict]:
    for label, z in (('1', antichain(1)), ('2', antichain(2)), ('2_01', chain(2))):
        v = check_wz_iso(z, options.term_height, options)
        yield Verdict('%s(%s)' % (v.name, label), v.ok, v.witness, v.message, v.bound)


def _bridges(options: KruskalOptions) -> Iterable[Verdict]:
    for check in embedding_report(options):
        yield check.reflection
        if not check.injective:
            yield Verdict.failed('injective:' + check.name, None, 'two arguments share an image')


def _gadgets(options: KruskalOptions) -> Iterable[Verdict]:
    # an embedding between full trees of positive height bounds both height and branching
    witness = None
    for i, j, k, l in product(range(1, 4), range(4), range(1, 4), range(1, 4)):
        if tree_leq(full_tree(k, i), full_tree(l, j)) and not (i <= j and k <= l):
            witness = (k, i, l, j)
            break
    yield Verdict('full-tree-monotone', witness is None, witness, 'heights and branching up to 3', 3)
    witness = None
    for i, j, k, l in product(range(4), range(4), range(1, 4), range(1, 4)):
        if i <= j and k <= l and not tree_leq(full_tree(k, i), full_tree(l, j)):
            witness = (k, i, l, j)
            break
    yield Verdict('full-tree-embeds', witness is None, witness, 'heights and branching up to 3', 3)
    witness = None
    for m in range(1, 5):
        gadgets = [label_gadget(m, l) for l in range(m)]
        if not is_antichain(gadgets, tree_leq):
            witness = m
            break
    yield Verdict('label-gadgets-incomparable', witness is None, witness, 'm up to 4', 4)


def _normality(options: KruskalOptions) -> Iterable[Verdict]:
    for d in (product_dilator(2, options), seq_dilator(3, options)):
        token = next(t for t in d.trace if t.shape.size >= 2)
        for length in range(2, options.lemma32_length + 1):
            result = lemma32_antichain(d, token, length, options)
            # recheck pairwise, independently of the witness search
            ok = result.ok and is_antichain(result.elements, lambda a, b: leq_W(d, a, b))
            yield Verdict('support-antichain(%s, L=%d)' % (d.name, length), ok, result.witness, bound=length)


def _ladders(options: KruskalOptions) -> Iterable[Verdict]:
    for d in rigged_corpus(options):
        mono = is_monotone(d, options)
        if mono:
            yield Verdict.failed('ladder(%s)' % d.name, None, 'no monotonicity witness found', mono.bound)
            continue
        ladder = ladder_bad_sequence(d, mono.witness, options.ladder_length, options)
        ok = ladder.bad and is_bad(ladder.elements, lambda a, b: leq_W(d, a, b))
        yield Verdict('ladder(%s)' % d.name, ok, None if ok else ladder.elements, bound=options.ladder_length)


def _prime(options: KruskalOptions) -> Iterable[Verdict]:
    # transforms carry n_max + 2 points; their triples stay within the validation bound
    capped = options.replace(transitivity_bound=min(options.transitivity_bound, options.validate_bound))
    for d in semantic_corpus(options):
        w = prime_transform(d, options)
        report = validate(w, capped)
        yield Verdict('prime-valid(%s)' % d.name, report.ok, report.failures() or None, bound=options.validate_bound)
        one = eval_order(w, chain(1), options)
        isolated = finite_at_one(w) == 2 and is_antichain(one.elements, one.leq)
        yield Verdict('prime-at-one(%s)' % d.name, isolated, None if isolated else one.elements)


def _degenerate(options: KruskalOptions) -> Iterable[Verdict]:
    d = unary_dilator(['a', 'b', 'c'], const_order=chain(3), name='constants', options=options)
    yield degenerate_isomorphism(d, options)


def _unary(options: KruskalOptions) -> Iterable[Verdict]:
    *monotone, reversed_action = unary_corpus(options)
    for d in monotone:
        decision = unary_wpo_decision(d, options)
        yield Verdict('unary-wpo(%s)' % d.name, decision.ok, decision.witness, decision.message, decision.bound)
        for k in range(1, options.host_size + 1):
            presentation = eval_order(d, chain(k), options)
            result = bad_search(presentation, pigeonhole_bound(d) * k + 1, options=options)
            yield Verdict('unary-bad-search(%s, %d)' % (d.name, k), result.status == NONE, result.witness,
                          result.status, k)
    decision = unary_wpo_decision(reversed_action, options)
    yield Verdict('unary-wpo(%s) refuted' % reversed_action.name, not decision.ok, None, decision.message, decision.bound)


def _ordinals(options: KruskalOptions) -> Iterable[Verdict]:
    terms = enumerate_ord_terms(2, options.ord_entry, options.ord_length)
    laws = order_laws('ord-order', terms, ord_leq, options.ord_length)
    if laws:
        total = all(ord_leq(a, b) or ord_leq(b, a) for a, b in product(terms, repeat=2))
        laws = Verdict('ord-order', total, None if total else 'incomparable pair', laws.message, laws.bound)
    yield laws
    steps = options.ord_length + 2
    witness = None
    for t in terms:
        chain_ = descent_search(2, t, steps)
        if len(chain_) > steps or not all(ord_lt(b, a) for a, b in zip([t] + chain_, chain_)):
            witness = t
            break
    yield Verdict('ord-descent', witness is None, witness, '%d starts' % len(terms), steps)


CHECKS = [
    ('trees', _trees),
    ('semantics', _semantics),
    ('fixpoint', _fixpoint_laws),
    ('wz-iso', _wz_iso),
    ('bridges', _bridges),
    ('gadgets', _gadgets),
    ('normality', _normality),
    ('ladders', _ladders),
    ('prime', _prime),
    ('degenerate', _degenerate),
    ('unary', _unary),
    ('ordinals', _ordinals),
]


def run_suite(options: Optional[KruskalOptions] = None, only: Optional[Sequence[str]] = None) -> ValidationReport:
    """Run the checks named in ``only`` (default: all) and collect their verdicts in order."""
    opts = resolve(options)
    report = ValidationReport('suite')
    for name, check in CHECKS:
        if only and name not in only:
            continue
        logger.info("suite: running %s", name)
        try:
            for verdict in check(opts):
                report.add(verdict)
        except ResourceLimitError as e:
            report.add(Verdict.failed(name, None, 'resource limit: %s' % e, e.bound))
    return report
