"""Bounded searches for bad sequences and the constructions that produce them.

Nothing here ever claims that an order is a well partial order. A search
either finds a witness, finishes without one inside its bounds, or runs out
of budget; the three outcomes are reported as distinct results.
"""
from itertools import islice
from typing import Any, Callable, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

from .dilator import (
    CodedDilator, DilElem, MonotonicityWitness, Presentation, TraceToken, apply_map, full_elem, is_unary, leq_W,
)
from .exceptions import PreconditionError, ResourceLimitError, WitnessError
from .options import KruskalOptions, resolve
from .orders import (
    FinPoset, OrderMap, OrdTerm, antichain, chain, discrete_times_chain, is_quasi_embedding, lex_double,
    ord_lt, pointwise_leq, sum_order,
)
from .utils import logger

FOUND = 'FOUND'
NONE = 'NONE'
INCONCLUSIVE = 'INCONCLUSIVE'


class SearchResult(NamedTuple):
    """``status`` is FOUND (with ``witness``), NONE or INCONCLUSIVE.

    NONE means every candidate was examined; it is not a proof of anything
    beyond the examined prefix.
    """
    status: str
    witness: Optional[List[Any]]
    explored: int
    reason: str = ''

    def __bool__(self) -> bool:
        return self.status == FOUND


def _source(p: Union[FinPoset, Presentation, Iterable], leq: Optional[Callable[[Any, Any], bool]]) -> Tuple[Iterable, Callable]:
    if isinstance(p, FinPoset):
        return range(p.size), p.leq
    if isinstance(p, Presentation):
        return p.elements, p.leq
    if leq is None:
        raise PreconditionError("bad_search over a generator needs a comparison function")
    return p, leq


def bad_search(p: Union[FinPoset, Presentation, Iterable], length_bound: int, width_bound: Optional[int] = None,
               leq: Optional[Callable[[Any, Any], bool]] = None, budget: Optional[int] = None,
               options: Optional[KruskalOptions] = None) -> SearchResult:
    """Look for ``length_bound`` candidates, in generator order, with ``p_i`` not below ``p_j`` for ``i < j``.

    Only the first ``width_bound`` candidates are considered. The least
    witness in the order of candidate positions is returned.
    """
    if length_bound < 1:
        raise PreconditionError("length_bound must be positive")
    budget = resolve(options).search_budget if budget is None else budget
    items, leq_ = _source(p, leq)
    if width_bound is None:
        candidates = list(items)
        exhausted = True
    else:
        candidates = list(islice(iter(items), width_bound + 1))
        exhausted = len(candidates) <= width_bound
        candidates = candidates[:width_bound]
    explored = 0
    chosen: List[int] = []

    def extend(start: int) -> bool:
        nonlocal explored
        if len(chosen) == length_bound:
            return True
        for j in range(start, len(candidates)):
            explored += 1
            if explored > budget:
                raise ResourceLimitError('bad_search steps', explored, budget)
            y = candidates[j]
            if all(not leq_(candidates[i], y) for i in chosen):
                chosen.append(j)
                if extend(j + 1):
                    return True
                chosen.pop()
        return False

    try:
        found = extend(0)
    except ResourceLimitError:
        logger.warning("bad_search: budget of %d steps exhausted", budget)
        return SearchResult(INCONCLUSIVE, None, explored, 'budget exhausted')
    if found:
        witness = [candidates[i] for i in chosen]
        if not is_bad(witness, leq_):
            raise AssertionError("bad_search produced a sequence that is not bad")
        logger.info("bad_search: bad sequence of length %d after %d steps", length_bound, explored)
        return SearchResult(FOUND, witness, explored)
    if not exhausted:
        return SearchResult(INCONCLUSIVE, None, explored, 'more than %d candidates' % width_bound)
    return SearchResult(NONE, None, explored)


def is_bad(seq: Sequence, leq: Callable[[Any, Any], bool]) -> bool:
    "No entry is below a later one."
    return all(not leq(seq[i], seq[j]) for i in range(len(seq)) for j in range(i + 1, len(seq)))


def is_antichain(seq: Sequence, leq: Callable[[Any, Any], bool]) -> bool:
    return all(not leq(a, b) for i, a in enumerate(seq) for j, b in enumerate(seq) if i != j)


def pigeonhole_bound(d: CodedDilator) -> int:
    """``|Tr(W)|``: for a unary monotone dilator over a chain, any bad sequence
    longer than this repeats a token.
    """
    return len(d.trace)


# Antichains of non-unary normal dilators
# ---------------------------------------

class AntichainResult(NamedTuple):
    """The elements ``W(f_z)(s)``; ``witness`` is a comparable pair ``(i, j)`` when there is one."""
    target: FinPoset
    elements: List[DilElem]
    witness: Optional[Tuple[int, int]]

    @property
    def ok(self) -> bool:
        return self.witness is None


def lemma32_antichain(d: CodedDilator, token: Union[TraceToken, str], length: Optional[int] = None,
                      options: Optional[KruskalOptions] = None) -> AntichainResult:
    """Spread a token with two support points over ``Z + Z* + a``.

    ``Z`` is the chain of ``length`` elements and ``Z*`` its reverse; point 0
    of the shape goes to ``z`` in ``Z``, point 1 to ``z`` in ``Z*`` and every
    other point to its copy in the antichain ``a``. For a normal dilator the
    images are pairwise incomparable; otherwise a comparable pair is reported.
    """
    if is_unary(d):
        raise PreconditionError("%s is unary, it has no token with two support points" % d.name)
    sigma = d.token(token) if isinstance(token, str) else token
    c = sigma.shape
    if c.size < 2:
        raise PreconditionError("Token %s has fewer than two support points" % sigma.id)
    z = resolve(options).lemma32_length if length is None else length
    y = sum_order([chain(z), chain(z), antichain(c.size)], [False, True, False])
    x = full_elem(sigma)
    elements = []
    for k in range(z):
        values = tuple(k if i == 0 else z + k if i == 1 else 2 * z + i for i in range(c.size))
        elements.append(apply_map(d, OrderMap(c, y, values), x))
    witness = None
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            if i != j and leq_W(d, a, b):
                witness = (i, j)
                break
        if witness:
            break
    if witness:
        logger.info("%s: W(f_%d)(%s) <= W(f_%d)(%s)", d.name, witness[0], sigma.id, witness[1], sigma.id)
    return AntichainResult(y, elements, witness)


# Bad sequences from monotonicity failures
# ----------------------------------------

class Ladder(NamedTuple):
    "The elements ``W(h_k)(s)`` over ``n x K``; ``witness`` is the (repaired) monotonicity witness used."
    witness: MonotonicityWitness
    target: FinPoset
    elements: List[DilElem]
    bad: bool


def check_witness(d: CodedDilator, w: MonotonicityWitness) -> None:
    "Raise WitnessError unless ``w`` exhibits quasi-embeddings ``f <= g`` with ``W(f)(s)`` not below ``W(g)(s)``."
    if w is None:
        raise WitnessError("No monotonicity witness supplied")
    if w.token.shape != w.shape or not d.has_token(w.token.id):
        raise WitnessError("%s is not a token of shape %s" % (w.token.id, w.shape.code))
    for h in (w.f, w.g):
        if h.domain != w.shape or h.codomain != w.target or not is_quasi_embedding(h):
            raise WitnessError("%r is not a quasi-embedding from the token shape into the target" % (h,))
    if not pointwise_leq(w.f, w.g):
        raise WitnessError("f is not pointwise below g")
    x = full_elem(w.token)
    if leq_W(d, apply_map(d, w.f, x), apply_map(d, w.g, x)):
        raise WitnessError("W(f)(%s) <= W(g)(%s): not a monotonicity failure" % (w.token.id, w.token.id))


def _separated(w: MonotonicityWitness) -> bool:
    "``f(x) != g(x')`` for ``x != x'``."
    n = w.shape.size
    return all(w.f(i) != w.g(j) for i in range(n) for j in range(n) if i != j)


def separate(d: CodedDilator, w: MonotonicityWitness) -> MonotonicityWitness:
    """Move a witness into the lexicographic ``Y x 2`` so that ``f(x) != g(x')`` for ``x != x'``.

    With ``i(y) = (y, 0)`` and ``f+(x) = (f(x), 0 or 1)``, the order
    ``W(i f)(s) <= W(f+)(s) <= W(i g)(s)`` fails at one of the two steps.
    """
    if _separated(w):
        return w
    y2 = lex_double(w.target)
    n = w.shape.size
    i_f = OrderMap(w.shape, y2, tuple(2 * w.f(x) for x in range(n)))
    i_g = OrderMap(w.shape, y2, tuple(2 * w.g(x) for x in range(n)))
    f_plus = OrderMap(w.shape, y2, tuple(2 * w.f(x) + (w.f(x) != w.g(x)) for x in range(n)))
    x = full_elem(w.token)
    lower, upper = apply_map(d, i_f, x), apply_map(d, f_plus, x)
    if not leq_W(d, lower, upper):
        return MonotonicityWitness(w.shape, w.token, y2, i_f, f_plus)
    return MonotonicityWitness(w.shape, w.token, y2, f_plus, i_g)


def ladder_bad_sequence(d: CodedDilator, witness: MonotonicityWitness, length: Optional[int] = None,
                        options: Optional[KruskalOptions] = None) -> Ladder:
    """Turn a monotonicity failure into a bad sequence of ``W(n x K)``.

    ``h_k`` sends point ``i`` of the shape to ``(i, 0)`` where ``f`` and ``g``
    agree and to ``(i, k)`` where they differ. The result is checked pairwise.
    """
    check_witness(d, witness)
    w = separate(d, witness)
    big_k = resolve(options).ladder_length if length is None else length
    n = w.shape.size
    ladder = discrete_times_chain(n, big_k)
    x = full_elem(w.token)
    elements = []
    for k in range(big_k):
        h = OrderMap(w.shape, ladder, tuple(i * big_k + (0 if w.f(i) == w.g(i) else k) for i in range(n)))
        elements.append(apply_map(d, h, x))
    bad = is_bad(elements, lambda a, b: leq_W(d, a, b))
    if not bad:
        logger.warning("%s: the ladder of %r is not bad; the table is not a partial order", d.name, witness)
    return Ladder(w, ladder, elements, bad)


# Descending sequences of ordinal terms
# -------------------------------------

def _is_zero(e: Union[OrdTerm, int]) -> bool:
    return not isinstance(e, OrdTerm) or not e.entries


def _step(t: OrdTerm, width: int) -> OrdTerm:
    """A term below ``t``: its predecessor, or the ``width``-th member of its fundamental sequence."""
    *prefix, last = t.entries
    if _is_zero(last):
        return OrdTerm(t.level, tuple(prefix))
    assert isinstance(last, OrdTerm)
    smaller = _step(last, width)
    if _is_zero(last.entries[-1]):
        # last = e + 1, so w^last = w^e * width in the limit
        return OrdTerm(t.level, tuple(prefix) + (smaller,) * width)
    return OrdTerm(t.level, tuple(prefix) + (smaller,))


def descent_search(level: int, start: OrdTerm, steps: int) -> List[OrdTerm]:
    """A strictly descending chain of at most ``steps`` terms below ``start``.

    Limits are entered far enough up that the chain can use the whole budget.
    """
    if start.level != level:
        raise PreconditionError("%s is a level-%d term, not level %d" % (start, start.level, level))
    found: List[OrdTerm] = []
    t = start
    while t.entries and len(found) < steps:
        nxt = _step(t, max(1, steps - len(found) - 1))
        if not ord_lt(nxt, t):
            raise AssertionError("descent_search made a step that does not descend: %s -> %s" % (t, nxt))
        found.append(nxt)
        t = nxt
    return found
