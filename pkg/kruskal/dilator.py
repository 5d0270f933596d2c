"""Coded finite dilators.

A dilator is coded by its trace (the tokens over canonical shapes), the
action of bijective quasi-embeddings on tokens, and a comparison table
keyed by covering pairs. Elements of ``W(X)`` are written in normal form
``(support, token)``; everything else (comparison, the action of arbitrary
quasi-embeddings, the whole order ``W(X)``) is derived by transporting
normal forms to canonical shapes.

Built-in dilators carry a :class:`~kruskal.functors.Functor` and derive
their action and table entries from it on demand.
"""
import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from .exceptions import PreconditionError, ResourceLimitError, StructureError, ValidationError
from .functors import (
    DualProductFunctor, Functor, LexProductFunctor, PrimeFunctor, ProductFunctor, SeqFunctor,
    UnaryFunctor, WZFunctor, RELATION_UP,
)
from .options import KruskalOptions, resolve
from .orders import (
    CanonicalPoset, FinPoset, OrderMap, automorphisms, bijective_quasi_embeddings, canonicalize, chain,
    enumerate_canonical, enumerate_canonical_upto, identity_map, induced_suborder, is_embedding,
    is_quasi_embedding, iter_maps, pointwise_leq,
)
from .utils import ValidationReport, Verdict, invert, logger

ID_RE = re.compile(r'^[A-Za-z0-9_@.\-]+$')


@dataclass(frozen=True)
class TraceToken:
    """A trace element ``(shape, rho)``, named by ``id``.

    ``value`` is the full-support value of the direct semantics, when there is one.
    """
    id: str
    shape: CanonicalPoset
    value: Any = field(default=None, compare=False)

    def __repr__(self):
        return self.id


@dataclass(frozen=True)
class DilElem:
    """An element of ``W(host)`` in normal form.

    Two elements are equal when support and token agree; the host is not compared.
    """
    host: FinPoset = field(compare=False, repr=False)
    support: FrozenSet[int]
    token: TraceToken

    def __repr__(self):
        return '%s%s' % (self.token.id, sorted(self.support))


QKey = Tuple[CanonicalPoset, CanonicalPoset, Tuple[int, ...]]
TableKey = Tuple[CanonicalPoset, Tuple[int, ...], str, Tuple[int, ...], str]


def q_key(q: OrderMap) -> QKey:
    return (q.domain, q.codomain, q.values)  # type: ignore[return-value]


def _is_identity(q: OrderMap) -> bool:
    return q.domain == q.codomain and q.values == tuple(range(len(q.values)))


@dataclass(eq=False)
class CodedDilator:
    """A finite dilator given by trace, token action and covering-pair table.

    Parameters:
        name: a display name (also the name built-ins are addressed by)
        n_max: the largest shape size of a trace token
        trace: the trace tokens, in a fixed order
        action: ``(q_key(q), token_id) -> token_id`` for bijective quasi-embeddings
            between canonical shapes. Identities may be omitted.
        table: explicit entries ``(d, s, sigma_id, t, tau_id) -> bool``; missing
            entries are false, unless a functor supplies them
        functor: the direct semantics the missing entries are derived from
    """
    name: str
    n_max: int
    trace: List[TraceToken]
    action: Dict[Tuple[QKey, str], str] = field(default_factory=dict)
    table: Dict[TableKey, bool] = field(default_factory=dict)
    functor: Optional[Functor] = None

    def __post_init__(self) -> None:
        self._by_id: Dict[str, TraceToken] = {}
        self._by_shape: Dict[CanonicalPoset, List[TraceToken]] = {}
        for token in self.trace:
            if token.id in self._by_id:
                raise StructureError("Duplicate token id %r in %s" % (token.id, self.name))
            self._by_id[token.id] = token
            self._by_shape.setdefault(token.shape, []).append(token)
        self._derived_action: Dict[Tuple[QKey, str], str] = {}
        self._derived_table: Dict[TableKey, bool] = {}
        self._semantics: Optional[Functor] = None

    def __repr__(self):
        return 'CodedDilator(%s, n_max=%d, %d tokens)' % (self.name, self.n_max, len(self.trace))

    def token(self, token_id: str) -> TraceToken:
        try:
            return self._by_id[token_id]
        except KeyError:
            raise StructureError("%s has no trace token %r" % (self.name, token_id))

    def has_token(self, token_id: str) -> bool:
        return token_id in self._by_id

    def tokens_of_shape(self, shape: FinPoset) -> List[TraceToken]:
        return self._by_shape.get(shape, [])  # type: ignore[call-overload]

    def token_of(self, shape: CanonicalPoset, value: Any) -> TraceToken:
        "The trace token of a full-support value of the direct semantics."
        if self.functor is None:
            raise StructureError("%s has no direct semantics" % self.name)
        return self.token(self.functor.token_id(shape, value))

    def act(self, q: OrderMap, token: TraceToken) -> TraceToken:
        "Transport a token along a bijective quasi-embedding between canonical shapes."
        if token.shape != q.domain:
            raise StructureError("Token %s does not live on the domain of %r" % (token.id, q))
        key = (q_key(q), token.id)
        target = self.action.get(key) or self._derived_action.get(key)
        if target is None:
            if self.functor is not None:
                f = self.functor
                target = f.token_id(q.codomain, f.normal(q.codomain, f.fmap(q, token.value)))  # type: ignore[arg-type]
                self._derived_action[key] = target
            elif _is_identity(q):
                return token
            else:
                raise StructureError("%s has no action entry for %r on %s" % (self.name, q, token.id))
        result = self.token(target)
        if result.shape != q.codomain:
            raise StructureError("Action of %r sends %s to %s of the wrong shape" % (q, token.id, result.id))
        return result

    def entry(self, c: CanonicalPoset, s: Tuple[int, ...], sigma: TraceToken, t: Tuple[int, ...], tau: TraceToken) -> bool:
        key = (c, s, sigma.id, t, tau.id)
        try:
            return self.table[key]
        except KeyError:
            pass
        if self.functor is None:
            return False
        try:
            return self._derived_table[key]
        except KeyError:
            f = self.functor
            v = f.fmap(induced_suborder(c, s).en, sigma.value)
            w = f.fmap(induced_suborder(c, t).en, tau.value)
            result = self._derived_table[key] = f.leq(c, v, w)
            return result

    def with_table(self, entries: Dict[TableKey, bool], name: Optional[str] = None) -> 'CodedDilator':
        "A copy whose table is overridden by ``entries``."
        table = dict(self.table)
        table.update(entries)
        return CodedDilator(name or self.name, self.n_max, list(self.trace), dict(self.action), table, self.functor)

    def max_shape(self) -> int:
        return max((t.shape.size for t in self.trace), default=0)


class Restriction(NamedTuple):
    "Two elements transported to the canonical shape of the union of their supports."
    shape: CanonicalPoset
    s: Tuple[int, ...]
    sigma: TraceToken
    t: Tuple[int, ...]
    tau: TraceToken


@dataclass
class Presentation:
    """A finite poset presenting ``W(X)``: element ``i`` of ``poset`` is ``elements[i]``."""
    poset: FinPoset
    elements: List[DilElem]

    def __post_init__(self) -> None:
        self.index = {e: i for i, e in enumerate(self.elements)}

    def __len__(self) -> int:
        return len(self.elements)

    def leq(self, x: DilElem, y: DilElem) -> bool:
        return self.poset.leq(self.index[x], self.index[y])


# Normal forms
# ------------

def _same_host(x: DilElem, y: DilElem) -> None:
    if x.host is not y.host and x.host != y.host:
        raise ValidationError("Elements %r and %r live on different hosts" % (x, y))


def make_elem(d: CodedDilator, host: FinPoset, support: Iterable[int], token: TraceToken) -> DilElem:
    "Build a DilElem, checking that the token's shape is the shape of the support."
    sub = induced_suborder(host, support)
    if not d.has_token(token.id):
        raise ValidationError("%s is not a token of %s" % (token.id, d.name))
    if sub.shape != token.shape:
        raise ValidationError("Token %s has shape %s but the support has shape %s"
                              % (token.id, token.shape.code, sub.shape.code))
    return DilElem(host, sub.members, token)


def restrict_to_union(d: CodedDilator, x: DilElem, y: DilElem) -> Restriction:
    """Transport ``x`` and ``y`` to the canonical shape ``c`` of their joint support.

    ``s`` and ``t`` are the preimages of the supports in ``c``; the tokens are
    moved along the automorphisms connecting the two enumerations of each support.
    """
    _same_host(x, y)
    union = x.support | y.support
    if len(union) > 2 * d.n_max:
        raise ResourceLimitError('support union', len(union), 2 * d.n_max)
    sub = induced_suborder(x.host, union)
    c, e = sub.shape, sub.en.values
    s = tuple(i for i in range(c.size) if e[i] in x.support)
    t = tuple(i for i in range(c.size) if e[i] in y.support)
    return Restriction(c, s, _retoken(d, x, c, e, s), t, _retoken(d, y, c, e, t))


def _retoken(d: CodedDilator, elem: DilElem, c: CanonicalPoset, e: Sequence[int], s: Tuple[int, ...]) -> TraceToken:
    # e enumerates the union shape into the host and s is the preimage of the
    # support, so h = en_a^-1 . e . en_s is an automorphism of |a|.
    own = induced_suborder(elem.host, elem.support)
    inner = induced_suborder(c, s)
    position = invert(own.en.values)
    h = tuple(position[e[v]] for v in inner.en.values)
    if h == tuple(range(len(h))):
        return elem.token
    return d.act(OrderMap(own.shape, own.shape, h).inverse(), elem.token)


def leq_W(d: CodedDilator, x: DilElem, y: DilElem) -> bool:
    "The order of ``W(host)``, read off the table after restricting to the union of supports."
    r = restrict_to_union(d, x, y)
    return d.entry(r.shape, r.s, r.sigma, r.t, r.tau)


def apply_map(d: CodedDilator, f: OrderMap, x: DilElem, check: bool = True) -> DilElem:
    """``W(f)(x)`` for a quasi-embedding ``f`` out of the host of ``x``.

    The support of the result is ``f[support(x)]``.
    """
    if check:
        if f.domain is not x.host and f.domain != x.host:
            raise ValidationError("%r does not start at the host of %r" % (f, x))
        if not is_quasi_embedding(f):
            raise ValidationError("%r is not a quasi-embedding" % (f,))
    image = f.image(x.support)
    own = induced_suborder(x.host, x.support)
    target = induced_suborder(f.codomain, image)
    position = invert(target.en.values)
    g = OrderMap(own.shape, target.shape, tuple(position[f(v)] for v in own.en.values))
    token = x.token if _is_identity(g) else d.act(g, x.token)
    return DilElem(f.codomain, image, token)


def full_elem(token: TraceToken) -> DilElem:
    "The token as an element of ``W(shape)`` with full support."
    return DilElem(token.shape, frozenset(range(token.shape.size)), token)


def elements_over(d: CodedDilator, host: FinPoset) -> List[DilElem]:
    found = []
    for r in range(min(host.size, d.n_max) + 1):
        for a in combinations(range(host.size), r):
            sub = induced_suborder(host, a)
            for token in d.tokens_of_shape(sub.shape):
                found.append(DilElem(host, sub.members, token))
    return found


def eval_order(d: CodedDilator, x: FinPoset, options: Optional[KruskalOptions] = None) -> Presentation:
    """All elements of ``W(x)`` and their order.

    There is one element per subset ``a`` of ``x`` and token of shape ``|a|``.
    """
    bound = resolve(options).poset_bound
    if x.size > bound:
        raise ResourceLimitError('eval_order host', x.size, bound)
    elements = elements_over(d, x)
    matrix = tuple(tuple(leq_W(d, p, q) for q in elements) for p in elements)
    return Presentation(FinPoset(len(elements), matrix), elements)


# Direct values
# -------------

class Listed(NamedTuple):
    "A value of a table-coded dilator: ``W(enum)(token)``."
    enum: Tuple[int, ...]
    token: TraceToken


class CodedView(Functor):
    """The direct semantics of a dilator that only has its coding.

    Values are :class:`Listed`; ``normal`` rewrites them to normal form.
    """

    def __init__(self, d: CodedDilator) -> None:
        self.d = d
        self.n_max = d.n_max
        self.name = d.name

    def elements(self, x):
        return [as_value(self.d, e) for e in elements_over(self.d, x)]

    def support(self, v):
        return frozenset(v.enum)

    def fmap(self, f, v):
        return Listed(tuple(f(e) for e in v.enum), v.token)

    def normal(self, x, v):
        sub = induced_suborder(x, v.enum)
        position = invert(sub.en.values)
        h = OrderMap(v.token.shape, sub.shape, tuple(position[e] for e in v.enum))
        token = v.token if _is_identity(h) else self.d.act(h, v.token)
        return Listed(sub.en.values, token)

    def leq(self, x, v, w):
        return leq_W(self.d, self._elem(x, v), self._elem(x, w))

    def _elem(self, x, v):
        n = self.normal(x, v)
        return DilElem(x, frozenset(n.enum), n.token)

    def tag(self, v):
        return v.token.id

    def token_id(self, c, v):
        return self.normal(c, v).token.id


def semantics(d: CodedDilator) -> Functor:
    "The direct semantics of ``d``: its functor, or a view of its coding."
    if d.functor is not None:
        return d.functor
    if d._semantics is None:
        d._semantics = CodedView(d)
    return d._semantics


def as_value(d: CodedDilator, x: DilElem) -> Any:
    en = induced_suborder(x.host, x.support).en
    if d.functor is not None:
        return d.functor.fmap(en, x.token.value)
    return Listed(en.values, x.token)


def normal_form(d: CodedDilator, host: FinPoset, value: Any) -> DilElem:
    "The DilElem of a direct value over ``host``."
    sem = semantics(d)
    sub = induced_suborder(host, sem.support(value))
    position = invert(sub.en.values)
    rho = sem.normal(sub.shape, sem.fmap(position.__getitem__, value))
    return DilElem(host, sub.members, d.token(sem.token_id(sub.shape, rho)))


# Validation
# ----------

def _check_poset(what: str, p: Any) -> None:
    if not isinstance(p, CanonicalPoset) or canonicalize(p).matrix != p.matrix:
        raise StructureError("%s is not a canonical poset: %r" % (what, p))


def check_structure(d: CodedDilator, options: Optional[KruskalOptions] = None) -> None:
    """Raise StructureError on malformed data: ids, shapes, keys and missing action entries."""
    if not isinstance(d.n_max, int) or d.n_max < 0:
        raise StructureError("n_max must be a non-negative integer, got %r" % (d.n_max,))
    for token in d.trace:
        if not ID_RE.match(token.id):
            raise StructureError("Invalid token id %r" % token.id)
        _check_poset("Shape of %s" % token.id, token.shape)
        if token.shape.size > d.n_max:
            raise StructureError("Token %s has %d points, more than n_max=%d" % (token.id, token.shape.size, d.n_max))
    for ((dom, cod, values), source), target in d.action.items():
        _check_poset("Action domain", dom)
        _check_poset("Action codomain", cod)
        q = OrderMap(dom, cod, tuple(values))
        if dom.size != cod.size or dom.size > d.n_max or sorted(values) != list(range(cod.size)) \
                or not is_quasi_embedding(q):
            raise StructureError("Action key %r is not a bijective quasi-embedding of shapes up to n_max" % (q,))
        if d.token(source).shape != dom or d.token(target).shape != cod:
            raise StructureError("Action entry %s -> %s does not match the shapes of %r" % (source, target, q))
    for (c, s, sigma, t, tau), value in d.table.items():
        _check_poset("Table shape", c)
        if c.size > 2 * d.n_max:
            raise StructureError("Table shape %s is larger than 2*n_max" % c.code)
        for part in (s, t):
            if list(part) != sorted(set(part)) or any(not (0 <= i < c.size) for i in part):
                raise StructureError("Malformed subset %r of %s" % (part, c.code))
        if set(s) | set(t) != set(range(c.size)):
            raise StructureError("Table key %r is not a covering pair" % ((c.code, s, t),))
        if induced_suborder(c, s).shape != d.token(sigma).shape or induced_suborder(c, t).shape != d.token(tau).shape:
            raise StructureError("Table key %r does not match the token shapes" % ((c.code, s, sigma, t, tau),))
        if not isinstance(value, bool):
            raise StructureError("Table entry for %r is not a boolean" % ((c.code, s, sigma, t, tau),))
    sizes = min(d.n_max, resolve(options).poset_bound)
    shapes = enumerate_canonical_upto(sizes, options)
    for c in shapes:
        for c2 in shapes:
            for q in bijective_quasi_embeddings(c, c2):
                for token in d.tokens_of_shape(c):
                    d.act(q, token)


def _shapes_by_size(k: int, options: Optional[KruskalOptions]) -> List[Tuple[CanonicalPoset, ...]]:
    return [enumerate_canonical(i, options) for i in range(k + 1)]


def check_action(d: CodedDilator, options: Optional[KruskalOptions] = None) -> List[Verdict]:
    "Identity, composition and permutation laws of the token action."
    opts = resolve(options)
    k = min(d.n_max, opts.validate_bound)
    identity = composition = permutation = None
    for level in _shapes_by_size(k, options):
        for c in level:
            tokens = d.tokens_of_shape(c)
            if not tokens:
                continue
            ident = identity_map(c)
            for token in tokens:
                if identity is None and d.act(ident, token) != token:
                    identity = (c.code, token.id)
            for a in automorphisms(c):
                if permutation is None and len({d.act(a, token) for token in tokens}) != len(tokens):
                    permutation = (c.code, a)
            for c1 in level:
                for q1 in bijective_quasi_embeddings(c, c1):
                    for c2 in level:
                        for q2 in bijective_quasi_embeddings(c1, c2):
                            if composition is not None:
                                break
                            both = q2.compose(q1)
                            for token in tokens:
                                if d.act(both, token) != d.act(q2, d.act(q1, token)):
                                    composition = (token.id, q1, q2)
                                    break
    return [
        Verdict('action-identity', identity is None, identity, 'identities fix every token', k),
        Verdict('action-composition', composition is None, composition, 'the action respects composition', k),
        Verdict('action-permutation', permutation is None, permutation, 'automorphisms permute tokens', k),
    ]


def _covering_pairs(elements: List[DilElem], size: int) -> Iterator[Tuple[DilElem, DilElem]]:
    full = frozenset(range(size))
    for x in elements:
        for y in elements:
            if x.support | y.support == full:
                yield x, y


def check_table(d: CodedDilator, options: Optional[KruskalOptions] = None) -> List[Verdict]:
    "Equivariance, reflexivity and antisymmetry of the covering-pair table."
    opts = resolve(options)
    k = min(2 * d.n_max, opts.validate_bound)
    equivariance = reflexivity = antisymmetry = None
    for c in enumerate_canonical_upto(k, options):
        full = tuple(range(c.size))
        for token in d.tokens_of_shape(c):
            if reflexivity is None and not d.entry(c, full, token, full, token):
                reflexivity = (c.code, token.id)
        elements = elements_over(d, c)
        autos = [a for a in automorphisms(c) if not _is_identity(a)]
        for x, y in _covering_pairs(elements, c.size):
            below = leq_W(d, x, y)
            if antisymmetry is None and below and x != y and leq_W(d, y, x):
                antisymmetry = (c.code, x, y)
            for a in autos:
                if equivariance is not None:
                    break
                if leq_W(d, apply_map(d, a, x, check=False), apply_map(d, a, y, check=False)) != below:
                    equivariance = (c.code, a, x, y)
    return [
        Verdict('table-equivariance', equivariance is None, equivariance, 'automorphisms preserve entries', k),
        Verdict('reflexivity', reflexivity is None, reflexivity, 'every full token is below itself', k),
        Verdict('antisymmetry', antisymmetry is None, antisymmetry, 'mutual entries only on the diagonal', k),
    ]


def check_transitivity(d: CodedDilator, options: Optional[KruskalOptions] = None) -> Verdict:
    """Transitivity of the derived order on ``W(c)``, for triples whose supports cover ``c``.

    Every violation restricts to the union of three supports, so shapes up to
    ``3 * n_max`` points decide the law. When ``transitivity_bound`` (or the
    poset bound) is smaller, the verdict says how far it got.
    """
    opts = resolve(options)
    needed = 3 * d.n_max
    k = min(needed, opts.transitivity_bound, opts.poset_bound)
    for c in enumerate_canonical_upto(k, options):
        full = frozenset(range(c.size))
        # three supports of at most n_max points each must cover c
        elements = [e for e in elements_over(d, c) if len(e.support) + 2 * d.n_max >= c.size]
        known: Dict[Tuple[int, int], bool] = {}

        def below(i: int, j: int) -> bool:
            if (i, j) not in known:
                known[i, j] = leq_W(d, elements[i], elements[j])
            return known[i, j]

        n = len(elements)
        for i in range(n):
            for j in range(n):
                pair = elements[i].support | elements[j].support
                if i == j or len(pair) + d.n_max < c.size or not below(i, j):
                    continue
                for l in range(n):
                    if pair | elements[l].support == full and below(j, l) and not below(i, l):
                        witness = (c.code, elements[i], elements[j], elements[l])
                        return Verdict.failed('transitivity', witness, '%r <= %r <= %r but not %r <= %r' % (
                            elements[i], elements[j], elements[l], elements[i], elements[l]), k)
    if k < needed:
        return Verdict.passed('transitivity', 'checked shapes up to %d of the %d points the law needs' % (k, needed), k)
    return Verdict.passed('transitivity', 'checked all shapes up to %d points' % k, k)


def check_maps(d: CodedDilator, options: Optional[KruskalOptions] = None) -> List[Verdict]:
    """Embeddings preserve and reflect the derived order; quasi-embeddings reflect it."""
    k = min(2 * d.n_max, resolve(options).validate_bound)
    preserve = reflect = None
    shapes = enumerate_canonical_upto(k, options)
    for x in shapes:
        elements = elements_over(d, x)
        pairs = [(p, q, leq_W(d, p, q)) for p, q in _covering_pairs(elements, x.size)]
        for y in shapes:
            if y.size < x.size:
                continue
            for f in iter_maps(x, y):
                embedding = is_embedding(f)
                for p, q, below in pairs:
                    after = leq_W(d, apply_map(d, f, p, check=False), apply_map(d, f, q, check=False))
                    if embedding and after != below and preserve is None:
                        preserve = (x.code, y.code, f, p, q)
                    elif after and not below and reflect is None:
                        reflect = (x.code, y.code, f, p, q)
    return [
        Verdict('embedding-preservation', preserve is None, preserve, 'embeddings preserve and reflect', k),
        Verdict('quasi-embedding-reflection', reflect is None, reflect, 'quasi-embeddings reflect', k),
    ]


def is_normal(d: CodedDilator, options: Optional[KruskalOptions] = None) -> Verdict:
    """Every true entry: each support point on the left is below some support point on the right."""
    k = min(2 * d.n_max, resolve(options).validate_bound)

    def dominated(c: FinPoset, s: Iterable[int], t: Iterable[int]) -> bool:
        return all(any(c.leq(a, b) for b in t) for a in s)

    for (c, s, sigma, t, tau), value in d.table.items():
        if value and not dominated(c, s, t):
            return Verdict.failed('normality', (c.code, s, sigma, t, tau), 'undominated support point', k)
    for c in enumerate_canonical_upto(k, options):
        for x, y in _covering_pairs(elements_over(d, c), c.size):
            if leq_W(d, x, y) and not dominated(c, x.support, y.support):
                return Verdict.failed('normality', (c.code, x, y), '%r <= %r with an undominated support point' % (x, y), k)
    return Verdict.passed('normality', bound=k)


def validate(d: CodedDilator, options: Optional[KruskalOptions] = None) -> ValidationReport:
    """Check the dilator axioms at the configured bounds.

    Structural problems raise StructureError before any semantic clause runs.
    """
    check_structure(d, options)
    report = ValidationReport(d.name)
    for verdict in check_action(d, options):
        report.add(verdict)
    for verdict in check_table(d, options):
        report.add(verdict)
    report.add(check_transitivity(d, options))
    for verdict in check_maps(d, options):
        report.add(verdict)
    report.add(is_normal(d, options))
    logger.info("Validated %s: %s", d.name, 'ok' if report.ok else [v.name for v in report.failures()])
    return report


class MonotonicityWitness(NamedTuple):
    shape: CanonicalPoset
    token: TraceToken
    target: FinPoset
    f: OrderMap
    g: OrderMap


def is_monotone(d: CodedDilator, options: Optional[KruskalOptions] = None) -> Verdict:
    """Do pointwise-ordered quasi-embeddings ``f <= g`` give ``W(f)(s) <= W(g)(s)``?

    It suffices to look at full-support tokens over their own shape and at
    targets covered by the ranges of ``f`` and ``g``.
    """
    k = min(2 * d.n_max, resolve(options).monotone_bound)
    for c in enumerate_canonical_upto(min(d.n_max, k), options):
        tokens = d.tokens_of_shape(c)
        if not tokens:
            continue
        for size in range(c.size, min(2 * c.size, k) + 1):
            for y in enumerate_canonical(size, options):
                maps = list(iter_maps(c, y))
                everything = frozenset(range(y.size))
                for f in maps:
                    for g in maps:
                        if f.image(range(c.size)) | g.image(range(c.size)) != everything or not pointwise_leq(f, g):
                            continue
                        for token in tokens:
                            x = full_elem(token)
                            if not leq_W(d, apply_map(d, f, x, check=False), apply_map(d, g, x, check=False)):
                                witness = MonotonicityWitness(c, token, y, f, g)
                                logger.info("%s is not monotone: %r", d.name, witness)
                                return Verdict.failed('monotone', witness, 'W(f)(%s) is not below W(g)(%s)' % (token.id, token.id), k)
    return Verdict.passed('monotone', bound=k)


def is_unary(d: CodedDilator) -> bool:
    return all(t.shape.size <= 1 for t in d.trace)


def is_degenerate(d: CodedDilator) -> bool:
    "All tokens have empty shape."
    return all(t.shape.size == 0 for t in d.trace)


def finite_at_one(d: CodedDilator) -> int:
    "The number of elements of ``W(1)``."
    return len(elements_over(d, chain(1)))


def unary_wpo_decision(d: CodedDilator, options: Optional[KruskalOptions] = None) -> Verdict:
    """Monotonicity decides whether a unary dilator with finite trace preserves well partial orders."""
    if not is_unary(d):
        raise PreconditionError("%s is not unary" % d.name)
    v = is_monotone(d, options)
    return Verdict('wpo', v.ok, v.witness, v.message, v.bound)


def check_support_naturality(d: CodedDilator, options: Optional[KruskalOptions] = None) -> Verdict:
    "The support of a transported value is the image of its support."
    k = resolve(options).host_size
    sem = semantics(d)
    shapes = enumerate_canonical_upto(k, options)
    for x in shapes:
        elements = elements_over(d, x)
        for y in shapes:
            for f in iter_maps(x, y):
                for e in elements:
                    image = apply_map(d, f, e, check=False)
                    if image.support != f.image(e.support) or sem.support(as_value(d, image)) != f.image(sem.support(as_value(d, e))):
                        return Verdict.failed('support-naturality', (x.code, y.code, f, e), bound=k)
    return Verdict.passed('support-naturality', bound=k)


def check_functoriality(d: CodedDilator, options: Optional[KruskalOptions] = None) -> Verdict:
    "``W(id) = id`` and ``W(g . f) = W(g) . W(f)`` for quasi-embeddings between small shapes."
    k = resolve(options).host_size
    shapes = enumerate_canonical_upto(k, options)
    for x in shapes:
        elements = elements_over(d, x)
        ident = identity_map(x)
        for e in elements:
            if apply_map(d, ident, e, check=False) != e:
                return Verdict.failed('functoriality', (x.code, 'identity', e), bound=k)
        for y in shapes:
            if y.size < x.size:
                continue
            for f in iter_maps(x, y):
                for z in shapes:
                    if z.size < y.size:
                        continue
                    for g in iter_maps(y, z):
                        gf = g.compose(f)
                        for e in elements:
                            if apply_map(d, gf, e, check=False) != apply_map(d, g, apply_map(d, f, e, check=False), check=False):
                                return Verdict.failed('functoriality', (x.code, y.code, z.code, f, g, e), bound=k)
    return Verdict.passed('functoriality', bound=k)


def _test_hosts(k: int, options: Optional[KruskalOptions]) -> List[FinPoset]:
    hosts: List[FinPoset] = []
    for c in enumerate_canonical_upto(k, options):
        hosts.append(c)
        dual = c.dual()
        if dual.matrix != c.matrix:
            hosts.append(dual)
    return hosts


def oracle_agreement(d: CodedDilator, options: Optional[KruskalOptions] = None) -> Verdict:
    """The coded order and map action agree with the direct semantics on small hosts.

    Hosts are the canonical posets and their (non-canonical) duals, so that
    enumerations other than the identity are exercised.
    """
    if d.functor is None:
        raise PreconditionError("%s has no direct semantics" % d.name)
    k = resolve(options).host_size
    f_ = d.functor
    hosts = _test_hosts(k, options)
    for x in hosts:
        elements = elements_over(d, x)
        values = [as_value(d, e) for e in elements]
        if len(elements) != len(f_.elements(x)):
            return Verdict.failed('oracle-agreement', (x, 'cardinality'), bound=k)
        for e, v in zip(elements, values):
            if normal_form(d, x, v) != e:
                return Verdict.failed('oracle-agreement', (x, 'normal form', e), bound=k)
        for e, v in zip(elements, values):
            for e2, v2 in zip(elements, values):
                if leq_W(d, e, e2) != f_.leq(x, v, v2):
                    return Verdict.failed('oracle-agreement', (x, e, e2), '%r vs %r' % (e, e2), k)
        for y in hosts:
            if y.size < x.size:
                continue
            for f in iter_maps(x, y):
                for e, v in zip(elements, values):
                    if apply_map(d, f, e, check=False) != normal_form(d, y, f_.fmap(f, v)):
                        return Verdict.failed('oracle-agreement', (x, y, f, e), 'map action differs', k)
    return Verdict.passed('oracle-agreement', bound=k)


# Products of the trace with the host
# -----------------------------------

def prod_embed(d: CodedDilator, x: FinPoset, elem: DilElem) -> Tuple[Tuple[int, Any], ...]:
    """The reflecting map ``W(X) -> (Tr(W) + X)^(n+1)`` with ``n`` the largest shape size.

    Coordinate ``i`` is ``(1, en(i))`` for ``i`` below the support size and
    ``(0, token_id)`` otherwise, so the last coordinate always names the token.
    """
    if elem.host is not x and elem.host != x:
        raise ValidationError("%r does not live on the given host" % (elem,))
    n = d.max_shape()
    en = induced_suborder(x, elem.support).en.values
    return tuple((1, en[i]) if i < len(en) else (0, elem.token.id) for i in range(n + 1))


def prod_embed_leq(x: FinPoset, g: Sequence[Tuple[int, Any]], h: Sequence[Tuple[int, Any]]) -> bool:
    "Componentwise order on ``(Tr(W) + X)^(n+1)`` with the trace discrete."
    for (i, a), (j, b) in zip(g, h):
        if i != j:
            return False
        if i == 0 and a != b:
            return False
        if i == 1 and not x.leq(a, b):
            return False
    return True


# Constructors
# ------------

def from_functor(functor: Functor, options: Optional[KruskalOptions] = None) -> CodedDilator:
    "Code a direct semantics: its trace is every full-support value over shapes up to n_max."
    bound = resolve(options).max_n_max
    if functor.n_max > bound:
        raise ResourceLimitError('trace of %s' % functor.name, functor.n_max, bound)
    trace: List[TraceToken] = []
    seen = set()
    for c in enumerate_canonical_upto(functor.n_max, options):
        for v in functor.full_support_values(c):
            v = functor.normal(c, v)
            token_id = functor.token_id(c, v)
            if token_id not in seen:
                seen.add(token_id)
                trace.append(TraceToken(token_id, c, v))
    logger.debug("Coded %s with %d trace tokens", functor.name, len(trace))
    return CodedDilator(functor.name, functor.n_max, trace, functor=functor)


def seq_dilator(n: int, options: Optional[KruskalOptions] = None) -> CodedDilator:
    "Sequences of length below ``n`` with the order from Higman's lemma."
    return from_functor(SeqFunctor(n), options)


def product_dilator(n: int, options: Optional[KruskalOptions] = None) -> CodedDilator:
    "``X^n`` with the componentwise order."
    return from_functor(ProductFunctor(n), options)


def wz_dilator(z: FinPoset, options: Optional[KruskalOptions] = None, label: Optional[str] = None) -> CodedDilator:
    "``1 + Z x X``."
    return from_functor(WZFunctor(z, label), options)


def unary_dilator(constants: Sequence[str] = (), unaries: Sequence[str] = (), *,
                  const_order: Optional[FinPoset] = None, unary_order: Optional[FinPoset] = None,
                  const_below: Iterable[Tuple[str, str]] = (), relation: str = RELATION_UP,
                  name: str = 'unary', options: Optional[KruskalOptions] = None) -> CodedDilator:
    "Constants and unary constructors; see :class:`~kruskal.functors.UnaryFunctor`."
    return from_functor(UnaryFunctor(constants, unaries, const_order, unary_order, const_below, relation, name), options)


def dual_product_dilator(n: int, options: Optional[KruskalOptions] = None) -> CodedDilator:
    "``X^n`` ordered by reverse domination: a dilator that is neither normal nor monotone."
    return from_functor(DualProductFunctor(n), options)


def lex_product_dilator(n: int, options: Optional[KruskalOptions] = None) -> CodedDilator:
    "``X^n`` ordered lexicographically: monotone, not normal."
    return from_functor(LexProductFunctor(n), options)


def prime_transform(d: CodedDilator, options: Optional[KruskalOptions] = None) -> CodedDilator:
    """``W'(X) = {star, plus} + {(x, y, s) | x != y in X, s in W(X)}``, with ``W'(1) = {star, plus}``."""
    bound = resolve(options).max_n_max
    if d.n_max + 2 > bound:
        raise ResourceLimitError('prime_transform of %s' % d.name, d.n_max + 2, bound)
    return from_functor(PrimeFunctor(d, semantics(d)), options)


def tabulate(d: CodedDilator, options: Optional[KruskalOptions] = None) -> CodedDilator:
    """Materialise the coding: every non-identity action entry and every true table entry.

    The result has no direct semantics, only its trace, action and table.
    """
    opts = resolve(options)
    if 2 * d.n_max > opts.poset_bound:
        raise ResourceLimitError('table of %s' % d.name, 2 * d.n_max, opts.poset_bound)
    trace = [TraceToken(t.id, t.shape) for t in d.trace]
    action: Dict[Tuple[QKey, str], str] = {}
    shapes = enumerate_canonical_upto(d.n_max, options)
    for c in shapes:
        for c2 in shapes:
            for q in bijective_quasi_embeddings(c, c2):
                if _is_identity(q):
                    continue
                for token in d.tokens_of_shape(c):
                    action[(q_key(q), token.id)] = d.act(q, token).id
    table: Dict[TableKey, bool] = {}
    for c in enumerate_canonical_upto(2 * d.n_max, options):
        for x, y in _covering_pairs(elements_over(d, c), c.size):
            if leq_W(d, x, y):
                table[(c, tuple(sorted(x.support)), x.token.id, tuple(sorted(y.support)), y.token.id)] = True
    logger.debug("Tabulated %s: %d action entries, %d true table entries", d.name, len(action), len(table))
    return CodedDilator(d.name, d.n_max, trace, action, table)
