"""The ``kruskal`` command line.

    kruskal validate DILATOR
    kruskal term DILATOR cmp TERM TERM
    kruskal term DILATOR enum [--height H] [--max N]
    kruskal tree cmp [--oracle] M N TREE TREE
    kruskal map NAME [options] INPUT [INPUT] [--check]
    kruskal falsify {bad-search,antichain,ladder,descent} ...
    kruskal suite [--only CHECK ...]

A DILATOR is a built-in name (``seq:3``, ``prod:2``, ``wz:2``, ``unary:up``,
``prime:seq:2``, ...) or the path of a dilator JSON file. Exit status is 0 on
success, 1 when a check fails or a precondition is violated, and 2 when the
input cannot be read.
"""
import os
import sys
from argparse import ArgumentParser, Namespace
from typing import Any, Callable, Dict, List, NamedTuple, Optional, Sequence

from ..bridges import (
    FROM_SEQUENCES, TO_SEQUENCES, PrimeBridge, check_bridge, delabel, fixpoint_to_tree, tree_to_fixpoint,
    unary_seq_leq, unary_target_order, unary_to_seq, wz_iso,
)
from ..dilator import (
    eval_order, is_monotone, is_normal, is_unary, prod_embed, prod_embed_leq, seq_dilator, validate,
)
from ..exceptions import (
    ConfigurationError, ConstructionError, GrammarParseError, KruskalError, PreconditionError, StructureError,
    ValidationError, describe,
)
from ..falsify import FOUND, INCONCLUSIVE, bad_search, descent_search, ladder_bad_sequence, lemma32_antichain
from ..fixpoint import enumerate_terms, term_system
from ..functors import WZFunctor
from ..orders import FinPoset, higman_leq, poset_from_code
from ..serialize import (
    format_ord, format_term, format_tree, format_value, load_poset, parse_int_sequence, parse_ord, parse_term,
    parse_tree, resolve_dilator,
)
from ..trees import check_universe, tree_compare, tree_leq, tree_leq_oracle
from ..utils import compare_with
from . import EXIT_FAILED, EXIT_INPUT, EXIT_OK, common_argparser, configure, emit
from .suite import CHECKS, run_suite

INPUT_ERRORS = (GrammarParseError, StructureError, ValidationError, ConfigurationError, ConstructionError)

# Clauses of the validation report that describe a dilator rather than decide whether it is one.
PROPERTY_CLAUSES = ('normality',)


def _host(text: str) -> FinPoset:
    if os.path.exists(text):
        return load_poset(text)
    return poset_from_code(text)


# validate
# --------

def cmd_validate(ns: Namespace) -> int:
    d = resolve_dilator(ns.dilator, ns.options)
    report = validate(d, ns.options)
    properties = {
        'normal': is_normal(d, ns.options).ok,
        'monotone': is_monotone(d, ns.options),
        'unary': is_unary(d),
    }
    structural = [v for v in report.verdicts if v.name not in PROPERTY_CLAUSES]
    ok = all(structural)
    lines = ['%s: %s' % (d.name, 'valid' if ok else 'INVALID')]
    for v in report.verdicts:
        bound = '' if v.bound is None else ' (bound %d)' % v.bound
        lines.append('  %-28s %s%s' % (v.name, 'ok' if v.ok else 'FAILED', bound))
        if not v.ok:
            lines.append('    witness: %s' % format_value(v.witness))
    monotone = properties['monotone']
    lines.append('  normal = %s' % str(properties['normal']).lower())
    lines.append('  monotone = %s' % str(monotone.ok).lower())
    if not monotone:
        lines.append('    witness: %r' % (monotone.witness,))
    lines.append('  unary = %s' % str(properties['unary']).lower())
    obj = dict(report.as_dict(), valid=ok, normal=properties['normal'], monotone=monotone.as_dict(),
               unary=properties['unary'])
    emit(ns, '\n'.join(lines), obj)
    return EXIT_OK if ok else EXIT_FAILED


# term
# ----

def cmd_term(ns: Namespace) -> int:
    d = resolve_dilator(ns.dilator, ns.options)
    if ns.action == 'cmp':
        s, t = parse_term(d, ns.left), parse_term(d, ns.right)
        result = term_system(d).compare(s, t)
        emit(ns, result, {'left': format_term(s), 'right': format_term(t), 'result': result})
        return EXIT_OK
    terms, truncated = enumerate_terms(d, ns.height, ns.max, ns.options)
    lines = ['%d %d %s' % (t.height, t.length, format_term(t)) for t in terms]
    if truncated:
        lines.append('# truncated at %d terms' % len(terms))
    obj = {'dilator': d.name, 'truncated': truncated,
           'terms': [{'height': t.height, 'length': t.length, 'term': format_term(t)} for t in terms]}
    emit(ns, '\n'.join(lines), obj)
    return EXIT_OK


# tree
# ----

def cmd_tree(ns: Namespace) -> int:
    s, t = parse_tree(ns.left), parse_tree(ns.right)
    n = None if ns.n == 'inf' else int(ns.n)
    for tree in (s, t):
        check_universe(tree, ns.m, n)
    if ns.oracle:
        result = compare_with(lambda a, b: tree_leq_oracle(a, b, ns.options), s, t)
    else:
        result = tree_compare(s, t)
    emit(ns, result, {'left': format_tree(s), 'right': format_tree(t), 'result': result, 'oracle': ns.oracle})
    return EXIT_OK


# map
# ---

class Bridge(NamedTuple):
    "One bridge for the command line: how to read inputs, map and print them, and both orders."
    read: Callable[[str], Any]
    apply: Callable[[Any], Any]
    show: Callable[[Any], str]
    leq_in: Callable[[Any, Any], bool]
    leq_out: Callable[[Any, Any], bool]


def _need(value: Any, flag: str, name: str) -> Any:
    if value is None:
        raise PreconditionError("map %s needs %s" % (name, flag))
    return value


def _show_letters(letters: Sequence) -> str:
    return '<%s>' % ','.join('%d:%s' % letter for letter in letters)


def _bridge(ns: Namespace) -> Bridge:
    name = ns.name
    if name == 'tree-to-fix':
        n = _need(ns.n, '-n', name)
        d = seq_dilator(n, ns.options)
        return Bridge(parse_tree, lambda t: tree_to_fixpoint(n, t, d), format_term, tree_leq, term_system(d).leq)
    if name == 'delabel':
        m, n = _need(ns.m, '-m', name), _need(ns.n, '-n', name)
        return Bridge(parse_tree, lambda t: delabel(m, n, t), format_tree, tree_leq, tree_leq)
    d = resolve_dilator(_need(ns.dilator, '--dilator', name), ns.options)
    source = term_system(d)
    if name == 'fix-to-tree':
        return Bridge(lambda text: parse_term(d, text), lambda t: fixpoint_to_tree(d, t), format_tree,
                      source.leq, tree_leq)
    if name == 'unary-to-seq':
        target = unary_target_order(d, ns.options)
        return Bridge(lambda text: parse_term(d, text), lambda t: unary_to_seq(d, t), _show_letters,
                      source.leq, lambda a, b: unary_seq_leq(target, a, b))
    if name == 'to-prime':
        bridge = PrimeBridge(d, ns.options)
        return Bridge(lambda text: parse_term(d, text), bridge, format_term, source.leq, bridge.system.leq)
    if name == 'wz-iso':
        if not isinstance(d.functor, WZFunctor):
            raise PreconditionError("%s is not of the form 1 + Z x X" % d.name)
        z = d.functor.z
        if ns.inputs[0].lstrip().startswith('('):
            return Bridge(lambda text: parse_term(d, text), wz_iso(d, TO_SEQUENCES),
                          lambda s: '<%s>' % ','.join(map(str, s)), source.leq, lambda a, b: higman_leq(z, a, b))
        return Bridge(parse_int_sequence, wz_iso(d, FROM_SEQUENCES), format_term,
                      lambda a, b: higman_leq(z, a, b), source.leq)
    raise ConfigurationError("Unknown bridge %r" % name)


def cmd_map(ns: Namespace) -> int:
    if ns.name == 'prod-embed':
        return _cmd_prod_embed(ns)
    if len(ns.inputs) > 2 or (ns.check and len(ns.inputs) != 2):
        raise PreconditionError("map takes one input, or two with --check")
    bridge = _bridge(ns)
    args = [bridge.read(text) for text in ns.inputs]
    images = [bridge.apply(a) for a in args]
    lines = [bridge.show(x) for x in images]
    obj: Dict[str, Any] = {'name': ns.name, 'images': lines}
    status = EXIT_OK
    if ns.check:
        a, b = args
        x, y = images
        reflects = all(not bridge.leq_out(p, q) or bridge.leq_in(u, v)
                       for (u, p), (v, q) in (((a, x), (b, y)), ((b, y), (a, x))))
        lines.append('reflection: %s' % ('ok' if reflects else 'FAILED'))
        obj['reflection'] = reflects
        if not reflects:
            status = EXIT_FAILED
    emit(ns, '\n'.join(lines), obj)
    return status


def _cmd_prod_embed(ns: Namespace) -> int:
    d = resolve_dilator(_need(ns.dilator, '--dilator', 'prod-embed'), ns.options)
    if len(ns.inputs) != 1:
        raise PreconditionError("map prod-embed takes one host order")
    host = _host(ns.inputs[0])
    presentation = eval_order(d, host, ns.options)
    images = [prod_embed(d, host, x) for x in presentation.elements]
    lines = ['%s -> %s' % (x.token.id + '@' + ','.join(map(str, sorted(x.support))), format_value(g))
             for x, g in zip(presentation.elements, images)]
    obj: Dict[str, Any] = {'name': 'prod-embed', 'images': [[list(c) for c in g] for g in images]}
    status = EXIT_OK
    if ns.check:
        check = check_bridge('prod-embed', presentation.elements, presentation.leq,
                             lambda x: prod_embed(d, host, x), lambda g, h: prod_embed_leq(host, g, h))
        lines.append('reflection: %s' % ('ok' if check.ok else 'FAILED'))
        obj['reflection'] = check.as_dict()
        if not check.ok:
            status = EXIT_FAILED
    emit(ns, '\n'.join(lines), obj)
    return status


# falsify
# -------

def cmd_falsify(ns: Namespace) -> int:
    if ns.kind == 'descent':
        start = parse_ord(ns.start, ns.level)
        found = descent_search(ns.level, start, ns.steps)
        emit(ns, '\n'.join(format_ord(t) for t in found), {'start': format_ord(start),
                                                           'chain': [format_ord(t) for t in found]})
        return EXIT_OK
    d = resolve_dilator(ns.dilator, ns.options)
    if ns.kind == 'bad-search':
        presentation = eval_order(d, _host(ns.host), ns.options)
        result = bad_search(presentation, ns.length, ns.width, budget=ns.budget, options=ns.options)
        witness = None if result.witness is None else [repr(x) for x in result.witness]
        text = '%s after %d steps' % (result.status, result.explored)
        if result.reason:
            text += ' (%s)' % result.reason
        if witness:
            text += '\n' + '\n'.join(witness)
        emit(ns, text, dict(result._asdict(), witness=witness))
        return EXIT_FAILED if result.status == INCONCLUSIVE else EXIT_OK
    if ns.kind == 'antichain':
        token = ns.token or next((t.id for t in d.trace if t.shape.size >= 2), None)
        if token is None:
            raise PreconditionError("%s has no token with two support points" % d.name)
        result = lemma32_antichain(d, token, ns.length, ns.options)
        lines = [repr(x) for x in result.elements]
        if result.witness is not None:
            i, j = result.witness
            lines.append('comparable: %d <= %d' % (i, j))
        emit(ns, '\n'.join(lines), {'elements': [repr(x) for x in result.elements], 'witness': result.witness,
                                    'antichain': result.ok})
        return EXIT_OK if result.ok else EXIT_FAILED
    mono = is_monotone(d, ns.options)
    if mono:
        raise PreconditionError("%s is monotone up to bound %s; no ladder to build" % (d.name, mono.bound))
    ladder = ladder_bad_sequence(d, mono.witness, ns.length, ns.options)
    lines = ['witness: %r' % (ladder.witness,)] + [repr(x) for x in ladder.elements]
    lines.append('bad: %s' % str(ladder.bad).lower())
    emit(ns, '\n'.join(lines), {'witness': repr(ladder.witness), 'elements': [repr(x) for x in ladder.elements],
                                'bad': ladder.bad, 'status': FOUND if ladder.bad else INCONCLUSIVE})
    return EXIT_OK if ladder.bad else EXIT_FAILED


# suite
# -----

def cmd_suite(ns: Namespace) -> int:
    report = run_suite(ns.options, ns.only)
    lines = []
    for v in report.verdicts:
        bound = '' if v.bound is None else ' [bound %d]' % v.bound
        lines.append('%-6s %s%s' % ('PASS' if v.ok else 'FAIL', v.name, bound))
        if not v.ok:
            lines.append(('       %s %s' % (v.message, format_value(v.witness) if v.witness is not None else '')).rstrip())
    lines.append('%d checks, %d failed' % (len(report.verdicts), len(report.failures())))
    emit(ns, '\n'.join(lines), report.as_dict())
    return EXIT_OK if report.ok else EXIT_FAILED


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog='kruskal', description='Coded dilators, Kruskal fixed points and tree embeddings')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('validate', parents=[common_argparser], help='check the dilator axioms')
    p.add_argument('dilator')
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser('term', parents=[common_argparser], help='compare or enumerate fixed point terms')
    p.add_argument('dilator')
    actions = p.add_subparsers(dest='action', required=True)
    cmp_ = actions.add_parser('cmp')
    cmp_.add_argument('left')
    cmp_.add_argument('right')
    enum = actions.add_parser('enum')
    enum.add_argument('--height', type=int, default=None)
    enum.add_argument('--max', type=int, default=None)
    p.set_defaults(func=cmd_term)

    p = sub.add_parser('tree', parents=[common_argparser], help='compare labeled trees')
    actions = p.add_subparsers(dest='action', required=True)
    cmp_ = actions.add_parser('cmp')
    cmp_.add_argument('--oracle', action='store_true', help='use the brute-force embedding search')
    cmp_.add_argument('m', type=int, help='labels are below m')
    cmp_.add_argument('n', help='branching degrees are below n ("inf" for unbounded)')
    cmp_.add_argument('left')
    cmp_.add_argument('right')
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser('map', parents=[common_argparser], help='apply an order-reflecting map')
    p.add_argument('name', choices=('tree-to-fix', 'delabel', 'fix-to-tree', 'unary-to-seq', 'to-prime', 'wz-iso',
                                    'prod-embed'))
    p.add_argument('inputs', nargs='+')
    p.add_argument('-m', type=int, default=None)
    p.add_argument('-n', type=int, default=None)
    p.add_argument('-d', '--dilator', default=None)
    p.add_argument('--check', action='store_true', help='verify reflection on the two inputs')
    p.set_defaults(func=cmd_map)

    p = sub.add_parser('falsify', parents=[common_argparser], help='search for bad sequences')
    kinds = p.add_subparsers(dest='kind', required=True)
    k = kinds.add_parser('bad-search')
    k.add_argument('dilator')
    k.add_argument('host', help='a poset code or file')
    k.add_argument('--length', type=int, required=True)
    k.add_argument('--width', type=int, default=None)
    k.add_argument('--budget', type=int, default=None)
    k = kinds.add_parser('antichain')
    k.add_argument('dilator')
    k.add_argument('--token', default=None)
    k.add_argument('--length', type=int, default=None)
    k = kinds.add_parser('ladder')
    k.add_argument('dilator')
    k.add_argument('--length', type=int, default=None)
    k = kinds.add_parser('descent')
    k.add_argument('start')
    k.add_argument('--level', type=int, default=2)
    k.add_argument('--steps', type=int, default=10)
    p.set_defaults(func=cmd_falsify)

    p = sub.add_parser('suite', parents=[common_argparser], help='run the property suite')
    p.add_argument('--only', action='append', default=None, choices=[name for name, _ in CHECKS])
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        ns.options = configure(ns)
        return ns.func(ns)
    except INPUT_ERRORS as e:
        sys.stderr.write('%s\n' % e)
        return EXIT_INPUT
    except KruskalError as e:
        sys.stderr.write('%s\n' % describe(e))
        return EXIT_FAILED
    except OSError as e:
        sys.stderr.write('%s\n' % e)
        return EXIT_INPUT


if __name__ == '__main__':
    sys.exit(main())
