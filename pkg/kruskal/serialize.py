"""File formats and textual grammars.

Posets and dilators are stored as JSON. Terms, trees and ordinal terms have
small grammars (``grammars/*.lark``), parsed with lark's LALR parser and
turned into values by the transformers below.
"""
import json
import os
import re
from functools import lru_cache
from typing import Any, Dict, List, Optional, Tuple, Union

from lark import Lark, Transformer
from lark.exceptions import UnexpectedInput, VisitError

from .dilator import (
    CodedDilator, TraceToken, dual_product_dilator, lex_product_dilator, prime_transform, product_dilator,
    seq_dilator, tabulate, unary_dilator, wz_dilator,
)
from .exceptions import (
    ConstructionError, GrammarParseError, KruskalError, StructureError, ValidationError,
)
from .fixpoint import FixTerm, mk_term
from .functors import RELATIONS
from .options import KruskalOptions
from .orders import (
    CanonicalPoset, FinPoset, OrderMap, OrdTerm, antichain, canonicalize, make_poset, poset_from_code,
)
from .trees import LabeledTree
from .utils import FS

GRAMMARS_DIR = os.path.join(os.path.dirname(__file__), 'grammars')


# Posets
# ------

def poset_to_json(p: FinPoset) -> Dict[str, Any]:
    """``{"size": k, "leq": [[i, j], ...]}`` with the reflexive pairs left implicit."""
    return {'size': p.size, 'leq': [list(pair) for pair in p.strict_pairs()]}


def poset_from_json(obj: Union[Dict[str, Any], str]) -> FinPoset:
    "A poset object, or the code of a canonical poset. The axioms are validated."
    if isinstance(obj, str):
        return poset_from_code(obj)
    try:
        size = obj['size']
        pairs = [(int(i), int(j)) for i, j in obj.get('leq', ())]
    except (KeyError, TypeError, ValueError) as e:
        raise StructureError("Malformed poset object %r: %s" % (obj, e))
    if not isinstance(size, int) or size < 0:
        raise StructureError("Poset size must be a non-negative integer, got %r" % (size,))
    return make_poset(size, pairs)


def _shape(obj: Union[Dict[str, Any], str]) -> CanonicalPoset:
    p = poset_from_json(obj)
    c = canonicalize(p)
    if c.matrix != p.matrix:
        raise StructureError("Shape %r is not in canonical form; its canonical code is %s" % (obj, c.code))
    return c


def _read_json(path: str) -> Any:
    try:
        with FS.open(path) as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise StructureError("%s is not valid JSON: %s" % (path, e))


def _write_json(path: str, obj: Any) -> None:
    with FS.open(path, 'w') as f:
        json.dump(obj, f, indent=1, sort_keys=True)
        f.write('\n')


def load_poset(path: str) -> FinPoset:
    return poset_from_json(_read_json(path))


def dump_poset(p: FinPoset, path: str) -> None:
    _write_json(path, poset_to_json(p))


# Dilators
# --------

def map_to_json(q: OrderMap) -> Dict[str, Any]:
    return {'domain': _code(q.domain), 'codomain': _code(q.codomain), 'values': list(q.values)}


def _code(p: FinPoset) -> Any:
    return p.code if isinstance(p, CanonicalPoset) else poset_to_json(p)


def dilator_to_json(d: CodedDilator, options: Optional[KruskalOptions] = None) -> Dict[str, Any]:
    """The coding of ``d``: its trace, the non-identity action entries and the true table entries.

    Built-ins are tabulated first.
    """
    if d.functor is not None:
        d = tabulate(d, options)
    action = [{'q': {'domain': dom.code, 'codomain': cod.code, 'values': list(values)}, 'from': source, 'to': target}
              for ((dom, cod, values), source), target in d.action.items()]
    table = [{'d': c.code, 's': list(s), 'sigma': sigma, 't': list(t), 'tau': tau, 'leq': value}
             for (c, s, sigma, t, tau), value in d.table.items() if value]
    return {
        'name': d.name,
        'n_max': d.n_max,
        'trace': [{'id': token.id, 'shape': token.shape.code} for token in d.trace],
        'action': action,
        'table': table,
    }


def dilator_from_json(obj: Dict[str, Any], name: Optional[str] = None) -> CodedDilator:
    """Read the coding back. Missing table entries are false; missing non-identity
    action entries surface as StructureError when the dilator is validated.
    """
    try:
        trace = [TraceToken(str(item['id']), _shape(item['shape'])) for item in obj['trace']]
        action = {}
        for item in obj.get('action', ()):
            q = item['q']
            key = ((_shape(q['domain']), _shape(q['codomain']), tuple(int(v) for v in q['values'])), str(item['from']))
            action[key] = str(item['to'])
        table = {}
        for item in obj.get('table', ()):
            key = (_shape(item['d']), tuple(item['s']), str(item['sigma']), tuple(item['t']), str(item['tau']))
            table[key] = item['leq']
        n_max = obj['n_max']
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, ValidationError):
            raise StructureError(str(e))
        raise StructureError("Malformed dilator data: %s: %s" % (type(e).__name__, e))
    return CodedDilator(name or obj.get('name', 'file'), n_max, trace, action, table)


def load_dilator(path: str) -> CodedDilator:
    return dilator_from_json(_read_json(path), os.path.basename(path))


def dump_dilator(d: CodedDilator, path: str, options: Optional[KruskalOptions] = None) -> None:
    _write_json(path, dilator_to_json(d, options))


_BUILTIN_RE = re.compile(r'^(seq|prod|dual|lex):(\d+)$')
_BUILTINS = {
    'seq': seq_dilator,
    'prod': product_dilator,
    'dual': dual_product_dilator,
    'lex': lex_product_dilator,
}


def resolve_dilator(spec: str, options: Optional[KruskalOptions] = None) -> CodedDilator:
    """A dilator by name or file.

    - ``seq:n``, ``prod:n``, ``dual:n``, ``lex:n``
    - ``wz:k`` (Z the k-antichain), ``wz:<poset code>`` or ``wz:<poset file>``
    - ``unary:up``, ``unary:down``, ``unary:same``: one constant ``c`` and
      constructors ``u``, ``v``, related to their argument as named
    - ``prime:<spec>``
    - otherwise, the path of a dilator JSON file
    """
    m = _BUILTIN_RE.match(spec)
    if m:
        return _BUILTINS[m.group(1)](int(m.group(2)), options)
    kind, _, arg = spec.partition(':')
    if kind == 'prime' and arg:
        return prime_transform(resolve_dilator(arg, options), options)
    if kind == 'wz' and arg:
        if arg.isdigit():
            return wz_dilator(antichain(int(arg)), options, label=arg)
        if os.path.exists(arg):
            return wz_dilator(load_poset(arg), options, label=os.path.basename(arg))
        return wz_dilator(poset_from_code(arg), options, label=arg)
    if kind == 'unary' and arg in RELATIONS:
        return unary_dilator(['c'], ['u', 'v'], relation=arg, name=spec, options=options)
    if os.path.exists(spec):
        return load_dilator(spec)
    raise StructureError("Unknown dilator %r: not a built-in name and no such file" % spec)


# Grammars
# --------

@lru_cache(maxsize=None)
def _parser(name: str) -> Lark:
    return Lark.open(os.path.join(GRAMMARS_DIR, name + '.lark'), parser='lalr')


def _parse(grammar: str, text: str, transformer: Transformer) -> Any:
    try:
        tree = _parser(grammar).parse(text)
    except UnexpectedInput as e:
        raise GrammarParseError(grammar, text, e)
    try:
        return transformer.transform(tree)
    except VisitError as e:
        if isinstance(e.orig_exc, KruskalError):
            raise e.orig_exc
        raise


class TermTransformer(Transformer):
    "Builds terms bottom-up through ``mk_term``, so ill-typed terms are rejected."

    def __init__(self, d: CodedDilator) -> None:
        super(TermTransformer, self).__init__()
        self.d = d

    def term(self, children: List[Any]) -> FixTerm:
        token_id, *kids = children
        if not self.d.has_token(str(token_id)):
            raise ConstructionError("%s is not a token of %s" % (token_id, self.d.name))
        return mk_term(self.d, kids, self.d.token(str(token_id)))

    def start(self, children: List[Any]) -> Any:
        return children[0]


class TreeTransformer(Transformer):

    def tree(self, children: List[Any]) -> LabeledTree:
        label, *kids = children
        return LabeledTree(int(label), kids)

    def start(self, children: List[Any]) -> Any:
        return children[0]


class OrdTransformer(Transformer):
    "Nested lists of entries; the level is only known once the whole term is read."

    def empty(self, _: List[Any]) -> List[Any]:
        return []

    def seq(self, children: List[Any]) -> List[Any]:
        return list(children)

    def nat(self, children: List[Any]) -> int:
        return int(children[0])

    def start(self, children: List[Any]) -> Any:
        return children[0]


def parse_term(d: CodedDilator, text: str) -> FixTerm:
    return _parse('term', text, TermTransformer(d))


def format_term(t: FixTerm) -> str:
    return t.serialized


def parse_tree(text: str) -> LabeledTree:
    return _parse('tree', text, TreeTransformer())


def format_tree(t: LabeledTree) -> str:
    return str(t)


def _ord_value(node: Any, level: int, text: str) -> OrdTerm:
    if level == 1:
        if isinstance(node, int):
            return OrdTerm.natural(node)
        if node == []:
            return OrdTerm.natural(0)
        raise GrammarParseError('ord', text, reason='level-1 terms are written as integers')
    if isinstance(node, int):
        raise GrammarParseError('ord', text, reason='an integer cannot stand for a level-%d term' % level)
    try:
        return OrdTerm(level, tuple(_ord_value(e, level - 1, text) for e in node))
    except ValidationError as e:
        raise GrammarParseError('ord', text, reason=str(e))


def parse_ord(text: str, level: int) -> OrdTerm:
    return _ord_value(_parse('ord', text, OrdTransformer()), level, text)


def parse_int_sequence(text: str) -> Tuple[int, ...]:
    "A finite sequence of naturals, written like a level-2 ordinal term: ``<0,1,0>``."
    node = _parse('ord', text, OrdTransformer())
    if isinstance(node, int) or any(not isinstance(e, int) for e in node):
        raise GrammarParseError('ord', text, reason='expected a sequence of naturals such as <0,1>')
    return tuple(node)


def format_ord(t: OrdTerm) -> str:
    return str(t)


def format_value(x: Any) -> str:
    "Terms, trees and ordinal terms in their grammar; anything else by repr."
    if isinstance(x, (FixTerm, LabeledTree, OrdTerm)):
        return str(x)
    if isinstance(x, (list, tuple)):
        return '[%s]' % ', '.join(format_value(e) for e in x)
    return repr(x)

