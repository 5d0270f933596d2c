from .exceptions import (
    ConfigurationError,
    ConstructionError,
    GrammarParseError,
    KruskalError,
    PreconditionError,
    ResourceLimitError,
    StructureError,
    ValidationError,
    WitnessError,
)
from .options import KruskalOptions, get_options, profile, set_options
from .orders import (
    CanonicalPoset, FinPoset, OrderMap, OrdTerm, antichain, canonical_form, chain, enumerate_canonical, higman_leq,
    is_embedding, is_quasi_embedding, make_poset, ord_leq,
)
from .dilator import (
    CodedDilator, DilElem, TraceToken, apply_map, eval_order, is_monotone, is_normal, leq_W, prime_transform,
    product_dilator, restrict_to_union, seq_dilator, unary_dilator, validate, wz_dilator,
)
from .fixpoint import FixTerm, enumerate_terms, leq_T, mk_term, term_system
from .trees import LabeledTree, full_tree, label_gadget, tree_leq, tree_leq_oracle
from .bridges import delabel, fixpoint_to_tree, to_prime, tree_to_fixpoint, unary_to_seq, wz_iso
from .falsify import bad_search, ladder_bad_sequence, lemma32_antichain
from .serialize import load_dilator, load_poset, parse_ord, parse_term, parse_tree, resolve_dilator
from .utils import Verdict, ValidationReport, logger

__version__: str = "0.1.0"

__all__ = (
    "ConfigurationError",
    "ConstructionError",
    "GrammarParseError",
    "KruskalError",
    "PreconditionError",
    "ResourceLimitError",
    "StructureError",
    "ValidationError",
    "WitnessError",
    "KruskalOptions",
    "get_options",
    "profile",
    "set_options",
    "CanonicalPoset",
    "FinPoset",
    "OrderMap",
    "OrdTerm",
    "antichain",
    "canonical_form",
    "chain",
    "enumerate_canonical",
    "higman_leq",
    "is_embedding",
    "is_quasi_embedding",
    "make_poset",
    "ord_leq",
    "CodedDilator",
    "DilElem",
    "TraceToken",
    "apply_map",
    "eval_order",
    "is_monotone",
    "is_normal",
    "leq_W",
    "prime_transform",
    "product_dilator",
    "restrict_to_union",
    "seq_dilator",
    "unary_dilator",
    "validate",
    "wz_dilator",
    "FixTerm",
    "enumerate_terms",
    "leq_T",
    "mk_term",
    "term_system",
    "LabeledTree",
    "full_tree",
    "label_gadget",
    "tree_leq",
    "tree_leq_oracle",
    "delabel",
    "fixpoint_to_tree",
    "to_prime",
    "tree_to_fixpoint",
    "unary_to_seq",
    "wz_iso",
    "bad_search",
    "ladder_bad_sequence",
    "lemma32_antichain",
    "load_dilator",
    "load_poset",
    "parse_ord",
    "parse_term",
    "parse_tree",
    "resolve_dilator",
    "Verdict",
    "ValidationReport",
    "logger",
)
