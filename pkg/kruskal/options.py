import os
from typing import Any, Dict, Optional

from .exceptions import ConfigurationError, assert_config
from .utils import logger


PROFILE_ENV = 'KRUSKAL_PROFILE'
RESOURCE_CAP_ENV = 'KRUSKAL_RESOURCE_CAP'


class KruskalOptions:
    """Specifies the bounds used by the exhaustive checks and searches.

    """

    OPTIONS_DOC = r"""
    **===  Enumeration bounds  ===**

    poset_bound
            Hard cap on the size of finite posets that are enumerated exhaustively.
            Requests beyond it raise ``ResourceLimitError`` (Default: 6)
    oracle_vertex_bound
            Largest tree (in vertices) the brute-force embedding oracle accepts (Default: 8)
    validate_bound
            Cap on the 2*n_max domains that dilator validation walks (Default: 4)
    transitivity_bound
            Cap on the 3*n_max domain of the transitivity check; 6 covers every built-in
            with n_max <= 2 (Default: 6)
    monotone_bound
            Cap on the size of the target orders Y in the monotonicity check (Default: 4)
    max_n_max
            Largest n_max a constructed dilator may have; prime_transform refuses beyond it (Default: 4)

    **===  Corpus bounds  ===**

    term_height, term_count
            Height and count limits for term enumeration (Default: 3, 5000)
    law_terms
            Number of lowest-rank terms on which the suite checks the order laws of a
            fixed point exhaustively (Default: 200)
    tree_vertices, tree_labels, tree_branching
            The tree universe used by the property suite: at most ``tree_vertices`` vertices,
            labels below ``tree_labels``, branching below ``tree_branching`` (Default: 6, 2, 3)
    host_size
            Largest host order on which built-in dilators are compared to their direct semantics (Default: 3)

    **===  Searches  ===**

    search_budget
            Number of search nodes a falsification search may expand before it reports
            an inconclusive result (Default: 200000)
    ladder_length
            Length K of the ladder bad sequences (Default: 5)
    lemma32_length
            Longest chain length L used for the support antichains (Default: 6)
    ord_entry, ord_length
            Entry and length bounds for the exhaustively enumerated ordinal terms (Default: 3, 3)
    **=== End of Options ===**
    """
    if __doc__:
        __doc__ += OPTIONS_DOC

    # Adding a new option needs to be done in multiple places:
    # - In the dictionary below, the primary truth of which options exist
    # - In the docstring above
    # - Potentially in PROFILES below, when the suite profiles should differ
    _defaults: Dict[str, Any] = {
        'poset_bound': 6,
        'oracle_vertex_bound': 8,
        'validate_bound': 4,
        'transitivity_bound': 6,
        'monotone_bound': 4,
        'max_n_max': 4,
        'term_height': 3,
        'term_count': 5000,
        'law_terms': 200,
        'tree_vertices': 6,
        'tree_labels': 2,
        'tree_branching': 3,
        'host_size': 3,
        'search_budget': 200000,
        'ladder_length': 5,
        'lemma32_length': 6,
        'ord_entry': 3,
        'ord_length': 3,
    }

    def __init__(self, options_dict: Optional[Dict[str, Any]] = None) -> None:
        o = dict(options_dict or {})

        options = {}
        for name, default in self._defaults.items():
            if name in o:
                value = o.pop(name)
                if not isinstance(value, int) or value < 0:
                    raise ConfigurationError("Option %r must be a non-negative integer, got %r" % (name, value))
            else:
                value = default
            options[name] = value

        if o:
            raise ConfigurationError("Unknown options: %s" % o.keys())

        self.__dict__['options'] = options

    def __getattr__(self, name: str) -> Any:
        try:
            return self.__dict__['options'][name]
        except KeyError as e:
            raise AttributeError(e)

    def __setattr__(self, name: str, value: Any) -> None:
        assert_config(name, self.options.keys(), "%r isn't a valid option. Expected one of: %s")
        self.options[name] = value

    def replace(self, **changes: Any) -> 'KruskalOptions':
        options = dict(self.options)
        options.update(changes)
        return KruskalOptions(options)

    def as_dict(self) -> Dict[str, Any]:
        return dict(self.options)

    def __repr__(self):
        return 'KruskalOptions(%r)' % self.options


PROFILES: Dict[str, Dict[str, Any]] = {
    'tiny': {
        'validate_bound': 3,
        'transitivity_bound': 3,
        'monotone_bound': 3,
        'term_height': 2,
        'term_count': 500,
        'law_terms': 80,
        'tree_vertices': 4,
        'host_size': 2,
        'search_budget': 20000,
        'lemma32_length': 4,
        'ord_entry': 2,
        'ord_length': 2,
    },
    'default': {},
    'thorough': {
        'validate_bound': 5,
        'monotone_bound': 5,
        'law_terms': 600,
        'search_budget': 2000000,
    },
}


def profile(name: str) -> KruskalOptions:
    assert_config(name, PROFILES.keys(), "Unknown profile %r. Expected one of: %s")
    options = dict(PROFILES[name])
    cap = os.environ.get(RESOURCE_CAP_ENV)
    if cap:
        try:
            options['poset_bound'] = int(cap)
        except ValueError:
            raise ConfigurationError("%s must be an integer, got %r" % (RESOURCE_CAP_ENV, cap))
    return KruskalOptions(options)


_active: Optional[KruskalOptions] = None


def get_options() -> KruskalOptions:
    "The process-wide options; the profile comes from KRUSKAL_PROFILE (default: 'default')."
    global _active
    if _active is None:
        name = os.environ.get(PROFILE_ENV, 'default')
        _active = profile(name)
        logger.debug("Using profile %r: %r", name, _active)
    return _active


def set_options(options: Optional[KruskalOptions]) -> None:
    global _active
    _active = options


def resolve(options: Optional[KruskalOptions]) -> KruskalOptions:
    return options if options is not None else get_options()
