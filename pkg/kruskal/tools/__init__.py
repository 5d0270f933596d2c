import json
import sys
from argparse import ArgumentParser, Namespace
from logging import DEBUG, INFO, WARN, ERROR
from typing import Any, Optional, TextIO

from ..options import PROFILES, KruskalOptions, get_options, profile, set_options
from ..utils import logger

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2

common_argparser = ArgumentParser(add_help=False, epilog='Bounds come from the size profile; see KruskalOptions for the list')

common_argparser.add_argument('-v', '--verbose', action='count', default=0, help="Increase Logger output level, up to three times")
common_argparser.add_argument('-p', '--profile', default=None, choices=sorted(PROFILES),
                              help='the size profile (default: $KRUSKAL_PROFILE, else "default")')
common_argparser.add_argument('-f', '--format', default='text', choices=('text', 'json'), help='the output format')
common_argparser.add_argument('-b', '--bound', type=int, default=None,
                              help='override the validation, transitivity and monotonicity bounds of the profile')


def configure(namespace: Namespace) -> KruskalOptions:
    "Apply the verbosity and the profile of a parsed command line."
    logger.setLevel((ERROR, WARN, INFO, DEBUG)[min(namespace.verbose, 3)])
    if namespace.profile is None:
        set_options(None)
        options = get_options()
    else:
        options = profile(namespace.profile)
    if namespace.bound is not None:
        options = options.replace(validate_bound=namespace.bound, transitivity_bound=namespace.bound,
                                  monotone_bound=namespace.bound)
    set_options(options)
    return options


def emit(namespace: Namespace, text: str, obj: Any, out: Optional[TextIO] = None) -> None:
    "Write ``text`` or, with ``--format json``, ``obj`` as sorted JSON."
    out = out or sys.stdout
    if namespace.format == 'json':
        json.dump(obj, out, indent=1, sort_keys=True)
        out.write('\n')
    else:
        out.write(text)
        if text and not text.endswith('\n'):
            out.write('\n')
