from typing import Any, Collection, Optional

from .utils import logger


class KruskalError(Exception):
    pass


class ConfigurationError(KruskalError, ValueError):
    pass


def assert_config(value, options: Collection, msg='Got %r, expected one of %s'):
    if value not in options:
        raise ConfigurationError(msg % (value, options))


class ValidationError(KruskalError, ValueError):
    """Raised when a relation or a map does not have the order-theoretic
    properties an operation requires (a partial order, a quasi-embedding, ...).
    """
    pass


class StructureError(KruskalError):
    """Malformed dilator data: bad table keys, shape mismatches, missing action entries.

    Structural errors are reported before any semantic check runs.
    """
    pass


class ConstructionError(KruskalError):
    """An ill-typed term: the children do not induce the shape of the token."""
    pass


class ResourceLimitError(KruskalError):
    """An exhaustive enumeration would exceed a configured bound.

    Parameters:
        what: a short name for the enumeration that was refused
        size: the requested size
        bound: the configured bound that was exceeded
    """

    def __init__(self, what: str, size: int, bound: int) -> None:
        message = '%s of size %d exceeds the configured bound %d' % (what, size, bound)
        super(ResourceLimitError, self).__init__(message)
        self.what = what
        self.size = size
        self.bound = bound


class PreconditionError(KruskalError, ValueError):
    pass


class WitnessError(PreconditionError):
    """A monotonicity witness that does not witness a violation."""
    pass


class GrammarParseError(KruskalError):
    """Textual input rejected by one of the grammars.

    It keeps the original lark exception and a pretty context string, so that
    the command line can point at the offending character.
    """

    orig_exc: Optional[Exception]

    def __init__(self, grammar: str, text: str, orig_exc: Optional[Exception] = None, reason: str = '') -> None:
        context = ''
        if orig_exc is not None and hasattr(orig_exc, 'get_context'):
            try:
                context = orig_exc.get_context(text)
            except (AssertionError, TypeError):
                context = ''
        message = 'Cannot parse %s: %r' % (grammar, text)
        if reason:
            message += ' (%s)' % reason
        if context:
            message += '\n\n' + context
        super(GrammarParseError, self).__init__(message)
        self.grammar = grammar
        self.text = text
        self.orig_exc = orig_exc
        logger.debug("Rejected %s input %r", grammar, text)


def describe(exc: Any) -> str:
    "One-line rendering of an exception for command line reports."
    return '%s: %s' % (type(exc).__name__, str(exc).splitlines()[0] if str(exc) else '')
