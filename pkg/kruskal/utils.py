import os
import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional, TypeVar

logger: logging.Logger = logging.getLogger("kruskal")
logger.addHandler(logging.StreamHandler())
# Set to highest level, since the library itself should stay silent.
# The command line tools lower it with -v.
logger.setLevel(logging.CRITICAL)


T = TypeVar("T")

# Outcomes of comparing two elements of a partial order in both directions.
COMPARISON_EQUAL = 'EQ'
COMPARISON_SMALLER = 'LT'
COMPARISON_BIGGER = 'GT'
COMPARISON_INCOMPARABLE = 'INC'


def compare_with(leq: Callable[[Any, Any], bool], a: Any, b: Any) -> str:
    """Compare ``a`` and ``b`` under the relation ``leq`` in both directions.

    :return: one of ``'EQ'``, ``'LT'`` (a is smaller), ``'GT'`` (a is bigger) and ``'INC'``.
    """
    below = leq(a, b)
    above = leq(b, a)
    if below and above:
        return COMPARISON_EQUAL
    if below:
        return COMPARISON_SMALLER
    if above:
        return COMPARISON_BIGGER
    return COMPARISON_INCOMPARABLE


def dedup_list(l: Iterable[T]) -> List[T]:
    "Drop repeated entries, keeping the first occurrence of each."
    return list(dict.fromkeys(l))


def invert(values: Iterable[T]) -> Dict[T, int]:
    "Position index of an injective sequence."
    inverse = {}
    for i, v in enumerate(values):
        if v in inverse:
            from .exceptions import ValidationError
            raise ValidationError("%r occurs twice in a sequence that must be injective" % (v,))
        inverse[v] = i
    return inverse


@dataclass(frozen=True)
class Verdict:
    """The outcome of a semantic check.

    A verdict is truthy when the check passed. A failing verdict carries the
    concrete witness that refutes the checked property.
    """
    name: str
    ok: bool
    witness: Any = None
    message: str = ''
    bound: Optional[int] = None

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def passed(cls, name: str, message: str = '', bound: Optional[int] = None) -> 'Verdict':
        return cls(name, True, None, message, bound)

    @classmethod
    def failed(cls, name: str, witness: Any, message: str = '', bound: Optional[int] = None) -> 'Verdict':
        return cls(name, False, witness, message, bound)

    def as_dict(self) -> Dict[str, Any]:
        return {'name': self.name, 'ok': self.ok, 'bound': self.bound,
                'message': self.message,
                'witness': None if self.witness is None else repr(self.witness)}


@dataclass
class ValidationReport:
    "An ordered collection of verdicts, one per checked clause."
    subject: str
    verdicts: List[Verdict] = field(default_factory=list)

    def add(self, verdict: Verdict) -> Verdict:
        self.verdicts.append(verdict)
        return verdict

    @property
    def ok(self) -> bool:
        return all(self.verdicts)

    def __bool__(self) -> bool:
        return self.ok

    def __getitem__(self, name: str) -> Verdict:
        for v in self.verdicts:
            if v.name == name:
                return v
        raise KeyError(name)

    def failures(self) -> List[Verdict]:
        return [v for v in self.verdicts if not v.ok]

    def as_dict(self) -> Dict[str, Any]:
        return {'subject': self.subject, 'ok': self.ok, 'clauses': [v.as_dict() for v in self.verdicts]}


try:
    import atomicwrites
    _has_atomicwrites = True
except ImportError:
    _has_atomicwrites = False

class FS:
    exists = staticmethod(os.path.exists)

    @staticmethod
    def open(name, mode="r", **kwargs):
        if _has_atomicwrites and "w" in mode:
            return atomicwrites.atomic_write(name, mode=mode, overwrite=True, **kwargs)
        else:
            return open(name, mode, **kwargs)


