import collections
import functools
import itertools
import json
import math
import pprint
import sys
import typing
from datetime import datetime
from fractions import Fraction
from typing import List, Dict, Any, Iterable, Tuple, Union, IO

import numpy as np

_T = typing.TypeVar("_T")
_K = typing.TypeVar("_K")
_V = typing.TypeVar("_V")

FLOAT_DIGITS = 12


def head(lst: List[_T]) -> _T:
    """Provides the first element of a list. Raises `ValueError` if list is empty."""
    if not len(lst):
        raise ValueError("List is empty")
    return lst[0]


def dict_generate_multi(entries: Iterable[Tuple[_K, _V]]) -> Dict[_K, List[_V]]:
    """Generates a dict based on its entries.

    Each key can occur multiple times and values will be aggregated in a list, keeping their insertion order.
    """
    collector = collections.defaultdict(list)
    for key, value in entries:
        collector[key].append(value)
    return dict(collector)


def flatten(deep_lst: List[Union[List[_T], _T]]) -> List[_T]:
    """Unwraps one level of nested lists, leaving scalar values untouched.

    E.g. for a deep list `[[1, 2, 3], 4, [5, 6]]` will return `[1, 2, 3, 4, 5, 6]` (mind the scalar 4).
    """
    deep_lst = [deep_elem if isinstance(deep_elem, list) else [deep_elem] for deep_elem in deep_lst]
    return list(itertools.chain(*deep_lst))


def enlist(obj: _T, *, strict: bool = True) -> List[_T]:
    """Turns a scalar value into a list, if it is not one already.

    Setting `strict` to `True` (the default) will always enlist, except for `list` arguments (e.g. tuples will also be
    wrapped). Setting `strict` to `False` will only enlist objects that are not iterable.
    """
    if strict:
        return obj if isinstance(obj, list) else [obj]
    else:
        return obj if "__iter__" in dir(obj) else [obj]


def is_rational(value: Any) -> bool:
    """Checks whether `value` is an exact rational, i.e. an `int` or a `Fraction` (but not a `bool`)."""
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def parse_rational(raw: str) -> Fraction:
    """Parses strings of the form `p/q` or `p` into an exact `Fraction`.

    Decimal and scientific notation (`0.25`, `1e-1`) are rejected on purpose, since they would smuggle binary floating
    point values into exact arithmetic. Raises `ValueError` on malformed input.
    """
    text = str(raw).strip()
    if not text or any(marker in text.lower() for marker in (".", "e", "inf", "nan")):
        raise ValueError(f"Not an exact rational: '{raw}' (use p/q notation)")
    numerator, _, denominator = text.partition("/")
    try:
        value = Fraction(int(numerator), int(denominator)) if denominator else Fraction(int(numerator))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"Not an exact rational: '{raw}' (use p/q notation)")
    return value


def rational_sqrt(value: Fraction) -> Union[Fraction, None]:
    """Provides the exact square root of a non-negative rational, or `None` if the root is irrational."""
    value = Fraction(value)
    if value < 0:
        return None
    num_root, den_root = math.isqrt(value.numerator), math.isqrt(value.denominator)
    if num_root * num_root == value.numerator and den_root * den_root == value.denominator:
        return Fraction(num_root, den_root)
    return None


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def round_float(value: float, digits: int = FLOAT_DIGITS) -> float:
    """Rounds a float to a fixed number of significant digits, so that reports are byte-stable."""
    if value is None:
        return None
    value = float(value)
    if not math.isfinite(value):
        return value
    return float(format(value, f".{digits}g"))


def timestamp() -> str:
    return datetime.now().strftime("%y-%m-%d %H:%M:%S")


def make_logger(enabled: bool = True, *, file: IO[str] = sys.stderr, pretty: bool = False):
    def _log(*args, **kwargs):
        print(*args, file=file, **kwargs)

    def _dummy_log(*args, **kwargs):
        pass

    if pretty and enabled:
        return functools.partial(pprint.pprint, stream=file)

    return _log if enabled else _dummy_log


def print_stderr(*args, **kwargs):
    """Prints to stderr rather than stdout."""
    kwargs.pop("file", None)
    print(*args, file=sys.stderr, **kwargs)


class StateError(RuntimeError):
    """Indicates that an object is not in the right state to perform an operation."""
    def __init__(self, msg: str = ""):
        super().__init__(msg)


class JsonizeEncoder(json.JSONEncoder):
    """JSON encoder that knows about exact rationals, numpy scalars and objects providing a `__json__` method."""
    def default(self, obj: Any) -> Any:
        if "__json__" in dir(obj):
            return obj.__json__()
        if isinstance(obj, Fraction):
            return format_rational(obj)
        if isinstance(obj, np.integer):
            return int(obj)
        if isinstance(obj, np.floating):
            return round_float(obj)
        if isinstance(obj, np.bool_):
            return bool(obj)
        return json.JSONEncoder.default(self, obj)


def to_json(obj: Any, *args, **kwargs) -> str:
    if obj is None:
        return None
    kwargs.pop("cls", None)
    return json.dumps(obj, *args, cls=JsonizeEncoder, **kwargs)


def read_json(obj: Any) -> Any:
    if not obj:
        return {}
    return json.loads(obj)
