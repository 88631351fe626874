from collections import Counter
from fractions import Fraction
from numbers import Integral, Real

import numpy as np

from ..text.utils import natural_join
from .exceptions import SpecError


def _quote_name(name):
    # encase variable names in single quotes but not descriptions
    parts = name.strip().split()
    name = ' '.join(parts)
    if len(parts) == 1:
        name = f"'{name}'"
    return name


def validate_value(
    value,
    types,
    name='value',
    finite=False,
    min_value=None,
    max_value=None,
    min_inclusive=False,
    max_inclusive=False,
    whitelist=None,
    none_ok=False,
    even=False,
    ):
    '''
    Description
    ------------
    Validates an argument's type and value.

    Parameters
    ------------
    value : *
        argument to validate
    types : object | tuple
        one or more valid types of which value is allowed to be an instance.
        Booleans are never accepted where a number type is requested.
    name : str
        Name of value to include in error messages.
    finite : bool
        if True, the value is not allowed to be ±inf or nan.
    min_value : float | None
        minimum allowed value
    max_value : float | None
        maximum allowed value
    min_inclusive : bool
        if True, value is allowed to be equal to min_value
    max_inclusive : bool
        if True, value is allowed to be equal to max_value
    whitelist : str | list
        list of acceptable values
    none_ok : bool
        if True, None is an acceptable value and no further validation is
        necessary.
    even : bool
        if True, the value must be an even integer.

    Returns
    ------------
    None
    '''

    if none_ok and value is None:
        return

    name = _quote_name(name)

    if not isinstance(types, tuple):
        types = (types,)

    is_bool = isinstance(value, (bool, np.bool_))
    numeric = any(issubclass(x, (Real, Integral)) for x in types)

    if not isinstance(value, types) or (is_bool and numeric and bool not in types):
        all_types = types + (type(value),)
        type_counts = Counter(x.__name__ for x in all_types)

        type_names = []
        for x in all_types:
            type_name = x.__name__
            if type_counts[type_name] > 1:
                type_name = (
                    x.__module__.split('.')[0]
                    + '.' + type_name
                    )
            type_names.append(f'<{type_name}>')

        value_type_name = type_names.pop()
        type_names = natural_join(type_names, 'or')

        raise TypeError(
            f'{name} must be a {type_names}, '
            f'got: {value_type_name}.'
            )

    if whitelist is not None:
        if isinstance(whitelist, str):
            whitelist = [whitelist]

        if value in set(whitelist):
            return

        raise ValueError(
            f'{name} must be in {list(whitelist)}, '
            f'got: {value!r}.'
            )

    if finite and not np.isfinite(value):
        raise ValueError(
            f'{name} must be finite, '
            f'got: {value!r}.'
            )

    if even and value % 2 != 0:
        raise SpecError(
            f'{name} must be even, '
            f'got: {value!r}.'
            )

    msg = f"{name} must be {{0}} {{1}}, got: {value!r}."

    if min_value is not None:
        symbol = None
        if min_inclusive and value < min_value:
            symbol = '≥'
        if not min_inclusive and value <= min_value:
            symbol = '>'
        if symbol is not None:
            raise ValueError(
                msg.format(symbol, min_value)
                )

    if max_value is not None:
        symbol = None
        if max_inclusive and value > max_value:
            symbol = '≤'
        if not max_inclusive and value >= max_value:
            symbol = '<'
        if symbol is not None:
            raise ValueError(
                msg.format(symbol, max_value)
                )


def validate_array(
    value,
    name='array',
    shape=None,
    dtype_kind=None,
    finite=True,
    ):
    '''
    Description
    ------------
    Validates a numpy array's shape, dtype kind and finiteness.

    Parameters
    ------------
    value : np.ndarray
        Array to validate.
    name : str
        Name used in error messages.
    shape : tuple | None
        Expected shape. None entries match any extent.
    dtype_kind : str | None
        Allowed numpy dtype kinds, e.g. 'f' or 'fc'.
    finite : bool
        If True, every entry must be finite.

    Returns
    ------------
    None
    '''
    validate_value(value, np.ndarray, name)
    label = _quote_name(name)

    if shape is not None:
        expected = tuple(shape)
        matches = (
            value.ndim == len(expected)
            and all(
                e is None or e == s
                for e, s in zip(expected, value.shape)
                )
            )
        if not matches:
            raise SpecError(
                f'{label} shape mismatch: expected {expected}, '
                f'got: {value.shape}.'
                )

    if dtype_kind is not None and value.dtype.kind not in dtype_kind:
        raise TypeError(
            f'{label} must have dtype kind in {dtype_kind!r}, '
            f'got: {value.dtype}.'
            )

    if finite and not np.all(np.isfinite(value)):
        raise ValueError(
            f'{label} contains non-finite entries.'
            )


def parse_fraction(value, name='fraction'):
    '''
    Description
    ------------
    Coerces a fraction given as Fraction, number or 'p/q' string and
    checks that it lies in (0, 1].

    Parameters
    ------------
    value : Fraction | int | float | str
        Fraction to coerce.
    name : str
        Name used in error messages.

    Returns
    ------------
    out : Fraction
        Validated fraction.
    '''
    validate_value(value, (Fraction, Real, str), name)

    try:
        out = (
            Fraction(value.strip())
            if isinstance(value, str)
            else Fraction(value).limit_denominator(10**6)
            )
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(
            f'{_quote_name(name)} is not a valid fraction, '
            f'got: {value!r}.'
            ) from e

    validate_value(
        out,
        Fraction,
        name,
        min_value=0,
        max_value=1,
        max_inclusive=True,
        )

    return out
