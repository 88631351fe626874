from functools import wraps

from .utils import validate_value


def validate_setter(call_func=False, cast=None, **kwargs):
    '''
    Description
    ------------
    Decorator for property setters of parameter records. The incoming value
    is checked with validate_value() under the setter's own name, optionally
    cast, and then stored on '_<name>' unless call_func is True.

    Parameters
    ------------
    call_func : bool
        If True, the setter body runs with the checked value and is
        responsible for storing it, e.g. to refresh derived attributes.
    cast : callable | None
        Applied after validation, e.g. float to drop numpy scalar types
        before the value reaches a snapshot header.
    kwargs : dict
        Checks forwarded to validate_value().
    '''

    def decorator(func):
        name = func.__name__

        @wraps(func)
        def wrapper(self, value):
            validate_value(value=value, name=name, **kwargs)
            value = value if cast is None or value is None else cast(value)
            if call_func:
                return func(self, value)
            setattr(self, f'_{name}', value)

        return wrapper

    return decorator
