from .repr_mixin import ReprMixin
