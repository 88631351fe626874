from numbers import Real

from ..mixins import ReprMixin
from ..validation import SpecError, validate_setter


class PhysParams(ReprMixin):
    '''
    Description
    ------------
    Physical parameters of the rotating stratified layer.

    Parameters
    ------------
    Omega : float
        Rotation rate.
    Gamma : float
        Buoyancy coupling, nonzero.
    nu : float
        Viscosity of the nondimensional equations, 1 by default.
    '''

    _repr_attrs = ('Omega', 'Gamma', 'nu', 'eta')

    def __init__(self, Omega=0.0, Gamma=1.0, nu=1.0):
        self._Omega = 0.0
        self._Gamma = 1.0
        self.Omega = Omega
        self.Gamma = Gamma
        self.nu = nu


    #╭-------------------------------------------------------------------------╮
    #| Properties                                                              |
    #╰-------------------------------------------------------------------------╯

    @property
    def Omega(self):
        return self._Omega

    @Omega.setter
    @validate_setter(call_func=True, cast=float, types=Real, finite=True)
    def Omega(self, value):
        self._Omega = value
        self._update_eta()

    @property
    def Gamma(self):
        return self._Gamma

    @Gamma.setter
    @validate_setter(call_func=True, cast=float, types=Real, finite=True)
    def Gamma(self, value):
        if value == 0:
            raise SpecError("'Gamma' must be nonzero.")
        self._Gamma = value
        self._update_eta()

    @property
    def nu(self):
        return self._nu

    @nu.setter
    @validate_setter(cast=float, types=Real, finite=True, min_value=0, min_inclusive=True)
    def nu(self, value):
        pass

    @property
    def eta(self):
        ''' Ω/Γ '''
        return self._eta


    #╭-------------------------------------------------------------------------╮
    #| Methods                                                                 |
    #╰-------------------------------------------------------------------------╯

    def _update_eta(self):
        self._eta = self._Omega / self._Gamma

    def replace(self, **kwargs):
        ''' copy with some parameters changed '''
        params = dict(zip(('Omega', 'Gamma', 'nu'), self.as_tuple()))
        params.update(kwargs)
        return PhysParams(**params)

    def as_tuple(self):
        return (self.Omega, self.Gamma, self.nu)

    def __eq__(self, other):
        if not isinstance(other, PhysParams):
            return NotImplemented
        return self.as_tuple() == other.as_tuple()

    # setters mutate in place
    __hash__ = None
