from math import ceil
from numbers import Real

from ..linops import PhysParams
from ..mixins import ReprMixin
from ..reference import VortexParams
from ..spectral import SpectralField
from ..validation import SpecError, validate_setter, validate_value
from ._constants import (
    BLOWUP_FACTOR,
    DEFAULT_CFL,
    DEFAULT_DT_MAX,
    FORMULATIONS,
    SCHEMES,
    )


class SimState(ReprMixin):
    '''
    Description
    ------------
    Simulation state at one instant. In background mode v is the
    perturbation around the analytic vortex family described by
    `background`; otherwise v is the full field.

    Parameters
    ------------
    v : SpectralField
        Four-component volume field.
    t : float
        Current time.
    params : PhysParams
        Physical parameters.
    formulation : str
        'full' or 'background_perturbation'.
    background : VortexParams | None
        Background family, required in background mode.
    '''

    _repr_attrs = ('t', 'formulation', 'params', 'background')

    def __init__(self, v, t, params, formulation='full', background=None):
        validate_value(v, SpectralField, 'v')
        if v.plane or v.ncomp != 4:
            raise SpecError("'v' must be a four-component volume field.")
        validate_value(t, Real, 't', finite=True)
        validate_value(params, PhysParams, 'params')
        validate_value(formulation, str, 'formulation', whitelist=FORMULATIONS)

        if formulation == 'background_perturbation':
            validate_value(background, VortexParams, 'background')
            if background.Gamma != params.Gamma:
                raise SpecError(
                    'the background oscillates at Gamma='
                    f'{background.Gamma!r}, the physics at Gamma={params.Gamma!r}.'
                    )
        elif background is not None:
            raise SpecError("'background' is only used in background_perturbation runs.")

        self.v = v
        self.t = float(t)
        self.params = params
        self.formulation = formulation
        self.background = background

    @property
    def grid(self):
        return self.v.grid

    @property
    def has_background(self):
        return self.background is not None

    def evolve(self, v, t):
        ''' same run, new field and time '''
        return SimState(v, t, self.params, self.formulation, self.background)


class StepperConfig(ReprMixin):
    '''
    Description
    ------------
    Time-stepping controls. The step is fixed for a whole run: either
    given explicitly or derived once from the CFL rule at t = 0.

    Parameters
    ------------
    dt : float | None
        Time step, > 0. None defers to the CFL rule.
    scheme : str
        Integration scheme; only 'lawson_rk4'.
    cfl_target : float
        Courant number used by the CFL rule, in (0, 0.5].
    dt_max : float
        Upper bound on the step chosen by the CFL rule.
    linear : bool
        If True, the nonlinearity is dropped and each step is the exact
        propagator.
    blowup_factor : float
        Growth of the state norm, relative to t = 0, that aborts a run.
    '''

    _repr_attrs = ('dt', 'scheme', 'cfl_target', 'dt_max', 'linear')

    def __init__(
        self,
        dt=None,
        scheme='lawson_rk4',
        cfl_target=DEFAULT_CFL,
        dt_max=DEFAULT_DT_MAX,
        linear=False,
        blowup_factor=BLOWUP_FACTOR,
        ):
        self.dt = dt
        self.scheme = scheme
        self.cfl_target = cfl_target
        self.dt_max = dt_max
        self.linear = linear
        self.blowup_factor = blowup_factor


    #╭-------------------------------------------------------------------------╮
    #| Properties                                                              |
    #╰-------------------------------------------------------------------------╯

    @property
    def dt(self):
        return self._dt

    @dt.setter
    @validate_setter(types=Real, finite=True, min_value=0, none_ok=True)
    def dt(self, value):
        pass

    @property
    def scheme(self):
        return self._scheme

    @scheme.setter
    @validate_setter(types=str, whitelist=SCHEMES)
    def scheme(self, value):
        pass

    @property
    def cfl_target(self):
        return self._cfl_target

    @cfl_target.setter
    @validate_setter(
        types=Real,
        cast=float,
        finite=True,
        min_value=0,
        max_value=0.5,
        max_inclusive=True,
        )
    def cfl_target(self, value):
        pass

    @property
    def dt_max(self):
        return self._dt_max

    @dt_max.setter
    @validate_setter(types=Real, cast=float, finite=True, min_value=0)
    def dt_max(self, value):
        pass

    @property
    def linear(self):
        return self._linear

    @linear.setter
    @validate_setter(types=bool)
    def linear(self, value):
        pass

    @property
    def blowup_factor(self):
        return self._blowup_factor

    @blowup_factor.setter
    @validate_setter(types=Real, cast=float, min_value=1)
    def blowup_factor(self, value):
        pass


    #╭-------------------------------------------------------------------------╮
    #| Methods                                                                 |
    #╰-------------------------------------------------------------------------╯

    def with_dt(self, dt):
        return StepperConfig(
            dt=dt,
            scheme=self.scheme,
            cfl_target=self.cfl_target,
            dt_max=self.dt_max,
            linear=self.linear,
            blowup_factor=self.blowup_factor,
            )

    def schedule(self, T):
        '''
        Description
        ------------
        Splits [0, T] into equal steps no longer than dt.

        Parameters
        ------------
        T : float
            Final time, ≥ 0.

        Returns
        ------------
        nsteps : int
        dt : float
            T/nsteps, or the configured dt when T = 0.
        '''
        validate_value(T, Real, 'T', finite=True, min_value=0, min_inclusive=True)
        if self.dt is None:
            raise SpecError('dt is not set; call estimate_dt first.')
        if T == 0:
            return 0, float(self.dt)
        nsteps = max(1, ceil(T / self.dt - 1e-9))
        return nsteps, T / nsteps
