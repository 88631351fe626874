from functools import cached_property

import numpy as np

from ..linops import geostrophic_project
from ..mixins import ReprMixin
from ..reference import vortex_solution, vortex_state
from ..spectral import (
    baroclinic_part,
    barotropic_plane,
    divergence_residual,
    energy,
    grad_sq,
    h1_norm,
    l2_norm,
    moments,
    to_physical,
    vertical_mean,
    weighted_norm,
    )
from ..text import natural_join
from ..validation import SpecError
from .functionals import _psi, barotropic_vorticity, gaussian_distance, rotating_moments


class RecordView(object):
    ''' lazily computed quantities of one record, shared between series '''

    def __init__(self, state, observer):
        self.state = state
        self.observer = observer
        self.v = state.v
        self.t = state.t

    @cached_property
    def omega3(self):
        return barotropic_vorticity(self.v)

    @cached_property
    def omega3_L1(self):
        return weighted_norm(self.omega3, p=1)

    @cached_property
    def omega3_L2sq(self):
        return energy(self.omega3)

    @cached_property
    def tilde(self):
        return baroclinic_part(self.v)

    @cached_property
    def moments(self):
        return moments(self.v, self.state.background, self.t)

    @cached_property
    def split(self):
        tracker = self.observer.split
        if tracker is None:
            raise SpecError('this series needs split.R to be set.')
        return tracker.split(self.v, self.t)

    @cached_property
    def geostrophic(self):
        geo = geostrophic_project(self.tilde, self.state.params)
        return l2_norm(geo), l2_norm(self.tilde - geo)

    @cached_property
    def center(self):
        # barotropic (ū3, θ̄) at x_h = 0, background included
        plane = barotropic_plane(self.v).coeffs
        values = [float(np.sum(plane[c]).real) for c in (2, 3)]
        background = self.state.background
        if background is not None:
            _, _, u3, theta = vortex_solution(background, self.t, [0.0, 0.0])
            values = [values[0] + float(u3), values[1] + float(theta)]
        return values

    def tracking_error(self):
        grid = self.v.grid
        background = self.state.background
        reference = self.observer.reference
        expected = None if reference is None else reference(self.t)

        if expected is None and background is None:
            raise SpecError('tracking_error needs a reference solution.')

        difference = self.v if expected is None else self.v - expected
        if background is not None:
            scale = l2_norm(vortex_state(grid, background, self.t))
        else:
            scale = l2_norm(expected)
        return l2_norm(difference) / scale if scale > 0 else l2_norm(difference)


def _rotating(view, index):
    return rotating_moments(view.moments, view.state.params, view.t)[index]


SERIES = {
    'energy': lambda r: energy(r.v),
    'barotropic_energy': lambda r: energy(vertical_mean(r.v)),
    'baroclinic_energy': lambda r: energy(r.tilde),
    'baroclinic_L2': lambda r: l2_norm(r.tilde),
    'baroclinic_H1': lambda r: h1_norm(r.tilde),
    'baroclinic_Linf': lambda r: weighted_norm(to_physical(r.tilde), p=np.inf),
    'moment_A': lambda r: r.moments.A,
    'moment_B1': lambda r: r.moments.B1,
    'moment_B2': lambda r: r.moments.B2,
    'rotating_B1': lambda r: _rotating(r, 0),
    'rotating_B2': lambda r: _rotating(r, 1),
    'omega3_L1': lambda r: r.omega3_L1,
    'omega3_L2': lambda r: l2_norm(r.omega3),
    'omega3_L2sq': lambda r: r.omega3_L2sq,
    'omega3_weighted': lambda r: weighted_norm(r.omega3, m=1, p=2),
    'oseen_error': lambda r: l2_norm(r.omega3),
    'gaussian_distance': lambda r: gaussian_distance(r.v, r.t),
    'u3_center': lambda r: r.center[0],
    'theta_center': lambda r: r.center[1],
    'tracking_error': lambda r: r.tracking_error(),
    'geostrophic_L2': lambda r: r.geostrophic[0],
    'ageostrophic_L2': lambda r: r.geostrophic[1],
    'divergence': lambda r: divergence_residual(r.v),
    'lambda_L2': lambda r: l2_norm(r.split[0]),
    'lambda_H1': lambda r: h1_norm(r.split[0]),
    'grad_r_sq': lambda r: grad_sq(r.split[1]),
    'psi': lambda r: _psi(r.omega3_L1, r.omega3_L2sq, r.split[1], None),
    'psi_bar': lambda r: _psi(r.omega3_L1, r.omega3_L2sq, r.split[1], r.split[0]),
    }

SPLIT_SERIES = ('lambda_L2', 'lambda_H1', 'grad_r_sq', 'psi', 'psi_bar')


class Observer(ReprMixin):
    '''
    Description
    ------------
    Evaluates a fixed list of named scalar series on each recorded state.
    In background runs the state is the perturbation, and the norms,
    energies and functionals measure it alone; 'moment_*', 'rotating_*',
    'u3_center' and 'theta_center' add the analytic background.
    'oseen_error' is the L² norm of the perturbation's ω̄3, its distance to
    the Oseen vortex of the background's circulation.

    Parameters
    ------------
    names : list[str]
        Series names, all keys of SERIES.
    split : SplitTracker | None
        Required by the λ/r series.
    reference : callable | None
        t ↦ expected SpectralField, used by 'tracking_error'.
    '''

    _repr_attrs = ('names',)

    def __init__(self, names, split=None, reference=None):
        names = list(names)
        unknown = [x for x in names if x not in SERIES]
        if unknown:
            raise SpecError(
                f'unknown series {natural_join(unknown)}; available: '
                f'{natural_join(sorted(SERIES))}.'
                )
        if split is None and any(x in SPLIT_SERIES for x in names):
            raise SpecError('the λ/r series need split.R to be set.')
        if reference is not None and not callable(reference):
            raise TypeError("'reference' must be callable.")

        self.names = names
        self.split = split
        self.reference = reference

    def __call__(self, state):
        view = RecordView(state, self)
        return {name: float(SERIES[name](view)) for name in self.names}
