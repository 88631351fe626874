from numbers import Real

import numpy as np

from ..mixins import ReprMixin
from ..validation import validate_value
from .fields import PhysicalField, SpectralField, to_physical
from .operators import barotropic_plane, curl2


def weighted_norm(s, m=0.0, p=2.0):
    '''
    Description
    ------------
    ‖b^m f‖_{L^p} with the horizontal weight b(x_h) = (1 + |x_h|²)^{1/2},
    evaluated by quadrature on the collocation points: rectangle rule in
    x_h and the periodic trapezoid rule over the unit layer in x3. Vector
    fields use the pointwise Euclidean magnitude.

    Parameters
    ------------
    s : SpectralField | PhysicalField
        Field to measure.
    m : float
        Weight exponent, ≥ 0.
    p : float
        Lebesgue exponent in [1, inf].

    Returns
    ------------
    norm : float
        Weighted norm; for p = inf the weighted maximum.
    '''
    validate_value(s, (SpectralField, PhysicalField), 's')
    validate_value(m, Real, 'm', finite=True, min_value=0, min_inclusive=True)
    validate_value(p, Real, 'p', min_value=1, min_inclusive=True)

    phys = to_physical(s) if isinstance(s, SpectralField) else s
    grid = phys.grid

    X1, X2 = grid.coordinates()
    weight = (1.0 + X1 ** 2 + X2 ** 2) ** (0.5 * m)

    magnitude = np.sqrt(np.sum(phys.values ** 2, axis=0))
    if not phys.plane:
        weight = weight[..., None]

    f = weight * magnitude

    if np.isinf(p):
        return float(f.max())

    density = f ** p
    if not phys.plane:
        # periodic trapezoid over x3 is the mean times the unit layer depth;
        # on the doubled stress-free period the integrand is even
        density = density.mean(axis=-1)

    return float((density.sum() * grid.dx ** 2) ** (1.0 / p))


def energy(s):
    ''' ‖s‖²_{L²} via Parseval '''
    validate_value(s, SpectralField, 's')
    return float(np.sum(np.abs(s.coeffs) ** 2) * s.grid.area)


def l2_norm(s):
    return float(np.sqrt(energy(s)))


def h1_norm(s):
    ''' (‖s‖² + ‖∇s‖²)^{1/2} via Parseval '''
    validate_value(s, SpectralField, 's')
    k_sq = s.grid.ph_sq if s.plane else s.grid.k_sq
    total = np.sum((1.0 + k_sq) * np.abs(s.coeffs) ** 2) * s.grid.area
    return float(np.sqrt(total))


def grad_sq(s):
    ''' ‖∇s‖²_{L²} '''
    validate_value(s, SpectralField, 's')
    k_sq = s.grid.ph_sq if s.plane else s.grid.k_sq
    return float(np.sum(k_sq * np.abs(s.coeffs) ** 2) * s.grid.area)


class Moments(ReprMixin):
    '''
    Description
    ------------
    Box integrals of the barotropic vertical vorticity (A), vertical
    velocity (B1) and temperature (B2).
    '''

    _repr_attrs = ('A', 'B1', 'B2')

    def __init__(self, A=0.0, B1=0.0, B2=0.0):
        self.A = float(A)
        self.B1 = float(B1)
        self.B2 = float(B2)

    def __add__(self, other):
        return Moments(self.A + other.A, self.B1 + other.B1, self.B2 + other.B2)

    def as_tuple(self):
        return (self.A, self.B1, self.B2)


def moments(s, background=None, t=0.0):
    '''
    Description
    ------------
    Reads the moments off the zero horizontal modes of the barotropic
    field. A is identically zero for a periodic velocity; in background
    runs the background's own moments at time t are added.

    Parameters
    ------------
    s : SpectralField
        State (or perturbation) volume field.
    background : object | None
        Anything with a moments_at(t) method returning (A, B1, B2).
    t : float
        Time at which the background is evaluated.

    Returns
    ------------
    out : Moments
    '''
    validate_value(s, SpectralField, 's')
    plane = barotropic_plane(s)
    area = s.grid.area

    omega3 = curl2(plane.with_coeffs(plane.coeffs[:2]))
    out = Moments(
        A=omega3.coeffs[0, 0, 0].real * area,
        B1=plane.coeffs[2, 0, 0].real * area,
        B2=plane.coeffs[3, 0, 0].real * area,
        )

    if background is not None:
        out = out + Moments(*background.moments_at(t))

    return out
