import numpy as np

from ..mixins import ReprMixin
from ..spectral import BOUNDARY_CONDITIONS
from ..validation import SpecError, validate_value
from .params import PhysParams


SQRT_HALF = np.sqrt(0.5)

# exponential → stress-free cosine/sine coefficient basis
_SF_VECTOR = np.array([1.0, 1.0, 1j, 1j])


def _as_wavevector(k):
    k = np.asarray(k, dtype=float)
    if k.shape != (3,):
        raise SpecError(f"'k' must have three entries, got shape: {k.shape}.")
    if not np.all(np.isfinite(k)):
        raise SpecError("'k' must be finite.")
    if np.all(k == 0):
        raise SpecError('zero wavevector: the operator is undefined at k = 0.')
    return k


def helmholtz_matrix(k):
    ''' 4×4 Helmholtz projector: δ_ij - k_i k_j/|k|² on the velocity block '''
    k = _as_wavevector(k)
    P = np.eye(4)
    P[:3, :3] -= np.outer(k, k) / k.dot(k)
    return P


def skew_matrix(eta):
    ''' J_η = diag(ηJ, J) with J = [[0, -1], [1, 0]] '''
    J = np.array([[0.0, -1.0], [1.0, 0.0]])
    out = np.zeros((4, 4))
    out[:2, :2] = eta * J
    out[2:, 2:] = J
    return out


def pjp_matrix(k, params, bc='periodic'):
    '''
    Description
    ------------
    Matrix of P J_η P at wavevector k. Periodic grids use the exponential
    basis; for stress-free walls the matrix acts on the coefficients of
    the (cos, cos, sin, sin) expansion of (u1, u2, u3, θ).

    Parameters
    ------------
    k : array-like
        Wavevector (k1, k2, k3) with k3 = 2πn (periodic) or πn (stress-free).
    params : PhysParams
        Supplies η = Ω/Γ.
    bc : str
        'periodic' or 'stress-free'.

    Returns
    ------------
    M : np.ndarray
        Complex 4×4 skew-Hermitian matrix.
    '''
    validate_value(params, PhysParams, 'params')
    validate_value(bc, str, 'bc', whitelist=BOUNDARY_CONDITIONS)

    P = helmholtz_matrix(k)
    M = (P @ skew_matrix(params.eta) @ P).astype(complex)

    if bc == 'stress-free':
        # D⁻¹ M D with D = diag(1, 1, -i, -i)
        d = np.conj(_SF_VECTOR)
        M = M * d[None, :] / d[:, None]

    return M


def frame_vectors(k1, k2, k3, eta):
    '''
    Description
    ------------
    Vectorized eigenframe of P J_η P in the exponential basis. The
    horizontal direction k_h/|k_h| is replaced by e1 on the line k_h = 0,
    and when additionally η = 0 (where the operator vanishes) the frame
    is {e4, i sign(k3) e3, (1, ∓i, 0, 0)/√2}.

    Parameters
    ------------
    k1, k2, k3 : np.ndarray
        Broadcastable wavenumber arrays; no entry may have k = 0.
    eta : float
        Ω/Γ.

    Returns
    ------------
    a_g, a_0, a_plus : np.ndarray
        Complex arrays shaped (4, *k.shape).
    p_eta : np.ndarray
        |k_η|/|k|.
    '''
    k1, k2, k3 = np.broadcast_arrays(
        *(np.asarray(x, dtype=float) for x in (k1, k2, k3))
        )

    kh = np.hypot(k1, k2)
    kk = np.sqrt(kh ** 2 + k3 ** 2)
    keta = np.sqrt(kh ** 2 + (eta * k3) ** 2)

    flat = kh <= 1e-14 * kk
    inert = flat & (keta <= 1e-14 * kk)

    kh_safe = np.where(flat, 1.0, kh)
    h1 = np.where(flat, 1.0, k1 / kh_safe)
    h2 = np.where(flat, 0.0, k2 / kh_safe)

    zero = np.zeros_like(kk)
    one = np.ones_like(kk)

    e_A = np.stack([h2, -h1, zero, zero])
    e_B = np.stack([h1 * k3 / kk, h2 * k3 / kk, -kh / kk, zero])
    e_T = np.stack([zero, zero, zero, one])

    p_eta = keta / kk
    p_safe = np.where(inert, 1.0, p_eta)

    sign_k3 = np.where(k3 < 0, -1.0, 1.0)
    sign_eta = -1.0 if eta < 0 else 1.0

    ra = np.where(inert, sign_k3 * sign_eta, eta * k3 / kk / p_safe)
    rb = np.where(inert, 0.0, kh / kk / p_safe)

    a_plus = SQRT_HALF * (1j * ra * e_A + e_B + 1j * rb * e_T)
    a_plus = a_plus * np.where(flat, sign_k3, 1.0)

    keta_safe = np.where(inert, 1.0, keta)
    a_g = 1j * np.stack([kh * h2, -kh * h1, zero, -eta * k3]) / keta_safe
    a_g = np.where(inert, e_T.astype(complex), a_g)

    a_0 = 1j * np.stack([k1, k2, k3, zero]) / kk

    return a_g, a_0, a_plus, p_eta


class ModeFrame(ReprMixin):
    '''
    Description
    ------------
    Eigenstructure of P J_η P at one wavevector: a_g and a_0 span the
    kernel, P J_η P a_± = ±i p_η a_±.
    '''

    _repr_attrs = ('k', 'bc', 'p_eta', 'a_g', 'a_0', 'a_plus', 'a_minus')

    def __init__(self, k, a_g, a_0, a_plus, a_minus, p_eta, bc='periodic'):
        self.k = np.asarray(k, dtype=float)
        self.a_g = a_g
        self.a_0 = a_0
        self.a_plus = a_plus
        self.a_minus = a_minus
        self.p_eta = float(p_eta)
        self.bc = bc

    @property
    def basis(self):
        ''' columns a_g, a_0, a_+, a_- '''
        return np.stack([self.a_g, self.a_0, self.a_plus, self.a_minus], axis=1)

    def projector(self, branch):
        ''' rank-one projector a aᴴ for branch in {'g', '0', '+', '-'} '''
        vector = self.vector(branch)
        return np.outer(vector, vector.conj())

    def vector(self, branch):
        validate_value(branch, str, 'branch', whitelist=['g', '0', '+', '-'])
        return {
            'g': self.a_g,
            '0': self.a_0,
            '+': self.a_plus,
            '-': self.a_minus,
            }[branch]


def mode_frame(k, params, bc='periodic'):
    '''
    Description
    ------------
    Closed-form eigenframe at a single wavevector. For stress-free walls the
    vectors are returned in the (cos, cos, sin, sin) coefficient basis used
    by pjp_matrix; there a_- equals diag(1, 1, -1, -1) conj(a_+), while in
    the exponential basis a_- = conj(a_+).

    Parameters
    ------------
    k : array-like
        Wavevector (k1, k2, k3), nonzero.
    params : PhysParams
        Supplies η.
    bc : str
        'periodic' or 'stress-free'.

    Returns
    ------------
    frame : ModeFrame
    '''
    validate_value(params, PhysParams, 'params')
    validate_value(bc, str, 'bc', whitelist=BOUNDARY_CONDITIONS)
    k = _as_wavevector(k)

    a_g, a_0, a_plus, p_eta = frame_vectors(*k, params.eta)
    a_minus = np.conj(a_plus)

    if bc == 'stress-free':
        a_g, a_0, a_plus, a_minus = (
            _SF_VECTOR * v for v in (a_g, a_0, a_plus, a_minus)
            )

    return ModeFrame(k, a_g, a_0, a_plus, a_minus, p_eta, bc)


class ModeTable(ReprMixin):
    '''
    Description
    ------------
    Eigenframes for every mode of a grid, stored as (4, N, N, Nv) arrays in
    the exponential basis. The k = 0 entries are zero; the mean mode is
    handled separately by the propagator.
    '''

    _repr_attrs = ('eta', 'a_g', 'a_plus', 'p_eta')

    def __init__(self, grid, eta):
        self.eta = float(eta)

        K1, K2, K3 = grid.K1.copy(), grid.K2.copy(), grid.K3.copy()
        origin = (0, 0, 0)
        # placeholder wavevector keeps the k = 0 entry finite
        K1[origin] = 1.0

        a_g, a_0, a_plus, p_eta = frame_vectors(K1, K2, K3, self.eta)

        for a in (a_g, a_0, a_plus):
            a[(slice(None), *origin)] = 0
        p_eta[origin] = 0

        self.a_g = a_g
        self.a_0 = a_0
        self.a_plus = a_plus
        self.p_eta = p_eta

        for array in (self.a_g, self.a_0, self.a_plus, self.p_eta):
            array.flags.writeable = False

    @property
    def a_minus(self):
        return np.conj(self.a_plus)
