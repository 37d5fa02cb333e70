from .bessel import kbessel
from .constants import (
    EULER_GAMMA,
    SpecialConstants,
    c_from_parts,
    constant_C,
    covolume,
    special_constants,
)
from .eisenstein import EisensteinSum, eisenstein_direct, eisenstein_direct_many, fourier_coeff_numeric
from .eta import HalfPlanePoint, dedekind_eta, log_abs_eta
from .kronecker import (
    INFINITY,
    ONE,
    ZERO,
    kronecker_gamma0p,
    kronecker_gamma2_at_i,
    kronecker_sl2z,
)
from .scattering import (
    ScatteringEntry,
    scattering_gamma0p,
    scattering_gamma0p_constant,
    scattering_sl2z,
    scattering_sl2z_m,
)
from .zeta import completed_zeta, divisor_tau, gamma_fn, zeta, zeta_prime

__all__ = [
    "EULER_GAMMA",
    "EisensteinSum",
    "HalfPlanePoint",
    "INFINITY",
    "ONE",
    "ScatteringEntry",
    "SpecialConstants",
    "ZERO",
    "c_from_parts",
    "completed_zeta",
    "constant_C",
    "covolume",
    "dedekind_eta",
    "divisor_tau",
    "eisenstein_direct",
    "eisenstein_direct_many",
    "fourier_coeff_numeric",
    "gamma_fn",
    "kbessel",
    "kronecker_gamma0p",
    "kronecker_gamma2_at_i",
    "kronecker_sl2z",
    "log_abs_eta",
    "scattering_gamma0p",
    "scattering_gamma0p_constant",
    "scattering_sl2z",
    "scattering_sl2z_m",
    "special_constants",
    "zeta",
    "zeta_prime",
]
