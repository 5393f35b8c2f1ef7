"""Spherical functions, transforms and inversion on rank-one super symmetric spaces.

The space is parametrized by rho = p/2 - q (p even-type and q odd-type
dimensions); negative and half-integral values of rho are supported.
"""
from .spherical import (EvalMethod, RhoParam, c_function, inv_cc, phi, phi_jet,
                        plancherel_density)
from .profiles import RadialProfile, bump, parse_profile
from .quadrature import QuadratureSpec
from .transforms import (InversionReport, KInvariantData, big_psi, invert_at_origin, j_one,
                         psi, reconstruct, residue_at, spherical_transform, wave_packet,
                         wave_packet_residue_form)

__version__ = "0.1.0"
