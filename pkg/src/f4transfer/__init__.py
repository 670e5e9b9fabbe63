"""Exact computations around the Spin9\\F4 spherical variety and its transfer map.

Submodules:

* ``octonion``, ``albert``, ``enumeration``: split octonions, the Albert algebra
  and the exhaustive GF(2) rank census.
* ``freudenthal``: the 56-dimensional module, its forms and group actions.
* ``padic``: Schwartz-Bruhat functions on Q_p with an exact Fourier transform.
* ``transfer``: the transfer operator, a brute-force oracle and a stabilization probe.
* ``qsymbolic``: exact unramified computations in Q(q^-1/2, alpha).
"""

from .albert import (AlbertElement, adjoint, cross, cubic_norm, jordan_mul, quadratic_form,
                     rank, rank1_construct, trace_pairing)
from .enumeration import count_rank1, rank_census
from .fields import CC, GF, QQ, MixedFieldError, UnsupportedOperation
from .freudenthal import (FreudenthalVector, apply_dual_unipotent, apply_gl2, apply_levi,
                          apply_unipotent, deidentify, identify, quartic_form,
                          symplectic_form)
from .octonion import Octonion, oct_norm_trace_bilinear
from .padic import (PAdicContext, PAdicRational, SchwartzFunction, sf_combine, sf_fourier,
                    sf_integrate, sf_pullback_inversion, shell_decompose)
from .qsymbolic import (QRationalFunction, cartan_zeta, group_orders_volumes, lfactor,
                        lx_sharp, macdonald_coeff, minrep_coeff, spherical_value)
from .transfer import (TransferInput, TransferResult, orbital_limit_probe, transfer_eval,
                       transfer_oracle)

__version__ = "0.1.0"

__all__ = [
    "AlbertElement",
    "CC",
    "FreudenthalVector",
    "GF",
    "MixedFieldError",
    "Octonion",
    "PAdicContext",
    "PAdicRational",
    "QQ",
    "QRationalFunction",
    "SchwartzFunction",
    "TransferInput",
    "TransferResult",
    "UnsupportedOperation",
    "adjoint",
    "apply_dual_unipotent",
    "apply_gl2",
    "apply_levi",
    "apply_unipotent",
    "cartan_zeta",
    "count_rank1",
    "cross",
    "cubic_norm",
    "deidentify",
    "group_orders_volumes",
    "identify",
    "jordan_mul",
    "lfactor",
    "lx_sharp",
    "macdonald_coeff",
    "minrep_coeff",
    "oct_norm_trace_bilinear",
    "orbital_limit_probe",
    "quadratic_form",
    "quartic_form",
    "rank",
    "rank1_construct",
    "rank_census",
    "sf_combine",
    "sf_fourier",
    "sf_integrate",
    "sf_pullback_inversion",
    "shell_decompose",
    "spherical_value",
    "symplectic_form",
    "trace_pairing",
    "transfer_eval",
    "transfer_oracle",
]
