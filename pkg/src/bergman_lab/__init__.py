"""Numerical spectra of Toeplitz operators induced by restricting Bergman-space
functions from a model domain to a subregion."""

from .errors import (BergmanLabError, ConvergenceError, DiameterCase, DimensionMismatch, DomainError,
                     NonTraceClass, SingularSample)
from .geometry import (AmbientDomain, Complement, DilatedCopy, Disc, Horodisc, HorocyclicStrip,
                       HypercyclicLune, IdealPolygon, Indicator, MoebiusMap, ProductRegion, Region,
                       cayley, cayley_inverse, contains, geodesic_side_circle, lune_to_wedge,
                       region_from_json)
from .kernels import MonomialBasis, bergman_kernel_diag, monomial_indices, monomial_norm_sq
from .moments import GramMatrix, MomentRequest, compress, disc_gram, disc_moment, gram
from .oracles import (OracleResult, ball_bounds, dilation_spectrum, gamma_strip, gamma_wedge,
                      horostrip_interval, lune_norm, offcenter_disc_spectrum, slice_norm)
from .quadrature import quadrature_integral
from .schatten import (SchattenReport, iterated_kernel_diag, iterated_kernel_integral,
                       schatten_norm, trace_by_formula)
from .toeplitz import (SpectrumEstimate, eigensolve, isospectrality_check, jacobi_eigh, norm_estimate,
                       spectral_gap_report)

__version__ = "0.1.0"
