"""mtcgauge: Z/2 permutation gauging of modular data.

Numerical modular data (unnormalized S matrix and twists) are validated, gauged by the
layer-swap symmetry of the doubled theory, and checked against SL(2,Z), isotopy and
determinant identities. Hot kernels run under numba unless ``MTCGAUGE_BACKEND=numpy``.
"""

from ._kernels import BACKEND
from .errors import *  # noqa: F401,F403
from .modular_data import (ModularData, DerivedData, derive, validate, choose_sqrt_twists,
                           deligne_product, relabel, dual_index_s)
from .numerics import LuReport, kron, lu_determinant, unitarity_defect, round_to_integer
from .report import CheckReport
from .verlinde import (FusionTensor, fusion_tensor, balancing_residuals, genus_dimension,
                       hom_dimension_bruteforce, fusion_closure)
from .gauging import (Kind, GaugedLabel, GaugingOptions, enumerate_gauged_labels,
                      gauged_s_and_twists, gauged_modular_data, bantay_P, closed_form_fusion,
                      gauge_and_verify)
from .identities import (AdmissibleSet, Composition, sl2z_check, admissible_set,
                         obstruction_P, obstruction_matrix, obstruction_check,
                         isotopy_identities)
from .catalog import (CatalogEntry, pointed_zn, named_entry, catalog_entry, catalog_keys,
                      metaplectic_recovery)
from . import io

__version__ = "0.1.0"
