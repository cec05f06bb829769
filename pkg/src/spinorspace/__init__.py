"""Spatial spinor fields: the square roots of 3-vectors and their analysis.

Two spinor fields live on 3-space: ``xi`` built from pseudo vectors and
``eta`` from proper vectors.  Both are two-valued; the package provides
branch-aware evaluation, derivatives, curvilinear charts of the doubled
space and transport of spinors along paths.
"""

from .algebra import (
    GroupElement,
    Parity,
    Spinor,
    SpinorType,
    act_on_spinor,
    act_on_vector,
    compose,
    parity_on_spinor,
    so3_matrix,
    su2_matrix,
)
from .calculus import (
    ApproachDirection,
    AsymptoticDerivative,
    CRResidual,
    Direction2,
    DirectionalDerivative,
    Model,
    SingularSet,
    chart_dir_deriv,
    connection_matrix,
    cr_residual_eta,
    cr_residual_xi,
    dir_deriv_eta,
    dir_deriv_xi,
    grad_eta,
    grad_xi,
    singular_dir_deriv,
)
from .charts import (
    ChartId,
    ChartPoint,
    DomainVariant,
    antipode,
    convert_spherical_domain,
    direction_multiplicity,
    eta_in_chart,
    metric,
    sheet_of,
    to_cartesian,
    xi_in_chart,
)
from .errors import (
    PathResolutionError,
    SingularPathError,
    SingularPointError,
    SpinorSpaceError,
    ValidationError,
)
from .model_map import eta_to_xi, xi_to_eta
from .proper_model import eta_from_proper, frame_from_params, pair_from_eta
from .pseudo_model import (
    DEFAULT_CONTEXT,
    BranchContext,
    GammaMode,
    PolarSpinorParams,
    RegionTag,
    classify_region,
    polar_from_xi,
    pseudo_from_xi,
    xi_from_polar,
    xi_from_pseudo,
)
from .transport import Path, TransportResult, continue_gamma, transport_spinor, winding

__version__ = "0.1.0"
