__version__ = '1.0'

# Check numpy compatibility before other imports which may fail if an old
# numpy is installed.
from .utils import check_numpy_compatibility

check_numpy_compatibility()

from .body import (  # noqa
    CoeffTriple, Membership, ParamTriple, c_from_sigma, c_from_w,
    membership_x2, phi_series_from_w, sigma_from_w, tau_from_w, w_from_sigma,
)
from .conf import settings  # noqa
from .exceptions import HankelError, ImproperlyConfigured, InvalidInput  # noqa
from .extremal import ExtremalReport, estimate_M  # noqa
from .hankel import (  # noqa
    ACoeffs, a_from_c, hankel2, lower_bound_M, phi_p, upper_bound_M,
)
from .moebius import DiskRegion, PoleParam  # noqa
from .oracle import a_from_phi, fprime_series, verify, verify_all  # noqa
from .regions import (  # noqa
    RegionSample, check_omega_in_region, contains, sample_omega_boundary, sample_region_H,
)
from .utils import Decision  # noqa
