"""Enhancement lambda of the Milnor number for polynomial maps R^4 -> R^2."""

from .config import RunConfig
from .dsl import parse_map
from .enhancement import brieskorn_mu, full_report, lambda_of, mu_of, rho_of
from .mapcore import MapR4R2, gauss_components, mirror

__all__ = ["MapR4R2", "RunConfig", "brieskorn_mu", "full_report", "gauss_components",
           "lambda_of", "mirror", "mu_of", "parse_map", "rho_of"]
__version__ = "0.1.0"
