"""Hopf invariant of maps S^3 -> S^2: preimage linking and Whitehead's integral."""

from .estimate import HopfEstimate
from .linking import hopf_via_linking, linking_number
from .sphere import SphereMap, normalized_map
from .whitehead import hopf_via_whitehead

__all__ = ["HopfEstimate", "SphereMap", "hopf_via_linking", "hopf_via_whitehead",
           "linking_number", "normalized_map"]
