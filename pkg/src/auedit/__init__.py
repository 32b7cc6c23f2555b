"""Action-unit conditioned diffusion editing on a synthetic parametric-face domain."""

__version__ = "0.1.0"

from auedit.aus import AU_COUNT, AU_LABELS, AU_NAMES, AUDelta, AUVector

__all__ = ["AU_COUNT", "AU_NAMES", "AU_LABELS", "AUVector", "AUDelta", "__version__"]
