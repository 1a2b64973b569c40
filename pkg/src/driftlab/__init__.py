"""driftlab: drift measurement and runtime verification for the (1+1) EA."""

from driftlab._kernels import active_backend, available_backends

__version__ = "0.1.0"

__all__ = ["active_backend", "available_backends", "__version__"]
