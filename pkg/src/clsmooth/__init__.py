"""clsmooth: smoothing and extension operators for C^l maps.

Builds closed-form smoothings of vector-valued C^l functions on box
domains from Taylor jets and a periodic bump partition, extends functions
off half-spaces, corners, cubes and closed sets, and verifies the results.
"""

__version__ = "0.1.0"

__all__ = ["__version__"]
