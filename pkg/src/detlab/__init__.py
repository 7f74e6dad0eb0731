"""detlab: determinantal point processes, random growth models, and
Fredholm-determinant numerics.

Subpackages/modules:
  numerics   -- determinants, quadrature, special functions
  processes  -- kernel handles, gap probabilities, generic constructions
  kernels    -- named correlation kernels and scaling maps
  fredholm   -- Fredholm determinants and distribution functions
  growth     -- samplers and bijections (tilings, corner growth, RSK, GUE)
  harness    -- verification experiments and machine-readable reports
  cli        -- command-line frontend
"""
from . import numerics, processes, kernels, fredholm, growth, rng

__version__ = "0.1.0"

__all__ = ["numerics", "processes", "kernels", "fredholm", "growth", "rng",
           "__version__"]
