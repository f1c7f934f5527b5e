"""Zero counts of polynomials on finite grids: balls-in-bins minima, grid
reduction, Hasse derivatives and multiplicities, closed-form bounds, evaluation
codes, finite-geometry consequences, and an exhaustive verification engine."""

__version__ = "0.1.0"
