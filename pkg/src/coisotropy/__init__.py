"""Exact verification toolkit for coisotropic and polar actions on compact
irreducible Hermitian symmetric spaces."""

__version__ = "0.1.0"

from .rootsys import (  # noqa: F401
    DominantWeight,
    RootSystem,
    SimpleType,
    borel_dim,
    build_root_system,
    classify_rep_field,
    enumerate_dominant_weights,
    weyl_dim,
)
