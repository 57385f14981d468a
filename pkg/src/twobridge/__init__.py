"""Representation polynomials, cone-manifold volumes and Chern-Simons invariants of C(2n,4)."""

__version__ = "0.1.0"
