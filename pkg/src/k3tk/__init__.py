"""Combinatorial toolkit for finite symplectic automorphism groups of K3 surfaces.

Submodules:

- :mod:`k3tk.mathieu_char` -- the Mathieu character and invariant dimensions
- :mod:`k3tk.ade_lattice` -- ADE root lattices, Smith normal form, discriminants
- :mod:`k3tk.config_enumerator` -- exhaustive search for singularity configurations
- :mod:`k3tk.permgroup` -- permutation groups via a stabilizer chain
- :mod:`k3tk.f2affine` -- linear and affine maps of the 16-point space over GF(2)
"""

__version__ = "0.1.0"
