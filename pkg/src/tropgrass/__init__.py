"""tropgrass: exact computational tools for tropical Grassmannians.

Subpackages and modules:

- ``minplus``: min-plus scalars, tropical polynomials, tropical matrices.
- ``exactalg``: sparse exact-arithmetic polynomial algebra, Groebner
  bases, initial ideals, Pluecker ideals, valuation certificates.
- ``treespace``: the space of phylogenetic trees as the tropical
  Grassmannian of lines, tree reconstruction, tree-cone initial ideals.
- ``complexes``: finite simplicial complexes with exact homology.
- ``g36``: the explicit tropical Grassmannian of 3-planes in 6-space.
- ``troplin``: tropical linear spaces, face types, duality,
  reconstruction from membership oracles.
- ``cli``: batch command-line front end.
"""

__version__ = "0.1.0"

from .pvector import INF, PlueckerVector, phi

__all__ = ["INF", "PlueckerVector", "phi", "__version__"]
