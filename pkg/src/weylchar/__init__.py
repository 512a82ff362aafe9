"""Exact computational character theory for unitary groups of matrix-block limits.

Subpackages by topic:

- ``combinatorics``: partitions, signatures, Gelfand-Tsetlin patterns.
- ``symfunc``: Schur polynomials, power-sum expansions, Littlewood-Richardson.
- ``ucharacters``: irreducible U(d) characters, tensor/restriction branching.
- ``moments``: weight distributions of one-parameter subgroups, HCIZ moments.
- ``afalgebra``: Bratteli diagrams, traces, K0 determinants, limit characters.
- ``poisson``: product-Poisson kernels and tail estimates.
- ``cli``: scripting front end (``weylchar`` entry point).
"""

from weylchar.errors import BudgetExceeded

__version__ = "0.1.0"

__all__ = ["BudgetExceeded", "__version__"]
