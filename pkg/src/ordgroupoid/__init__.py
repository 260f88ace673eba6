"""Order-based groupoids from finite inverse semigroups.

Submodules: semigroups (Cayley tables, natural order), groupoids (finite
groupoids, bisections), completion (directed-set completion, universal and
minimal groupoids, pair model), ideals (ideal lattices, minimality,
simplicity), graphs (graph inverse semigroups and their groupoids),
corpus (bundled examples), cli (command line).
"""

__version__ = "0.1.0"
