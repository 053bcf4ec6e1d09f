"""Lattice network coding toolkit.

Exact ring/lattice algebra, nested-lattice code constructions with
coding-gain analysis, the generic encoder/decoder, coefficient selection,
module packet recovery, and a seeded Monte-Carlo channel simulator.
"""

__version__ = "0.1.0"
