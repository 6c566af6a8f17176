"""Resource calculus for quantum Shannon theory.

Subpackages: ``quantum`` (states and channels), ``info`` (entropies and
distances), ``algebra`` (symbolic resource expressions), ``derivation``
(axioms, rules and proof checking), ``tradeoff`` (capacity-region curves),
``protocols`` (exact simulation of unit protocols).
"""

__version__ = "0.1.0"
