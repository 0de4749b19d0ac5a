"""Exact relative homological algebra over small commutative rings.

Submodules: exact_linalg (matrices over D/(c)), modules (finitely
presented modules), injclass (injective classes), complexes, bounded_model
(the model structure on bounded complexes), towers, ab4_local (local
algebra over finite rings) and cli.
"""

__version__ = "0.1.0"
