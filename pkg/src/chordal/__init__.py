"""chordal: exact computations in the algebra of chord diagrams.

Diagram spaces and their relation quotients (4T, STU, IHX with structural
antisymmetry), the Hopf structure, weight systems from metric Lie algebra
data, and contraction operations on connected labelled graph spaces.
"""

from .canonical import backend as canonical_backend
from .diagrams import (
    CLOSED,
    OPEN,
    VACUUM,
    DiagramError,
    JacobiDiagram,
    SignedCanonical,
    canonical_chord,
    canonical_jacobi,
    chord_to_jacobi,
    components,
    diagram_str,
    enumerate_chords,
    enumerate_jacobi,
    format_jacobi,
    parse_jacobi,
)
from .linalg import LinComb, QuotientSpace, build_quotient, kernel_basis, rref, subspace_equal

__version__ = "0.1.0"
