"""Exact invariant-theory engine for finite matrix groups.

Computes generator degree bounds, null-cone nilpotence degrees, and
polarization spans over prime fields and the rationals, with a
verification harness for the underlying inequalities.
"""

from .fields import Field
from .grouprep import (
    MatrixGroup,
    Representation,
    SubgroupHandle,
    adjoin_group_variables,
    cosets,
    generate_group,
    natural_representation,
    regular_representation,
)
from .invariants import (
    GeneratorLedger,
    beta,
    invariant_basis,
    minimal_generators_up_to,
    reynolds,
)
from .linalg import (
    DenseMatrix,
    GradedSubspaceBasis,
    SubspaceBuilder,
    rref,
    subspace_contains,
    subspace_equal,
)
from .nullcone import EtaReport, eta, hilbert_ideal_component
from .polyring import (
    SparsePolynomial,
    VariableLayout,
    monomials_of_degree,
    parse_polynomial,
    render_polynomial,
)
from .rewrite import RewriteCertificate, rewrite_monomial
from .weylpol import (
    PolarizationOperator,
    SpanClosureReport,
    polarization_closure,
    polarize,
    restitution,
)

__version__ = "0.1.0"

__all__ = [
    "DenseMatrix",
    "EtaReport",
    "Field",
    "GeneratorLedger",
    "GradedSubspaceBasis",
    "MatrixGroup",
    "PolarizationOperator",
    "Representation",
    "RewriteCertificate",
    "SparsePolynomial",
    "SpanClosureReport",
    "SubgroupHandle",
    "SubspaceBuilder",
    "VariableLayout",
    "adjoin_group_variables",
    "beta",
    "cosets",
    "eta",
    "generate_group",
    "hilbert_ideal_component",
    "invariant_basis",
    "minimal_generators_up_to",
    "monomials_of_degree",
    "natural_representation",
    "parse_polynomial",
    "polarization_closure",
    "polarize",
    "regular_representation",
    "render_polynomial",
    "restitution",
    "rewrite_monomial",
    "reynolds",
    "rref",
    "subspace_contains",
    "subspace_equal",
    "__version__",
]
