"""Exact solutions of the Conway-Coxeter matrix equation over ring towers.

The package decides, with exact arithmetic over a configurable tower of
commutative unitary rings, whether a tuple solves the matrix equation
word(a_1..a_n) = +-Id, composes and compares solutions up to dihedral
equivalence, decides irreducibility with checkable certificates, and
enumerates solutions exhaustively over finite rings (exactly computing
the maximal irreducible size) or within boxes over infinite ones.
"""

from .core import (
    Mat2,
    QuiddityTuple,
    Sign,
    Transform,
    canonical_form,
    continuant,
    dihedral_orbit,
    equivalent,
    m_matrix,
    n_matrix,
    oplus,
    quiddity_sign,
    verify_tuple,
)
from .enumeration import (
    BudgetExceededError,
    EllReport,
    SearchBox,
    bounded_search,
    compute_ell,
    count_quiddities_dp,
    ell_upper_bound,
    enumerate_irreducibles,
    enumerate_quiddities,
    reachability_table,
    sl2_elements,
    sl2_order,
)
from .families import (
    CriteriaReport,
    FamilyError,
    FamilyResult,
    family_irr_poly,
    family_irr_z,
    family_q_field,
    family_zeta8,
    generate_family,
    unboundedness_criteria,
    zeta8_ring,
)
from .parse import RingSyntaxError, parse_element, parse_ring, parse_tuple
from .reduction import (
    CertCheck,
    InternalCheckError,
    ReductionCertificate,
    Verdict,
    find_reduction,
    is_irreducible,
    junction_solve,
    reduction_oracle,
    verify_certificate,
)
from .rings import (
    Element,
    FractionRing,
    HomomorphismError,
    InfiniteRingError,
    IntegerRing,
    ModIntRing,
    PolynomialRing,
    ProductRing,
    QuotientRing,
    Ring,
    RingConstructionError,
    RingMap,
    RingMismatchError,
    ScanReport,
    apply_ring_map,
    unit_and_nilpotent_scan,
    INTEGERS,
    RATIONALS,
)

__version__ = "0.1.0"
