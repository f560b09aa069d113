"""Exact computations in the braided category of a twisted Drinfeld double.

Everything here is integer arithmetic: phases live in Q/Z as reduced
fractions, scalars are finite sums of roots of unity with integer
coefficients, and every categorical identity is verified by finite sweeps
rather than floating-point evaluation.

The layers, bottom up:

- :mod:`dwcat.phases` — rational phases and cyclotomic-integer sums.
- :mod:`dwcat.linalg` — Smith normal form and affine systems over Z/M.
- :mod:`dwcat.groups` — finite groups as multiplication tables.
- :mod:`dwcat.cohomology` — bar-complex cochains, differentials, group
  cohomology with root-of-unity coefficients, the odd-dihedral cocycle
  family.
- :mod:`dwcat.center` — monomial Yetter–Drinfeld modules, the braiding,
  associator and ribbon, plus the structure-phase tables tau and gamma.
- :mod:`dwcat.algebras` — commutative Frobenius algebra objects and their
  full check battery.
- :mod:`dwcat.induction` — the induction functor from a subgroup's
  category, with its lax/oplax Frobenius-monoidal structure.
- :mod:`dwcat.localmod` — right module objects, locality, and the
  inverse equivalence by idempotent splitting.
- :mod:`dwcat.classify` — integer-linear classification of the rigid
  Frobenius algebras attached to pairs (H, N).
- :mod:`dwcat.cli` — the ``dwcat`` command.

Set ``DWCAT_PURE=1`` to force the numpy kernel fallback instead of the
compiled extension; results are identical either way.
"""

from .algebras import (
    AlgebraObject,
    coset_twisted_algebra,
    function_algebra,
    twisted_group_algebra,
    verify_algebra,
)
from .center import (
    CocycleData,
    CoherenceError,
    FormalSum,
    MonomialYDModule,
    associator,
    braiding,
    check_module,
    modules_equal,
    ribbon,
)
from .classify import (
    PairingClassification,
    classify_group,
    classify_pair,
    compare_with_expected,
    dihedral_expected,
)
from .cohomology import Cochain, cohomology_group, dihedral_omega
from .groups import FiniteGroup, cyclic_group, dihedral_group
from .induction import Induction
from .localmod import RightModule, extract_component, fpdim_report, is_local
from .phases import CycloSum, Phase

__version__ = "0.1.0"

__all__ = [
    "AlgebraObject",
    "Cochain",
    "CocycleData",
    "CoherenceError",
    "CycloSum",
    "FiniteGroup",
    "FormalSum",
    "Induction",
    "MonomialYDModule",
    "PairingClassification",
    "Phase",
    "RightModule",
    "associator",
    "braiding",
    "check_module",
    "classify_group",
    "classify_pair",
    "cohomology_group",
    "compare_with_expected",
    "coset_twisted_algebra",
    "cyclic_group",
    "dihedral_expected",
    "dihedral_group",
    "dihedral_omega",
    "extract_component",
    "fpdim_report",
    "function_algebra",
    "is_local",
    "modules_equal",
    "ribbon",
    "twisted_group_algebra",
    "verify_algebra",
    "__version__",
]
