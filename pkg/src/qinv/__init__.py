"""Polynomial invariants of quantum codes.

Basic permutation-tuple invariants of code projectors, generalized shadow
inequalities from group-algebra idempotents, degree-lowering symbolic
reductions, and a machine check of the ((4,4,2)) quartic-uniqueness
computation.
"""

from .codes import StabilizerCode, fixture_442, projector, purity_profile
from .groupalg import (
    AlgebraElement,
    adjoint,
    convolve,
    is_hermitian_idempotent,
    shadow_element,
    shadow_enumerator,
    shadow_functional,
    subgroup_averager,
)
from .invariants import (
    KERNEL_BACKEND,
    invariant,
    invariant_code,
    invariant_oracle,
    perm_operator_index,
    quadratic_enumerator,
    symmetrize,
)
from .permtuple import (
    Perm,
    PermTuple,
    canonicalize,
    compose,
    conjugate,
    inverse,
    is_derangement,
    parse_cycles,
    parse_tuple,
)
from .qspace import (
    Operator,
    SystemShape,
    is_psd,
    partial_trace,
    random_local_unitary,
    tensor_product,
)
from .reductions import (
    CodeFacts,
    InvariantExpression,
    lemma4_relations,
    lemma4_rewrite,
    merge_reduce,
    reduce_fixpoint,
    splice_reduce,
)

__version__ = "0.1.0"
