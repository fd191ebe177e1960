"""Fermionic composition calculus: exterior-algebra states, occupancy
projectors, the subspace lattice, and mereology model checks."""

__version__ = "0.1.0"

from ._config import DEFAULT_EPS, get_eps, tolerance
from .exterior import (
    AntiSymTensor,
    DecomposabilityVerdict,
    ProductTensor,
    antisymmetrize,
    apply_permutation,
    decomposable_state,
    embed_full,
    inner,
    is_decomposable,
    phase_equal,
    project_antisymmetric,
    wedge,
    wedge_all,
)
from .lattice import (
    contains,
    fusion_of_set,
    join,
    meet,
    ortho_complement_in,
    overlaps,
    skew_atom_witness,
    supplement_witness,
)
from .mereology import (
    Assembly,
    AxiomReport,
    GMWEntangledError,
    ProjectorSampler,
    SystemObject,
    UnionObject,
    E,
    boolean_restriction,
    build_assembly,
    check_axioms,
    check_union_model,
    continuum_atoms_demo,
    criterion_of_identity,
    parthood_definitional,
    subsystem_existence_check,
    union_fusion,
    union_parthood,
)
from .projectors import OccupancyProjector, leq_via_occupancy, occupancy_of_state, projector_leq, sigma
from .subspace import Subspace

__all__ = [
    "antisymmetrize",
    "AntiSymTensor",
    "apply_permutation",
    "Assembly",
    "AxiomReport",
    "boolean_restriction",
    "build_assembly",
    "check_axioms",
    "check_union_model",
    "contains",
    "continuum_atoms_demo",
    "criterion_of_identity",
    "DecomposabilityVerdict",
    "decomposable_state",
    "DEFAULT_EPS",
    "E",
    "embed_full",
    "fusion_of_set",
    "get_eps",
    "GMWEntangledError",
    "inner",
    "is_decomposable",
    "join",
    "leq_via_occupancy",
    "meet",
    "occupancy_of_state",
    "OccupancyProjector",
    "ortho_complement_in",
    "overlaps",
    "parthood_definitional",
    "phase_equal",
    "ProductTensor",
    "project_antisymmetric",
    "projector_leq",
    "ProjectorSampler",
    "sigma",
    "skew_atom_witness",
    "Subspace",
    "subsystem_existence_check",
    "supplement_witness",
    "SystemObject",
    "tolerance",
    "union_fusion",
    "union_parthood",
    "UnionObject",
    "wedge",
    "wedge_all",
]
