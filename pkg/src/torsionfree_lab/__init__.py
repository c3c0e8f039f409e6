"""Exact homological algebra over finite-dimensional algebras.

Torsionfree, Gorenstein and orthogonal dimensions of finitely generated
modules, constructions with exactness certificates, and seeded falsification
checks of statements about torsionfree dimension.
"""
from __future__ import annotations

from .algebra import (BUILTIN_NAMES, Algebra, QuiverPresentation, algebra_from_table,
                      build_bound_quiver_algebra, builtin_algebra, opposite_algebra, validate_algebra)
from .constructions import (cosyzygy_embedding, embed_into_finite_pd, prop_3_2, star_of_ses,
                            syzygy_t_resolution, torsionfree_compress)
from .errors import (AlgebraError, LabError, MinimalityUnavailable, ModuleError, PreconditionError,
                     ResourceLimit, UnsupportedError)
from .functors import ext_dim, ext_module, hom_space, star_dual, transpose
from .harness import (CLAIM_IDS, ClaimReport, Params, construction_roundtrips, falsify_claim,
                      question_experiment, reverify)
from .invariants import (DimResult, auslander_bridger_check, gorenstein_dimension, in_perp,
                         inf_torsionfree, injective_coresolution_pd_profile, is_n_torsionfree,
                         orthogonal_dimension, projective_dimension, self_injective_dimension,
                         torsion_status, torsionfree_dimension_upper)
from .linalg import Field
from .modules import ExactSeq, Mod, ModHom, kernel_cokernel, simple_modules, validate_module
from .resolution import resolution, syzygy
from .rng import SplitMix64
from .sampling import SizeParams, random_module, sample_suite
from .serialize import (algebra_from_json, algebra_to_json, module_from_json, module_to_json,
                        sequence_from_json, sequence_to_json)

__version__ = "0.1.0"

__all__ = [
    "BUILTIN_NAMES", "Algebra", "QuiverPresentation", "algebra_from_table", "build_bound_quiver_algebra",
    "builtin_algebra", "opposite_algebra", "validate_algebra",
    "cosyzygy_embedding", "embed_into_finite_pd", "prop_3_2", "star_of_ses", "syzygy_t_resolution",
    "torsionfree_compress",
    "AlgebraError", "LabError", "MinimalityUnavailable", "ModuleError", "PreconditionError",
    "ResourceLimit", "UnsupportedError",
    "ext_dim", "ext_module", "hom_space", "star_dual", "transpose",
    "CLAIM_IDS", "ClaimReport", "Params", "construction_roundtrips", "falsify_claim",
    "question_experiment", "reverify",
    "DimResult", "auslander_bridger_check", "gorenstein_dimension", "in_perp", "inf_torsionfree",
    "injective_coresolution_pd_profile", "is_n_torsionfree", "orthogonal_dimension",
    "projective_dimension", "self_injective_dimension", "torsion_status",
    "torsionfree_dimension_upper",
    "Field", "ExactSeq", "Mod", "ModHom", "kernel_cokernel", "simple_modules", "validate_module",
    "resolution", "syzygy", "SplitMix64", "SizeParams", "random_module", "sample_suite",
    "algebra_from_json", "algebra_to_json", "module_from_json", "module_to_json",
    "sequence_from_json", "sequence_to_json",
]
