"""Representations of bound quivers over small prime fields."""
from .representation import (Morphism, Representation, RepresentationError, SubmoduleHandle,
                             check, direct_sum, dual, identity, image_of, is_semisimple,
                             jh_multiplicity, kernel_of, quotient_projection, quotient_rep,
                             rad_basis, restrict, soc_basis, socle_dims, submodule_from_generators,
                             top_dims, whole, zero_morphism, zero_representation, zero_submodule)
from .hom import (common_kernel, cogenerating_embedding, hom_basis, hom_dim, hom_space,
                  is_cogenerated, morphism_from_vector)
from .decomposition import (CapExceeded, IsoClassTable, canonical_key, decompose,
                            decompose_with_inclusions, fingerprint, is_indecomposable,
                            iso_indecomposable, iso_test, sort_key)
from .submodules import cyclic_submodules, enumerate_submodules, maximal_submodules
from .covering import CoveringSpec, push_down, zigzag_covering, zigzag_module, zigzag_representation
