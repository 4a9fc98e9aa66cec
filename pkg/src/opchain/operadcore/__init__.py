"""Operads, free and quasi-free operads, and their verification."""
from .operad import (Element, Gate, Operad, SuspendedOperad, TruncationOverflow, UnitOperad,
                     VerificationReport, add_into, check_morphism, check_operad, partial_compose)
from .free import FreeOperad, GeneratorData, free_operad
from .quasifree import (GeneratorMap, MorphismResult, QuasiFreeOperad, check_filtration,
                        check_twisting, derivation_from_generator_map, morphism_from_generator_map,
                        operad_skeleton, theta_weights, tree_image, twisting_residual)
from . import trees
