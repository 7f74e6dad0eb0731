"""Samplers and bijections: fields, corner growth, Aztec shuffling, RSK."""
from .partition import Partition
from .fields import (GrowthField, sample_geometric_field, g_table,
                     g_bruteforce, corner_growth_shape, staircase,
                     sample_g_batch)
from .paths import PathFamily, MalformedPathsError
from .bijection import (BijectionInvariantError, theorem41_forward,
                        theorem41_inverse, field_log_weight, path_log_weight,
                        column_kinds)
from .rsk import PermutationRecord, lis, rsk_shape, plancherel_sample
from .schur import (complete_homogeneous, schur_poly, schur_measure,
                    plancherel_weight, f_lambda, standard_tableaux_count)
from .gue import sample_gue, sample_gue_batch
from .png import (png_height, nucleation, point_to_line, endpoint_argmax,
                  staircase_field_order)
from .aztec import (DominoTiling, ShuffleInvariantError, in_diamond,
                    domino_class, aztec_shuffle, tiling_to_paths,
                    npr_boundary, NprBoundary, paths_to_particles,
                    particle_array, npr_dominos, npr_shape)

__all__ = [
    "Partition", "GrowthField", "sample_geometric_field", "g_table",
    "g_bruteforce", "corner_growth_shape", "staircase", "sample_g_batch",
    "PathFamily", "MalformedPathsError", "BijectionInvariantError",
    "theorem41_forward", "theorem41_inverse", "field_log_weight",
    "path_log_weight", "column_kinds", "PermutationRecord", "lis",
    "rsk_shape", "plancherel_sample", "complete_homogeneous", "schur_poly",
    "schur_measure", "plancherel_weight", "f_lambda",
    "standard_tableaux_count", "sample_gue", "sample_gue_batch",
    "png_height", "nucleation", "point_to_line", "endpoint_argmax",
    "staircase_field_order", "DominoTiling", "ShuffleInvariantError",
    "in_diamond", "domino_class", "aztec_shuffle", "tiling_to_paths",
    "npr_boundary", "NprBoundary", "paths_to_particles", "particle_array",
    "npr_dominos", "npr_shape",
]
