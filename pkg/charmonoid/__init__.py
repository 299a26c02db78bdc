from .chartable import CharacterTable, character_table, class_fusion, induce_vector
from .classify import check_implications, classify, is_bam, is_monomial, is_nam, is_wam
from .config import ENGINE_VERSION, SCHEMA_VERSION, Settings
from .groupspec import build, parse_group_spec, render
from .lfun import (hol_hilbert_basis, is_admissible, is_factorial, l_order, sample_admissible,
                   theorem3_check, theorem4_check)
from .monoid import hilbert_basis, is_member, lattice_rank, monomial_vectors
from .named import construct_named
from .perm import (Permutation, PermGroup, center, conjugacy_classes, derived_subgroup, direct_product,
                   group_order, quotient_group)
from .pipeline import Workbench, run_classify, run_lfun
from .subgroups import linear_characters, subgroup_conjugacy_classes
