"""Exact Weyl-group combinatorics, Whittaker-vector counts and twisting-functor checks."""
from .rootsys import RootDatum, Weight, build_root_system, fundamental_to_simple, half_sum, inner_product
from .weylgrp import (WeylElement, bruhat_leq, element, factorize, generate_weyl_group, min_coset_reps,
                      pair_set, parabolic_subgroup, weyl_group)
from .cells import CellReport, ProblemInput, cell_survival, enumerate_cells_ordered, survivor_set
from .whitdim import (dim_wh_algebraic, dim_wh_continuous, genericity_a, genericity_b, oshima_identity_check,
                      weyl_dim)

__version__ = "0.1.0"
