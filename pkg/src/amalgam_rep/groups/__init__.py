"""Finite group machinery: closures, stabilizer chains, orbits, permutation images."""

from .closure import ClosureGroup, bfs_closure, elementary_abelian_2_rank, intersection, is_subgroup_member, verify_presentation_gl23
from .formulas import GroupOrderTarget, group_order_formula
from .orbits import orbit_partition
from .perm import PermGroup, perm_image, transitivity_tower
from .schreier import OrderResult, StabilizerChain, matrix_group_order
