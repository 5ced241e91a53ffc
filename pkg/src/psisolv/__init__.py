"""Element-order power sums and sufficient criteria for solvability of finite groups."""

from .catalog_io import catalog, parse_group_defs, write_report
from .criteria import Criterion, Verdict, run_all
from .groups import FiniteGroup, cyclic_group, direct_product, is_solvable, perm_group, semidirect_product
from .metrics import d_k, order_spectrum, psi, psi_k, psi_k_cyclic

__version__ = "0.1.0"
