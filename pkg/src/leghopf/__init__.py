"""Exact invariants of Legendrian Hopf links from contact surgery diagrams."""

from fractions import Fraction

from .exact import INFINITY, IntMatrix, det, inverse_row, signature, solve
from .slopes import (CFrac, Finite, IntegralFamily, SL2, cfrac, cfrac_eval, count_tight,
                     count_twisting, honda_count, normalize)
from .surgery import (ComponentKnot, SurgeryDiagram, SurgeryKnot, d3_after, extended_matrix,
                      invariants, linking_matrix, lk_after, parity_check, rot_after, tb_after)

__version__ = "0.1.0"
