"""Exact computation with self-similar groups of d-adic tree automorphisms."""

from .perm import Permutation, compose as perm_compose, order as perm_order
from .words import Letter, Word, commutator, free_reduce, format_word, parse_word
from .wreath import Portrait, Presentation, load_presentation
from .decision import (
    InfiniteOrderCertificate,
    OrderResult,
    are_equal,
    fixed_path_self_section,
    infinite_order_certificate,
    is_identity,
    order_bounded,
)
from .mfamily import build_m, paper_identity_suite

__version__ = "0.1.0"
