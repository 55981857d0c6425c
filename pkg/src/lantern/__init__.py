"""Exact verification of the lantern identity and its group-ring consequences."""

from .braid import (
    FramedBraid,
    braid_eq,
    braid_mul,
    is_central,
    p3_normal_form,
    sigma,
    tau_band,
    tau_frame,
    tau_pair,
    verify_lantern,
)
from .free_group import FreeAut, Word, apply, compose, invert, multiply, reduce
from .invariants import (
    LaurentPoly,
    char_H,
    char_lambda3H,
    decomposition_check,
    dim_U,
    gl_invariant_dim,
    parity_table,
    stability_probe,
    torus_invariant_dim,
)
from .parser import parse_word
from .series import (
    GroupRingExpr,
    NcSeries,
    check_congruence,
    lowest_degree,
    magnus_free,
    magnus_p3,
    obar,
    series_inv,
    verify_completed_identity,
    verify_lemma_inverse,
)

__version__ = "0.1.0"
