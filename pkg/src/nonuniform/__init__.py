"""Nonuniform codes for asymmetric errors.

Codewords of different weights get different error-correction budgets,
matched to how many 1 -> 0 errors each weight actually suffers.
"""

from .asym_equivalence import (
    ErrorSpec, check_constant_tup_equivalence, check_necessity_underline,
    check_sufficiency_overline, corrects_pair,
)
from .bounds import (
    AsymptoticBounds, BoundReport, asymptotic_bounds, exhaustive_optimal_code, m_alpha, m_beta,
)
from .chain_codes import CodeChain, VarshamovParams, bch_chain, chain_decode, varshamov_chain
from .channel_sim import (
    AuditReport, ChannelRun, estimate_codeword_reliability, transmit, transmit_batch, worst_case_audit,
)
from .codebook import Codebook, validate_nonuniform, validation_report
from .flipping import (
    FlippingCode, Variant, find_alpha, flip_decode_aux, flip_decode_info, flip_encode_aux,
    flip_encode_info, flipping_aux, flipping_info,
)
from .gf2m_bch import (
    BchCode, DecodingFailure, GF2m, bch_decode, bch_decode_batch, bch_dimension_table, bch_encode, build_bch,
)
from .layered import LayeredCode, layered_decode, layered_enumerate, layered_membership
from .linear import LinearCode, hamming_7_4
from .rates_report import (
    RateCurve, bound_rate_curves, flipping_bch_rate_estimate, layered_bch_rate_estimate, uniform_bch_rate,
)
from .tolerance import (
    ChannelModel, Direction, EmptyPreimageWarning, ToleranceProfile, monotone_envelope,
    overline_t_up, t_down_profile, t_f_profile, t_l_profile, underline_t_up,
)

__version__ = "0.1.0"
