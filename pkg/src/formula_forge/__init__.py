"""Integer formula-encodings over {1, +, *, ^} and their batch generators."""

from .canonical import (
    CanonicalForm,
    encode,
    encode_fcf,
    encode_scf,
    equivalent,
    is_fcf,
    is_scf,
    normalize,
)
from .errors import (
    ArityError,
    CompletenessError,
    DomainError,
    FormulaError,
    ParseError,
    ResourceLimitError,
    SoundnessError,
)
from .expr import COUNTERS, ONE, X, Expr, Metric, Tag, evaluate, mk_one, mk_power, mk_product, mk_sum, size
from .fcfgen import FcfLevel, fcf_generate, fcf_step
from .notation import Notation, parse, render
from .numtheory import factor, is_prime
from .search import shortest_expr
from .zeta import (
    ExprSet,
    RationalExpr,
    ZetaState,
    initial_state,
    rationals,
    sift_primes,
    zeta_step_basic,
    zeta_step_improved,
    zeta_window,
)

__version__ = "0.1.0"
