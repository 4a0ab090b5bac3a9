"""Ternary Goldbach counts in primes with ``a < {eta p} < b``, eta a quadratic surd."""

from .counting import (
    ArcReport,
    CountResult,
    TernaryCounter,
    WeightedIndicator,
    constrained_exp_sum,
    dft_count_check,
    exp_sum,
    minor_arc_scan,
    sandwich_counts,
    ternary_count,
    ternary_count_brute,
)
from .errors import (
    BudgetExceeded,
    ConfigError,
    DomainError,
    GoldbachError,
    IrrationalityError,
    NumericalError,
)
from .harness import SweepConfig, SweepRow, emit, headline_report, run_sweep
from .quadratic import (
    INSIDE,
    OUTSIDE,
    best_convergent,
    cf_expand,
    classify_point,
    convergents,
    frac_eta_p,
    make_eta,
    rational_approx,
)
from .series import main_term_I, predict_J, sigma_window, singular_series
from .sieve import constrained_set, density, primes_up_to
from .window import (
    Window,
    box_coeff,
    container_coeff,
    container_eval,
    make_container,
    psi0,
    triple_conv,
)

__version__ = "0.1.0"
