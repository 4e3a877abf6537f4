"""Exact Vafa-Witten partition functions for SU(r)/Z_r on K3, with
numeric checks of the modular transformations behind S-duality."""

from .cyclotomic import CyclotomicNumber, as_root_of_unity, cyclotomic_polynomial, root_of_unity
from .eta_hilb import G_at, G_series, HilbTable, hilb_euler_table
from .lattice_gauss import (
    GaussSumProvider,
    K3Lattice,
    brute_force_sum,
    discriminant_phase,
    epsilon,
    exact_order_count,
    gauss_sum,
    k3_gram,
)
from .modular_numeric import (
    G_num,
    check_S_rules,
    check_sduality_prefactor,
    eta,
    eta_via_product,
    eval_terms,
    s_rules_report,
)
from .qseries import PrecisionError, PuiseuxSeries, series_diff
from .vw_partitions import (
    GerbeSpec,
    GTerm,
    MukaiData,
    collect_families,
    expand_terms,
    ess_terms,
    multiple_cover,
    mukai_exponent_ess,
    mukai_exponent_opt,
    opt_prime_terms,
    opt_terms,
    opt_twisted_terms,
    prime_assembled_terms,
    prime_closed_terms,
    solve_s,
    total_rho_terms,
    trivial_terms,
    verify_main_identity,
    z_ess,
    z_opt,
    z_opt_prime,
    z_opt_twisted,
    z_prime_assembled,
    z_prime_closed,
    z_total_rho,
    z_trivial,
)

__version__ = "0.1.0"
