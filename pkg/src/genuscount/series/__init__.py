"""Exact truncated power series, generating-function expansions and fitting."""

from genuscount.series.base import (
    BiSeries,
    KappaSeries,
    Poly,
    RationalSeries,
    Series,
    half_power,
    kappa,
    kappa_monomial,
)
from genuscount.series.expansions import (
    expand_assoc_bell_gf,
    expand_assoc_stirling_gf,
    expand_bell_gf,
    expand_stirling_gf,
    kappa_coefficient,
    solve_Z0,
    solve_Z1,
    two_block_gf,
)

__all__ = [
    "BiSeries",
    "KappaSeries",
    "Poly",
    "RationalSeries",
    "Series",
    "expand_assoc_bell_gf",
    "expand_assoc_stirling_gf",
    "expand_bell_gf",
    "expand_stirling_gf",
    "half_power",
    "kappa",
    "kappa_coefficient",
    "kappa_monomial",
    "solve_Z0",
    "solve_Z1",
    "two_block_gf",
]

from genuscount.series.fitting import (  # noqa: E402
    ChiFit,
    NumeratorFit,
    fit_chi,
    fit_numerator,
    solve_exact,
)

__all__ += ["ChiFit", "NumeratorFit", "fit_chi", "fit_numerator", "solve_exact"]
