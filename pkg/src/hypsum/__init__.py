"""Exact closed-form summations of 2F1 at arguments 2 and 1/2, with brute-force checks."""

from .catalog import CatalogEntry, catalog_audit, catalog_entry_eval
from .closed_forms import (
    Sign,
    confluent_expansion_coeffs,
    f21_2a_closed,
    f21_2apj_even,
    f21_2apj_odd,
    f21_alt_minus,
    f21_alt_plus,
    f21_m2n_minus,
    f21_m2n_plus,
    kummer2_classic,
    kummer2_generalized,
    kummer3_classic,
    kummer3_generalized,
    samoletov_check,
    transform_2_to_half,
)
from .errors import (
    ExcludedDomain,
    GammaSumError,
    HypsumError,
    ParameterPole,
    PochhammerZeroDivision,
    RestrictedForm,
    UndefinedSeries,
    UnknownEntry,
)
from .exact import GammaProduct, HalfInteger, NormalForm, Q, Tag, gamma_normalize, pochhammer_int
from .oracle import HypSeriesSpec, SeriesPoly, hyp2f1, hyp_terminating_sum
from .sweeps import SweepConfig, VerificationReport

__version__ = "0.1.0"
