"""Exact genus spectra of PSL2(F_p) for primes p = 3 (mod 4).

The heavy lifting lives in the compiled extension; this package re-exports
its surface: group instances, the Apery/Frobenius spectrum engine, the
bounded enumeration oracle and the log-linear scaling fit.
"""

from ._core import (  # noqa: F401
    AperyTable,
    Bounds,
    DataPoint,
    Error,
    FitModel,
    GroupInstance,
    PeriodModel,
    PredictionRow,
    Signature,
    SpectrumEngine,
    SpectrumWindow,
    StableResult,
    WindowEntry,
    __version__,
    apery_set,
    archival_bounds,
    coefficient,
    d_value,
    decompose,
    derive_bounds,
    enumerate_genera,
    evaluate,
    fit_loglinear,
    frobenius_number,
    group_order,
    is_admissible,
    is_member,
    is_prime,
    load_instance,
    periods_for,
    preset_model,
    reference_dataset,
    residual_table,
    rh_genus,
    verify_absent,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
