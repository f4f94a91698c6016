"""Spectral filter regularization for discrete ill-posed problems."""

from ._core import (
    DomainError,
    EmptySpectrumError,
    InputError,
    NumericalError,
    OutOfRangeError,
    Problem,
    add_noise,
    apriori_theta_p,
    cgls,
    f_p,
    filter_solve,
    g,
    heuristic_select,
    make_problem,
    monte_carlo,
    morozov_like,
    r,
    reconstructed_condition,
    root_of_h,
    run_check,
    scale_problem,
    showalter_ode_solve,
    svd,
    theta_p,
)

__all__ = [
    "DomainError",
    "EmptySpectrumError",
    "InputError",
    "NumericalError",
    "OutOfRangeError",
    "Problem",
    "add_noise",
    "apriori_theta_p",
    "cgls",
    "f_p",
    "filter_solve",
    "g",
    "heuristic_select",
    "make_problem",
    "monte_carlo",
    "morozov_like",
    "r",
    "reconstructed_condition",
    "root_of_h",
    "run_check",
    "scale_problem",
    "showalter_ode_solve",
    "svd",
    "theta_p",
]
