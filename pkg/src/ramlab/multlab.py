"""Empirical multiplicity laboratory.

Searches for auxiliary polynomials of constrained degrees with the highest
possible order of vanishing at z = 0, by exact incremental row reduction of
the coefficient matrix, and profiles the measured orders against the
degree-product bound shape.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional

from ._linalg import RowReducer
from .forms import function_tuple
from .ring import Monomial, Polynomial, SystemConfig, evaluate, monomial_key
from .series import Order

__all__ = [
    "DegreeBudget",
    "ExperimentRow",
    "GridSummary",
    "PrecisionError",
    "operational_exponent",
    "paper_exponent",
    "compute_k0",
    "monomial_basis",
    "max_vanishing_search",
    "experiment_grid",
]


class PrecisionError(Exception):
    """The requested quantity is not visible at the stored precision."""


@dataclass(frozen=True)
class DegreeBudget:
    """Max degree in z (d0) and max total degree in all other variables (d)."""

    d0: int
    d: int

    def __post_init__(self):
        if self.d0 < 0 or self.d < 0:
            raise ValueError("degree budgets must be nonnegative")


def operational_exponent(m: int) -> int:
    """Number of non-z variables: 3 + ((m+1)/2)^2."""
    return 3 + ((m + 1) // 2) ** 2


def paper_exponent(m: int) -> int:
    """The published exponent formula 3 + ((m-1)/2)^2, reported alongside."""
    return 3 + ((m - 1) // 2) ** 2


@dataclass(frozen=True)
class ExperimentRow:
    m: int
    d0: int
    d: int
    T: int  # monomial count
    n_star: int  # maximal vanishing cutoff achieved (lower bound when flagged)
    measured_ord: Order
    ratio: Fraction  # n_star / ((d0+1)(d+1)^nu), operational nu
    ratio_paper: Fraction  # same with the published exponent
    witness: Polynomial
    precision: int
    precision_limited: bool


@dataclass(frozen=True)
class GridSummary:
    m: int
    exponent_operational: int
    exponent_paper: int
    max_ratio: Fraction
    max_ratio_paper: Fraction
    flagged: tuple[DegreeBudget, ...]


def compute_k0(m: int, precision: int) -> Order:
    """ord of Theta = z*(X2^3 - X3^2) evaluated at the function tuple."""
    cfg = SystemConfig(m)
    x2 = Polynomial.variable("E4", cfg)
    x3 = Polynomial.variable("E6", cfg)
    theta = Polynomial.variable("z", cfg) * (x2**3 - x3**2)
    order = evaluate(theta, function_tuple(m, precision)).order()
    if not order.is_finite:
        raise PrecisionError(
            f"Theta evaluation vanishes through precision {precision}; raise it"
        )
    return order


def monomial_basis(budget: DegreeBudget, cfg: SystemConfig) -> list[Monomial]:
    """All monomials with deg_z <= d0 and total non-z degree <= d, graded-lex."""
    nrest = cfg.nvars - 1
    rest: list[tuple[int, ...]] = []

    def gen(prefix: tuple[int, ...], remaining: int, slots: int):
        if slots == 0:
            rest.append(prefix)
            return
        for e in range(remaining + 1):
            gen(prefix + (e,), remaining - e, slots - 1)

    gen((), budget.d, nrest)
    monos = [(e0,) + r for e0 in range(budget.d0 + 1) for r in rest]
    monos.sort(key=monomial_key)
    return monos


def expected_basis_size(budget: DegreeBudget, cfg: SystemConfig) -> int:
    nu = cfg.nvars - 1
    return (budget.d0 + 1) * comb(budget.d + nu, nu)


def max_vanishing_search(
    budget: DegreeBudget, cfg: SystemConfig, precision: Optional[int] = None
) -> ExperimentRow:
    """Find the highest-vanishing combination of the budgeted monomials.

    Adds one coefficient condition (matrix row) at a time until the rank
    reaches the basis size; the last kernel before that is, by maximality,
    the best achievable vanishing order within the budget.
    """
    basis = monomial_basis(budget, cfg)
    T = len(basis)
    assert T == expected_basis_size(budget, cfg)
    if precision is None:
        precision = 3 * T
    tup = function_tuple(cfg.m, precision)
    columns = [
        evaluate(Polynomial.from_monomial(mono, cfg), tup) for mono in basis
    ]

    reducer = RowReducer(T)
    n_star: Optional[int] = None
    for r in range(precision + 1):
        row = [col.coefficient(r) for col in columns]
        reduced = reducer.reduce(row)
        if any(x != 0 for x in reduced):
            if reducer.rank + 1 == T:
                n_star = r
                break
            reducer.add(reduced)
    flagged = n_star is None

    kernel = reducer.kernel_vector()
    witness = Polynomial(
        cfg,
        {mono: c for mono, c in zip(basis, kernel) if c != 0},
    )
    measured = evaluate(witness, tup).order()
    if flagged:
        n_star = precision + 1
        if measured.is_finite:
            raise AssertionError(
                "rank never reached the basis size yet the witness does not "
                "vanish through the precision"
            )
    else:
        if not (measured.is_finite and measured.value == n_star):
            raise AssertionError(
                f"witness order {measured} disagrees with search cutoff {n_star}"
            )

    nu = operational_exponent(cfg.m)
    nu_paper = paper_exponent(cfg.m)
    denom = (budget.d0 + 1) * (budget.d + 1) ** nu
    denom_paper = (budget.d0 + 1) * (budget.d + 1) ** nu_paper
    return ExperimentRow(
        m=cfg.m,
        d0=budget.d0,
        d=budget.d,
        T=T,
        n_star=n_star,
        measured_ord=measured,
        ratio=Fraction(n_star, denom),
        ratio_paper=Fraction(n_star, denom_paper),
        witness=witness,
        precision=precision,
        precision_limited=flagged,
    )


def experiment_grid(
    m: int, budgets: list[DegreeBudget], precision: Optional[int] = None
) -> tuple[list[ExperimentRow], GridSummary]:
    """Run the search over a grid of budgets; deterministic row order."""
    cfg = SystemConfig(m)
    rows = [max_vanishing_search(b, cfg, precision) for b in budgets]
    max_ratio = max((row.ratio for row in rows), default=Fraction(0))
    max_ratio_paper = max((row.ratio_paper for row in rows), default=Fraction(0))
    summary = GridSummary(
        m=m,
        exponent_operational=operational_exponent(m),
        exponent_paper=paper_exponent(m),
        max_ratio=max_ratio,
        max_ratio_paper=max_ratio_paper,
        flagged=tuple(
            DegreeBudget(row.d0, row.d) for row in rows if row.precision_limited
        ),
    )
    return rows, summary
