"""Concrete series of the system: E_{2k}, g_{u,v}, Delta, Theta, the
reduction polynomials A_k, and the whole-system verifier.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arith import bernoulli, sigma_table
from ._linalg import solve_square
from .series import TruncatedSeries

__all__ = [
    "eisenstein",
    "g_series",
    "AkPolynomial",
    "ak_polynomial",
    "discriminant_series",
    "theta_series",
    "FunctionTuple",
    "function_tuple",
    "EquationCheck",
    "SystemReport",
    "verify_system",
    "InternalConsistencyError",
]


class InternalConsistencyError(Exception):
    """A self-check that must always pass did not."""


def eisenstein(k: int, precision: int) -> TruncatedSeries:
    """E_{2k} = 1 - (4k/B_{2k}) * sum_n sigma_{2k-1}(n) z^n, truncated."""
    if k < 1:
        raise ValueError("k must be positive")
    factor = -Fraction(4 * k) / bernoulli(2 * k)
    coeffs = [Fraction(1)]
    if precision >= 1:
        table = sigma_table(2 * k - 1, precision)
        coeffs += [factor * s for s in table]
    return TruncatedSeries(coeffs)


def g_series(u: int, v: int, precision: int) -> TruncatedSeries:
    """g_{u,v} = sum_n n^u sigma_{-v}(n) z^n, truncated; v odd, 0 <= u < v."""
    if v < 1 or v % 2 == 0:
        raise ValueError("v must be a positive odd integer")
    if not 0 <= u < v:
        raise ValueError("u must satisfy 0 <= u < v")
    coeffs = [Fraction(0)]
    if precision >= 1:
        table = sigma_table(-v, precision)
        coeffs += [Fraction(n**u) * table[n - 1] for n in range(1, precision + 1)]
    return TruncatedSeries(coeffs)


def discriminant_series(precision: int) -> TruncatedSeries:
    """E4^3 - E6^2; vanishes to order exactly 1 with leading coefficient 1728."""
    e4 = eisenstein(2, precision)
    e6 = eisenstein(3, precision)
    return e4**3 - e6**2


def theta_series(precision: int) -> TruncatedSeries:
    """z * (E4^3 - E6^2)."""
    return TruncatedSeries.z(precision) * discriminant_series(precision)


@dataclass(frozen=True)
class AkPolynomial:
    """E_{2k} written as a polynomial in (X2, X3) = (E4, E6).

    Only exponent pairs (a, b) with 2a + 3b = k occur.
    """

    k: int
    coefficients: dict[tuple[int, int], Fraction]

    def evaluate(self, e4: TruncatedSeries, e6: TruncatedSeries) -> TruncatedSeries:
        precision = min(e4.precision, e6.precision)
        total = TruncatedSeries.zero(precision)
        for (a, b), c in self.coefficients.items():
            total = total + (e4**a * e6**b).scale(c)
        return total


def _weight_pairs(k: int) -> list[tuple[int, int]]:
    """All (a, b) with 2a + 3b = k, b ascending."""
    pairs = []
    for b in range(k // 3 + 1):
        rem = k - 3 * b
        if rem >= 0 and rem % 2 == 0:
            pairs.append((rem // 2, b))
    return pairs


def ak_polynomial(k: int, precision: int = 60) -> AkPolynomial:
    """Solve for E_{2k} as a combination of E4^a E6^b with 2a + 3b = k.

    The exact linear system matches the first (basis size) q-coefficients;
    the result is then re-verified on all coefficients up to `precision`.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    pairs = _weight_pairs(k)
    s = len(pairs)
    work_prec = max(precision, s - 1)
    e4 = eisenstein(2, work_prec)
    e6 = eisenstein(3, work_prec)
    target = eisenstein(k, work_prec)
    products = [e4**a * e6**b for a, b in pairs]
    matrix = [[products[j].coefficient(n) for j in range(s)] for n in range(s)]
    rhs = [target.coefficient(n) for n in range(s)]
    solution = solve_square(matrix, rhs)
    combo = TruncatedSeries.zero(work_prec)
    for c, prod in zip(solution, products):
        combo = combo + prod.scale(c)
    for n in range(precision + 1):
        if combo.coefficient(n) != target.coefficient(n):
            raise InternalConsistencyError(
                f"A_{k} verification failed at coefficient {n}"
            )
    coeffs = {p: c for p, c in zip(pairs, solution) if c != 0}
    return AkPolynomial(k=k, coefficients=coeffs)


def y_pairs(m: int) -> list[tuple[int, int]]:
    """(u, v) index pairs in canonical order: v ascending over odd v, then u."""
    return [(u, v) for v in range(1, m + 1, 2) for u in range(v)]


@dataclass(frozen=True)
class FunctionTuple:
    """The ordered series tuple (z, E2, E4, E6, g_{0,1}, g_{0,3}, ...)."""

    m: int
    precision: int
    series: tuple[TruncatedSeries, ...]
    names: tuple[str, ...]


def function_tuple(m: int, precision: int) -> FunctionTuple:
    if m < 1 or m % 2 == 0:
        raise ValueError("m must be a positive odd integer")
    series = [TruncatedSeries.z(precision)]
    names = ["z"]
    for k in (1, 2, 3):
        series.append(eisenstein(k, precision))
        names.append(f"E{2 * k}")
    for u, v in y_pairs(m):
        series.append(g_series(u, v, precision))
        names.append(f"g[{u},{v}]")
    return FunctionTuple(m=m, precision=precision, series=tuple(series), names=tuple(names))


@dataclass(frozen=True)
class EquationCheck:
    name: str
    ok: bool
    first_mismatch: int | None = None


@dataclass(frozen=True)
class SystemReport:
    m: int
    precision: int
    equations: tuple[EquationCheck, ...]
    errata: tuple[EquationCheck, ...]

    @property
    def ok(self) -> bool:
        return all(eq.ok for eq in self.equations)


def _compare(name: str, lhs: TruncatedSeries, rhs: TruncatedSeries, upto: int) -> EquationCheck:
    for n in range(upto + 1):
        if lhs.coefficient(n) != rhs.coefficient(n):
            return EquationCheck(name=name, ok=False, first_mismatch=n)
    return EquationCheck(name=name, ok=True)


def _closing_rhs_canonical(v: int, e2, e4, e6, precision: int) -> TruncatedSeries:
    """(B_{v+1}/(2v+2)) * (1 - E_{v+1}), with E_{v+1} the weight-(v+1) series."""
    if v == 1:
        ehat = e2
    elif v == 3:
        ehat = e4
    elif v == 5:
        ehat = e6
    else:
        ehat = ak_polynomial((v + 1) // 2, precision).evaluate(e4, e6)
    one = TruncatedSeries.constant(1, precision)
    return (one - ehat).scale(bernoulli(v + 1) / (2 * v + 2))


def _closing_rhs_literal(v: int, precision: int) -> TruncatedSeries:
    """The uncorrected closing formula: B_{2v+2} * (A_{v+1}(E4,E6) - 1) / (2v+2)."""
    a_series = eisenstein(v + 1, precision)
    one = TruncatedSeries.constant(1, precision)
    return (a_series - one).scale(bernoulli(2 * v + 2) / (2 * v + 2))


def verify_system(m: int, precision: int) -> SystemReport:
    """Check the whole differential system coefficient-by-coefficient.

    The canonical closing equation must pass; the literal textbook variant is
    re-checked alongside and its verdict recorded as errata evidence.
    """
    tup = function_tuple(m, precision)
    upto = precision - 1
    by_name = dict(zip(tup.names, tup.series))
    e2, e4, e6 = by_name["E2"], by_name["E4"], by_name["E6"]
    checks: list[EquationCheck] = [
        _compare("delta(E2) = (E2^2 - E4)/12", e2.delta(), (e2 * e2 - e4).scale(Fraction(1, 12)), upto),
        _compare("delta(E4) = (E2*E4 - E6)/3", e4.delta(), (e2 * e4 - e6).scale(Fraction(1, 3)), upto),
        _compare("delta(E6) = (E2*E6 - E4^2)/2", e6.delta(), (e2 * e6 - e4 * e4).scale(Fraction(1, 2)), upto),
    ]
    errata: list[EquationCheck] = []
    for v in range(1, m + 1, 2):
        for u in range(v - 1):
            checks.append(
                _compare(
                    f"delta(g[{u},{v}]) = g[{u + 1},{v}]",
                    by_name[f"g[{u},{v}]"].delta(),
                    by_name[f"g[{u + 1},{v}]"],
                    upto,
                )
            )
        lhs = by_name[f"g[{v - 1},{v}]"].delta()
        checks.append(
            _compare(
                f"delta(g[{v - 1},{v}]) = B_{v + 1}*(1 - E_{v + 1})/{2 * v + 2}",
                lhs,
                _closing_rhs_canonical(v, e2, e4, e6, precision),
                upto,
            )
        )
        if v >= 3:
            errata.append(
                _compare(
                    f"literal: delta(g[{v - 1},{v}]) = B_{2 * v + 2}*(A_{v + 1} - 1)/{2 * v + 2}",
                    lhs,
                    _closing_rhs_literal(v, precision),
                    upto,
                )
            )
    return SystemReport(
        m=m, precision=precision, equations=tuple(checks), errata=tuple(errata)
    )
