"""Exact computer algebra for the extended Ramanujan differential system.

Subpackages:
  arith      Bernoulli numbers, divisor sums, binomials (all exact)
  series     truncated power series over rationals, Euler operator, ord
  forms      E_{2k}, g_{u,v}, Delta, Theta, A_k reductions, system verifier
  ring       sparse polynomial ring, derivation D, weights, parser/printer
  stability  principal D-stability and cofactor profiling
  multlab    auxiliary-polynomial vanishing experiments
  cli        command-line front end
"""

from .series import Order, TruncatedSeries
from .ring import Polynomial, SystemConfig

__all__ = ["Order", "TruncatedSeries", "Polynomial", "SystemConfig"]
__version__ = "0.1.0"
