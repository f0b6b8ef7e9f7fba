import random
from fractions import Fraction

import pytest

from helpers import random_monomial, random_polynomial
from ramlab.forms import function_tuple
from ramlab.ring import (
    ParseError,
    Polynomial,
    SystemConfig,
    derive,
    evaluate,
    format_polynomial,
    parse,
    velocity,
)
from ramlab.series import Order

CFG1 = SystemConfig(1)
CFG3 = SystemConfig(3)


def gens(cfg):
    return (
        Polynomial.variable("z", cfg),
        Polynomial.variable("E2", cfg),
        Polynomial.variable("E4", cfg),
        Polynomial.variable("E6", cfg),
    )


def delta_poly(cfg):
    z, x1, x2, x3 = gens(cfg)
    return x2**3 - x3**2


def test_config_validation():
    with pytest.raises(ValueError):
        SystemConfig(2)
    with pytest.raises(ValueError):
        SystemConfig(0)


def test_variable_order():
    assert CFG3.names == ("z", "E2", "E4", "E6", "g[0,1]", "g[0,3]", "g[1,3]", "g[2,3]")


def test_arithmetic_basics():
    z, x1, x2, x3 = gens(CFG1)
    d = delta_poly(CFG1)
    assert (d + (x3**2 - x2**3)).is_zero()
    assert d.scale(1) == d
    theta = z * d
    assert len(theta.terms) == 2


def test_mixed_config_rejected():
    with pytest.raises(ValueError):
        Polynomial.variable("z", CFG1) + Polynomial.variable("z", CFG3)


def test_degrees():
    z, x1, x2, x3 = gens(CFG1)
    theta = z * delta_poly(CFG1)
    assert theta.deg_x0() == 1
    assert theta.deg_eg() == 3
    five = Polynomial.constant(5, CFG1)
    assert five.deg_x0() == 0 and five.deg_eg() == 0
    y01 = Polynomial.variable("g[0,1]", CFG1)
    assert (x1**2 * y01).deg_eg() == 3
    assert Polynomial.zero(CFG1).total_deg() == -1


def test_phi_weights():
    z, x1, x2, x3 = gens(CFG1)
    assert delta_poly(CFG1).phi() == 6
    assert z.phi() == 0
    assert Polynomial.variable("g[0,1]", CFG1).phi() == 4  # 2m+2 with m=1
    assert Polynomial.variable("g[1,3]", CFG3).phi() == 8  # 2m+2 with m=3
    with pytest.raises(ValueError):
        Polynomial.zero(CFG1).phi()


def test_phi2_and_weight_part():
    assert Polynomial.variable("g[0,3]", CFG3).phi2() == -12
    x1 = Polynomial.variable("E2", CFG1)
    y01 = Polynomial.variable("g[0,1]", CFG1)
    assert (x1 + y01).weight_part("min", "phi2") == y01
    d = delta_poly(CFG1)
    assert d.weight_part("min", "phi2") == d
    assert d.weight_part("max", "phi") == d


def test_exact_divide():
    z, x1, x2, x3 = gens(CFG1)
    d = delta_poly(CFG1)
    assert (x1 * d).exact_divide(d) == x1
    assert x2.exact_divide(x3) is None
    assert Polynomial.zero(CFG1).exact_divide(d) == Polynomial.zero(CFG1)
    with pytest.raises(ZeroDivisionError):
        d.exact_divide(Polynomial.zero(CFG1))


def test_exact_divide_multiply_back():
    rng = random.Random(11)
    for _ in range(30):
        p = random_polynomial(CFG1, rng, max_total_deg=2, max_terms=3)
        q = random_polynomial(CFG1, rng, max_total_deg=2, max_terms=3)
        quotient = (p * q).exact_divide(q)
        assert quotient == p


def test_derive_examples():
    z, x1, x2, x3 = gens(CFG1)
    assert derive(x1) == (x1 * x1 - x2).scale(Fraction(1, 12))
    d = delta_poly(CFG1)
    assert derive(d) == x1 * d
    assert derive(Polynomial.variable("g[0,3]", CFG3)) == Polynomial.variable(
        "g[1,3]", CFG3
    )
    # closing equation for v=1: D(Y_{0,1}) = (1 - X1)/24
    one = Polynomial.constant(1, CFG1)
    assert derive(Polynomial.variable("g[0,1]", CFG1)) == (one - x1).scale(
        Fraction(1, 24)
    )
    # closing for v=3: D(Y_{2,3}) = (X2 - 1)/240
    one3 = Polynomial.constant(1, CFG3)
    x2_3 = Polynomial.variable("E4", CFG3)
    assert derive(Polynomial.variable("g[2,3]", CFG3)) == (x2_3 - one3).scale(
        Fraction(1, 240)
    )


def test_derive_leibniz():
    rng = random.Random(5)
    for cfg in (CFG1, CFG3):
        for _ in range(25):
            p = random_polynomial(cfg, rng)
            q = random_polynomial(cfg, rng)
            assert derive(p * q) == derive(p) * q + p * derive(q)


def test_chain_rule():
    for m in (1, 3):
        cfg = SystemConfig(m)
        tup = function_tuple(m, 20)
        rng = random.Random(7)
        for _ in range(20):
            p = random_polynomial(cfg, rng)
            assert evaluate(derive(p), tup) == evaluate(p, tup).delta()


def test_phi_growth_and_additivity():
    rng = random.Random(13)
    for cfg in (CFG1, CFG3):
        for _ in range(40):
            p = random_polynomial(cfg, rng)
            q = random_polynomial(cfg, rng)
            dp = derive(p)
            if not dp.is_zero():
                assert dp.phi() <= p.phi() + 1
            assert (p * q).phi() == p.phi() + q.phi()


def test_phi2_strict_increase_off_the_euler_term():
    # every part of D except z d/dz strictly increases phi2
    rng = random.Random(17)
    for cfg in (CFG1, CFG3):
        w2 = cfg.phi2_weights()
        for _ in range(25):
            mono = random_monomial(cfg, rng)
            if not any(mono):
                continue
            base = sum(w * e for w, e in zip(w2, mono))
            for i, e in enumerate(mono):
                if e == 0:
                    continue
                name = cfg.names[i]
                lowered = list(mono)
                lowered[i] -= 1
                part = Polynomial.from_monomial(tuple(lowered), cfg, e) * velocity(
                    name, cfg
                )
                for term_mono, _ in part:
                    weight = sum(w * x for w, x in zip(w2, term_mono))
                    if name == "z":
                        assert weight == base
                    else:
                        assert weight > base


def test_euler_identity_on_z_monomials():
    for b in range(5):
        p = Polynomial.variable("z", CFG1) ** b
        assert derive(p) == p.scale(b)


def test_evaluate_examples():
    z = Polynomial.variable("z", CFG1)
    theta = z * delta_poly(CFG1)
    tup = function_tuple(1, 6)
    s = evaluate(theta, tup)
    assert s.coefficient(2) == 1728
    assert s.coefficient(3) == -41472
    assert s.order() == Order.finite(2)
    assert evaluate(Polynomial.constant(Fraction(5, 3), CFG1), tup).coefficient(0) == Fraction(5, 3)
    assert evaluate(Polynomial.variable("E2", CFG1), tup) == tup.series[1]
    with pytest.raises(ValueError):
        evaluate(theta, function_tuple(3, 6))


def test_parse_examples():
    theta = Polynomial.variable("z", CFG1) * delta_poly(CFG1)
    assert parse("z*(E4^3 - E6^2)", CFG1) == theta
    p = parse("g[0,1] + 1/2*E2", CFG1)
    expected = Polynomial.variable("g[0,1]", CFG1) + Polynomial.variable(
        "E2", CFG1
    ).scale(Fraction(1, 2))
    assert p == expected
    assert parse("-z + 3", CFG1) == Polynomial.constant(3, CFG1) - Polynomial.variable(
        "z", CFG1
    )


def test_parse_errors():
    with pytest.raises(ParseError, match="unknown variable"):
        parse("E7", CFG1)
    with pytest.raises(ParseError, match="out of range"):
        parse("g[0,3]", CFG1)
    with pytest.raises(ParseError, match="out of range"):
        parse("g[3,3]", CFG3)
    with pytest.raises(ParseError) as exc:
        parse("z + ", CFG1)
    assert exc.value.line == 1 and exc.value.col == 5
    with pytest.raises(ParseError):
        parse("z ** 2", CFG1)


def test_format_canonical():
    z, x1, x2, x3 = gens(CFG1)
    theta = z * delta_poly(CFG1)
    assert format_polynomial(theta) == "z*E4^3 - z*E6^2"
    assert format_polynomial(Polynomial.zero(CFG1)) == "0"
    assert format_polynomial(x1.scale(Fraction(-1, 2))) == "-1/2*E2"


def test_parse_format_round_trip():
    rng = random.Random(23)
    for cfg in (CFG1, CFG3):
        for _ in range(40):
            p = random_polynomial(cfg, rng, max_total_deg=4, max_terms=5)
            text = format_polynomial(p)
            again = parse(text, cfg)
            assert again == p
            assert format_polynomial(again) == text
