"""Precision contexts, bounded values, and ball arithmetic."""

from fractions import Fraction

import pytest

from eistrig import BoundedValue, ConfigurationError, PrecisionContext
from eistrig.errors import InconclusiveNonvanishingError


def test_context_validation():
    with pytest.raises(ConfigurationError):
        PrecisionContext(precision=32)
    with pytest.raises(ConfigurationError):
        PrecisionContext(tolerance="not-a-number")
    with pytest.raises(ConfigurationError):
        PrecisionContext(tolerance="-1e-12")
    with pytest.raises(ConfigurationError):
        PrecisionContext(precision=64, tolerance="1e-300")  # guard margin gone


def test_context_is_immutable_and_hashable():
    ctx = PrecisionContext()
    with pytest.raises(AttributeError):
        ctx.precision = 256
    assert ctx == PrecisionContext()
    assert hash(ctx) == hash(PrecisionContext())
    assert ctx != PrecisionContext(precision=192)


def test_refined_raises_precision_with_tolerance():
    ctx = PrecisionContext()
    sub = ctx.refined(ctx.mp.mpf("1e-50"))
    assert sub.precision > ctx.precision
    assert sub.tolerance < ctx.tolerance
    same = ctx.refined(ctx.tolerance / 2)
    assert same.precision == ctx.precision


def test_point_parsing():
    ctx = PrecisionContext()
    assert ctx.point("0.5") == ctx.mp.mpf("0.5")
    z = ctx.point("0.1+0.2i")
    assert isinstance(z, ctx.mp.mpc) and z.imag > 0
    assert isinstance(ctx.point("1+0i"), ctx.mp.mpf)  # exact-zero imag demotes
    assert isinstance(ctx.point(complex(0.3, 0.0)), ctx.mp.mpf)
    with pytest.raises(ValueError):
        ctx.point("inf")


def test_from_fraction_is_correctly_rounded_to_one_ulp():
    ctx = PrecisionContext()
    q = Fraction(1, 3)
    v = ctx.from_fraction(q)
    err = abs(Fraction(str(ctx.mp.nstr(v, 50))) - q)
    assert err < Fraction(1, 2 ** (ctx.precision - 2))


def test_ball_ops_carry_enclosures():
    ctx = PrecisionContext()
    mp = ctx.mp
    a = BoundedValue(mp.mpf(2), mp.mpf("1e-20"))
    b = BoundedValue(mp.mpf(3), mp.mpf("1e-20"))
    s = ctx.badd(a, b)
    assert s.value == 5 and s.radius >= mp.mpf("2e-20")
    p = ctx.bmul(a, b)
    assert p.value == 6 and p.radius >= mp.mpf("5e-20")
    r = ctx.brecip(a)
    assert abs(r.value - mp.mpf("0.5")) < mp.mpf("1e-30")
    q = ctx.bsqrt(ctx.ball(2))
    assert abs(q.value * q.value - 2) < mp.mpf("1e-30")


def test_bscale_by_integers_is_exact():
    ctx = PrecisionContext()
    a = BoundedValue(ctx.mp.mpf("0.375"), ctx.mp.mpf("1e-18"))
    out = ctx.bscale(a, 6)
    assert out.value == ctx.mp.mpf("2.25")
    assert out.radius >= 6 * a.radius


def test_brecip_rejects_balls_containing_zero():
    ctx = PrecisionContext()
    with pytest.raises(InconclusiveNonvanishingError):
        ctx.brecip(BoundedValue(ctx.mp.mpf("1e-30"), ctx.mp.mpf("1e-20")))
    with pytest.raises(InconclusiveNonvanishingError):
        ctx.bsqrt(BoundedValue(ctx.mp.mpf(0), ctx.mp.mpf(1)))


def test_consistent_with_zero_is_the_only_zero_test():
    ctx = PrecisionContext()
    assert BoundedValue(ctx.mp.mpf("1e-30"), ctx.mp.mpf("1e-29")).consistent_with_zero()
    assert not BoundedValue(ctx.mp.mpf("1e-10"), ctx.mp.mpf("1e-29")).consistent_with_zero()


def test_adopt_charges_the_conversion():
    ctx = PrecisionContext()
    hi = ctx.refined(ctx.mp.mpf("1e-60"))
    v = hi.mp.mpf(1) / 3
    out = ctx.adopt(BoundedValue(v, hi.mp.mpf("1e-70")))
    assert isinstance(out.value, ctx.mp.mpf)
    # the demoted center differs from the wide one by < its charged radius
    assert abs(ctx.mp.mpf(v) - out.value) == 0
    assert out.radius > ctx.eps / 4


def test_exactness_of_dyadic_inputs_survives_parsing():
    ctx = PrecisionContext()
    zp = ctx.point("0.375")
    assert zp == ctx.mp.mpf(3) / 8
    ball = ctx.ball(zp)
    assert ball.radius == 0
