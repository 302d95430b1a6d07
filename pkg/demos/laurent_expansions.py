"""Exact Laurent algebra: watch two derivative combinations collapse.

The lattice sum f(z) = sum over integers n of 1/(z - n)^2 expands around
z = 0 as

    f = z^-2 + a0 + a1 z^2 + a2 z^4 + ...

with unknown even coefficients a_d.  Differentiating and squaring the
series (all exact rational arithmetic, nothing numeric) shows that two
particular combinations lose their entire pole part:

    f'' - 6 f^2 + 12 a0 f        -> a constant
    (f')^2 - 4 f^3 + 12 a0 f^2   -> a constant plus one z^-2 term

Because both combinations are also bounded and periodic, every surviving
coefficient must vanish, which forces polynomial relations among the a_d.
This script prints the expansions, the surviving coefficients, and the
relations they imply, then checks each relation numerically with interval
(ball) arithmetic.

Run:  python3 demos/laurent_expansions.py
"""

from eistrig import (PrecisionContext, coeff_a, combination_first_order,
                     combination_second_order, derivative_polynomials,
                     implied_identities, render_poly, series_f)

ORDER = 10


def show_series(name, series):
    print(f"{name}:")
    for degree in range(series.min_degree, series.max_degree + 1):
        coeff = series.coefficient(degree)
        if coeff.is_zero():
            continue
        if degree == 0:
            monomial = "1"
        elif degree == 1:
            monomial = "z"
        else:
            monomial = f"z^{degree}"
        print(f"    [{monomial:>6}]  {render_poly(coeff)}")
    print()


def main():
    print("=" * 72)
    print("Laurent expansion of the lattice sum around z = 0")
    print("=" * 72)
    show_series(f"f (through z^{ORDER})", series_f(ORDER))

    print("=" * 72)
    print("Combination 1: f'' - 6 f^2 + 12 a0 f")
    print("  (z^-4 and z^-2 cancel; only even powers >= 0 survive)")
    print("=" * 72)
    show_series("surviving terms", combination_second_order(ORDER))

    print("=" * 72)
    print("Combination 2: (f')^2 - 4 f^3 + 12 a0 f^2")
    print("  (z^-6 and z^-4 cancel; one z^-2 term and even powers survive)")
    print("=" * 72)
    show_series("surviving terms", combination_first_order(ORDER))

    print("=" * 72)
    print("Implied relations (each surviving coefficient must be zero)")
    print("=" * 72)
    relations = implied_identities(ORDER)
    for rel in relations:
        print(f"    0 = {render_poly(rel)}")
    print()

    # Numerical confirmation: substitute high-precision balls for the a_d
    # and verify each relation's ball straddles zero.
    ctx = PrecisionContext(tolerance="1e-18")
    n_symbols = 1 + max(rel.max_symbol() for rel in relations)
    values = [coeff_a(d, ctx) for d in range(n_symbols)]
    print("numerical check with a_d evaluated to 1e-18:")
    for rel in relations:
        ball = rel.substitute(values, ctx)
        verdict = "consistent with 0" if ball.consistent_with_zero() else "VIOLATED"
        print(f"    |{render_poly(rel)}| = {ctx.mp.nstr(abs(ball.value), 3)}"
              f"  (allowed {ctx.mp.nstr(ball.radius, 3)})  {verdict}")
    print()

    print("=" * 72)
    print("Derivative polynomials: f^(2k) = q_k(f) with p = 2w^3 - 6 a0 w^2")
    print("  q_1 = p', and then q_(k+1) = 2 q_k'' p + q_k' p'")
    print("=" * 72)
    for k, q in enumerate(derivative_polynomials(5), start=1):
        print(f"    q_{k}(w) = {q}")
    print()
    print("Each q_k has zero constant term, degree k + 1, and leading")
    print("coefficient (2k + 1)! -- the shape that drives the growth")
    print("estimates for the reciprocal's power series.")


if __name__ == "__main__":
    main()
