"""Laurent coefficients: closed forms vs contour extraction, derivatives."""

import pytest

from elliptika import (
    CS,
    DS,
    NS,
    ContourConfig,
    PoleProximity,
    RadiusTooLarge,
    UnsupportedOrder,
    closed_form_lambda_poly,
    context_from_tau,
    f_ij,
    f_ij_derivative,
    f_nth_derivative,
    laurent_C,
    laurent_C_auto,
    series_coefficient,
)

CTX_I = context_from_tau(1j)
CTX_2I = context_from_tau(2j)


def test_contour_config_validation():
    with pytest.raises(ValueError):
        ContourConfig(radius_fraction=1.0)
    with pytest.raises(ValueError):
        ContourConfig(n_samples=4)


def test_closed_forms_reject_high_order():
    with pytest.raises(UnsupportedOrder):
        closed_form_lambda_poly(CS, 3)
    with pytest.raises(UnsupportedOrder):
        laurent_C(CS, 3, CTX_2I, mode="closed_form")


def test_unit_residue():
    for idx in (CS, DS, NS):
        assert laurent_C(idx, 0, CTX_2I) == 1.0
        assert abs(series_coefficient(idx, -1, CTX_2I) - 1.0) < 1e-13


def test_contour_matches_closed_form():
    for ctx in (CTX_I, CTX_2I):
        for s in (0, 1, 2):
            for idx in (CS, DS, NS):
                closed = laurent_C(idx, s, ctx, mode="closed_form")
                contour = laurent_C(idx, s, ctx, mode="contour")
                assert abs(closed - contour) < 1e-10 * max(1.0, abs(closed))


def test_even_coefficients_vanish():
    # f_{i,j} is odd, so only odd powers of z appear
    for idx in (CS, DS, NS):
        for p in (0, 2, 4):
            assert abs(series_coefficient(idx, p, CTX_2I)) < 1e-11


def test_order_one_fixture_at_square_lattice():
    # C_{1,0}(tau=i) = (-1/3 + lambda/6)(2K)^2 with lambda(i) = 1/2
    value = laurent_C(CS, 1, CTX_I)
    assert abs(value - (-0.25) * CTX_I.two_K**2) < 1e-9
    assert abs(value - (-3.4375929090101858)) < 1e-9


def test_center_constants_sum_zero():
    total = sum(laurent_C(idx, 1, CTX_2I) for idx in (CS, DS, NS))
    assert abs(total) < 1e-13 * abs(CTX_2I.two_K) ** 2


def test_auto_mode_switches_to_contour():
    # s = 3 has no closed form; contour value should be stable in node count
    coarse = laurent_C_auto(CS, 3, CTX_2I, ContourConfig(n_samples=128))
    fine = laurent_C_auto(CS, 3, CTX_2I, ContourConfig(n_samples=512))
    assert abs(coarse - fine) < 1e-10 * max(1.0, abs(fine))


def test_nth_derivative_order_zero_and_one():
    z0 = 0.31 + 0.22j
    v0 = f_nth_derivative(CS, 0, z0, CTX_2I)
    assert abs(v0 - f_ij(CS, z0, CTX_2I)) < 1e-12 * max(1.0, abs(v0))
    v1 = f_nth_derivative(CS, 1, z0, CTX_2I)
    ref = f_ij_derivative(CS, z0, CTX_2I)
    assert abs(v1 - ref) < 1e-10 * max(1.0, abs(ref))


def test_nth_derivative_guards():
    with pytest.raises(PoleProximity):
        f_nth_derivative(CS, 2, 1e-9, CTX_2I)
    with pytest.raises(RadiusTooLarge):
        f_nth_derivative(CS, 2, 0.3, CTX_2I, radius=0.5)
    with pytest.raises(ValueError):
        f_nth_derivative(CS, -1, 0.3, CTX_2I)


def test_tuple_indices_accepted():
    assert laurent_C((1, 0), 1, CTX_2I) == laurent_C(CS, 1, CTX_2I)
