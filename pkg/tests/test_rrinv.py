from fractions import Fraction

import pytest

from hkpell.rrinv import (HILB_K3, KUMMER, OddSquare, RiemannRochInput, betti2,
                          chi, chi_hilb, chi_kummer, fujiki_constant,
                          h0_polarized, moduli_dimension,
                          top_self_intersection)


def test_chi_golden():
    assert chi_hilb(2, 6) == 15
    assert chi_hilb(4, 2) == 15
    assert chi_hilb(2, 22) == 91
    assert chi_hilb(3, 4) == 20
    assert chi_hilb(2, 2) == 6
    with pytest.raises(OddSquare):
        chi(RiemannRochInput(HILB_K3, 2, 3))


def test_h0_polarized():
    assert h0_polarized(2, 1) == 6
    assert h0_polarized(3, 2) == 20
    assert h0_polarized(2, 3) == 15
    for m in range(2, 41):
        for n in range(1, 41):
            assert h0_polarized(m, n) == h0_polarized(n + 1, m - 1)
            assert h0_polarized(m, n) == chi_hilb(m, 2 * n)


def test_fujiki():
    assert fujiki_constant(HILB_K3, 2) == 3
    assert fujiki_constant(KUMMER, 2) == 9
    assert fujiki_constant(HILB_K3, 1) == 1
    assert fujiki_constant(HILB_K3, 3) == 15
    assert fujiki_constant(KUMMER, 3) == 60


def test_top_self_intersection():
    assert top_self_intersection(HILB_K3, 2, 6) == 108
    from math import factorial
    assert top_self_intersection(HILB_K3, 12, 2) == factorial(24) // factorial(12)
    assert top_self_intersection(KUMMER, 5, 0) == 0


def test_betti():
    assert betti2(HILB_K3) == 23
    assert betti2(KUMMER) == 7
    assert moduli_dimension(HILB_K3) == 20


def _lagrange_fit(points, x):
    """Exact Lagrange interpolation through integer points."""
    total = Fraction(0)
    for i, (xi, yi) in enumerate(points):
        term = Fraction(yi)
        for j, (xj, _) in enumerate(points):
            if i != j:
                term *= Fraction(x - xj, xi - xj)
        total += term
    return total


@pytest.mark.parametrize("series,builder", [(HILB_K3, chi_hilb), (KUMMER, chi_kummer)])
@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_polynomiality(series, builder, m):
    # chi is a degree-m polynomial in q/2: fit on m+1 points, predict others
    points = [(h, builder(m, 2 * h)) for h in range(m + 1)]
    for h in range(-6, 12):
        assert _lagrange_fit(points, h) == builder(m, 2 * h), (series, m, h)
