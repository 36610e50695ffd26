from luecorr import hahn

N, M = hahn.N, hahn.M


def test_low_coefficients():
    assert hahn.A(0) == N
    assert hahn.A(1) == M * N
    assert hahn.B(1) == N + M - 1


def test_three_routes_agree():
    for kind, direct in (("A", hahn.coeff_A_sum), ("B", hahn.coeff_B_sum)):
        rec = hahn.coeff_recursion(kind, 8)
        for ell in range(9):
            assert direct(ell) == rec[ell] == hahn.coeff_integer_form(kind, ell)


def test_a_from_b_difference():
    for ell in range(7):
        b = hahn.B(ell)
        assert hahn.A(ell) * (ell * (ell + 1)) == N * M * (b.subs("N", N + 1).subs("M", M + 1) - b)


def test_scaled_families_are_odd():
    scaled = hahn.scaled_DEF(6)
    for fam in (scaled.D, scaled.E, scaled.F):
        assert all(hahn.is_odd_laurent(p) for p in fam)
