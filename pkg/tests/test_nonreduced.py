import itertools
import random
from fractions import Fraction as Q

import pytest

from hodiff.nonreduced import (SignedSubset, bc_multiplicities, coeff_U_Kp,
                               coeff_V_signed, expansion_E_ell, is_partition,
                               rank_one_shift_coefficient, rearrangement_gap,
                               signed_subsets, verify_pieri_bc)
from hodiff.diffeq import PoleAtSpectralPoint
from hodiff.weylalg import ExpPoly

GS = (Q(3, 7), Q(5, 11), Q(9, 4))


def test_signed_subset_validation():
    with pytest.raises(ValueError):
        SignedSubset((0, 1), (1,))
    with pytest.raises(ValueError):
        SignedSubset((1, 0), (1, 1))
    with pytest.raises(ValueError):
        SignedSubset((0,), (2,))
    sub = SignedSubset((0, 2), (1, -1))
    assert sub.shift_vector(3) == (Q(1), Q(0), Q(-1))
    assert len(list(signed_subsets((0, 1)))) == 4


def test_empty_subset_gives_unit():
    xi = (Q(7, 5), Q(2, 9))
    assert coeff_V_signed(2, GS, SignedSubset((), ()), xi) == 1


def test_rank_one_v_matches_scalar_shift_coefficients():
    # same rational function as the scalar identity coefficients, hence
    # (after the factor-of-four regrouping) the recurrence coefficients
    from hodiff.rankone import shift_coefficients
    g1, g2 = GS[1], GS[2]
    for l in range(4):
        xi_l = g1 / 2 + g2 + l
        up, dn = shift_coefficients(g1, g2, xi_l)
        assert coeff_V_signed(1, GS, SignedSubset((0,), (1,)), (xi_l,)) == up
        assert coeff_V_signed(1, GS, SignedSubset((0,), (-1,)), (xi_l,)) == dn


def test_singleton_coefficient_matches_displayed_form():
    # frozen displayed form for one positive slot at rank one and two
    g, g1, g2 = GS
    x1 = Q(7, 5)
    v = coeff_V_signed(1, GS, SignedSubset((0,), (1,)), (x1,))
    assert v == (x1 + g1 / 2 + g2) * (1 + 2 * x1 + g1) / (x1 * (1 + 2 * x1))
    x = (Q(7, 5), Q(2, 9))
    v = coeff_V_signed(2, GS, SignedSubset((0,), (1,)), x)
    expected = (x[0] + g1 / 2 + g2) * (1 + 2 * x[0] + g1) \
        / (x[0] * (1 + 2 * x[0])) \
        * (x[0] + x[1] + g) / (x[0] + x[1]) \
        * (x[0] - x[1] + g) / (x[0] - x[1])
    assert v == expected
    assert v == rank_one_shift_coefficient(2, GS, 0, x)


def test_pair_factor_signs():
    # inside-J pair factors carry +g in both numerators for V
    x = (Q(7, 5), Q(2, 9))
    g, g1, g2 = GS
    v = coeff_V_signed(2, GS, SignedSubset((0, 1), (1, 1)), x)
    s = x[0] + x[1]
    singles = (x[0] + g1 / 2 + g2) * (1 + 2 * x[0] + g1) / (x[0] * (1 + 2 * x[0])) \
        * (x[1] + g1 / 2 + g2) * (1 + 2 * x[1] + g1) / (x[1] * (1 + 2 * x[1]))
    assert v == singles * (s + g) / s * (1 + s + g) / (1 + s)


def test_u_trivial_and_expansion():
    x = (Q(7, 5), Q(2, 9))
    assert coeff_U_Kp(2, GS, (0, 1), 0, x) == 1
    assert coeff_U_Kp(2, GS, (), 0, x) == 1
    # rank-one single-flip sum with explicit signs
    _, g1, g2 = GS
    x1 = (Q(7, 5),)
    got = coeff_U_Kp(1, GS, (0,), 1, x1)
    plus = (x1[0] + g1 / 2 + g2) * (1 + 2 * x1[0] + g1) / (x1[0] * (1 + 2 * x1[0]))
    minus = (-x1[0] + g1 / 2 + g2) * (1 - 2 * x1[0] + g1) / (-x1[0] * (1 - 2 * x1[0]))
    assert got == -(plus + minus)
    with pytest.raises(ValueError):
        coeff_U_Kp(2, GS, (0,), 2, x)


def test_u_minus_g_in_last_factor():
    # the inside-I pair factor flips the sign of g relative to V
    x = (Q(7, 5), Q(2, 9))
    g, g1, g2 = GS
    u = coeff_U_Kp(2, GS, (0, 1), 2, x)
    total = Q(0)
    for s0, s1 in itertools.product((1, -1), repeat=2):
        term = Q(1)
        for s, xv in ((s0, x[0]), (s1, x[1])):
            term *= (s * xv + g1 / 2 + g2) * (1 + 2 * s * xv + g1) \
                / (s * xv * (1 + 2 * s * xv))
        pair = s0 * x[0] + s1 * x[1]
        term *= (pair + g) / pair * (1 + pair - g) / (1 + pair)
        total += term
    assert u == total  # (-1)^2 = +1


def test_expansion_e_ell(bc1, bc2):
    e1 = expansion_E_ell(1, 1)
    assert e1 == ExpPoly({(Q(1),): Q(1), (Q(0),): Q(-2), (Q(-1),): Q(1)})
    e22 = expansion_E_ell(2, 2)
    assert len(e22.terms) == 9
    assert e22.coeff((Q(0), Q(0))) == 4
    assert expansion_E_ell(3, 1).coeff((Q(0),) * 3) == -6
    with pytest.raises(ValueError):
        expansion_E_ell(2, 3)


def test_expansion_hyperoctahedral_invariance():
    e = expansion_E_ell(3, 2)
    # invariance under coordinate permutations and sign flips
    perm = e.map_exponents(lambda nu: (nu[2], nu[0], nu[1]))
    flip = e.map_exponents(lambda nu: (-nu[0], nu[1], -nu[2]))
    assert perm == e and flip == e


def test_pieri_term_multiset_invariance():
    # the multiset of V values over all signed singletons is stable under
    # permuting and sign-flipping the spectral coordinates
    xi = (Q(7, 5), Q(2, 9))
    vals = sorted(coeff_V_signed(2, GS, sub, xi)
                  for J in [(0,), (1,)] for sub in signed_subsets(J))
    xi_perm = (xi[1], xi[0])
    vals_perm = sorted(coeff_V_signed(2, GS, sub, xi_perm)
                       for J in [(0,), (1,)] for sub in signed_subsets(J))
    xi_flip = (-xi[0], xi[1])
    vals_flip = sorted(coeff_V_signed(2, GS, sub, xi_flip)
                       for J in [(0,), (1,)] for sub in signed_subsets(J))
    assert vals == vals_perm == vals_flip


def test_rearrangement_identity_at_rational_points():
    rng = random.Random("j1")
    for _ in range(5):
        xi = (Q(rng.randint(1, 40), 7), Q(rng.randint(41, 80), 9))
        assert rearrangement_gap(2, GS, xi) == 0
    assert rearrangement_gap(1, GS, (Q(7, 5),)) == 0


def test_pole_detection():
    with pytest.raises(PoleAtSpectralPoint):
        coeff_V_signed(2, GS, SignedSubset((0,), (1,)), (Q(2, 9), Q(2, 9)))


def test_partition_check():
    assert is_partition((Q(3), Q(1), Q(0)))
    assert not is_partition((Q(1), Q(2)))
    assert not is_partition((Q(1), Q(-1)))
    assert not is_partition((Q(3, 2), Q(0)))
    with pytest.raises(ValueError):
        verify_pieri_bc(2, GS, 1, (0, 1))


def test_pieri_bc_rank_one_seed(bc1):
    # lam = 0 reduces to the seed identity of the scalar three-term recurrence
    rep = verify_pieri_bc(1, GS, 1, (0,), datum=bc1)
    assert rep.ok and rep.n_terms == 2
    # the diagonal coefficient is forced: U_{full,1} = -(V_+ + V_-), and the
    # reflected shift dies at the base point
    g1, g2 = GS[1], GS[2]
    rho1 = g1 / 2 + g2
    xi = (rho1,)
    assert coeff_V_signed(1, GS, SignedSubset((0,), (-1,)), xi) == 0


def test_pieri_bc_spec_case(bc2):
    rep = verify_pieri_bc(2, GS, 1, (1, 0), datum=bc2)
    assert rep.ok
    rep = verify_pieri_bc(2, GS, 2, (0, 0), datum=bc2)
    assert rep.ok


def test_pieri_bc_sweep(bc1, bc2):
    cache = {}
    for lam in [(0,), (1,), (2,), (3,)]:
        assert verify_pieri_bc(1, GS, 1, lam, cache=cache, datum=bc1).ok
    cache = {}
    for ell in (1, 2):
        for lam in [(a, b) for a in range(3) for b in range(a + 1)]:
            assert verify_pieri_bc(2, GS, ell, lam, cache=cache, datum=bc2).ok


def test_bc_multiplicities_by_length(bc2):
    m = bc_multiplicities(bc2, *GS)
    assert m.of((Q(1), Q(1))) == GS[0]   # squared length 2
    assert m.of((Q(0), Q(1))) == GS[1]   # squared length 1
    assert m.of((Q(2), Q(0))) == GS[2]   # squared length 4
