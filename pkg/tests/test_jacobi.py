import random
from fractions import Fraction as Q

import pytest

from hodiff.diffeq import sample_multiplicities
from hodiff.jacobi import (jacobi_polynomial, opdam_leading_coefficient,
                           verify_eigen)
from hodiff.rootsys import Multiplicities, vadd, vscale
from hodiff.weylalg import ExpPoly, is_w_invariant

G_SAMPLES = (Q(3, 7), Q(5, 11), Q(9, 4))


def test_constant_polynomial(a2):
    g = Multiplicities.constant(a2, Q(3, 7))
    zero = (Q(0),) * a2.dim
    poly = jacobi_polynomial(a2, g, zero)
    assert poly.exp_poly() == ExpPoly.constant(1, a2.dim)
    assert opdam_leading_coefficient(a2, g, zero) == 1


def test_rank_one_fundamental_coefficient(a1):
    # the leading coefficient 1/2 is independent of the multiplicity
    w = a1.fundamental_weights[0]
    for g_val in G_SAMPLES:
        g = Multiplicities.constant(a1, g_val)
        poly = jacobi_polynomial(a1, g, w)
        assert poly.leading_coefficient() == Q(1, 2)
        assert opdam_leading_coefficient(a1, g, w) == Q(1, 2)


def test_rank_one_doubled_weight_closed_form(a1):
    # frozen closed form (g+1)/(4g+2) for the doubled fundamental weight,
    # derived by one step of the recursion by hand
    w = a1.fundamental_weights[0]
    lam = vscale(2, w)
    for g_val in G_SAMPLES:
        g = Multiplicities.constant(a1, g_val)
        poly = jacobi_polynomial(a1, g, lam)
        assert poly.leading_coefficient() == (g_val + 1) / (4 * g_val + 2)
        assert opdam_leading_coefficient(a1, g, lam) == \
            (g_val + 1) / (4 * g_val + 2)


def test_a2_fundamental_coefficient(a2):
    g = Multiplicities.constant(a2, Q(3, 7))
    poly = jacobi_polynomial(a2, g, a2.fundamental_weights[0])
    assert poly.leading_coefficient() == Q(1, 3)


def test_unit_normalization_and_invariance(b2):
    g = Multiplicities(b2, [Q(5, 11), Q(9, 4)])
    lam = b2.weight_from_fundamental([1, 1])
    poly = jacobi_polynomial(b2, g, lam)
    total = sum(c * len(b2.weyl_orbit(mu)) for mu, c in poly.coeffs.items())
    assert total == 1
    assert poly.exp_poly().value_at_zero() == 1
    assert is_w_invariant(b2, poly.exp_poly())
    # triangular support
    for mu in poly.coeffs:
        assert b2.dominance_leq(mu, lam)


def test_eigencheck_exact(a2, b2):
    g = Multiplicities.constant(a2, Q(3, 7))
    lam = vadd(*a2.fundamental_weights)
    report = verify_eigen(a2, g, lam)
    assert report.ok and report.residual == []
    gb = Multiplicities(b2, [Q(5, 11), Q(9, 4)])
    lam = vscale(2, b2.fundamental_weights[0])
    assert verify_eigen(b2, gb, lam).ok


def test_leading_coefficient_two_routes_agree():
    # recursion-normalized leading coefficient versus the closed product,
    # across systems, weights and multiplicity samples
    from hodiff.rootsys import build_root_system
    rng = random.Random(99)
    for fam, rank in [("A", 2), ("B", 2), ("C", 3), ("G", 2), ("BC", 1), ("BC", 2)]:
        datum = build_root_system(fam, rank)
        if fam == "BC":
            lams = [tuple(Q(x) for x in (2,) + (1,) * (rank - 1)),
                    tuple(Q(x) for x in (3,) + (0,) * (rank - 1))]
        else:
            lams = [datum.weight_from_fundamental([1] * rank),
                    datum.weight_from_fundamental([2] + [0] * (rank - 1))]
        for _ in range(2):
            mults = sample_multiplicities(datum, rng)
            for lam in lams:
                poly = jacobi_polynomial(datum, mults, lam)
                assert poly.leading_coefficient() == \
                    opdam_leading_coefficient(datum, mults, lam), (fam, rank, lam)


def test_bc1_opdam_halving_convention(bc1):
    # the doubled root contributes the halved multiplicity of its half
    g1, g2v = Q(5, 11), Q(9, 4)
    mults = Multiplicities.by_representative(
        bc1, {(Q(1),): g1, (Q(2),): g2v})
    lam = (Q(1),)
    lead = opdam_leading_coefficient(bc1, mults, lam)
    rho = g1 / 2 + g2v
    # hand expansion: pairing 2 for e_1, pairing 1 for 2e_1
    expect = Q(1)
    for j in range(2):
        expect *= (2 * rho + j) / (2 * rho + g1 + j)
    expect *= (rho + g1 / 2) / (rho + g1 / 2 + g2v)
    assert lead == expect
    assert jacobi_polynomial(bc1, mults, lam).leading_coefficient() == lead


def test_rejects_non_dominant(a2):
    g = Multiplicities.constant(a2, Q(3, 7))
    from hodiff.rootsys import vneg
    with pytest.raises(ValueError):
        jacobi_polynomial(a2, g, vneg(a2.fundamental_weights[0]))
