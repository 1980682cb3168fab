"""Jacobi polynomials attached to a root system, built by linear recursion.

The coefficients are produced by collecting exponents in the eigenvalue
equation for the operator L, using the expansion
(1+e^{-a})/(1-e^{-a}) = 1 + 2 sum_{j>=1} e^{-ja}.  Two independent checks
guard the construction: the closed-form leading coefficient, and the exact
eigencheck through the division-based operator action.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction as Q

from .rootsys import Multiplicities, RootDatum, Vector, vadd, vscale
from .weylalg import ExpPoly, apply_L, eigenvalue_E, exp_to_json, orbit_sum


class JacobiPolynomial:
    """Triangular expansion of P_lambda in orbit sums, normalized P(0) = 1."""

    def __init__(self, datum: RootDatum, mults: Multiplicities, lam: Vector,
                 coeffs: dict, monic_coeffs: dict):
        self.datum = datum
        self.mults = mults
        self.lam = lam
        self.coeffs = coeffs              # dominant mu <= lam -> coefficient
        self.monic_coeffs = monic_coeffs  # same, with c_lambda = 1
        self.normalization = "unit_at_zero"
        self._expansion = None

    def coefficient(self, mu: Vector) -> Q:
        return self.coeffs.get(mu, Q(0))

    def leading_coefficient(self) -> Q:
        return self.coeffs[self.lam]

    def exp_poly(self) -> ExpPoly:
        """The polynomial as an explicit sum over its saturated support."""
        if self._expansion is None:
            acc = ExpPoly.zero()
            for mu, c in self.coeffs.items():
                acc = acc + orbit_sum(self.datum, mu).scale(c)
            self._expansion = acc
        return self._expansion

    def to_json(self):
        from .weylalg import _q_str
        return {
            "lambda": [_q_str(x) for x in self.lam],
            "g": [_q_str(Q(v)) for v in self.mults.values],
            "coeffs": [{"mu": [_q_str(x) for x in mu], "c": _q_str(c)}
                       for mu, c in sorted(self.coeffs.items())],
        }


def jacobi_polynomial(datum: RootDatum, mults: Multiplicities,
                      lam: Vector) -> JacobiPolynomial:
    """Solve the triangular recursion for the coefficients of P_lambda.

    With c_lambda = 1 and the W-invariant extension c~ of c to the whole
    saturated set, the coefficient at a dominant mu < lambda satisfies

        (E(rho+lam) - E(rho+mu)) c_mu
            = 2 sum_{alpha>0} g_alpha sum_{j>=1} <mu + j alpha, alpha> c~_{mu+j alpha}.

    The denominator is strictly positive for positive multiplicities, and the
    j-sum is finite because c~ vanishes outside the saturated set.
    """
    lam = datum.check_dominant(lam)
    sat = datum.saturated_map(lam)
    doms = sorted(datum.dominant_below(lam),
                  key=lambda mu: (-datum.height(mu), mu))
    assert doms[0] == lam or datum.height(doms[0]) == datum.height(lam)
    rho = datum.rho(mults)
    e_top = eigenvalue_E(datum, mults, vadd(rho, lam))

    monic: dict[Vector, Q] = {}
    for mu in doms:
        if mu == lam:
            monic[mu] = Q(1)
            continue
        rhs = Q(0)
        for alpha in datum.positive_roots:
            g = mults.of(alpha)
            j = 1
            while True:
                nu = vadd(mu, vscale(j, alpha))
                rep = sat.get(nu)
                if rep is None:
                    break
                c = monic.get(rep)
                if c:
                    rhs += 2 * g * datum.inner(nu, alpha) * c
                j += 1
        denom = e_top - eigenvalue_E(datum, mults, vadd(rho, mu))
        if denom == 0:
            raise ArithmeticError(
                f"vanishing recursion denominator at mu={mu}; "
                "impossible for positive multiplicities")
        monic[mu] = rhs / denom

    orbit_sizes = {mu: sum(1 for rep in sat.values() if rep == mu) for mu in doms}
    z = sum(c * orbit_sizes[mu] for mu, c in monic.items())
    if z == 0:
        raise ArithmeticError("vanishing value at the origin; cannot normalize")
    coeffs = {mu: c / z for mu, c in monic.items()}
    return JacobiPolynomial(datum, mults, lam, coeffs, monic)


def opdam_leading_coefficient(datum: RootDatum, mults: Multiplicities,
                              lam: Vector) -> Q:
    """Closed double product for the leading coefficient of P_lambda.

    Over each positive root alpha and 0 <= j < <lam, alpha^vee>, the factor is
    (<rho_g,a^vee> + g_{a/2}/2 + j) / (<rho_g,a^vee> + g_a + g_{a/2}/2 + j),
    with g_{a/2} = 0 when a/2 is not a root.  Empty product for lam = 0.
    """
    lam = datum.check_dominant(lam)
    rho = datum.rho(mults)
    total = Q(1)
    root_set = set(datum.roots)
    for alpha in datum.positive_roots:
        top = datum.pairing(lam, alpha)
        if top <= 0:
            continue
        half = vscale(Q(1, 2), alpha)
        g_half = mults.of(half) if half in root_set else Q(0)
        base = datum.pairing(rho, alpha) + Q(1, 2) * g_half
        g = mults.of(alpha)
        for j in range(int(top)):
            den = base + g + j
            if den == 0:
                raise ArithmeticError("vanishing factor in the leading product")
            total *= (base + j) / den
    return total


@dataclass
class EigenReport:
    """Outcome of the exact eigencheck L P = E(rho+lam) P."""
    system: str
    lam: Vector
    g: tuple
    eigenvalue: Q
    ok: bool
    residual: list = field(default_factory=list)

    def to_dict(self):
        from .weylalg import _q_str
        return {
            "system": self.system,
            "lambda": [_q_str(x) for x in self.lam],
            "g": [str(v) for v in self.g],
            "eigenvalue": str(self.eigenvalue),
            "status": "pass" if self.ok else "fail",
            "residual": self.residual,
        }


def verify_eigen(datum: RootDatum, mults: Multiplicities, lam: Vector,
                 poly: JacobiPolynomial | None = None) -> EigenReport:
    """Assert L P_lambda equals E(rho+lam) P_lambda with zero residual."""
    poly = poly or jacobi_polynomial(datum, mults, lam)
    p = poly.exp_poly()
    rho = datum.rho(mults)
    ev = eigenvalue_E(datum, mults, vadd(rho, lam))
    residual = apply_L(datum, mults, p) - p.scale(ev)
    return EigenReport(
        system=f"{datum.family}{datum.rank}",
        lam=lam,
        g=mults.key(),
        eigenvalue=ev,
        ok=residual.is_zero(),
        residual=exp_to_json(residual),
    )
