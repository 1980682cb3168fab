"""Spectral difference-equation coefficients and their exact Pieri check.

At the discrete spectral points rho_g + lambda the difference equation for
a small weight omega collapses to a Pieri identity between products and
shifted Jacobi polynomials; that identity is verified here in exact rational
arithmetic.  Poles of the coefficient products are surfaced as explicit
errors so that callers can resample multiplicities.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction as Q
from functools import lru_cache

from .jacobi import JacobiPolynomial, jacobi_polynomial
from .rootsys import Multiplicities, RootDatum, Vector, vadd
from .weylalg import (ExpPoly, InternalConsistencyError, exp_to_json,
                      expansion_E_omega, orbit_sum)

# test hooks for the negative controls; never set in normal operation
PERTURB_U_SIGN = "u-sign"
PERTURB_V_DROP = "v-drop-pairing2"
PERTURBATIONS = (PERTURB_U_SIGN, PERTURB_V_DROP)


class PoleAtSpectralPoint(ArithmeticError):
    """A coefficient denominator vanished at the requested spectral point."""

    def __init__(self, alpha, which):
        self.alpha = alpha
        self.which = which
        super().__init__(f"denominator {which} vanishes at root {alpha}")


def coeff_V(datum: RootDatum, mults: Multiplicities, nu: Vector, xi,
            perturb: str | None = None):
    """Product of (z+g)/z over roots with positive pairing against nu,
    times (1+z+g)/(1+z) over roots pairing exactly 2, with z = <xi,a^vee>."""
    total = Q(1)
    for alpha in datum.roots:
        k = datum.pairing(nu, alpha)
        if k <= 0:
            continue
        z = datum.pairing(xi, alpha)
        g = mults.of(alpha)
        if z == 0:
            raise PoleAtSpectralPoint(alpha, "<xi,a^vee>")
        total *= (z + g) / z
        if k == 2 and perturb != PERTURB_V_DROP:
            if 1 + z == 0:
                raise PoleAtSpectralPoint(alpha, "1+<xi,a^vee>")
            total *= (1 + z + g) / (1 + z)
    return total


def coeff_U(datum: RootDatum, mults: Multiplicities, nu: Vector, eta: Vector, xi,
            perturb: str | None = None):
    """Like coeff_V but over the stabilizer subsystem of nu, with the sign of
    g flipped in the pairing-2 factor."""
    total = Q(1)
    for alpha in datum.stabilizer_roots(nu):
        k = datum.pairing(eta, alpha)
        if k <= 0:
            continue
        z = datum.pairing(xi, alpha)
        g = mults.of(alpha)
        if z == 0:
            raise PoleAtSpectralPoint(alpha, "<xi,a^vee>")
        total *= (z + g) / z
        if k == 2:
            if 1 + z == 0:
                raise PoleAtSpectralPoint(alpha, "1+<xi,a^vee>")
            sign = 1 if perturb == PERTURB_U_SIGN else -1
            total *= (1 + z + sign * g) / (1 + z)
    return total


@dataclass(frozen=True)
class PieriTermIndex:
    """One nu with its shortest dominating word and stabilizer orbit of eta."""
    nu: Vector
    word: tuple
    nu_plus: Vector
    etas: tuple


@lru_cache(maxsize=None)
def pieri_index(datum: RootDatum, omega: Vector) -> tuple[PieriTermIndex, ...]:
    """Index set of the difference equation: nu in P(omega) with the orbit
    W_nu(w_nu^{-1} omega) attached to each."""
    omega = datum.check_dominant(omega)
    if not datum.is_small(omega):
        raise ValueError(f"{omega} is not small")
    entries = []
    for nu in datum.saturated_set(omega):
        nu_plus, word = datum.dominant_representative(nu)
        pulled = datum.apply_word(datum.inverse_word(word), omega)
        etas = datum.stabilizer_orbit(nu, pulled)
        entries.append(PieriTermIndex(nu=nu, word=word, nu_plus=nu_plus, etas=etas))
    return tuple(entries)


def pieri_terms(datum: RootDatum, mults: Multiplicities, omega: Vector,
                lam: Vector, perturb: str | None = None):
    """Surviving (nu, eta, U*V) triples at the spectral point rho_g + lambda.

    Terms whose shift leaves the dominant cone must carry an exactly
    vanishing V factor; that vanishing is asserted, and a pole anywhere in
    the term list raises for a multiplicity resample.
    """
    lam = datum.check_dominant(lam)
    xi = vadd(datum.rho(mults), lam)
    out = []
    for entry in pieri_index(datum, omega):
        v = coeff_V(datum, mults, entry.nu, xi, perturb=perturb)
        us = [coeff_U(datum, mults, entry.nu, eta, xi, perturb=perturb)
              for eta in entry.etas]
        if datum.is_dominant(vadd(lam, entry.nu)):
            out.extend((entry.nu, eta, u * v) for eta, u in zip(entry.etas, us))
        elif v != 0 and perturb is None:
            raise InternalConsistencyError(
                f"V did not vanish at the excluded shift nu={entry.nu}, "
                f"lambda={lam}: V={v}")
    return out


@dataclass
class PieriReport:
    system: str
    omega: Vector
    lam: Vector
    g: tuple
    ok: bool
    n_terms: int
    residual: list = field(default_factory=list)
    elapsed: float = 0.0

    def to_dict(self):
        from .weylalg import _q_str
        return {
            "system": self.system,
            "omega": [_q_str(x) for x in self.omega],
            "lambda": [_q_str(x) for x in self.lam],
            "g": [str(v) for v in self.g],
            "status": "pass" if self.ok else "fail",
            "n_terms": self.n_terms,
            "residual": self.residual,
        }


def poly_cache_get(cache, datum, mults, lam) -> JacobiPolynomial:
    if cache is None:
        return jacobi_polynomial(datum, mults, lam)
    key = (mults.key(), lam)
    poly = cache.get(key)
    if poly is None:
        poly = cache[key] = jacobi_polynomial(datum, mults, lam)
    return poly


def verify_pieri(datum: RootDatum, mults: Multiplicities, omega: Vector,
                 lam: Vector, perturb: str | None = None,
                 cache: dict | None = None) -> PieriReport:
    """Exact comparison of E_omega * P_lambda with the coefficient sum of
    shifted polynomials; the residual is empty exactly on success."""
    t0 = time.perf_counter()
    terms = pieri_terms(datum, mults, omega, lam, perturb=perturb)
    lhs = expansion_E_omega(datum, omega) * poly_cache_get(cache, datum, mults, lam).exp_poly()
    rhs = ExpPoly.zero()
    for nu, _eta, c in terms:
        rhs = rhs + poly_cache_get(cache, datum, mults, vadd(lam, nu)).exp_poly().scale(c)
    residual = lhs - rhs
    return PieriReport(
        system=f"{datum.family}{datum.rank}",
        omega=omega, lam=lam, g=mults.key(),
        ok=residual.is_zero(),
        n_terms=len(terms),
        residual=exp_to_json(residual),
        elapsed=time.perf_counter() - t0,
    )


def quasi_identity_value(datum: RootDatum, mults: Multiplicities,
                         omega: Vector, xi):
    """(1/2) sum over the orbit of (V_nu + U_{0,nu}) at a pole-free point;
    equals the orbit size for a quasi-minuscule omega."""
    if not datum.is_quasi_minuscule(omega):
        raise ValueError(f"{omega} is not quasi-minuscule")
    zero = (Q(0),) * datum.dim
    total = Q(0)
    for nu in datum.weyl_orbit(omega):
        total += coeff_V(datum, mults, nu, xi)
        total += coeff_U(datum, mults, zero, nu, xi)
    return total / 2


@dataclass
class ConsistencyReport:
    system: str
    omega: Vector
    kind: str
    ok: bool
    checks: list = field(default_factory=list)

    def to_dict(self):
        from .weylalg import _q_str
        return {"system": self.system, "omega": [_q_str(x) for x in self.omega],
                "kind": self.kind, "status": "pass" if self.ok else "fail",
                "checks": self.checks}


def specialization_consistency(datum: RootDatum, mults: Multiplicities,
                               omega: Vector, xi) -> ConsistencyReport:
    """Check that the general term list collapses to the minuscule or
    quasi-minuscule special forms at a rational spectral point."""
    checks = []

    def record(name, ok):
        checks.append({"check": name, "ok": bool(ok)})

    entries = pieri_index(datum, omega)
    zero = (Q(0),) * datum.dim
    if datum.is_minuscule(omega):
        kind = "minuscule"
        orbit = set(datum.weyl_orbit(omega))
        record("index set is the full orbit", {e.nu for e in entries} == orbit)
        record("single eta per term", all(e.etas == (e.nu,) for e in entries))
        record("all U factors equal 1",
               all(coeff_U(datum, mults, e.nu, e.nu, xi) == 1 for e in entries))
        record("E_omega equals the plain orbit sum",
               expansion_E_omega(datum, omega) == orbit_sum(datum, omega))
    elif datum.is_quasi_minuscule(omega):
        kind = "quasi-minuscule"
        orbit = set(datum.weyl_orbit(omega))
        record("index set is orbit plus origin",
               {e.nu for e in entries} == orbit | {zero})
        record("orbit terms have trivial eta and unit U",
               all(e.etas == (e.nu,) and coeff_U(datum, mults, e.nu, e.nu, xi) == 1
                   for e in entries if e.nu != zero))
        m0 = Q(len(orbit))
        record("E_omega equals orbit sum plus its value at zero",
               expansion_E_omega(datum, omega)
               == orbit_sum(datum, omega) + ExpPoly.constant(m0, datum.dim))
        record("half-sum identity equals the orbit size",
               quasi_identity_value(datum, mults, omega, xi) == m0)
    else:
        raise ValueError(f"{omega} is neither minuscule nor quasi-minuscule")
    return ConsistencyReport(
        system=f"{datum.family}{datum.rank}", omega=omega, kind=kind,
        ok=all(c["ok"] for c in checks), checks=checks)


def sample_multiplicities(datum: RootDatum, rng) -> Multiplicities:
    """One deterministic positive rational value per root orbit."""
    values = []
    for _ in datum.root_orbits:
        values.append(Q(rng.randint(1, 12), rng.randint(2, 13)))
    return Multiplicities(datum, values)


def sample_spectral_point(datum: RootDatum, rng, max_tries: int = 200):
    """Rational xi with every <xi,a^vee> away from 0 and -1 (pole-free)."""
    for _ in range(max_tries):
        xi = (Q(0),) * datum.dim
        for w in datum.fundamental_weights:
            c = Q(rng.randint(-24, 24), rng.randint(2, 9))
            xi = vadd(xi, tuple(c * x for x in w))
        if all(datum.pairing(xi, a) not in (0, -1) for a in datum.roots):
            return xi
    raise RuntimeError("could not sample a pole-free spectral point")


def symbolic_factors(datum: RootDatum, entry: PieriTermIndex):
    """Structural factor lists of one term, as affine forms in <xi,a^vee>.

    Each factor is (numerator, denominator) with numerator carrying a g
    contribution of the recorded sign; used for report emission only.
    """
    def affine(alpha, shift, g_sign):
        from .weylalg import _q_str
        return {"alpha": [_q_str(x) for x in alpha], "shift": shift,
                "g_sign": g_sign}

    v_factors = []
    for alpha in datum.roots:
        k = datum.pairing(entry.nu, alpha)
        if k <= 0:
            continue
        v_factors.append(affine(alpha, 0, 1))
        if k == 2:
            v_factors.append(affine(alpha, 1, 1))
    per_eta = []
    stab = datum.stabilizer_roots(entry.nu)
    for eta in entry.etas:
        u_factors = []
        for alpha in stab:
            k = datum.pairing(eta, alpha)
            if k <= 0:
                continue
            u_factors.append(affine(alpha, 0, 1))
            if k == 2:
                u_factors.append(affine(alpha, 1, -1))
        per_eta.append(u_factors)
    return v_factors, per_eta
