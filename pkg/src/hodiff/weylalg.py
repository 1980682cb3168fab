"""Exact group algebra of the weight lattice: orbit sums and the operator L.

An ExpPoly is a finite formal sum  sum_nu c_nu e^nu  with rational
coefficients, exponents being weights in a fixed realization.  The
hypergeometric operator acts on W-invariant elements through exact
polynomial division, so the result carries no truncation error at all.
"""

from __future__ import annotations

import math
from fractions import Fraction as Q

from .rootsys import Multiplicities, RootDatum, Vector, vadd, vsub, vneg


class InternalConsistencyError(RuntimeError):
    """An exact internal identity failed; indicates a bug, never bad input."""


class ExpPoly:
    """Immutable finite sum of exponentials with exact rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for nu, c in terms.items():
                if c != 0:
                    clean[nu] = c if isinstance(c, (Q, float)) else Q(c)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *args):
        raise AttributeError("ExpPoly is immutable")

    @classmethod
    def zero(cls) -> "ExpPoly":
        return cls({})

    @classmethod
    def constant(cls, c, dim: int) -> "ExpPoly":
        return cls({(Q(0),) * dim: Q(c)})

    @classmethod
    def monomial(cls, nu: Vector, c=Q(1)) -> "ExpPoly":
        return cls({nu: Q(c)})

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, nu: Vector) -> Q:
        return self.terms.get(nu, Q(0))

    def support(self):
        return sorted(self.terms)

    def value_at_zero(self) -> Q:
        """Evaluation at x = 0, i.e. the sum of all coefficients."""
        return sum(self.terms.values(), Q(0))

    def shift(self, nu: Vector) -> "ExpPoly":
        """Multiplication by e^nu."""
        return ExpPoly({vadd(mu, nu): c for mu, c in self.terms.items()})

    def map_exponents(self, f) -> "ExpPoly":
        out = {}
        for nu, c in self.terms.items():
            key = f(nu)
            out[key] = out.get(key, Q(0)) + c
        return ExpPoly(out)

    def __add__(self, other: "ExpPoly") -> "ExpPoly":
        out = dict(self.terms)
        for nu, c in other.terms.items():
            out[nu] = out.get(nu, Q(0)) + c
        return ExpPoly(out)

    def __sub__(self, other: "ExpPoly") -> "ExpPoly":
        out = dict(self.terms)
        for nu, c in other.terms.items():
            out[nu] = out.get(nu, Q(0)) - c
        return ExpPoly(out)

    def __neg__(self) -> "ExpPoly":
        return ExpPoly({nu: -c for nu, c in self.terms.items()})

    def scale(self, c) -> "ExpPoly":
        if c == 0:
            return ExpPoly.zero()
        return ExpPoly({nu: c * v for nu, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, ExpPoly):
            return self.scale(other)
        out = {}
        for nu, c in self.terms.items():
            for mu, d in other.terms.items():
                key = vadd(nu, mu)
                out[key] = out.get(key, Q(0)) + c * d
        return ExpPoly(out)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        return isinstance(other, ExpPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "ExpPoly(0)"
        bits = [f"{c}*e^{nu}" for nu, c in sorted(self.terms.items())[:4]]
        more = "" if len(self.terms) <= 4 else f" ... ({len(self.terms)} terms)"
        return "ExpPoly(" + " + ".join(bits) + more + ")"


def orbit_sum(datum: RootDatum, mu: Vector) -> ExpPoly:
    """m_mu: coefficient 1 on each element of the orbit W mu."""
    mu = datum.check_dominant(mu)
    return ExpPoly({nu: Q(1) for nu in datum.weyl_orbit(mu)})


def is_w_invariant(datum: RootDatum, p: ExpPoly) -> bool:
    for i in range(datum.rank):
        for nu, c in p.terms.items():
            if p.terms.get(datum.simple_reflect(i, nu)) != c:
                return False
    return True


def eigenvalue_E(datum: RootDatum, mults: Multiplicities, xi: Vector):
    """E(xi) = <xi,xi> - <rho_g,rho_g>."""
    rho = datum.rho(mults)
    return datum.inner(xi, xi) - datum.inner(rho, rho)


def _divide_by_one_minus_exp(datum: RootDatum, q: ExpPoly, alpha: Vector) -> ExpPoly:
    """Exact quotient q / (1 - e^{-alpha}); fatal if the division is inexact.

    Terms are bucketed into alpha-strings (same component orthogonal to
    alpha and same pairing parity), where the quotient coefficients are the
    top-down partial sums.  Each string must sum to zero, which is the
    telescoping divisibility criterion.
    """
    strings: dict[tuple, dict] = {}
    for nu, c in q.terms.items():
        k = datum.pairing(nu, alpha)
        if k.denominator != 1:
            raise InternalConsistencyError(f"non-integral pairing {k} in division")
        perp = tuple(a - (k / 2) * b for a, b in zip(nu, alpha))
        key = (perp, k.numerator % 2)
        strings.setdefault(key, {})[k] = (c, nu)
    out = {}
    for entries in strings.values():
        ks = sorted(entries, reverse=True)
        k_top, k_bot = ks[0], ks[-1]
        run = Q(0)
        k = k_top
        nu = entries[k_top][1]
        while k >= k_bot:
            if k in entries:
                run = run + entries[k][0]
            if k > k_bot and run != 0:
                out[nu] = run
            k -= 2
            nu = vsub(nu, alpha)
        if run != 0:
            raise InternalConsistencyError(
                f"division by 1 - e^-{alpha} left remainder {run}")
    return ExpPoly(out)


def apply_L(datum: RootDatum, mults: Multiplicities, p: ExpPoly) -> ExpPoly:
    """Exact action of the hypergeometric operator on a W-invariant element.

    L = Laplacian + sum_{alpha>0} g_alpha (1+e^{-alpha})/(1-e^{-alpha}) d_alpha.
    The rational factor acts by exact division: (1+e^{-alpha}) d_alpha p is
    divisible by (1-e^{-alpha}) because d_alpha p is antisymmetric under the
    reflection in alpha.
    """
    if not is_w_invariant(datum, p):
        raise ValueError("apply_L requires a W-invariant argument")
    out = {nu: datum.inner(nu, nu) * c for nu, c in p.terms.items()}
    for alpha in datum.positive_roots:
        g = mults.of(alpha)
        d = ExpPoly({nu: datum.inner(nu, alpha) * c for nu, c in p.terms.items()})
        if d.is_zero():
            continue
        q = d + d.shift(vneg(alpha))
        h = _divide_by_one_minus_exp(datum, q, alpha)
        for nu, c in h.terms.items():
            out[nu] = out.get(nu, Q(0)) + g * c
    return ExpPoly(out)


def expansion_E_omega(datum: RootDatum, omega: Vector) -> ExpPoly:
    """The symmetric spectral-side expansion attached to a small weight.

    E_omega = sum over dominant mu <= omega of |W_mu(omega)| m_mu, the
    coefficient being the orbit size of omega under the stabilizer of mu.
    """
    omega = datum.check_dominant(omega)
    if not datum.is_small(omega):
        raise ValueError(f"{omega} is not small (some pairing exceeds 2)")
    acc = ExpPoly.zero()
    for mu in datum.dominant_below(omega):
        orbit_size = len(datum.stabilizer_orbit(mu, omega))
        acc = acc + orbit_sum(datum, mu).scale(Q(orbit_size))
    return acc


def eval_at(datum: RootDatum, p: ExpPoly, x) -> float:
    """Floating-point evaluation at the point x of the realization space."""
    xf = [float(v) for v in x]
    total = 0.0
    for nu, c in p.terms.items():
        if datum.gram is None:
            expo = sum(float(a) * b for a, b in zip(nu, xf))
        else:
            expo = sum(float(nu[i]) * float(datum.gram[i][j]) * xf[j]
                       for i in range(datum.dim) for j in range(datum.dim))
        total += float(c) * math.exp(expo)
    return total


def _q_str(c: Q) -> str:
    return f"{c.numerator}/{c.denominator}"


def exp_to_json(p: ExpPoly):
    """Canonical serialization: sorted list of weight/coefficient records."""
    return [{"weight": [_q_str(x) for x in nu], "coeff": _q_str(c)}
            for nu, c in sorted(p.terms.items())]


def exp_from_json(items) -> ExpPoly:
    return ExpPoly({tuple(Q(w) for w in item["weight"]): Q(item["coeff"])
                    for item in items})
