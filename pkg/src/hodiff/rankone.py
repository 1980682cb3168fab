"""Rank-one numerics: Gauss series evaluation and the scalar recurrences.

The spectral-shift identity in rank one involves the Gauss hypergeometric
function at argument -sinh^2(x/2) <= 0, which leaves the unit disk for
moderate x.  Evaluation therefore goes through the Pfaff transformation,
whose argument z/(z-1) always lies in [0,1); the plain series is kept as a
cross-check on its own domain, and a slow extended-precision summation pins
spot values independently of both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction as Q

import mpmath

SERIES_TOL = 1e-15
SERIES_MAX_TERMS = 100_000
AGREEMENT_TOL = 1e-11
X_MAX = 8.0   # keeps the transformed-series argument far enough from 1


class HypergeometricError(ArithmeticError):
    pass


@dataclass(frozen=True)
class HypergeometricParams:
    """Parameter bundle for the rank-one spectral family."""
    g1: float
    g2: float
    xi: float
    x: float

    def __post_init__(self):
        c = 0.5 + self.g1 + self.g2
        if c <= 0 and abs(c - round(c)) < 1e-12:
            raise ValueError("series denominator parameter is a nonpositive integer")
        if abs(self.x) > X_MAX:
            raise ValueError(f"|x| > {X_MAX} exceeds the configured domain")

    @property
    def abc(self):
        a = -self.xi + self.g1 / 2 + self.g2
        b = self.xi + self.g1 / 2 + self.g2
        c = 0.5 + self.g1 + self.g2
        return a, b, c


def series_2f1(a, b, c, z, tol=SERIES_TOL, max_terms=SERIES_MAX_TERMS) -> float:
    """Plain power series; only trustworthy for |z| < 1."""
    term = 1.0
    total = 1.0
    for k in range(max_terms):
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z
        total += term
        if not math.isfinite(total):
            raise HypergeometricError(f"series overflow at argument {z}")
        if abs(term) <= tol * max(1.0, abs(total)):
            # one extra term to make the stop robust near sign alternation
            term *= (a + k + 1) * (b + k + 1) / ((c + k + 1) * (k + 2.0)) * z
            total += term
            return total
    raise HypergeometricError("series did not converge within the term cap")


def _to_mpf(v):
    """Lossless conversion for Fraction and mpf inputs; floats pass as-is."""
    if isinstance(v, Q):
        return mpmath.mpf(v.numerator) / v.denominator
    return mpmath.mpf(v)


def series_2f1_highprec(a, b, c, z, dps: int = 50):
    """Brute-force oracle: the same summation at dps decimal digits."""
    with mpmath.workdps(dps):
        a, b, c, z = map(_to_mpf, (a, b, c, z))
        term = mpmath.mpf(1)
        total = mpmath.mpf(1)
        tol = mpmath.mpf(10) ** (-dps - 5)
        for k in range(SERIES_MAX_TERMS):
            term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z
            total += term
            if abs(term) <= tol * max(mpmath.mpf(1), abs(total)):
                return total
        raise HypergeometricError("high-precision series did not converge")


def gauss_2f1_jacobi(params: HypergeometricParams) -> float:
    """Value of the rank-one spectral kernel at (xi, x).

    Pfaff route: (1-z)^{-a} 2F1(a, c-b; c; z/(z-1)) with z = -sinh^2(x/2),
    always convergent since z <= 0.  For |z| < 0.8 the plain series is also
    summed and the two must agree to 1e-11.
    """
    a, b, c = params.abc
    s = math.sinh(params.x / 2) ** 2
    z = -s
    w = z / (z - 1.0)
    pfaff = (1.0 - z) ** (-a) * series_2f1(a, c - b, c, w)
    if abs(z) < 0.8:
        plain = series_2f1(a, b, c, z)
        if abs(plain - pfaff) > AGREEMENT_TOL * max(1.0, abs(pfaff)):
            raise HypergeometricError(
                f"series/Pfaff disagreement {plain} vs {pfaff} at z={z}")
        return plain
    return pfaff


def shift_coefficients(g1, g2, xi):
    """The two rational coefficients of the rank-one spectral identity.

    Poles at xi in {0, +-1/2}; exact when the inputs are exact.
    """
    half = Q(1, 2) if isinstance(xi, Q) else 0.5
    for d in (xi, 1 + 2 * xi, -1 + 2 * xi):
        if d == 0:
            raise ZeroDivisionError("coefficient pole at this spectral value")
    up = (xi + g1 * half + g2) * (1 + 2 * xi + g1) / (xi * (1 + 2 * xi))
    dn = (xi - g1 * half - g2) * (-1 + 2 * xi - g1) / (xi * (-1 + 2 * xi))
    return up, dn


def de_residual(g1, g2, xi, x) -> float:
    """Relative residual of the rank-one difference equation at one point."""
    up, dn = shift_coefficients(g1, g2, xi)
    f0 = gauss_2f1_jacobi(HypergeometricParams(g1, g2, xi, x))
    fp = gauss_2f1_jacobi(HypergeometricParams(g1, g2, xi + 1, x))
    fm = gauss_2f1_jacobi(HypergeometricParams(g1, g2, xi - 1, x))
    lhs = up * (fp - f0) + dn * (fm - f0)
    rhs = 4 * math.sinh(x / 2) ** 2 * f0
    return abs(lhs - rhs) / max(1.0, abs(rhs))


@dataclass
class SweepReport:
    g1: float
    g2: float
    rows: list = field(default_factory=list)   # (xi, x, residual)
    skipped: list = field(default_factory=list)
    tol: float = 1e-9

    @property
    def ok(self):
        return all(r[2] <= self.tol for r in self.rows)

    def max_residual(self):
        return max((r[2] for r in self.rows), default=0.0)

    def to_dict(self):
        return {"g1": self.g1, "g2": self.g2, "tol": self.tol,
                "status": "pass" if self.ok else "fail",
                "max_residual": self.max_residual(),
                "rows": [{"xi": xi, "x": x, "residual": r}
                         for xi, x, r in self.rows],
                "skipped": self.skipped}


def verify_de(g1, g2, xi_grid, x_grid, tol=1e-9) -> SweepReport:
    """Residual sweep over a (xi, x) grid, skipping coefficient poles."""
    report = SweepReport(g1=g1, g2=g2, tol=tol)
    for xi in xi_grid:
        if min(abs(xi), abs(xi - 0.5), abs(xi + 0.5)) < 1e-9:
            report.skipped.append({"xi": xi, "reason": "coefficient pole"})
            continue
        for x in x_grid:
            report.rows.append((xi, x, de_residual(g1, g2, xi, x)))
    return report


# -- exact terminating case ---------------------------------------------------

def _pochhammer(a: Q, k: int) -> Q:
    out = Q(1)
    for i in range(k):
        out *= a + i
    return out


def jacobi_poly_1d(g1: Q, g2: Q, l: int, s: Q) -> Q:
    """Terminating series in s = sinh^2(x/2), exact for rational data."""
    g1, g2, s = Q(g1), Q(g2), Q(s)
    a = Q(-l)
    b = l + g1 + 2 * g2
    c = Q(1, 2) + g1 + g2
    total = Q(0)
    for k in range(l + 1):
        total += (_pochhammer(a, k) * _pochhammer(b, k)
                  / (_pochhammer(c, k) * math.factorial(k))) * (-s) ** k
    return total


def recurrence_rr(g1: Q, g2: Q, l: int, s: Q):
    """Both sides of the three-term recurrence at rational s, exactly.

    lhs = s * P_l;  rhs = c_up (P_{l+1} - P_l) + c_dn (P_{l-1} - P_l).
    """
    g1, g2, s = Q(g1), Q(g2), Q(s)
    if l < 0:
        raise ValueError("l must be a nonnegative integer")
    pl = jacobi_poly_1d(g1, g2, l, s)
    pu = jacobi_poly_1d(g1, g2, l + 1, s)
    pd = jacobi_poly_1d(g1, g2, l - 1, s) if l >= 1 else Q(0)
    den = 2 * l + g1 + 2 * g2
    c_up = (l + g1 + 2 * g2) * (Q(1, 2) + l + g1 + g2) / (den * (1 + den))
    c_dn = l * (Q(-1, 2) + l + g2) / (den * (den - 1))
    lhs = s * pl
    rhs = c_up * (pu - pl) + c_dn * (pd - pl)
    return lhs, rhs


def de_coefficients_match_rr(g1: Q, g2: Q, l: int) -> bool:
    """At the terminating spectral value the two shift coefficients equal
    four times the recurrence coefficients (the quadratic-argument factor)."""
    g1, g2 = Q(g1), Q(g2)
    xi = g1 / 2 + g2 + l
    up, dn = shift_coefficients(g1, g2, xi)
    den = 2 * l + g1 + 2 * g2
    c_up = (l + g1 + 2 * g2) * (Q(1, 2) + l + g1 + g2) / (den * (1 + den))
    c_dn = l * (Q(-1, 2) + l + g2) / (den * (den - 1)) if l >= 1 else Q(0)
    if l >= 1:
        return up == 4 * c_up and dn == 4 * c_dn
    return up == 4 * c_up


def chebyshev_t(k: int):
    """Coefficient list of T_k as a polynomial (integer coefficients)."""
    prev, cur = [Q(1)], [Q(0), Q(1)]
    if k == 0:
        return prev
    for _ in range(k - 1):
        nxt = [Q(0)] + [2 * c for c in cur]
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, nxt
    return cur


def _poly_eval(coeffs, y: Q) -> Q:
    total = Q(0)
    for c in reversed(coeffs):
        total = total * y + c
    return total


def bc1_orbit_sum_in_s(k: int, s: Q) -> Q:
    """m_k of the rank-one nonreduced datum as a polynomial in s:
    e^{kx} + e^{-kx} = 2 T_k(1 + 2s) with s = sinh^2(x/2); m_0 = 1."""
    if k == 0:
        return Q(1)
    return 2 * _poly_eval(chebyshev_t(k), 1 + 2 * Q(s))


def bc1_crosscheck(g1: Q, g2: Q, l: int, s_values=(Q(1, 4), Q(5, 3), Q(7, 2))) -> bool:
    """The BC_1 polynomial from the general recursion agrees exactly with the
    terminating series under the change of variable to s."""
    from .jacobi import jacobi_polynomial
    from .nonreduced import bc_multiplicities
    from .rootsys import build_root_system

    datum = build_root_system("BC", 1)
    mults = bc_multiplicities(datum, Q(1), Q(g1), Q(g2))
    poly = jacobi_polynomial(datum, mults, (Q(l),))
    for s in s_values:
        s = Q(s)
        value = sum(c * bc1_orbit_sum_in_s(int(mu[0]), s)
                    for mu, c in poly.coeffs.items())
        if value != jacobi_poly_1d(g1, g2, l, s):
            return False
    return True
