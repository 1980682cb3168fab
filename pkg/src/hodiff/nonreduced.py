"""Difference-equation coefficients for the nonreduced family, rank n.

Everything is written in the orthonormal coordinates of the standard
realization: multiplicity g on the roots e_j +- e_k, g1 on e_j, g2 on 2e_j.
The hyperoctahedral Jacobi polynomials are not reimplemented; they come from
the generic recursion applied to the BC datum, whose operator contains both
the e_j and 2e_j strings.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction as Q

from .diffeq import PoleAtSpectralPoint, poly_cache_get
from .rootsys import Multiplicities, RootDatum, build_root_system
from .weylalg import ExpPoly, InternalConsistencyError, exp_to_json


@dataclass(frozen=True)
class SignedSubset:
    """A subset J of coordinate slots with a sign attached to each."""
    indices: tuple      # strictly increasing, 0-based
    signs: tuple        # matching +1/-1 entries

    def __post_init__(self):
        if len(self.indices) != len(self.signs):
            raise ValueError("indices and signs must align")
        if list(self.indices) != sorted(set(self.indices)):
            raise ValueError("indices must be strictly increasing")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")

    def shift_vector(self, n: int):
        """e_{eps J} = sum over J of eps_j e_j."""
        v = [Q(0)] * n
        for j, s in zip(self.indices, self.signs):
            v[j] = Q(s)
        return tuple(v)


def signed_subsets(indices):
    """All sign assignments over each subset of the given index tuple."""
    for signs in itertools.product((1, -1), repeat=len(indices)):
        yield SignedSubset(tuple(indices), signs)


def _check_den(value, what):
    if value == 0:
        raise PoleAtSpectralPoint(what, "denominator")
    return value


def _singleton_factor(g1, g2, s, xj):
    num = (s * xj + Q(1, 2) * g1 + g2) * (1 + 2 * s * xj + g1)
    den = _check_den(s * xj, f"{s}*xi_j") * _check_den(1 + 2 * s * xj, "1+2xi_j")
    return num / den


def _cross_factor(g, s, xj, xk):
    num = (s * xj + xk + g) * (s * xj - xk + g)
    den = _check_den(s * xj + xk, "xi_j+xi_k") * _check_den(s * xj - xk, "xi_j-xi_k")
    return num / den


def coeff_V_signed(n: int, gs, subset: SignedSubset, xi):
    """Shift coefficient of the signed subset: singleton factors on J, cross
    factors against the complement, and +g pair factors inside J."""
    g, g1, g2 = gs
    total = Q(1)
    inside = set(subset.indices)
    for j, s in zip(subset.indices, subset.signs):
        total *= _singleton_factor(g1, g2, s, xi[j])
        for k in range(n):
            if k not in inside:
                total *= _cross_factor(g, s, xi[j], xi[k])
    pairs = list(zip(subset.indices, subset.signs))
    for a in range(len(pairs)):
        for b in range(a + 1, len(pairs)):
            (j, sj), (jp, sp) = pairs[a], pairs[b]
            u = sj * xi[j] + sp * xi[jp]
            total *= (u + g) / _check_den(u, "eps_j xi_j + eps_j' xi_j'")
            total *= (1 + u + g) / _check_den(1 + u, "1 + eps_j xi_j + eps_j' xi_j'")
    return total


def coeff_U_Kp(n: int, gs, K, p: int, xi):
    """Complementary coefficient: (-1)^p times the sum over signed p-subsets
    of K of the V-type product restricted to K, with -g in the last factor."""
    g, g1, g2 = gs
    K = tuple(sorted(K))
    if not 0 <= p <= len(K):
        raise ValueError(f"p={p} out of range for |K|={len(K)}")
    total = Q(0)
    for I in itertools.combinations(K, p):
        for sub in signed_subsets(I):
            inside = set(I)
            term = Q(1)
            for i, s in zip(sub.indices, sub.signs):
                term *= _singleton_factor(g1, g2, s, xi[i])
                for k in K:
                    if k not in inside:
                        term *= _cross_factor(g, s, xi[i], xi[k])
            pairs = list(zip(sub.indices, sub.signs))
            for a in range(len(pairs)):
                for b in range(a + 1, len(pairs)):
                    (i, si), (ip, sp) = pairs[a], pairs[b]
                    u = si * xi[i] + sp * xi[ip]
                    term *= (u + g) / _check_den(u, "pair sum")
                    term *= (1 + u - g) / _check_den(1 + u, "1 + pair sum")
            total += term
    return (-1) ** p * total


def expansion_E_ell(n: int, ell: int) -> ExpPoly:
    """Exact expansion of the degree-ell symmetric shift polynomial, using
    4 sinh^2(x_j/2) = e^{x_j} - 2 + e^{-x_j}; hyperoctahedrally invariant."""
    if not 1 <= ell <= n:
        raise ValueError(f"ell={ell} out of range for rank {n}")

    def basis_factor(j):
        plus = tuple(Q(1) if k == j else Q(0) for k in range(n))
        minus = tuple(Q(-1) if k == j else Q(0) for k in range(n))
        zero = (Q(0),) * n
        return ExpPoly({plus: Q(1), zero: Q(-2), minus: Q(1)})

    acc = ExpPoly.zero()
    for J in itertools.combinations(range(n), ell):
        prod = ExpPoly.constant(1, n)
        for j in J:
            prod = prod * basis_factor(j)
        acc = acc + prod
    return acc


def bc_multiplicities(datum: RootDatum, g, g1, g2) -> Multiplicities:
    """Attach (g, g1, g2) to the orbits of the nonreduced datum by length:
    squared length 2 -> g, 1 -> g1, 4 -> g2.  Rank one has no g orbit."""
    by_norm = {Q(2): g, Q(1): g1, Q(4): g2}
    mapping = {}
    for rep in datum.orbit_representatives():
        mapping[rep] = by_norm[datum.norm_sq(rep)]
    return Multiplicities.by_representative(datum, mapping)


def is_partition(v) -> bool:
    return all(x.denominator == 1 for x in v) and \
        all(v[i] >= v[i + 1] for i in range(len(v) - 1)) and v[-1] >= 0


@dataclass
class BcPieriReport:
    n: int
    ell: int
    lam: tuple
    g: Q
    g1: Q
    g2: Q
    ok: bool
    n_terms: int
    residual: list = field(default_factory=list)
    elapsed: float = 0.0

    def to_dict(self):
        return {"n": self.n, "ell": self.ell,
                "lambda": [str(x) for x in self.lam],
                "g": str(self.g), "g1": str(self.g1), "g2": str(self.g2),
                "status": "pass" if self.ok else "fail",
                "n_terms": self.n_terms, "residual": self.residual}


def verify_pieri_bc(n: int, gs, ell: int, lam, cache: dict | None = None,
                    datum: RootDatum | None = None) -> BcPieriReport:
    """Exact Pieri identity for the nonreduced system at xi_j = rho_j + lam_j.

    Terms whose shifted weight is not a partition must carry a vanishing V
    coefficient; a violation is fatal, a pole requests a resample.
    """
    t0 = time.perf_counter()
    g, g1, g2 = (Q(x) for x in gs)
    lam = tuple(Q(x) for x in lam)
    if not is_partition(lam):
        raise ValueError(f"{lam} is not a partition")
    datum = datum or build_root_system("BC", n)
    mults = bc_multiplicities(datum, g, g1, g2)
    rho = datum.rho(mults)
    xi = tuple(rho[j] + lam[j] for j in range(n))

    terms = []
    for size in range(ell + 1):
        for J in itertools.combinations(range(n), size):
            Kc = tuple(k for k in range(n) if k not in J)
            u = coeff_U_Kp(n, (g, g1, g2), Kc, ell - size, xi)
            for sub in signed_subsets(J):
                v = coeff_V_signed(n, (g, g1, g2), sub, xi)
                shifted = tuple(a + b for a, b in zip(lam, sub.shift_vector(n)))
                if is_partition(shifted):
                    terms.append((sub, shifted, u * v))
                elif v != 0:
                    raise InternalConsistencyError(
                        f"V did not vanish at excluded shift {sub} for lam={lam}")

    lhs = expansion_E_ell(n, ell) * poly_cache_get(cache, datum, mults, lam).exp_poly()
    rhs = ExpPoly.zero()
    for _sub, shifted, c in terms:
        rhs = rhs + poly_cache_get(cache, datum, mults, shifted).exp_poly().scale(c)
    residual = lhs - rhs
    return BcPieriReport(
        n=n, ell=ell, lam=lam, g=g, g1=g1, g2=g2,
        ok=residual.is_zero(), n_terms=len(terms),
        residual=exp_to_json(residual),
        elapsed=time.perf_counter() - t0,
    )


def rank_one_shift_coefficient(n: int, gs, j: int, xi):
    """The displayed single-shift coefficient: singleton factor at slot j
    times cross factors against every other slot."""
    g, g1, g2 = gs
    total = _singleton_factor(g1, g2, 1, xi[j])
    for k in range(n):
        if k != j:
            total *= _cross_factor(g, 1, xi[j], xi[k])
    return total


def rearrangement_gap(n: int, gs, xi):
    """U_{full,1}(xi) + sum_j (V_j(xi) + V_j(-xi)); identically zero, checked
    at rational points as a guard on signs and sum structure."""
    full = tuple(range(n))
    gap = coeff_U_Kp(n, gs, full, 1, xi)
    neg = tuple(-x for x in xi)
    for j in range(n):
        gap += rank_one_shift_coefficient(n, gs, j, xi)
        gap += rank_one_shift_coefficient(n, gs, j, neg)
    return gap
