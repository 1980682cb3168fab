"""Irreducible crystallographic root systems over exact rational realizations.

Weights are plain tuples of ``fractions.Fraction`` in the coordinates of a
fixed realization space.  Classical families (and the nonreduced family BC)
live in the orthonormal basis of R^n (R^{n+1} for type A); the exceptional
types use rational Gram matrices with long roots normalized to squared
length 2.  Every pairing, reflection and orbit below is exact.
"""

from __future__ import annotations

import itertools
from fractions import Fraction as Q

Vector = tuple[Q, ...]

REDUCED_FAMILIES = ("A", "B", "C", "D", "E", "F", "G")
FAMILIES = REDUCED_FAMILIES + ("BC",)


def vec(*coords) -> Vector:
    return tuple(Q(c) for c in coords)


def vadd(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vsub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vneg(u: Vector) -> Vector:
    return tuple(-a for a in u)


def vscale(c, u: Vector) -> Vector:
    c = Q(c)
    return tuple(c * a for a in u)


def vzero(dim: int) -> Vector:
    return (Q(0),) * dim


def invert_rational_matrix(m):
    """Exact inverse of a square matrix of Fractions (Gauss-Jordan)."""
    n = len(m)
    aug = [[Q(x) for x in row] + [Q(1) if i == j else Q(0) for j in range(n)]
           for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        factor = aug[col][col]
        aug[col] = [x / factor for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _simple_roots(family: str, rank: int):
    """Simple roots, realization dimension and Gram matrix for a type."""
    if family == "A" and rank >= 1:
        dim = rank + 1
        simples = [tuple(Q(1) if k == i else Q(-1) if k == i + 1 else Q(0)
                         for k in range(dim)) for i in range(rank)]
        return dim, None, simples
    if family in ("B", "BC") and (rank >= 2 or (family == "BC" and rank >= 1)):
        dim = rank
        simples = [tuple(Q(1) if k == i else Q(-1) if k == i + 1 else Q(0)
                         for k in range(dim)) for i in range(rank - 1)]
        simples.append(tuple(Q(1) if k == rank - 1 else Q(0) for k in range(dim)))
        return dim, None, simples
    if family == "C" and rank >= 2:
        dim = rank
        simples = [tuple(Q(1) if k == i else Q(-1) if k == i + 1 else Q(0)
                         for k in range(dim)) for i in range(rank - 1)]
        simples.append(tuple(Q(2) if k == rank - 1 else Q(0) for k in range(dim)))
        return dim, None, simples
    if family == "D" and rank >= 3:
        dim = rank
        simples = [tuple(Q(1) if k == i else Q(-1) if k == i + 1 else Q(0)
                         for k in range(dim)) for i in range(rank - 1)]
        simples.append(tuple(Q(1) if k in (rank - 2, rank - 1) else Q(0)
                             for k in range(dim)))
        return dim, None, simples
    if family == "E" and rank in (6, 7, 8):
        dim = 8
        a1 = tuple([Q(1, 2)] + [Q(-1, 2)] * 6 + [Q(1, 2)])
        a2 = vec(1, 1, 0, 0, 0, 0, 0, 0)
        simples = [a1, a2]
        for i in range(rank - 2):
            simples.append(tuple(Q(-1) if k == i else Q(1) if k == i + 1 else Q(0)
                                 for k in range(dim)))
        return dim, None, simples
    if family == "F" and rank == 4:
        simples = [vec(0, 1, -1, 0), vec(0, 0, 1, -1), vec(0, 0, 0, 1),
                   tuple([Q(1, 2), Q(-1, 2), Q(-1, 2), Q(-1, 2)])]
        return 4, None, simples
    if family == "G" and rank == 2:
        # Simple-root coordinates; Gram fixes |long|^2 = 2, |short|^2 = 2/3.
        gram = [[Q(2, 3), Q(-1)], [Q(-1), Q(2)]]
        return 2, gram, [vec(1, 0), vec(0, 1)]
    raise ValueError(f"invalid family/rank combination: {family}_{rank}")


def _bc_roots(rank: int):
    roots = []
    for i in range(rank):
        for s in (1, -1):
            roots.append(tuple(Q(s) if k == i else Q(0) for k in range(rank)))
            roots.append(tuple(Q(2 * s) if k == i else Q(0) for k in range(rank)))
    for i in range(rank):
        for j in range(i + 1, rank):
            for si in (1, -1):
                for sj in (1, -1):
                    v = [Q(0)] * rank
                    v[i], v[j] = Q(si), Q(sj)
                    roots.append(tuple(v))
    return roots


class RootDatum:
    """A realized irreducible root system with its Weyl combinatorics.

    Immutable after construction; all methods are pure, so instances are
    safe to share across threads.
    """

    def __init__(self, family: str, rank: int):
        if family not in FAMILIES:
            raise ValueError(f"unknown family {family!r}")
        dim, gram, simples = _simple_roots(family, rank)
        self.family = family
        self.rank = rank
        self.dim = dim
        self.gram = tuple(tuple(row) for row in gram) if gram is not None else None
        self.simple_roots: tuple[Vector, ...] = tuple(simples)

        self._norm_cache: dict[Vector, Q] = {}
        self._coroot_cache: dict[Vector, Vector] = {}

        cartan = [[self.pairing(a, b) for b in simples] for a in simples]
        if any(x.denominator != 1 for row in cartan for x in row):
            raise ValueError("simple roots are not crystallographic")
        self._cartan = cartan
        self._cartan_inv = invert_rational_matrix(cartan)

        if family == "BC":
            roots = set(_bc_roots(rank))
        else:
            roots = self._reflection_closure(simples)
        self.roots: tuple[Vector, ...] = tuple(sorted(roots))
        self._root_set = frozenset(self.roots)
        self.positive_roots: tuple[Vector, ...] = tuple(
            a for a in self.roots if self._is_positive_root(a))
        if 2 * len(self.positive_roots) != len(self.roots):
            raise ValueError("positive system does not split the roots evenly")

        # omega_i = sum_k (cartan^{-1})[i][k] alpha_k
        fund = []
        for i in range(rank):
            w = vzero(dim)
            for k in range(rank):
                w = vadd(w, vscale(self._cartan_inv[i][k], self.simple_roots[k]))
            fund.append(w)
        self.fundamental_weights: tuple[Vector, ...] = tuple(fund)
        for i in range(rank):
            for j in range(rank):
                if self.pairing(fund[i], self.simple_roots[j]) != (1 if i == j else 0):
                    raise ValueError("fundamental weights failed duality check")

        self.root_orbits: tuple[tuple[Vector, ...], ...] = self._compute_root_orbits()
        self._orbit_index = {a: i for i, orb in enumerate(self.root_orbits) for a in orb}

        self._weyl_order_memo: dict[frozenset, int] = {}
        self._sat_cache: dict[Vector, dict[Vector, Vector]] = {}
        self._dominant_below_cache: dict[Vector, tuple[Vector, ...]] = {}

    # -- bilinear form ------------------------------------------------------

    def inner(self, u: Vector, v: Vector) -> Q:
        if self.gram is None:
            return sum(a * b for a, b in zip(u, v, strict=True))
        return sum(u[i] * self.gram[i][j] * v[j]
                   for i in range(self.dim) for j in range(self.dim))

    def norm_sq(self, alpha: Vector) -> Q:
        val = self._norm_cache.get(alpha)
        if val is None:
            val = self.inner(alpha, alpha)
            self._norm_cache[alpha] = val
        return val

    def coroot(self, alpha: Vector) -> Vector:
        cv = self._coroot_cache.get(alpha)
        if cv is None:
            cv = vscale(Q(2) / self.norm_sq(alpha), alpha)
            self._coroot_cache[alpha] = cv
        return cv

    def pairing(self, v: Vector, alpha: Vector) -> Q:
        """<v, alpha^vee> = 2 <v, alpha> / <alpha, alpha>."""
        return 2 * self.inner(v, alpha) / self.norm_sq(alpha)

    def reflect(self, v: Vector, alpha: Vector) -> Vector:
        return vsub(v, vscale(self.pairing(v, alpha), alpha))

    def simple_reflect(self, i: int, v: Vector) -> Vector:
        return self.reflect(v, self.simple_roots[i])

    # -- construction helpers ----------------------------------------------

    def _reflection_closure(self, seeds):
        seen = set(seeds) | {vneg(a) for a in seeds}
        frontier = list(seen)
        while frontier:
            nxt = []
            for a in frontier:
                for i in range(self.rank):
                    b = self.simple_reflect(i, a)
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return seen

    def _is_positive_root(self, alpha: Vector) -> bool:
        c = self.simple_coefficients(alpha)
        return c is not None and all(x >= 0 for x in c)

    def _compute_root_orbits(self):
        remaining = set(self.roots)
        orbits = []
        while remaining:
            seed = min(remaining)
            orb = set(self.orbit_under_reflections(self.simple_roots, seed))
            orbits.append(tuple(sorted(orb)))
            remaining -= orb
        # canonical order: by dominant representative of each orbit
        orbits.sort(key=lambda orb: self.dominant_representative(orb[0])[0])
        return tuple(orbits)

    def orbit_representatives(self) -> tuple[Vector, ...]:
        """Dominant representative of each root orbit, in canonical order."""
        return tuple(self.dominant_representative(orb[0])[0] for orb in self.root_orbits)

    def orbit_index(self, alpha: Vector) -> int:
        return self._orbit_index[alpha]

    # -- lattice membership --------------------------------------------------

    def simple_coefficients(self, v: Vector):
        """Coordinates of v in the simple-root basis, or None if v is off-span."""
        p = [self.pairing(v, a) for a in self.simple_roots]
        coeffs = [sum(p[j] * self._cartan_inv[j][k] for j in range(self.rank))
                  for k in range(self.rank)]
        w = vzero(self.dim)
        for k, c in enumerate(coeffs):
            w = vadd(w, vscale(c, self.simple_roots[k]))
        if w != tuple(Q(x) for x in v):
            return None
        return tuple(coeffs)

    def is_weight(self, v: Vector) -> bool:
        if self.simple_coefficients(v) is None:
            return False
        return all(self.pairing(v, a).denominator == 1 for a in self.positive_roots)

    def check_weight(self, v: Vector) -> Vector:
        v = tuple(Q(x) for x in v)
        if not self.is_weight(v):
            raise ValueError(f"{v} is not in the weight lattice of {self}")
        return v

    def height(self, v: Vector) -> Q:
        """Sum of simple-root coordinates of v."""
        c = self.simple_coefficients(v)
        if c is None:
            raise ValueError("vector is not in the root span")
        return sum(c)

    def is_dominant(self, v: Vector) -> bool:
        return all(self.pairing(v, a) >= 0 for a in self.simple_roots)

    def check_dominant(self, v: Vector) -> Vector:
        v = self.check_weight(v)
        if not self.is_dominant(v):
            raise ValueError(f"{v} is not dominant")
        return v

    def weight_from_fundamental(self, coeffs) -> Vector:
        w = vzero(self.dim)
        for m, omega in zip(coeffs, self.fundamental_weights, strict=True):
            w = vadd(w, vscale(m, omega))
        return w

    # -- Weyl group actions ---------------------------------------------------

    def weyl_orbit(self, v: Vector) -> tuple[Vector, ...]:
        """Full W-orbit of a weight, closure under simple reflections."""
        v = self.check_weight(v)
        return self.orbit_under_reflections(self.simple_roots, v)

    def orbit_under_reflections(self, gen_roots, v: Vector) -> tuple[Vector, ...]:
        seen = {v}
        frontier = [v]
        while frontier:
            nxt = []
            for u in frontier:
                for a in gen_roots:
                    w = self.reflect(u, a)
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
        return tuple(sorted(seen))

    def apply_word(self, word, v: Vector) -> Vector:
        """Act by the word [i1,...,im] = s_{i1} s_{i2} ... s_{im} (rightmost first)."""
        for i in reversed(word):
            v = self.simple_reflect(i, v)
        return v

    def dominant_representative(self, v: Vector):
        """(v+, word for the shortest w with w(v) = v+ dominant).

        Greedy reflection at the least simple root with negative pairing; the
        step count is the length of the minimal element (checked by brute
        force in the test suite for small groups).
        """
        steps = []
        while True:
            i = next((i for i in range(self.rank)
                      if self.pairing(v, self.simple_roots[i]) < 0), None)
            if i is None:
                break
            v = self.simple_reflect(i, v)
            steps.append(i)
        return v, tuple(reversed(steps))

    @staticmethod
    def inverse_word(word):
        return tuple(reversed(word))

    def stabilizer_roots(self, v: Vector) -> tuple[Vector, ...]:
        """R_v: the roots orthogonal to v (they generate the stabilizer W_v)."""
        return tuple(a for a in self.roots if self.pairing(v, a) == 0)

    def stabilizer_orbit(self, v: Vector, eta: Vector) -> tuple[Vector, ...]:
        """Orbit W_v(eta) of eta under the stabilizer of v."""
        gens = [a for a in self.stabilizer_roots(v) if self._is_positive_root(a)]
        return self.orbit_under_reflections(gens, eta)

    def weyl_order(self) -> int:
        """|W| by recursive orbit-stabilizer on roots.

        |W'| = |orbit of a root| * |stabilizer|, the stabilizer of a vector
        being generated by the reflections fixing it; recursion bottoms out
        on the empty subsystem.
        """
        return self._subsystem_order(frozenset(self.roots))

    def _subsystem_order(self, roots: frozenset) -> int:
        if not roots:
            return 1
        memo = self._weyl_order_memo
        if roots in memo:
            return memo[roots]
        beta = min(roots)
        orbit = self.orbit_under_reflections(sorted(roots), beta)
        stab = frozenset(g for g in roots if self.pairing(beta, g) == 0)
        val = len(orbit) * self._subsystem_order(stab)
        memo[roots] = val
        return val

    # -- dominance order and saturated sets -----------------------------------

    def dominance_leq(self, mu: Vector, lam: Vector) -> bool:
        """mu <= lam in dominance order: lam - mu in Q+ (dominant inputs)."""
        mu = self.check_dominant(mu)
        lam = self.check_dominant(lam)
        return self._in_q_plus(vsub(lam, mu))

    def _in_q_plus(self, v: Vector) -> bool:
        c = self.simple_coefficients(v)
        return c is not None and all(x >= 0 and x.denominator == 1 for x in c)

    def dominant_below(self, lam: Vector) -> tuple[Vector, ...]:
        """All dominant mu <= lam, lexicographically sorted."""
        lam = self.check_dominant(lam)
        cached = self._dominant_below_cache.get(lam)
        if cached is not None:
            return cached
        bounds = self.simple_coefficients(lam)
        ranges = [range(int(b) + 1) for b in bounds]
        found = []
        for ks in itertools.product(*ranges):
            mu = lam
            for k, alpha in zip(ks, self.simple_roots):
                if k:
                    mu = vsub(mu, vscale(k, alpha))
            if self.is_dominant(mu):
                found.append(mu)
        result = tuple(sorted(found))
        self._dominant_below_cache[lam] = result
        return result

    def saturated_map(self, lam: Vector) -> dict[Vector, Vector]:
        """P(lam) as a map orbit element -> its dominant representative."""
        lam = self.check_dominant(lam)
        cached = self._sat_cache.get(lam)
        if cached is None:
            cached = {}
            for mu in self.dominant_below(lam):
                for nu in self.weyl_orbit(mu):
                    cached[nu] = mu
            self._sat_cache[lam] = cached
        return cached

    def saturated_set(self, lam: Vector) -> tuple[Vector, ...]:
        return tuple(sorted(self.saturated_map(lam)))

    # -- small weights ---------------------------------------------------------

    def is_small(self, omega: Vector) -> bool:
        """All pairings with positive coroots at most 2."""
        omega = self.check_dominant(omega)
        return all(self.pairing(omega, a) <= 2 for a in self.positive_roots)

    def is_minuscule(self, omega: Vector) -> bool:
        omega = self.check_dominant(omega)
        return all(self.pairing(omega, a) <= 1 for a in self.positive_roots)

    def is_quasi_minuscule(self, omega: Vector) -> bool:
        omega = self.check_dominant(omega)
        if omega not in self._root_set:
            return False
        return all(self.pairing(omega, a) <= 1
                   for a in self.positive_roots if a != omega)

    def small_fundamental_weights(self) -> tuple[Vector, ...]:
        return tuple(w for w in self.fundamental_weights if self.is_small(w))

    def small_dominant_weights(self, include_zero: bool = False) -> tuple[Vector, ...]:
        """All small dominant weights (finite: fundamental pairings <= 2)."""
        out = []
        for ms in itertools.product(range(3), repeat=self.rank):
            w = self.weight_from_fundamental(ms)
            if not include_zero and not any(ms):
                continue
            if self.is_small(w):
                out.append(w)
        return tuple(sorted(out))

    def quasi_minuscule_weight(self) -> Vector:
        """The dominant root with all other pairings at most 1."""
        for a in self.positive_roots:
            if self.is_dominant(a) and self.is_quasi_minuscule(a):
                return a
        raise ValueError("no quasi-minuscule weight found")

    def dominant_weights_up_to_height(self, bound) -> tuple[Vector, ...]:
        """Dominant weights whose simple-root height is <= bound."""
        bound = Q(bound)
        heights = [self.height(w) for w in self.fundamental_weights]
        out = []

        def rec(i, acc, h):
            if i == self.rank:
                out.append(self.weight_from_fundamental(acc))
                return
            m = 0
            while h + m * heights[i] <= bound:
                rec(i + 1, acc + [m], h + m * heights[i])
                m += 1

        rec(0, [], Q(0))
        return tuple(sorted(out))

    # -- rho vectors -----------------------------------------------------------

    def half_weighted_sum(self, weight_of_root) -> Vector:
        """(1/2) sum over positive roots of weight(alpha) * alpha."""
        acc = vzero(self.dim)
        for a in self.positive_roots:
            acc = vadd(acc, vscale(weight_of_root(a), a))
        return vscale(Q(1, 2), acc)

    def rho(self, mults: "Multiplicities") -> Vector:
        """rho_g = (1/2) sum_{alpha > 0} g_alpha alpha."""
        return self.half_weighted_sum(mults.of)

    def rho_vee(self) -> Vector:
        """rho^vee = (1/2) sum_{alpha > 0} alpha^vee."""
        acc = vzero(self.dim)
        for a in self.positive_roots:
            acc = vadd(acc, self.coroot(a))
        return vscale(Q(1, 2), acc)

    def __repr__(self):
        return f"RootDatum({self.family}{self.rank})"


class Multiplicities:
    """Orbit-constant root multiplicities g_alpha > 0 (exact or float)."""

    def __init__(self, datum: RootDatum, values):
        values = tuple(values)
        if len(values) != len(datum.root_orbits):
            raise ValueError(f"expected {len(datum.root_orbits)} orbit values, "
                             f"got {len(values)}")
        if not all(v > 0 for v in values):
            raise ValueError("multiplicities must be positive")
        self.datum = datum
        self.values = values

    @classmethod
    def constant(cls, datum: RootDatum, g):
        return cls(datum, [g] * len(datum.root_orbits))

    @classmethod
    def by_representative(cls, datum: RootDatum, mapping):
        """Build from {dominant orbit representative: value}."""
        reps = datum.orbit_representatives()
        if set(mapping) != set(reps):
            raise ValueError(f"need one value per orbit representative {reps}")
        return cls(datum, [mapping[r] for r in reps])

    def of(self, alpha: Vector):
        return self.values[self.datum.orbit_index(alpha)]

    def key(self):
        return tuple(self.values)

    def __eq__(self, other):
        return (isinstance(other, Multiplicities)
                and self.datum is other.datum and self.values == other.values)

    def __hash__(self):
        return hash((id(self.datum), self.values))

    def __repr__(self):
        return f"Multiplicities({self.values})"


def build_root_system(family: str, rank: int) -> RootDatum:
    """Construct the realized irreducible system of the given type."""
    return RootDatum(family, int(rank))
