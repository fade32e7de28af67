"""Twisted polynomials, Drinfeld modules and their torsion modules.

The twisted ring K{tau} is the algebra of GF(q)-linear operators on
extensions of K generated by the base-field Frobenius tau: x -> x**q,
with the commutation rule tau * c = c**q * tau.  A Drinfeld module is
determined by the single operator image of T,

    phi_T = theta + g_1 tau + ... + g_r tau**r,   g_r != 0,

and extends multiplicatively/additively to all of GF(q)[T].

Torsion kernels are found by pure linear algebra: the operator phi_a
acting on GF(q**(s*m)) is a GF(q)-linear map, and the smallest m whose
kernel has full dimension r*deg(a) is located by increasing search.
That sidesteps factoring the degree-q**(rn) operator polynomial
entirely; only matrix kernels over GF(q) are ever computed.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .errors import (
    InseparableTorsion,
    LevelMismatch,
    NonMonic,
    NotSquarefree,
    PointNotInModule,
    SearchBudget,
    SearchCapExceeded,
    ZeroLeadingCoefficient,
)
from .fields import (
    FieldElement,
    as_vector,
    dim_between,
    extend,
    field_from_descriptor,
    from_vector,
    kernel,
    solve,
)
from .polynomials import UniPoly, poly_gcd, poly_xgcd


class SkewPoly:
    """Twisted polynomial sum(c_i tau**i); little-endian coefficients."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs=()):
        cleaned = []
        for c in coeffs:
            cleaned.append(c if c.ctx is ctx else c.embed_to(ctx))
        while cleaned and cleaned[-1].is_zero():
            cleaned.pop()
        self.ctx = ctx
        self.coeffs = tuple(cleaned)

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, ())

    @classmethod
    def one(cls, ctx):
        return cls(ctx, (ctx.one_element,))

    @classmethod
    def constant(cls, value):
        return cls(value.ctx, (value,))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ctx.zero_element

    def _common(self, other):
        if not isinstance(other, SkewPoly):
            raise TypeError(f"cannot combine SkewPoly with {type(other).__name__}")
        if self.ctx is other.ctx:
            return self.ctx, self, other
        if self.ctx.is_above(other.ctx):
            return self.ctx, self, SkewPoly(self.ctx, other.coeffs)
        if other.ctx.is_above(self.ctx):
            return other.ctx, SkewPoly(other.ctx, self.coeffs), other
        raise LevelMismatch("twisted polynomials over incomparable levels")

    def __add__(self, other):
        ctx, f, g = self._common(other)
        n = max(len(f.coeffs), len(g.coeffs))
        return SkewPoly(ctx, (f[i] + g[i] for i in range(n)))

    def __sub__(self, other):
        ctx, f, g = self._common(other)
        n = max(len(f.coeffs), len(g.coeffs))
        return SkewPoly(ctx, (f[i] - g[i] for i in range(n)))

    def __neg__(self):
        return SkewPoly(self.ctx, (-c for c in self.coeffs))

    def __mul__(self, other):
        """Composition product under tau * c = c**q * tau."""
        ctx, f, g = self._common(other)
        if f.is_zero() or g.is_zero():
            return SkewPoly.zero(ctx)
        out = [ctx.zero_element] * (f.degree + g.degree + 1)
        twisted = list(g.coeffs)
        for i, a in enumerate(f.coeffs):
            if i > 0:
                twisted = [c.frobenius(1) for c in twisted]
            if a.is_zero():
                continue
            for j, b in enumerate(twisted):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return SkewPoly(ctx, out)

    def __eq__(self, other):
        return (
            isinstance(other, SkewPoly)
            and self.ctx is other.ctx
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((id(self.ctx), self.coeffs))

    def __call__(self, beta):
        """Apply as an operator: sum(c_i * beta**(q**i))."""
        if not isinstance(beta, FieldElement):
            raise TypeError("operator argument must be a FieldElement")
        if not beta.ctx.is_above(self.ctx):
            raise LevelMismatch("argument lives below the coefficient level")
        target = beta.ctx
        acc = target.zero_element
        y = beta
        for i, c in enumerate(self.coeffs):
            if i > 0:
                y = y.frobenius(1)
            if not c.is_zero():
                acc = acc + c.embed_to(target) * y
        return acc

    def render(self):
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            if i == 0:
                parts.append(str(c.rank()))
            else:
                head = "" if c.is_one() else f"{c.rank()}*"
                parts.append(f"{head}tau" + (f"^{i}" if i > 1 else ""))
        return " + ".join(parts)

    def __repr__(self):
        return f"SkewPoly({self.render()!r} over {self.ctx!r})"


class DrinfeldModule:
    """Rank-r module over K, given by theta = gamma(T) and the twist
    coefficients g_1 .. g_r of phi_T."""

    __slots__ = ("K", "theta", "g", "_phi_t", "_char", "_tpows")

    def __init__(self, K, theta, g):
        theta = theta if theta.ctx is K else theta.embed_to(K)
        g = tuple(c if c.ctx is K else c.embed_to(K) for c in g)
        if not g:
            raise ZeroLeadingCoefficient("a Drinfeld module needs rank >= 1")
        if g[-1].is_zero():
            raise ZeroLeadingCoefficient("top twist coefficient g_r must be nonzero")
        self.K = K
        self.theta = theta
        self.g = g
        self._phi_t = SkewPoly(K, (theta,) + g)
        self._char = None
        self._tpows = [SkewPoly.one(K), self._phi_t]

    @property
    def rank(self):
        return len(self.g)

    @property
    def base(self):
        """The coefficient field GF(q) of the operator ring."""
        return self.K.base

    @property
    def q(self):
        return self.K.q

    @property
    def phi_T(self):
        return self._phi_t

    def phi_tpow(self, i):
        """phi applied to T**i, cached."""
        while len(self._tpows) <= i:
            self._tpows.append(self._tpows[-1] * self._phi_t)
        return self._tpows[i]

    def phi(self, a):
        """Image of a in K{tau}; a ring homomorphism on GF(q)[T]."""
        if not isinstance(a, UniPoly):
            raise TypeError("operator polynomial must be a UniPoly")
        if a.ctx is not self.base:
            raise LevelMismatch("operator coefficients must live in the base field")
        acc = SkewPoly.zero(self.K)
        for i, c in enumerate(a.coeffs):
            if not c.is_zero():
                acc = acc + self.phi_tpow(i) * SkewPoly.constant(c.embed_to(self.K))
        return acc

    def gamma(self, a):
        """a(theta), the structure morphism applied to a."""
        return a(self.theta)

    def char_poly(self):
        """Monic generator of the A-characteristic: the minimal
        polynomial of theta over the base field."""
        if self._char is not None:
            return self._char
        base = self.base
        s = dim_between(self.K, base)
        powers = [as_vector(self.theta**i, base) for i in range(s + 1)]
        for d in range(1, s + 1):
            rows = [[powers[j][i] for j in range(d)] for i in range(len(powers[0]))]
            sol = solve(rows, powers[d])
            if sol is not None:
                coeffs = [-c for c in sol] + [base.one_element]
                self._char = UniPoly(base, coeffs)
                return self._char
        raise AssertionError("minimal polynomial search failed")  # pragma: no cover

    def det_module(self):
        """The rank-1 module whose T-image is theta + (-1)**(r-1) g_r tau."""
        lead = self.g[-1]
        if self.rank % 2 == 0:
            lead = -lead
        return DrinfeldModule(self.K, self.theta, (lead,))

    def torsion(self, a, cap=64):
        return torsion(self, a, cap=cap)

    def __eq__(self, other):
        return (
            isinstance(other, DrinfeldModule)
            and self.K is other.K
            and self.theta == other.theta
            and self.g == other.g
        )

    def __hash__(self):
        return hash((id(self.K), self.theta, self.g))

    def to_json(self):
        return {
            "K": self.K.descriptor(),
            "theta": self.theta.to_json(),
            "g": [c.to_json() for c in self.g],
        }

    @classmethod
    def from_json(cls, obj, K=None):
        level = K if K is not None else field_from_descriptor(obj["K"])
        theta = level.element_from_json(obj["theta"])
        g = tuple(level.element_from_json(c) for c in obj["g"])
        return cls(level, theta, g)

    def __repr__(self):
        return f"DrinfeldModule(rank={self.rank}, phi_T={self._phi_t.render()!r})"


def operator_kernel(op, level, base):
    """GF(q)-basis of the kernel of a twisted-polynomial operator acting
    on one tower level, via a matrix kernel over the base field."""
    dim = dim_between(level, base)
    std = [
        from_vector(
            [base.one_element if i == j else base.zero_element for i in range(dim)],
            level,
        )
        for j in range(dim)
    ]
    columns = [as_vector(op(b), base) for b in std]
    rows = [[columns[j][i] for j in range(dim)] for i in range(dim)]
    return [from_vector(v, level) for v in kernel(rows)]


def fq_span(basis, level, base):
    """All base-field combinations of the given points, in deterministic
    coefficient order."""
    scalars = [c.embed_to(level) for c in base.elements()]
    out = []
    for combo in itertools.product(range(base.order), repeat=len(basis)):
        acc = level.zero_element
        for c, b in zip(combo, basis):
            if c:
                acc = acc + scalars[c] * b
        out.append(acc)
    return out


def torsion(phi, a, cap=64):
    """The a-torsion of phi, realized in the smallest extension of K
    that carries the full kernel of phi_a.

    The search walks m = 1, 2, ... and computes the kernel of phi_a as
    a GF(q)-linear operator on GF(q**(s*m)); it stops at kernel
    dimension r*deg(a).
    """
    if not a.is_monic():
        raise NonMonic("torsion needs a monic operator polynomial")
    if a.degree < 1:
        raise NonMonic("torsion needs deg(a) >= 1")
    if phi.gamma(a).is_zero():
        frak_p = phi.char_poly()
        raise InseparableTorsion(
            f"a({phi.theta.to_json()}) = 0: a is divisible by the "
            f"A-characteristic generated by {frak_p.render()}"
        )
    base = phi.base
    phi_a = phi.phi(a)
    want = phi.rank * a.degree
    for m in range(1, cap + 1):
        level = phi.K if m == 1 else extend(phi.K, m)[0]
        null = operator_kernel(phi_a, level, base)
        if len(null) == want:
            return TorsionModule(phi, a, level, m, tuple(null))
    raise SearchCapExceeded(f"no extension of degree <= {cap} splits phi_a")


class TorsionModule:
    """The kernel of phi_a inside an explicit extension level.

    Carries a GF(q)-basis always, and on request a module basis over
    the residue ring A/aA together with the coordinate table that
    exhibits the torsion as a free module of rank r.
    """

    __slots__ = ("phi", "a", "level", "m", "fq_basis", "_points", "_abasis", "_coords")

    def __init__(self, phi, a, level, m, fq_basis):
        self.phi = phi
        self.a = a
        self.level = level
        self.m = m
        self.fq_basis = tuple(fq_basis)
        self._points = None
        self._abasis = None
        self._coords = None

    @property
    def rank(self):
        return self.phi.rank

    def count(self):
        return self.phi.base.order ** len(self.fq_basis)

    def points(self):
        """Every torsion point, in deterministic coefficient order."""
        if self._points is None:
            self._points = tuple(fq_span(self.fq_basis, self.level, self.phi.base))
        return self._points

    def contains(self, beta):
        return self.phi.phi(self.a)(beta).is_zero()

    def frobenius_order(self):
        """Order of the K-Frobenius acting on the working level."""
        return self.m

    def apply_galois(self, beta, sigma):
        """Image of beta under the sigma.k-th power of the K-Frobenius."""
        s = dim_between(self.phi.K, self.phi.base)
        return beta.frobenius(sigma.k * s)

    def residues(self):
        """All classes of A/aA as reduced polynomials, in rank order."""
        base = self.phi.base
        out = []
        for combo in itertools.product(range(base.order), repeat=self.a.degree):
            out.append(UniPoly(base, [base.element_of_rank(r) for r in combo]))
        return out

    def a_basis(self, seed=0, attempts=200):
        """Points beta_1 .. beta_r through which (A/aA)**r sweeps out the
        whole torsion module, found by seeded random search with an
        exhaustive bijectivity count."""
        if self._abasis is not None:
            return self._abasis
        d = poly_gcd(self.a, self.a.derivative())
        if d.degree != 0:
            raise NotSquarefree(f"a = {self.a.render()} is not squarefree")
        residues = self.residues()
        images = [self.phi.phi(b) for b in residues]
        pts = self.points()
        nonzero = [p for p in pts if not p.is_zero()]
        rng = random.Random(seed)
        r = self.rank
        total = self.count()
        for _ in range(attempts):
            candidate = tuple(rng.choice(nonzero) for _ in range(r))
            table = {}
            ok = True
            for combo in itertools.product(range(len(residues)), repeat=r):
                acc = self.level.zero_element
                for slot, idx in enumerate(combo):
                    acc = acc + images[idx](candidate[slot])
                if acc in table:
                    ok = False
                    break
                table[acc] = tuple(residues[idx] for idx in combo)
            if ok and len(table) == total:
                self._abasis = candidate
                self._coords = table
                return candidate
        raise SearchBudget(f"no module basis found in {attempts} attempts")

    def coordinates(self, beta):
        """A/aA-coordinates of beta over the module basis."""
        if self._coords is None:
            self.a_basis()
        try:
            return self._coords[beta]
        except KeyError:
            raise PointNotInModule(f"{beta!r} is outside the torsion module") from None

    def to_json(self):
        return {
            "a": self.a.to_json(),
            "extension_degree_over_K": self.m,
            "fq_basis": [b.to_json() for b in self.fq_basis],
            "a_basis": (
                [b.to_json() for b in self._abasis]
                if self._abasis is not None
                else None
            ),
        }

    def __repr__(self):
        return (
            f"TorsionModule(a={self.a.render()!r}, points={self.count()}, "
            f"level={self.level!r})"
        )


@dataclass(frozen=True)
class GaloisElement:
    """The k-th power of the arithmetic Frobenius x -> x**|K| of K."""

    k: int


def torsion_a_basis(tm, seed=0, attempts=200):
    return tm.a_basis(seed=seed, attempts=attempts)


def galois_action_matrix(tm, sigma, basis=None):
    """Matrix of sigma on the torsion module over A/aA: column j holds
    the coordinates of sigma(beta_j)."""
    if basis is None:
        basis = tm.a_basis()
    ring = ResidueRing(tm.a)
    r = len(basis)
    cols = []
    for beta in basis:
        image = tm.apply_galois(beta, sigma)
        cols.append(tm.coordinates(image))
    return [[ring.reduce(cols[j][i]) for j in range(r)] for i in range(r)]


class ResidueRing:
    """Arithmetic in A/aA for a monic modulus a over the base field."""

    __slots__ = ("a", "ctx")

    def __init__(self, a):
        if not a.is_monic() or a.degree < 1:
            raise NonMonic("residue ring needs a monic modulus of degree >= 1")
        self.a = a
        self.ctx = a.ctx

    def reduce(self, u):
        return u % self.a

    def zero(self):
        return UniPoly.zero(self.ctx)

    def one(self):
        return UniPoly.one(self.ctx)

    def add(self, u, v):
        return self.reduce(u + v)

    def sub(self, u, v):
        return self.reduce(u - v)

    def mul(self, u, v):
        return self.reduce(u * v)

    def is_unit(self, u):
        return poly_gcd(self.reduce(u), self.a).degree == 0

    def inv(self, u):
        d, s, _ = poly_xgcd(self.reduce(u), self.a)
        if d.degree != 0:
            raise ZeroDivisionError(f"{u.render()} is not a unit mod {self.a.render()}")
        return self.reduce(s)

    def elements(self):
        base = self.ctx
        for combo in itertools.product(range(base.order), repeat=self.a.degree):
            yield UniPoly(base, [base.element_of_rank(r) for r in combo])

    def det(self, matrix):
        """Determinant by cofactor expansion; matrices here are tiny."""
        n = len(matrix)
        if n == 1:
            return self.reduce(matrix[0][0])
        acc = self.zero()
        for j in range(n):
            minor = [row[:j] + row[j + 1 :] for row in matrix[1:]]
            term = self.mul(matrix[0][j], self.det(minor))
            acc = self.sub(acc, term) if j % 2 else self.add(acc, term)
        return acc
