"""Univariate and sparse multivariate polynomials over a tower level.

UniPoly is the workhorse for the operator ring GF(q)[T]: dense
little-endian coefficients, Euclidean division, gcds, root scans and
splitting-field degrees.  MultiPoly is a sparse exponent-tuple ->
coefficient map used for the symmetric coefficient polynomials of the
pairing, together with normal-form reduction modulo the ideal
generated by a(T_1), ..., a(T_r).

The ideal's generators are univariate in distinct variables, so they
form a Groebner basis for any monomial order and the normal form is
just iterated univariate division, one variable at a time.
"""

from __future__ import annotations

import itertools
import math

from .errors import ArityMismatch, DivisionByZero, LevelMismatch
from .fields import FieldElement, extend


class UniPoly:
    """Dense univariate polynomial; little-endian, no trailing zeros."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs=()):
        cleaned = []
        for c in coeffs:
            if not isinstance(c, FieldElement):
                raise TypeError("UniPoly coefficients must be FieldElements")
            cleaned.append(c if c.ctx is ctx else c.embed_to(ctx))
        while cleaned and cleaned[-1].is_zero():
            cleaned.pop()
        self.ctx = ctx
        self.coeffs = tuple(cleaned)

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, ())

    @classmethod
    def one(cls, ctx):
        return cls(ctx, (ctx.one_element,))

    @classmethod
    def gen(cls, ctx):
        """The polynomial T."""
        return cls(ctx, (ctx.zero_element, ctx.one_element))

    @classmethod
    def constant(cls, value):
        return cls(value.ctx, (value,))

    @classmethod
    def from_ranks(cls, ctx, ranks):
        """Coefficients given as element ranks (ints mod p when prime)."""
        return cls(ctx, tuple(ctx.element_of_rank(int(r) % ctx.order) for r in ranks))

    # -- structure -----------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1].is_one()

    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ctx.zero_element

    def __eq__(self, other):
        return (
            isinstance(other, UniPoly)
            and self.ctx is other.ctx
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((id(self.ctx), self.coeffs))

    # -- arithmetic ----------------------------------------------------------

    def _common(self, other):
        if not isinstance(other, UniPoly):
            raise TypeError(f"cannot combine UniPoly with {type(other).__name__}")
        if self.ctx is other.ctx:
            return self.ctx, self, other
        if self.ctx.is_above(other.ctx):
            return self.ctx, self, other.embed_to(self.ctx)
        if other.ctx.is_above(self.ctx):
            return other.ctx, self.embed_to(other.ctx), other
        raise LevelMismatch("polynomials over incomparable levels")

    def __add__(self, other):
        ctx, f, g = self._common(other)
        n = max(len(f.coeffs), len(g.coeffs))
        return UniPoly(ctx, (f[i] + g[i] for i in range(n)))

    def __sub__(self, other):
        ctx, f, g = self._common(other)
        n = max(len(f.coeffs), len(g.coeffs))
        return UniPoly(ctx, (f[i] - g[i] for i in range(n)))

    def __neg__(self):
        return UniPoly(self.ctx, (-c for c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            other = UniPoly.constant(other)
        ctx, f, g = self._common(other)
        if f.is_zero() or g.is_zero():
            return UniPoly.zero(ctx)
        out = [ctx.zero_element] * (f.degree + g.degree + 1)
        for i, a in enumerate(f.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(g.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return UniPoly(ctx, out)

    def __divmod__(self, other):
        ctx, f, g = self._common(other)
        if g.is_zero():
            raise DivisionByZero("polynomial division by zero")
        rem = list(f.coeffs)
        dd = g.degree
        inv_lead = g.leading().inverse()
        quo = [ctx.zero_element] * max(0, len(rem) - dd)
        for k in range(len(rem) - 1, dd - 1, -1):
            if rem[k].is_zero():
                continue
            factor = rem[k] * inv_lead
            quo[k - dd] = factor
            for j in range(dd + 1):
                rem[k - dd + j] = rem[k - dd + j] - factor * g[j]
        return UniPoly(ctx, quo), UniPoly(ctx, rem[:dd])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e):
        result = UniPoly.one(self.ctx)
        acc = self
        while e > 0:
            if e & 1:
                result = result * acc
            acc = acc * acc
            e >>= 1
        return result

    def __call__(self, x):
        """Evaluate by Horner at whichever level is the higher of the
        coefficient level and the point's level."""
        if not isinstance(x, FieldElement):
            raise TypeError("evaluation point must be a FieldElement")
        if self.ctx.is_above(x.ctx):
            target = self.ctx
            x = x.embed_to(target)
        elif x.ctx.is_above(self.ctx):
            target = x.ctx
        else:
            raise LevelMismatch("point and coefficients over incomparable levels")
        acc = target.zero_element
        for c in reversed(self.coeffs):
            acc = acc * x + c.embed_to(target)
        return acc

    def derivative(self):
        ctx = self.ctx
        out = []
        for i in range(1, len(self.coeffs)):
            term = ctx.zero_element
            for _ in range(i % ctx.p):
                term = term + self.coeffs[i]
            out.append(term)
        return UniPoly(ctx, out)

    def monic(self):
        if self.is_zero():
            return self
        inv = self.leading().inverse()
        return UniPoly(self.ctx, (c * inv for c in self.coeffs))

    def embed_to(self, level):
        if level is self.ctx:
            return self
        return UniPoly(level, (c.embed_to(level) for c in self.coeffs))

    # -- serialization -------------------------------------------------------

    def to_json(self):
        return {
            "level": self.ctx.descriptor(),
            "coeffs": [c.to_json() for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj, ctx=None):
        from .fields import field_from_descriptor

        level = ctx if ctx is not None else field_from_descriptor(obj["level"])
        return cls(level, (level.element_from_json(c) for c in obj["coeffs"]))

    def render(self, var="T"):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self[i]
            if c.is_zero():
                continue
            if i == 0:
                parts.append(str(c.rank()))
            else:
                head = "" if c.is_one() else f"{c.rank()}*"
                parts.append(f"{head}{var}" + (f"^{i}" if i > 1 else ""))
        return " + ".join(parts)

    def __repr__(self):
        return f"UniPoly({self.render()!r} over {self.ctx!r})"


def poly_gcd(f, g):
    """Monic gcd by the Euclidean algorithm."""
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()


def poly_xgcd(f, g):
    """(d, u, v) with u*f + v*g = d and d monic."""
    ctx = f.ctx
    r0, r1 = f, g
    u0, u1 = UniPoly.one(ctx), UniPoly.zero(ctx)
    v0, v1 = UniPoly.zero(ctx), UniPoly.one(ctx)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    if not r0.is_zero():
        inv = r0.leading().inverse()
        scale = UniPoly.constant(inv)
        r0, u0, v0 = r0 * scale, u0 * scale, v0 * scale
    return r0, u0, v0


def pow_mod(f, exponent, mod):
    """f**exponent reduced modulo `mod`, by repeated squaring."""
    result = UniPoly.one(mod.ctx)
    acc = f % mod
    while exponent > 0:
        if exponent & 1:
            result = (result * acc) % mod
        acc = (acc * acc) % mod
        exponent >>= 1
    return result


def roots_in_field(f, level):
    """All roots of f in `level`, with multiplicity, in rank order.

    Exhaustive scan over the level plus deflation; fine at desk scale
    and fully deterministic.
    """
    if f.is_zero():
        raise ValueError("root scan of the zero polynomial")
    g = f.embed_to(level)
    roots = []
    x_poly = UniPoly.gen(level)
    for x in level.elements():
        if g.degree < 1:
            break
        while g.degree >= 1 and g(x).is_zero():
            roots.append(x)
            g = g // (x_poly - UniPoly.constant(x))
    return roots


def _pth_root_poly(f):
    # f with zero derivative is a polynomial in T**p; take p-th roots of
    # the surviving coefficients (c -> c**(order/p) inverts x -> x**p).
    ctx = f.ctx
    p = ctx.p
    root_exp = ctx.order // p
    out = []
    for i in range(0, f.degree + 1, p):
        out.append(f[i] ** root_exp)
    return UniPoly(ctx, out)


def _distinct_degree_degrees(f):
    """Degrees (with repetition allowed) of the irreducible factors of a
    squarefree f, by gcds with x**(Q**i) - x."""
    ctx = f.ctx
    order = ctx.order
    degrees = []
    x_poly = UniPoly.gen(ctx)
    h = x_poly % f
    i = 0
    while f.degree > 0:
        i += 1
        if i > f.degree:  # pragma: no cover - loop always terminates earlier
            break
        if 2 * i > f.degree:
            degrees.append(f.degree)
            break
        h = pow_mod(h, order, f)
        g = poly_gcd(h - x_poly, f)
        if g.degree > 0:
            degrees.extend([i] * (g.degree // i))
            f = f // g
            h = h % f
    return degrees


def splitting_level(f):
    """Smallest tower level containing every root of f.

    Returns GF(Q**d) over f's level, where d is the lcm of the degrees
    of f's irreducible factors (found by distinct-degree gcds, never a
    full factorization).
    """
    if f.degree < 1:
        raise ValueError("splitting level of a constant polynomial")
    ctx = f.ctx
    g = f.monic()
    degrees = []
    while g.degree > 0:
        d = g.derivative()
        if d.is_zero():
            g = _pth_root_poly(g)
            continue
        w = g // poly_gcd(g, d)  # product of the factors with exponent prime to p
        degrees.extend(_distinct_degree_degrees(w))
        rest = g
        while True:
            c = poly_gcd(rest, w)
            if c.degree == 0:
                break
            rest = rest // c
        g = rest
    d = math.lcm(*degrees)
    if d == 1:
        return ctx
    return extend(ctx, d)[0]


# ---------------------------------------------------------------------------
# sparse multivariate polynomials
# ---------------------------------------------------------------------------


def _grlex_key(exps):
    # graded lexicographic with T_1 > T_2 > ... ; negated for descending sort
    return (-sum(exps),) + tuple(-e for e in exps)


class MultiPoly:
    """Sparse polynomial in T_1 .. T_r: exponent tuple -> coefficient."""

    __slots__ = ("ctx", "nvars", "terms")

    def __init__(self, ctx, nvars, terms=None):
        self.ctx = ctx
        self.nvars = nvars
        cleaned = {}
        for exps, c in (terms or {}).items():
            if len(exps) != nvars:
                raise ArityMismatch(f"exponent tuple {exps} is not length {nvars}")
            if not c.is_zero():
                cleaned[tuple(int(e) for e in exps)] = (
                    c if c.ctx is ctx else c.embed_to(ctx)
                )
        self.terms = cleaned

    @classmethod
    def zero(cls, ctx, nvars):
        return cls(ctx, nvars, {})

    @classmethod
    def constant(cls, ctx, nvars, value):
        return cls(ctx, nvars, {(0,) * nvars: value})

    @classmethod
    def one(cls, ctx, nvars):
        return cls.constant(ctx, nvars, ctx.one_element)

    @classmethod
    def variable(cls, ctx, nvars, j):
        """The polynomial T_{j+1} (0-indexed slot j)."""
        exps = [0] * nvars
        exps[j] = 1
        return cls(ctx, nvars, {tuple(exps): ctx.one_element})

    def is_zero(self):
        return not self.terms

    def _common(self, other):
        if not isinstance(other, MultiPoly):
            raise TypeError(f"cannot combine MultiPoly with {type(other).__name__}")
        if self.nvars != other.nvars:
            raise ArityMismatch(f"{self.nvars} variables vs {other.nvars}")
        if self.ctx is other.ctx:
            return self.ctx, self, other
        if self.ctx.is_above(other.ctx):
            return self.ctx, self, other.embed_to(self.ctx)
        if other.ctx.is_above(self.ctx):
            return other.ctx, self.embed_to(other.ctx), other
        raise LevelMismatch("polynomials over incomparable levels")

    def __add__(self, other):
        ctx, f, g = self._common(other)
        terms = dict(f.terms)
        zero = ctx.zero_element
        for exps, c in g.terms.items():
            terms[exps] = terms.get(exps, zero) + c
        return MultiPoly(ctx, f.nvars, terms)

    def __sub__(self, other):
        ctx, f, g = self._common(other)
        terms = dict(f.terms)
        zero = ctx.zero_element
        for exps, c in g.terms.items():
            terms[exps] = terms.get(exps, zero) - c
        return MultiPoly(ctx, f.nvars, terms)

    def __neg__(self):
        return MultiPoly(self.ctx, self.nvars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            return self.scale(other)
        ctx, f, g = self._common(other)
        terms = {}
        zero = ctx.zero_element
        for e1, c1 in f.terms.items():
            for e2, c2 in g.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                terms[key] = terms.get(key, zero) + c1 * c2
        return MultiPoly(ctx, f.nvars, terms)

    def scale(self, value):
        value = value if value.ctx is self.ctx else value.embed_to(self.ctx)
        return MultiPoly(
            self.ctx, self.nvars, {e: c * value for e, c in self.terms.items()}
        )

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and self.ctx is other.ctx
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((id(self.ctx), self.nvars, frozenset(self.terms.items())))

    def degree_in(self, j):
        """Degree in variable slot j (0-indexed); -1 for the zero poly."""
        if not self.terms:
            return -1
        return max(e[j] for e in self.terms)

    def permute(self, sigma):
        """Substitute T_j -> T_{sigma(j)}; sigma is a 0-indexed bijection.

        Composition satisfies p.permute(s).permute(r) == p.permute(r o s).
        """
        sigma = tuple(sigma)
        if sorted(sigma) != list(range(self.nvars)):
            raise ArityMismatch(f"{sigma} is not a permutation of {self.nvars} slots")
        terms = {}
        for exps, c in self.terms.items():
            new = [0] * self.nvars
            for j, e in enumerate(exps):
                new[sigma[j]] = e
            terms[tuple(new)] = c
        return MultiPoly(self.ctx, self.nvars, terms)

    def embed_to(self, level):
        if level is self.ctx:
            return self
        return MultiPoly(
            level, self.nvars, {e: c.embed_to(level) for e, c in self.terms.items()}
        )

    def __call__(self, points):
        """Evaluate at a tuple of FieldElements (above the coefficient level)."""
        if len(points) != self.nvars:
            raise ArityMismatch(f"need {self.nvars} points")
        level = points[0].ctx
        acc = level.zero_element
        for exps, c in self.terms.items():
            term = c.embed_to(level)
            for x, e in zip(points, exps):
                if e:
                    term = term * x**e
            acc = acc + term
        return acc

    def sorted_terms(self):
        """Terms in canonical order: graded lex with T_1 > ... > T_r,
        largest monomial first."""
        return sorted(self.terms.items(), key=lambda item: _grlex_key(item[0]))

    def to_json(self):
        return {
            "vars": self.nvars,
            "level": self.ctx.descriptor(),
            "terms": [
                {"exps": list(e), "coeff": c.to_json()} for e, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, obj, ctx=None):
        from .fields import field_from_descriptor

        level = ctx if ctx is not None else field_from_descriptor(obj["level"])
        terms = {}
        for t in obj["terms"]:
            terms[tuple(t["exps"])] = level.element_from_json(t["coeff"])
        return cls(level, int(obj["vars"]), terms)

    def render(self, var="T"):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            factors = []
            for j, e in enumerate(exps):
                if e == 1:
                    factors.append(f"{var}{j + 1}")
                elif e > 1:
                    factors.append(f"{var}{j + 1}^{e}")
            if not factors:
                parts.append(str(c.rank()))
            elif c.is_one():
                parts.append("*".join(factors))
            else:
                parts.append(f"{c.rank()}*" + "*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"MultiPoly({self.render()!r} over {self.ctx!r})"


class IdealI:
    """The ideal generated by a(T_1), ..., a(T_r)."""

    __slots__ = ("a", "nvars")

    def __init__(self, a, nvars):
        if a.degree < 1:
            raise ValueError("ideal generator must have degree >= 1")
        self.a = a
        self.nvars = nvars

    def __repr__(self):
        return f"IdealI(a={self.a.render()!r}, r={self.nvars})"


def normal_form(p, ideal):
    """Reduce p modulo the ideal; the result has degree < deg(a) in
    every variable, the map is linear and idempotent, and p minus the
    result lies in the ideal."""
    ctx = p.ctx
    a = ideal.a if ideal.a.ctx is ctx else ideal.a.embed_to(ctx)
    if p.nvars != ideal.nvars:
        raise ArityMismatch(f"{p.nvars} variables vs ideal arity {ideal.nvars}")
    n = a.degree
    max_exp = 0
    for exps in p.terms:
        max_exp = max(max_exp, max(exps))
    # residues of T**k mod a, as dense coefficient tuples
    residues = []
    acc = UniPoly.one(ctx)
    t_poly = UniPoly.gen(ctx)
    for _ in range(max_exp + 1):
        residues.append(acc)
        acc = (acc * t_poly) % a
    out = {}
    zero = ctx.zero_element
    for exps, coeff in p.terms.items():
        partial = {(): coeff}
        for j in range(p.nvars):
            res = residues[exps[j]]
            nxt = {}
            for prefix, c in partial.items():
                for k in range(res.degree + 1):
                    rc = res[k]
                    if rc.is_zero():
                        continue
                    key = prefix + (k,)
                    nxt[key] = nxt.get(key, zero) + c * rc
            partial = nxt
        for key, c in partial.items():
            out[key] = out.get(key, zero) + c
    return MultiPoly(ctx, p.nvars, out)


def all_monic(ctx, degree):
    """Every monic polynomial of exactly this degree, in rank order."""
    out = []
    for combo in itertools.product(range(ctx.order), repeat=degree):
        coeffs = [ctx.element_of_rank(r) for r in combo] + [ctx.one_element]
        out.append(UniPoly(ctx, coeffs))
    return out
