"""Exact arithmetic for finite fields and their extension towers.

A field is described by a :class:`FieldCtx`, which is either the prime
field GF(p) or an extension of another context by a monic irreducible
modulus.  ``make_field(p, e)`` builds GF(p**e) in one step and marks it
as the *base* level: its cardinality q is the one that drives every
Frobenius computation (x -> x**q), regardless of how much further the
tower is extended.  ``extend(ctx, m)`` stacks one more level of degree
m on top of any context.

Internally an element of the prime field is an integer in ``range(p)``
and an element of an extension is a tuple of parent values,
little-endian in the residue generator.  These raw payloads are plain
ints/tuples, so equality and hashing are structural and every value is
immutable.  The public wrapper is :class:`FieldElement`.

Every context ranks its elements 0 .. order-1 by flattening the payload
to base-p digits; modulus searches, root scans and exhaustive sweeps
all enumerate elements in rank order, which is what makes runs
reproducible across machines.
"""

from __future__ import annotations

from .errors import (
    DivisionByZero,
    InvalidDegree,
    LevelMismatch,
    NonPrimeCharacteristic,
    NotInSubfield,
    ReducibleModulus,
    WrongLength,
)

# ---------------------------------------------------------------------------
# polynomial helpers on raw payload lists (coefficients live in `ctx`)
# ---------------------------------------------------------------------------


def _pstrip(ctx, coeffs):
    zero = ctx.zero()
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == zero:
        coeffs.pop()
    return coeffs


def _pdeg(coeffs):
    return len(coeffs) - 1


def _psub(ctx, f, g):
    n = max(len(f), len(g))
    zero = ctx.zero()
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else zero
        b = g[i] if i < len(g) else zero
        out.append(ctx.sub(a, b))
    return _pstrip(ctx, out)


def _pmul(ctx, f, g):
    if not f or not g:
        return []
    zero = ctx.zero()
    out = [zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == zero:
            continue
        for j, b in enumerate(g):
            if b == zero:
                continue
            out[i + j] = ctx.add(out[i + j], ctx.mul(a, b))
    return _pstrip(ctx, out)


def _pdivmod(ctx, num, den):
    den = _pstrip(ctx, den)
    if not den:
        raise DivisionByZero("polynomial division by zero")
    num = list(num)
    dd = _pdeg(den)
    zero = ctx.zero()
    inv_lead = ctx.inv(den[-1])
    quo = [zero] * max(0, len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c == zero:
            continue
        factor = ctx.mul(c, inv_lead)
        quo[k - dd] = factor
        for j in range(dd + 1):
            num[k - dd + j] = ctx.sub(num[k - dd + j], ctx.mul(factor, den[j]))
    return _pstrip(ctx, quo), _pstrip(ctx, num[:dd] if dd > 0 else [])


def _pmod(ctx, num, den):
    return _pdivmod(ctx, num, den)[1]


def _pmonic(ctx, f):
    f = _pstrip(ctx, f)
    if not f:
        return f
    inv = ctx.inv(f[-1])
    return [ctx.mul(c, inv) for c in f]


def _pgcd(ctx, f, g):
    f, g = _pstrip(ctx, f), _pstrip(ctx, g)
    while g:
        f, g = g, _pmod(ctx, f, g)
    return _pmonic(ctx, f)


def _pxgcd(ctx, f, g):
    """Extended gcd: returns (d, u, v) with u*f + v*g = d, d monic."""
    zero, one = ctx.zero(), ctx.one()
    r0, r1 = _pstrip(ctx, f), _pstrip(ctx, g)
    u0, u1 = [one], []
    v0, v1 = [], [one]
    while r1:
        q, r = _pdivmod(ctx, r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, _psub(ctx, u0, _pmul(ctx, q, u1))
        v0, v1 = v1, _psub(ctx, v0, _pmul(ctx, q, v1))
    if r0:
        inv = ctx.inv(r0[-1])
        scale = [inv]
        r0 = _pmul(ctx, r0, scale)
        u0 = _pmul(ctx, u0, scale)
        v0 = _pmul(ctx, v0, scale)
    return r0, u0, v0


def _ppow_mod(ctx, f, exponent, mod):
    result = [ctx.one()]
    acc = _pmod(ctx, f, mod)
    while exponent > 0:
        if exponent & 1:
            result = _pmod(ctx, _pmul(ctx, result, acc), mod)
        acc = _pmod(ctx, _pmul(ctx, acc, acc), mod)
        exponent >>= 1
    return result


def _is_irreducible(ctx, f):
    """Criterion: monic f of degree d is irreducible over GF(Q) iff
    gcd(x**(Q**i) - x, f) = 1 for every i up to d // 2."""
    f = _pstrip(ctx, f)
    d = _pdeg(f)
    if d < 1:
        return False
    if d == 1:
        return True
    zero, one = ctx.zero(), ctx.one()
    x = [zero, one]
    if f[0] == zero:  # divisible by x
        return False
    order = ctx.order
    h = x
    for _ in range(d // 2):
        h = _ppow_mod(ctx, h, order, f)
        if _pdeg(_pgcd(ctx, _psub(ctx, h, x), f)) > 0:
            return False
    return True


def _find_irreducible(ctx, degree):
    """Deterministic search: smallest coefficient sequence wins, where
    lower coefficients are ranked first (counting order in base |ctx|)."""
    order = ctx.order
    one = ctx.one()
    for n in range(order**degree):
        coeffs = []
        k = n
        for _ in range(degree):
            coeffs.append(ctx.payload_of_rank(k % order))
            k //= order
        candidate = coeffs + [one]
        if _is_irreducible(ctx, candidate):
            return tuple(candidate)
    raise ReducibleModulus(f"no irreducible of degree {degree}")  # pragma: no cover


def _is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


# ---------------------------------------------------------------------------
# contexts
# ---------------------------------------------------------------------------


class FieldCtx:
    """One level of a tower of finite fields.

    Do not instantiate directly; use :func:`make_field` and
    :func:`extend`, which validate inputs and cache levels so that
    identical constructions return the identical context object.
    """

    __slots__ = (
        "p",
        "parent",
        "degree",
        "modulus",
        "q",
        "base",
        "order",
        "dim_over_prime",
        "_ext_cache",
        "_zero_el",
        "_one_el",
        "_inv_cache",
        "_frob_cache",
    )

    def __init__(self, p, parent=None, degree=1, modulus=None):
        self.p = p
        self.parent = parent
        self.degree = degree
        self.modulus = modulus
        if parent is None:
            self.order = p
            self.dim_over_prime = 1
            self.q = p
            self.base = self
        else:
            self.order = parent.order**degree
            self.dim_over_prime = parent.dim_over_prime * degree
            self.q = parent.q
            self.base = parent.base
        self._ext_cache = {}
        self._zero_el = None
        self._one_el = None
        self._inv_cache = {}
        self._frob_cache = {}

    # -- payload arithmetic -------------------------------------------------

    def zero(self):
        if self.parent is None:
            return 0
        return (self.parent.zero(),) * self.degree

    def one(self):
        if self.parent is None:
            return 1 % self.p
        par = self.parent
        return (par.one(),) + (par.zero(),) * (self.degree - 1)

    def add(self, a, b):
        if self.parent is None:
            return (a + b) % self.p
        par = self.parent
        return tuple(par.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        if self.parent is None:
            return (a - b) % self.p
        par = self.parent
        return tuple(par.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        if self.parent is None:
            return (-a) % self.p
        par = self.parent
        return tuple(par.neg(x) for x in a)

    def mul(self, a, b):
        if self.parent is None:
            return (a * b) % self.p
        if self.parent.parent is None:
            return self._mul_over_prime(a, b)
        return self._mul_generic(a, b)

    def _mul_over_prime(self, a, b):
        # fast path: coefficients are plain ints mod p
        p = self.p
        d = self.degree
        prod = [0] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        mod = self.modulus
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k] % p
            if c:
                off = k - d
                for j in range(d):
                    mj = mod[j]
                    if mj:
                        prod[off + j] -= c * mj
        return tuple(c % p for c in prod[:d])

    def _mul_generic(self, a, b):
        par = self.parent
        d = self.degree
        zero = par.zero()
        prod = [zero] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai == zero:
                continue
            for j, bj in enumerate(b):
                if bj == zero:
                    continue
                prod[i + j] = par.add(prod[i + j], par.mul(ai, bj))
        mod = self.modulus
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if c == zero:
                continue
            off = k - d
            for j in range(d):
                mj = mod[j]
                if mj != zero:
                    prod[off + j] = par.sub(prod[off + j], par.mul(c, mj))
        return tuple(prod[:d])

    def inv(self, a):
        if a == self.zero():
            raise DivisionByZero(f"inverse of zero in {self!r}")
        cached = self._inv_cache.get(a)
        if cached is not None:
            return cached
        if self.parent is None:
            result = pow(a, self.p - 2, self.p)
        else:
            par = self.parent
            d, u, _ = _pxgcd(par, list(a), list(self.modulus))
            if _pdeg(d) != 0:  # pragma: no cover - modulus is irreducible
                raise DivisionByZero("element not invertible")
            u = _pmod(par, u, list(self.modulus))
            u = u + [par.zero()] * (self.degree - len(u))
            result = tuple(u)
        self._inv_cache[a] = result
        return result

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a, e):
        if e < 0:
            return self.power(self.inv(a), -e)
        result = self.one()
        acc = a
        while e > 0:
            if e & 1:
                result = self.mul(result, acc)
            acc = self.mul(acc, acc)
            e >>= 1
        return result

    def frobenius(self, a, k=1):
        """Payload of a**(q**k) for q the tower's base cardinality."""
        if k == 0 or self.order <= self.q:
            return a  # fixed by x -> x**q at or below the base level
        cache = self._frob_cache
        for _ in range(k):
            nxt = cache.get(a)
            if nxt is None:
                nxt = self.power(a, self.q)
                cache[a] = nxt
            a = nxt
        return a

    # -- ranking and enumeration --------------------------------------------

    def rank_of(self, a):
        if self.parent is None:
            return a
        par = self.parent
        r = 0
        for c in reversed(a):
            r = r * par.order + par.rank_of(c)
        return r

    def payload_of_rank(self, n):
        if not 0 <= n < self.order:
            raise ValueError(f"rank {n} out of range for {self!r}")
        if self.parent is None:
            return n
        par = self.parent
        coeffs = []
        for _ in range(self.degree):
            coeffs.append(par.payload_of_rank(n % par.order))
            n //= par.order
        return tuple(coeffs)

    def iter_payloads(self):
        for n in range(self.order):
            yield self.payload_of_rank(n)

    def elements(self):
        """All elements of this level, in rank order."""
        for payload in self.iter_payloads():
            yield FieldElement(self, payload)

    # -- element construction -----------------------------------------------

    @property
    def zero_element(self):
        if self._zero_el is None:
            self._zero_el = FieldElement(self, self.zero())
        return self._zero_el

    @property
    def one_element(self):
        if self._one_el is None:
            self._one_el = FieldElement(self, self.one())
        return self._one_el

    def element_of_rank(self, n):
        return FieldElement(self, self.payload_of_rank(n))

    def elem(self, payload):
        """Wrap a raw payload after validating its shape."""
        self._check_payload(payload)
        return FieldElement(self, payload)

    def _check_payload(self, payload):
        if self.parent is None:
            if not isinstance(payload, int) or not 0 <= payload < self.p:
                raise ValueError(f"bad payload {payload!r} for {self!r}")
        else:
            if not isinstance(payload, tuple) or len(payload) != self.degree:
                raise WrongLength(
                    f"payload for {self!r} needs {self.degree} coefficients"
                )
            for c in payload:
                self.parent._check_payload(c)

    def element_from_json(self, obj):
        """Parse the nested coefficient array form of an element."""
        if self.parent is None:
            return FieldElement(self, int(obj) % self.p)
        if not isinstance(obj, (list, tuple)) or len(obj) != self.degree:
            raise WrongLength(f"element of {self!r} needs {self.degree} entries")
        return FieldElement(
            self, tuple(self.parent.element_from_json(c).val for c in obj)
        )

    # -- tower relations ----------------------------------------------------

    def is_above(self, other):
        """True when `other` equals this level or an ancestor of it."""
        ctx = self
        while ctx is not None:
            if ctx is other:
                return True
            ctx = ctx.parent
        return False

    def embed_payload(self, a, from_ctx):
        if from_ctx is self:
            return a
        if self.parent is None or not self.is_above(from_ctx):
            raise LevelMismatch(f"{from_ctx!r} does not embed into {self!r}")
        par = self.parent
        lifted = par.embed_payload(a, from_ctx)
        return (lifted,) + (par.zero(),) * (self.degree - 1)

    def project_payload(self, a, to_ctx):
        if to_ctx is self:
            return a
        if self.parent is None or not self.is_above(to_ctx):
            raise LevelMismatch(f"{self!r} does not project onto {to_ctx!r}")
        par = self.parent
        zero = par.zero()
        if any(c != zero for c in a[1:]):
            raise NotInSubfield(f"element is not in the image of {to_ctx!r}")
        return par.project_payload(a[0], to_ctx)

    # -- serialization ------------------------------------------------------

    def descriptor(self):
        """JSON form: characteristic, base degree and the tower moduli."""
        levels = []
        ctx = self
        while ctx.parent is not None:
            below = ctx.parent
            levels.append(
                {
                    "degree": ctx.degree,
                    "modulus": [below.element_to_json(c) for c in ctx.modulus],
                }
            )
            ctx = below
        levels.reverse()
        e = self.base.dim_over_prime
        return {"p": self.p, "e": e, "tower": levels}

    def element_to_json(self, payload):
        if self.parent is None:
            return payload
        return [self.parent.element_to_json(c) for c in payload]

    def __repr__(self):
        if self.dim_over_prime == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.dim_over_prime})"


_PRIME_FIELDS = {}
_BASE_FIELDS = {}


def make_field(p, e=1, modulus=None):
    """Context for GF(p**e); this level becomes the tower's base.

    When no modulus is supplied, the lexicographically smallest monic
    irreducible of degree e over GF(p) is found by counting-order
    search, so repeated runs agree on the representation.
    """
    if not isinstance(p, int) or not _is_prime(p):
        raise NonPrimeCharacteristic(f"{p} is not prime")
    if e < 1:
        raise InvalidDegree(f"extension degree {e} < 1")
    prime = _PRIME_FIELDS.get(p)
    if prime is None:
        prime = FieldCtx(p)
        _PRIME_FIELDS[p] = prime
    if e == 1:
        if modulus is not None:
            raise ValueError("a modulus only makes sense for e >= 2")
        return prime
    if modulus is not None:
        mod = tuple(int(c) % p for c in modulus)
        if len(mod) != e + 1 or mod[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {e}")
        if not _is_irreducible(prime, list(mod)):
            raise ReducibleModulus(f"modulus {list(mod)} factors over GF({p})")
    else:
        mod = _find_irreducible(prime, e)
    key = (p, e, mod)
    ctx = _BASE_FIELDS.get(key)
    if ctx is None:
        ctx = FieldCtx(p, parent=prime, degree=e, modulus=mod)
        # this level is the designated base: q = p**e lives here
        ctx.q = p**e
        ctx.base = ctx
        _BASE_FIELDS[key] = ctx
    return ctx


def extend(ctx, m, modulus=None):
    """One more tower level of degree m over `ctx`.

    Returns ``(new_ctx, embed)`` where `embed` maps elements of `ctx`
    (or anything below it) into the new level.  Levels are cached, so
    extending the same context by the same degree twice hands back the
    identical object.
    """
    if m < 1:
        raise InvalidDegree(f"extension degree {m} < 1")
    if modulus is not None:
        mod = tuple(c.val if isinstance(c, FieldElement) else c for c in modulus)
        if len(mod) != m + 1 or mod[-1] != ctx.one():
            raise ValueError(f"modulus must be monic of degree {m}")
        if not _is_irreducible(ctx, list(mod)):
            raise ReducibleModulus(f"modulus factors over {ctx!r}")
    else:
        mod = ctx._ext_cache.get(("found", m))
        if mod is None:
            mod = _find_irreducible(ctx, m)
            ctx._ext_cache[("found", m)] = mod
    new = ctx._ext_cache.get((m, mod))
    if new is None:
        new = FieldCtx(ctx.p, parent=ctx, degree=m, modulus=mod)
        ctx._ext_cache[(m, mod)] = new

    def embed(x):
        return x.embed_to(new)

    return new, embed


def field_from_descriptor(desc):
    """Rebuild the context a descriptor came from (levels are cached,
    so this returns the identical object for identical descriptors)."""
    p = int(desc["p"])
    e = int(desc["e"])
    tower = list(desc.get("tower", ()))
    if e > 1:
        if not tower or int(tower[0]["degree"]) != e:
            raise ValueError("descriptor base degree disagrees with its tower")
        ctx = make_field(p, e, modulus=tower[0]["modulus"])
        tower = tower[1:]
    else:
        ctx = make_field(p)
    for level in tower:
        mod = [ctx.element_from_json(c).val for c in level["modulus"]]
        ctx, _ = extend(ctx, int(level["degree"]), modulus=mod)
    return ctx


def dim_between(upper, lower):
    """Dimension of `upper` as a vector space over `lower`."""
    dim = 1
    ctx = upper
    while ctx is not lower:
        if ctx.parent is None:
            raise LevelMismatch(f"{lower!r} is not below {upper!r}")
        dim *= ctx.degree
        ctx = ctx.parent
    return dim


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------


class FieldElement:
    """Immutable element of one tower level; arithmetic embeds operands
    upward automatically when one level sits above the other."""

    __slots__ = ("ctx", "val")

    def __init__(self, ctx, val):
        self.ctx = ctx
        self.val = val

    def _pair(self, other):
        if not isinstance(other, FieldElement):
            raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")
        if self.ctx is other.ctx:
            return self.ctx, self.val, other.val
        if self.ctx.is_above(other.ctx):
            return self.ctx, self.val, self.ctx.embed_payload(other.val, other.ctx)
        if other.ctx.is_above(self.ctx):
            return other.ctx, other.ctx.embed_payload(self.val, self.ctx), other.val
        raise LevelMismatch(f"{self.ctx!r} and {other.ctx!r} are incomparable")

    def __add__(self, other):
        ctx, a, b = self._pair(other)
        return FieldElement(ctx, ctx.add(a, b))

    def __sub__(self, other):
        ctx, a, b = self._pair(other)
        return FieldElement(ctx, ctx.sub(a, b))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.val))

    def __mul__(self, other):
        ctx, a, b = self._pair(other)
        return FieldElement(ctx, ctx.mul(a, b))

    def __truediv__(self, other):
        ctx, a, b = self._pair(other)
        if b == ctx.zero():
            raise DivisionByZero("division by zero")
        return FieldElement(ctx, ctx.div(a, b))

    def __pow__(self, e):
        return FieldElement(self.ctx, self.ctx.power(self.val, e))

    def __eq__(self, other):
        return (
            isinstance(other, FieldElement)
            and self.ctx is other.ctx
            and self.val == other.val
        )

    def __hash__(self):
        return hash((id(self.ctx), self.val))

    def is_zero(self):
        return self.val == self.ctx.zero()

    def is_one(self):
        return self.val == self.ctx.one()

    def inverse(self):
        return FieldElement(self.ctx, self.ctx.inv(self.val))

    def frobenius(self, k=1):
        """self ** (q**k) for q the cardinality of the tower's base."""
        return FieldElement(self.ctx, self.ctx.frobenius(self.val, k))

    def embed_to(self, level):
        if level is self.ctx:
            return self
        return FieldElement(level, level.embed_payload(self.val, self.ctx))

    def project_to(self, level):
        if level is self.ctx:
            return self
        return FieldElement(level, self.ctx.project_payload(self.val, level))

    def rank(self):
        return self.ctx.rank_of(self.val)

    def to_json(self):
        return self.ctx.element_to_json(self.val)

    def __repr__(self):
        return f"FieldElement({self.ctx!r}, {self.to_json()!r})"


def frobenius_pow(x, k):
    """x ** (q**k); the identity when x already sits in the base level."""
    return x.frobenius(k)


# ---------------------------------------------------------------------------
# linear algebra over one level
# ---------------------------------------------------------------------------


class MatrixFq:
    """Dense matrix of FieldElements sharing one level."""

    __slots__ = ("ctx", "nrows", "ncols", "rows")

    def __init__(self, rows):
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("matrix dimensions must be positive")
        ctx = rows[0][0].ctx
        ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
            for x in r:
                if x.ctx is not ctx:
                    raise LevelMismatch("matrix entries live in different levels")
        self.ctx = ctx
        self.nrows = len(rows)
        self.ncols = ncols
        self.rows = rows


def kernel(matrix):
    """Basis of the right null space, via reduced row echelon form.

    The returned vectors are independent, each is annihilated by the
    matrix, and their count is ``ncols - rank``.
    """
    if isinstance(matrix, MatrixFq):
        ctx, rows, nrows, ncols = (
            matrix.ctx,
            [list(r) for r in matrix.rows],
            matrix.nrows,
            matrix.ncols,
        )
    else:
        rows = [list(r) for r in matrix]
        nrows, ncols = len(rows), len(rows[0])
        ctx = rows[0][0].ctx
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, nrows):
            if not rows[r][col].is_zero():
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][col].inverse()
        rows[rank] = [x * inv for x in rows[rank]]
        for r in range(nrows):
            if r != rank and not rows[r][col].is_zero():
                c = rows[r][col]
                rows[r] = [x - c * y for x, y in zip(rows[r], rows[rank])]
        pivots.append(col)
        rank += 1
    pivot_set = set(pivots)
    zero, one = ctx.zero_element, ctx.one_element
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [zero] * ncols
        vec[free] = one
        for i, pc in enumerate(pivots):
            vec[pc] = -rows[i][free]
        basis.append(tuple(vec))
    return basis


def solve(rows, rhs):
    """One solution of rows * x = rhs, or None when inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0])
    ctx = rhs[0].ctx
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(aug)):
            if not aug[r][col].is_zero():
                pivot = r
                break
        if pivot is None:
            continue
        aug[rank], aug[pivot] = aug[pivot], aug[rank]
        inv = aug[rank][col].inverse()
        aug[rank] = [x * inv for x in aug[rank]]
        for r in range(len(aug)):
            if r != rank and not aug[r][col].is_zero():
                c = aug[r][col]
                aug[r] = [x - c * y for x, y in zip(aug[r], aug[rank])]
        pivots.append(col)
        rank += 1
    for r in range(rank, len(aug)):
        if not aug[r][-1].is_zero():
            return None
    sol = [ctx.zero_element] * ncols
    for i, pc in enumerate(pivots):
        sol[pc] = aug[i][-1]
    return sol


def determinant(rows):
    """Determinant by Gaussian elimination over the entries' field."""
    n = len(rows)
    mat = [list(r) for r in rows]
    ctx = mat[0][0].ctx
    det = ctx.one_element
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if not mat[r][col].is_zero():
                pivot = r
                break
        if pivot is None:
            return ctx.zero_element
        if pivot != col:
            mat[col], mat[pivot] = mat[pivot], mat[col]
            det = -det
        det = det * mat[col][col]
        inv = mat[col][col].inverse()
        mat[col] = [x * inv for x in mat[col]]
        for r in range(col + 1, n):
            if not mat[r][col].is_zero():
                c = mat[r][col]
                mat[r] = [x - c * y for x, y in zip(mat[r], mat[col])]
    return det


def as_vector(x, over):
    """Coordinates of x with respect to the tower basis over `over`."""
    if x.ctx is over:
        return [x]
    if x.ctx.parent is None:
        raise LevelMismatch(f"{over!r} is not below {x.ctx!r}")
    parent = x.ctx.parent
    out = []
    for c in x.val:
        out.extend(as_vector(FieldElement(parent, c), over))
    return out


def from_vector(coeffs, level):
    """Inverse of :func:`as_vector`: rebuild an element of `level` from
    its coordinates over the level the coefficients live in."""
    coeffs = list(coeffs)
    if not coeffs:
        raise WrongLength("empty coordinate vector")
    low = coeffs[0].ctx
    for c in coeffs:
        if c.ctx is not low:
            raise LevelMismatch("coordinates live in different levels")
    if level is low:
        if len(coeffs) != 1:
            raise WrongLength(f"expected 1 coordinate, got {len(coeffs)}")
        return coeffs[0]
    expected = dim_between(level, low)
    if len(coeffs) != expected:
        raise WrongLength(f"expected {expected} coordinates, got {len(coeffs)}")
    chunk = expected // level.degree
    parts = []
    for i in range(level.degree):
        parts.append(from_vector(coeffs[i * chunk : (i + 1) * chunk], level.parent).val)
    return FieldElement(level, tuple(parts))
