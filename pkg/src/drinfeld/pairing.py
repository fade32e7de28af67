"""The symmetric coefficient family f_a, Moore determinants, and the
pairing on torsion tuples.

For monic a with roots alpha_1 .. alpha_n (over the splitting level,
with multiplicity), f_a in r variables is the sum over nondecreasing
index chains 1 = i_0 <= i_1 <= ... <= i_r = n of

    prod_j  prod_{i not in [i_{j-1}, i_j]} (T_j - alpha_i),

a symmetric polynomial of degree <= n-1 in every variable whose
coefficients always land back in GF(q).  Two independent constructions
are provided (the chain sum above and a peel-one-root recursion) so
each can serve as the other's oracle.

The pairing itself contracts f_a against Moore determinants of
operator images,

    W_a(x_1..x_r) = sum_i  a_i * M(phi_{T^{i_1}}(x_1), ..., phi_{T^{i_r}}(x_r)),

which is a polynomial with q-power exponents: GF(q)-linear in every
slot, alternating, and valued in the torsion of the rank-1 determinant
module.
"""

from __future__ import annotations

import itertools
from math import comb

from .errors import (
    ArityMismatch,
    InseparableTorsion,
    LevelMismatch,
    NonMonic,
    NotInSubfield,
    NotTorsionPoint,
    RationalityFailure,
)
from .fields import FieldElement, determinant, field_from_descriptor
from .polynomials import MultiPoly, UniPoly, roots_in_field, splitting_level


class FaPoly:
    """A computed f_a together with how it was produced."""

    __slots__ = ("poly", "a", "r", "route", "roots")

    def __init__(self, poly, a, r, route, roots):
        self.poly = poly
        self.a = a
        self.r = r
        self.route = route
        self.roots = tuple(roots)

    def __eq__(self, other):
        return isinstance(other, FaPoly) and self.poly == other.poly

    def __hash__(self):
        return hash(self.poly)

    def to_json(self):
        obj = self.poly.to_json()
        obj["provenance"] = {"a": self.a.to_json(), "r": self.r, "route": self.route}
        return obj

    def render(self):
        return self.poly.render()

    def __repr__(self):
        return f"FaPoly({self.render()!r}, route={self.route!r})"


def _sorted_roots(a):
    level = splitting_level(a)
    roots = roots_in_field(a, level)
    if len(roots) != a.degree:  # pragma: no cover - splitting level is exact
        raise AssertionError("splitting level did not yield all roots")
    return level, sorted(roots, key=lambda x: x.rank())


def _linear_product(level, nvars, slot, roots_subset):
    """prod (T_{slot+1} - alpha) over the given roots, as a MultiPoly."""
    var = MultiPoly.variable(level, nvars, slot)
    acc = MultiPoly.one(level, nvars)
    for alpha in roots_subset:
        acc = acc * (var - MultiPoly.constant(level, nvars, alpha))
    return acc


def chain_sum_over_roots(level, roots, r):
    """The chain-sum construction from an explicit root list (with
    multiplicity), over whatever level the roots live in.  An empty
    root list gives the zero polynomial, matching the empty chain sum."""
    n = len(roots)
    if n == 0:
        return MultiPoly.zero(level, r)
    acc = MultiPoly.zero(level, r)
    count = 0
    for mid in itertools.combinations_with_replacement(range(1, n + 1), r - 1):
        chain = (1,) + mid + (n,)
        count += 1
        term = MultiPoly.one(level, r)
        for j in range(1, r + 1):
            lo, hi = chain[j - 1], chain[j]
            omitted = [roots[i - 1] for i in range(1, n + 1) if not lo <= i <= hi]
            term = term * _linear_product(level, r, j - 1, omitted)
        acc = acc + term
    assert count == comb(n + r - 2, r - 1), "chain enumeration miscounted"
    return acc


def _coerce_to_base(poly, base):
    """Push coefficients down to the base field; the symmetric family
    is guaranteed rational, so failure here means a bug upstream."""
    if poly.ctx is base:
        return poly
    terms = {}
    for exps, c in poly.terms.items():
        try:
            terms[exps] = c.project_to(base)
        except NotInSubfield:
            raise RationalityFailure(
                f"coefficient {c.to_json()} of {list(exps)} is not rational"
            ) from None
    return MultiPoly(base, poly.nvars, terms)


def _check_inputs(a, r):
    if not a.is_monic():
        raise NonMonic(f"{a.render()} is not monic")
    if a.degree < 1:
        raise NonMonic("need deg(a) >= 1")
    if r < 1:
        raise ArityMismatch("need r >= 1")


_F_CACHE = {}


def f_chain_sum(a, r):
    """f_a by direct summation over index chains through the roots.

    Results are memoized per (field, a, r); the returned value must be
    treated as immutable, which every polynomial operation respects.
    """
    _check_inputs(a, r)
    key = ("chain", a.ctx, a.coeffs, r)
    got = _F_CACHE.get(key)
    if got is not None:
        return got
    level, roots = _sorted_roots(a)
    poly = chain_sum_over_roots(level, roots, r)
    result = FaPoly(_coerce_to_base(poly, a.ctx), a, r, "chain", roots)
    _F_CACHE[key] = result
    return result


def f_recursive(a, r):
    """f_a by the peel-one-root recursion; equals f_chain_sum exactly.

    Always eliminates the last variable and peels the smallest root, so
    runs are reproducible; any other choice would give the same result.
    """
    _check_inputs(a, r)
    key = ("recursive", a.ctx, a.coeffs, r)
    got = _F_CACHE.get(key)
    if got is not None:
        return got
    level, roots = _sorted_roots(a)
    memo = {}

    def build(roots_left, arity):
        key = (roots_left, arity)
        got = memo.get(key)
        if got is not None:
            return got
        n = len(roots_left)
        if arity == 1 or n == 1:
            result = MultiPoly.one(level, arity)
        else:
            alpha = roots_left[0]
            head = _linear_product(level, arity, arity - 1, roots_left[1:])
            keep = MultiPoly.one(level, arity)
            for j in range(arity - 1):
                keep = keep * (
                    MultiPoly.variable(level, arity, j)
                    - MultiPoly.constant(level, arity, alpha)
                )
            peeled = keep * build(roots_left[1:], arity)
            lowered = build(roots_left, arity - 1)
            lifted = MultiPoly(
                level,
                arity,
                {exps + (0,): c for exps, c in lowered.terms.items()},
            )
            result = peeled + head * lifted
        memo[key] = result
        return result

    poly = build(tuple(roots), r)
    result = FaPoly(_coerce_to_base(poly, a.ctx), a, r, "recursive", roots)
    _F_CACHE[key] = result
    return result


def f_root_order_variant(a, r, order):
    """f_a computed with the root list permuted; root order never
    changes the result."""
    _check_inputs(a, r)
    level, roots = _sorted_roots(a)
    order = tuple(order)
    if sorted(order) != list(range(len(roots))):
        raise ArityMismatch(f"{order} is not a permutation of the {len(roots)} roots")
    shuffled = [roots[i] for i in order]
    poly = chain_sum_over_roots(level, shuffled, r)
    return FaPoly(_coerce_to_base(poly, a.ctx), a, r, "chain", shuffled)


# ---------------------------------------------------------------------------
# q-power-exponent polynomials
# ---------------------------------------------------------------------------


class QPowerPoly:
    """Sparse polynomial whose monomials are x_1**(q**j_1) ... x_r**(q**j_r),
    keyed by the Frobenius-exponent tuple (j_1 .. j_r).  Evaluation is
    GF(q)-linear in every argument."""

    __slots__ = ("ctx", "nvars", "terms")

    def __init__(self, ctx, nvars, terms=None):
        cleaned = {}
        for key, c in (terms or {}).items():
            if len(key) != nvars:
                raise ArityMismatch(f"exponent tuple {key} is not length {nvars}")
            if not c.is_zero():
                cleaned[tuple(int(j) for j in key)] = (
                    c if c.ctx is ctx else c.embed_to(ctx)
                )
        self.ctx = ctx
        self.nvars = nvars
        self.terms = cleaned

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, QPowerPoly)
            and self.ctx is other.ctx
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((id(self.ctx), self.nvars, frozenset(self.terms.items())))

    def __add__(self, other):
        if self.ctx is not other.ctx or self.nvars != other.nvars:
            raise ArityMismatch("incompatible q-power polynomials")
        terms = dict(self.terms)
        zero = self.ctx.zero_element
        for key, c in other.terms.items():
            terms[key] = terms.get(key, zero) + c
        return QPowerPoly(self.ctx, self.nvars, terms)

    def scale(self, value):
        value = value if value.ctx is self.ctx else value.embed_to(self.ctx)
        return QPowerPoly(
            self.ctx, self.nvars, {k: c * value for k, c in self.terms.items()}
        )

    def max_frob_exp(self, j):
        """Largest Frobenius exponent of variable slot j; -1 when absent."""
        present = [key[j] for key in self.terms]
        return max(present) if present else -1

    def degree_in(self, j):
        """Actual degree in slot j, i.e. q**max_frob_exp."""
        e = self.max_frob_exp(j)
        return 0 if e < 0 else self.ctx.q**e

    def top_slice(self, j, frob_exp):
        """Coefficient of x_{j+1}**(q**frob_exp) as a polynomial in the
        remaining variables (slot j removed)."""
        terms = {}
        for key, c in self.terms.items():
            if key[j] == frob_exp:
                terms[key[:j] + key[j + 1 :]] = c
        return QPowerPoly(self.ctx, self.nvars - 1, terms)

    def __call__(self, points):
        if len(points) != self.nvars:
            raise ArityMismatch(f"need {self.nvars} arguments")
        level = points[0].ctx
        acc = level.zero_element
        cache = [{0: x} for x in points]
        for key, c in self.terms.items():
            term = c.embed_to(level)
            for slot, j in enumerate(key):
                powers = cache[slot]
                if j not in powers:
                    top = max(powers)
                    y = powers[top]
                    for step in range(top + 1, j + 1):
                        y = y.frobenius(1)
                        powers[step] = y
                term = term * powers[j]
            acc = acc + term
        return acc

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: item[0])

    def to_json(self):
        return {
            "vars": self.nvars,
            "level": self.ctx.descriptor(),
            "terms": [
                {"frob_exps": list(k), "coeff": c.to_json()}
                for k, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, obj, ctx=None):
        level = ctx if ctx is not None else field_from_descriptor(obj["level"])
        terms = {}
        for t in obj["terms"]:
            terms[tuple(t["frob_exps"])] = level.element_from_json(t["coeff"])
        return cls(level, int(obj["vars"]), terms)

    def render(self, var="x"):
        if not self.terms:
            return "0"
        q = self.ctx.q
        parts = []
        for key, c in self.sorted_terms():
            factors = []
            for slot, j in enumerate(key):
                e = q**j
                factors.append(f"{var}{slot + 1}" + (f"^{e}" if e > 1 else ""))
            body = "*".join(factors)
            parts.append(body if c.is_one() else f"{c.rank()}*{body}")
        return " + ".join(parts)

    def __repr__(self):
        return f"QPowerPoly({self.render()!r} over {self.ctx!r})"


def _signed_permutations(r):
    out = []
    for perm in itertools.permutations(range(r)):
        inversions = sum(
            1 for i in range(r) for j in range(i + 1, r) if perm[i] > perm[j]
        )
        out.append((perm, -1 if inversions % 2 else 1))
    return out


def moore_poly(r, ctx):
    """The Moore determinant det(x_i**(q**(j-1))) as a QPowerPoly with
    +-1 coefficients and r! terms."""
    one = ctx.one_element
    terms = {}
    for perm, sign in _signed_permutations(r):
        terms[perm] = one if sign == 1 else -one
    return QPowerPoly(ctx, r, terms)


def moore_eval(betas):
    """Moore determinant of the arguments, by Gaussian elimination on
    the evaluated matrix."""
    r = len(betas)
    rows = []
    for x in betas:
        row = [x]
        for _ in range(r - 1):
            row.append(row[-1].frobenius(1))
        rows.append(row)
    return determinant(rows)


# ---------------------------------------------------------------------------
# the pairing
# ---------------------------------------------------------------------------


def weil_polynomial(phi, a, arity=None, f_poly=None):
    """The pairing as an explicit q-power-exponent polynomial over K.

    `arity` defaults to the rank of phi; passing arity r-1 gives the
    lower formula that Moore cofactor expansion recovers from the top
    coefficient in the last variable.
    """
    if not a.is_monic() or a.degree < 1:
        raise NonMonic(f"{a.render()} must be monic of degree >= 1")
    r = phi.rank if arity is None else arity
    if f_poly is None:
        f_poly = f_chain_sum(a, r).poly
    K = phi.K
    n = a.degree
    tpow_coeffs = [phi.phi_tpow(i).coeffs for i in range(n)]
    terms = {}
    zero = K.zero_element
    for exps, c in f_poly.terms.items():
        c_k = c.embed_to(K)
        slot_terms = []
        for slot in range(r):
            coeffs = tpow_coeffs[exps[slot]]
            slot_terms.append(
                [(k, coeff) for k, coeff in enumerate(coeffs) if not coeff.is_zero()]
            )
        for perm, sign in _signed_permutations(r):
            base_val = c_k if sign == 1 else -c_k
            for combo in itertools.product(*slot_terms):
                key = tuple(k + perm[slot] for slot, (k, _) in enumerate(combo))
                val = base_val
                for slot, (_, coeff) in enumerate(combo):
                    val = val * coeff.frobenius(perm[slot])
                terms[key] = terms.get(key, zero) + val
    return QPowerPoly(K, r, terms)


def _torsion_guard(phi, a, betas):
    if not a.is_monic() or a.degree < 1:
        raise NonMonic(f"{a.render()} must be monic of degree >= 1")
    if phi.gamma(a).is_zero():
        raise InseparableTorsion(
            f"a is divisible by the A-characteristic generated by "
            f"{phi.char_poly().render()}"
        )
    if len(betas) != phi.rank:
        raise ArityMismatch(f"need {phi.rank} torsion points")
    level = betas[0].ctx
    for b in betas:
        if b.ctx is not level:
            raise LevelMismatch("torsion points live in different levels")
    phi_a = phi.phi(a)
    for b in betas:
        if not phi_a(b).is_zero():
            raise NotTorsionPoint(f"{b!r} is not annihilated by phi_a")
    return level


def weil_evaluate(phi, a, betas, f_poly=None):
    """Pairing value on a torsion tuple, by the direct contraction
    sum_i a_i * MooreDet(phi_{T^{i_1}}(beta_1), ..., phi_{T^{i_r}}(beta_r)).

    Membership of each argument in the a-torsion is checked, and the
    value is verified to land in the determinant module's a-torsion.
    """
    level = _torsion_guard(phi, a, betas)
    r = phi.rank
    if f_poly is None:
        f_poly = f_chain_sum(a, r).poly
    applied = []
    for b in betas:
        applied.append([phi.phi_tpow(i)(b) for i in range(a.degree)])
    acc = level.zero_element
    for exps, c in f_poly.terms.items():
        det = moore_eval([applied[slot][exps[slot]] for slot in range(r)])
        acc = acc + c.embed_to(level) * det
    psi_a = phi.det_module().phi(a)
    if not psi_a(acc).is_zero():  # pragma: no cover - theorem-backed tripwire
        raise AssertionError("pairing value escaped the determinant torsion")
    return acc


def weil_nonmonic(phi, ca, betas):
    """Pairing for a nonzero scalar multiple c*a of a monic operator:
    the value is c**(r-1) times the monic pairing, on the same torsion."""
    if ca.is_zero() or ca.degree < 1:
        raise NonMonic("need a nonconstant operator polynomial")
    c = ca.leading()
    a = ca.monic()
    w = weil_evaluate(phi, a, betas)
    scale = c ** (phi.rank - 1)
    return scale.embed_to(w.ctx) * w


class PairingEvaluator:
    """Evaluates one pairing on many tuples from a fixed level.

    Flattens the pairing polynomial once and caches Frobenius powers
    per point, so exhaustive sweeps cost a handful of multiplications
    per tuple.  This is the fast route; `weil_evaluate` is the direct
    contraction, and the two are compared term-for-term in the
    verification suites.
    """

    __slots__ = ("phi", "a", "level", "poly", "_powers")

    def __init__(self, phi, a, level, f_poly=None, arity=None):
        self.phi = phi
        self.a = a
        self.level = level
        poly = weil_polynomial(phi, a, arity=arity, f_poly=f_poly)
        lifted = {k: c.embed_to(level) for k, c in poly.terms.items()}
        self.poly = QPowerPoly(level, poly.nvars, lifted)
        self._powers = {}

    def powers_of(self, beta):
        got = self._powers.get(beta)
        if got is None:
            top = 0
            for key in self.poly.terms:
                top = max(top, max(key))
            got = [beta]
            for _ in range(top):
                got.append(got[-1].frobenius(1))
            self._powers[beta] = got
        return got

    def __call__(self, betas):
        if len(betas) != self.poly.nvars:
            raise ArityMismatch(f"need {self.poly.nvars} arguments")
        rows = [self.powers_of(b) for b in betas]
        acc = self.level.zero_element
        for key, c in self.poly.terms.items():
            term = c
            for slot, j in enumerate(key):
                term = term * rows[slot][j]
            acc = acc + term
        return acc
