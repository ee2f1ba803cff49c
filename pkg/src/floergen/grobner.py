"""Groebner bases and finite-dimensional quotient algebras.

Polynomials live in ordinary (nonnegative-exponent) rings as dicts from
exponent tuples to coefficients.  Laurent ideals are handled through the
per-variable inverse encoding: k[z1..zn, z1^-1..zn^-1] becomes
k[w1..wn, z1..zn] modulo the unit relations zi*wi - 1, with the inverse
variables ordered first (largest) so staircase monomials prefer the original
variables.  Each Laurent generator is cleared to polynomial form by
multiplying with the minimal original-variable monomial that makes all
exponents nonnegative.

Proof obligation for the clearing step: multiplying a generator by a monomial
in the zi changes nothing about the ideal in the encoded ring, because every
zi is a unit modulo zi*wi - 1.  (Unit tests exercise invariance of quotient
dimensions under such unit rescalings.)

Buchberger runs with the coprimality and chain criteria and full final
interreduction, so the emitted basis is the unique reduced Groebner basis for
the given order.  A step budget guards against runaway computations.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import linalg
from .errors import ResourceBudgetError, UsageError
from .laurent import LaurentPoly, LaurentRing

DEFAULT_BUDGET = 10**6


class Budget:
    """Counts individual reduction steps across one logical computation."""

    def __init__(self, limit: int = DEFAULT_BUDGET):
        self.limit = limit
        self.steps = 0

    def tick(self, context=""):
        self.steps += 1
        if self.steps > self.limit:
            raise ResourceBudgetError(
                f"reduction budget of {self.limit} exceeded {context}".rstrip(),
                steps=self.steps,
            )


# --- monomial orders ---------------------------------------------------------


class MonomialOrder:
    name = "order"

    def key(self, e):
        raise NotImplementedError


class DegRevLex(MonomialOrder):
    name = "degrevlex"

    def key(self, e):
        return (sum(e), tuple(-x for x in reversed(e)))


class Lex(MonomialOrder):
    name = "lex"

    def key(self, e):
        return tuple(e)


class BlockOrder(MonomialOrder):
    """Eliminates the first `cut` variables: compares that block first."""

    name = "block"

    def __init__(self, cut: int, first=None, second=None):
        self.cut = cut
        self.first = first or DegRevLex()
        self.second = second or DegRevLex()

    def key(self, e):
        return (self.first.key(e[: self.cut]), self.second.key(e[self.cut :]))


DEGREVLEX = DegRevLex()
LEX = Lex()


# --- polynomial dict helpers --------------------------------------------------


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _leading(poly, okey):
    return max(poly, key=okey)


def _add_scaled(field, target, src, coeff, shift):
    """target += coeff * x^shift * src, in place."""
    for e, c in src.items():
        m = _mono_mul(e, shift)
        acc = field.add(target.get(m, field.zero), field.mul(coeff, c))
        if acc == field.zero:
            target.pop(m, None)
        else:
            target[m] = acc


def _monic(field, poly, okey):
    if not poly:
        return poly
    inv = field.inv(poly[_leading(poly, okey)])
    return {e: field.mul(inv, c) for e, c in poly.items()}


def normal_form_poly(field, poly, basis, okey, budget=None):
    """Full reduction of a polynomial dict modulo a list of (poly, lm)."""
    work = dict(poly)
    remainder = {}
    while work:
        m = _leading(work, okey)
        c = work[m]
        for g, lm in basis:
            if _divides(lm, m):
                if budget is not None:
                    budget.tick("(normal form)")
                factor = field.neg(field.div(c, g[lm]))
                _add_scaled(field, work, g, factor, _mono_div(m, lm))
                break
        else:
            remainder[m] = c
            del work[m]
    return remainder


def _s_poly(field, f, lf, g, lg):
    lcm = _mono_lcm(lf, lg)
    out = {}
    _add_scaled(field, out, f, field.inv(f[lf]), _mono_div(lcm, lf))
    _add_scaled(field, out, g, field.neg(field.inv(g[lg])), _mono_div(lcm, lg))
    return out


def buchberger(field, gens, order: MonomialOrder = DEGREVLEX, budget: Budget | None = None):
    """Reduced Groebner basis of the ideal generated by `gens` (poly dicts)."""
    if budget is None:
        budget = Budget()
    okey = order.key
    basis = []
    for g in gens:
        g = {e: c for e, c in g.items() if c != field.zero}
        if g:
            basis.append(_monic(field, g, okey))
    if not basis:
        raise UsageError("empty generator list")
    lms = [_leading(g, okey) for g in basis]

    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}

    def pair_sort_key(p):
        lcm = _mono_lcm(lms[p[0]], lms[p[1]])
        return (sum(lcm), okey(lcm), p)

    while pairs:
        i, j = min(pairs, key=pair_sort_key)
        pairs.discard((i, j))
        lcm = _mono_lcm(lms[i], lms[j])
        if lcm == _mono_mul(lms[i], lms[j]):
            continue  # coprime leading monomials
        chain = False
        for k in range(len(basis)):
            if k in (i, j) or not _divides(lms[k], lcm):
                continue
            a = (min(i, k), max(i, k))
            b = (min(j, k), max(j, k))
            if a not in pairs and b not in pairs:
                chain = True
                break
        if chain:
            continue
        s = _s_poly(field, basis[i], lms[i], basis[j], lms[j])
        h = normal_form_poly(field, s, list(zip(basis, lms)), okey, budget)
        if h:
            h = _monic(field, h, okey)
            basis.append(h)
            lms.append(_leading(h, okey))
            t = len(basis) - 1
            pairs.update((k, t) for k in range(t))

    # minimalize: drop elements whose leading monomial another one divides
    keep = []
    for i, lm in enumerate(lms):
        if not any(
            _divides(lms[k], lm) and (lms[k] != lm or k < i)
            for k in range(len(basis))
            if k != i
        ):
            keep.append(i)
    minimal = [basis[i] for i in keep]
    # fully interreduce
    reduced = []
    for idx, g in enumerate(minimal):
        others = [
            (h, _leading(h, okey)) for k, h in enumerate(minimal) if k != idx
        ]
        r = normal_form_poly(field, g, others, okey, budget)
        if r:
            reduced.append(_monic(field, r, okey))
    reduced.sort(key=lambda g: okey(_leading(g, okey)))
    return reduced


# --- quotient algebras --------------------------------------------------------


@dataclass
class QuotientAlgebra:
    """Finite-dimensional quotient with staircase basis and mult matrices.

    `names` are the encoded polynomial variables.  For Laurent quotients the
    first `n_laurent` are inverse variables and the next `n_laurent` the
    originals, and `source_ring` is the original Laurent ring.
    """

    field: object
    names: tuple
    order: MonomialOrder
    gb: list
    finite: bool
    staircase: list
    unit_index: int | None
    mult_matrices: dict
    source_ring: LaurentRing | None = None
    n_laurent: int | None = None
    source_gens: list = dc_field(default_factory=list)
    _basis_mult: list = dc_field(default_factory=list, repr=False)

    @property
    def dim(self):
        if not self.finite:
            raise UsageError("quotient is infinite-dimensional")
        return len(self.staircase)

    def _require_finite(self):
        if not self.finite:
            raise UsageError("operation needs a finite-dimensional quotient")

    def lead_monomials(self):
        okey = self.order.key
        return [_leading(g, okey) for g in self.gb]

    def encode_laurent(self, p: LaurentPoly):
        """Encode without unit rescaling: negative powers go to inverses."""
        if self.n_laurent is None:
            raise UsageError("not a Laurent quotient")
        if p.ring != self.source_ring:
            raise UsageError("polynomial lives in a different ring")
        n = self.n_laurent
        out = {}
        F = self.field
        for e, c in p.terms.items():
            enc = tuple(max(-x, 0) for x in e) + tuple(max(x, 0) for x in e)
            acc = F.add(out.get(enc, F.zero), c)
            if acc == F.zero:
                out.pop(enc, None)
            else:
                out[enc] = acc
        return out

    def reduce_poly(self, poly_dict, budget=None):
        basis = list(zip(self.gb, self.lead_monomials()))
        return normal_form_poly(self.field, poly_dict, basis, self.order.key, budget)

    def nf_coords(self, p, budget=None):
        """Coordinates of the normal form over the staircase basis."""
        self._require_finite()
        poly = self.encode_laurent(p) if isinstance(p, LaurentPoly) else dict(p)
        r = self.reduce_poly(poly, budget)
        index = {m: i for i, m in enumerate(self.staircase)}
        coords = [self.field.zero] * self.dim
        for m, c in r.items():
            coords[index[m]] = c
        return coords

    def monomial_label(self, mono) -> str:
        """Human-readable label, decoding inverse variables when Laurent."""
        if self.n_laurent is not None:
            n = self.n_laurent
            net = [mono[n + i] - mono[i] for i in range(n)]
            names = self.source_ring.variables
            parts = [
                f"{names[i]}^{x}" if x != 1 else names[i]
                for i, x in enumerate(net)
                if x != 0
            ]
        else:
            parts = [
                f"{self.names[i]}^{x}" if x != 1 else self.names[i]
                for i, x in enumerate(mono)
                if x != 0
            ]
        return "*".join(parts) if parts else "1"

    def basis_labels(self):
        return [self.monomial_label(m) for m in self.staircase]

    def basis_mult_matrix(self, j):
        """Multiplication matrix of the j-th staircase basis monomial."""
        self._require_finite()
        if not self._basis_mult:
            self._basis_mult = [None] * self.dim
        if self._basis_mult[j] is None:
            mono = self.staircase[j]
            m = linalg.identity(self.field, self.dim)
            for v, e in enumerate(mono):
                for _ in range(e):
                    m = linalg.mat_mul(self.field, self.mult_matrices[v], m)
            self._basis_mult[j] = m
        return self._basis_mult[j]

    def element_mult_matrix(self, coords):
        self._require_finite()
        out = linalg.zeros(self.field, self.dim, self.dim)
        for j, c in enumerate(coords):
            if c == self.field.zero:
                continue
            bm = self.basis_mult_matrix(j)
            for r in range(self.dim):
                row = out[r]
                bmr = bm[r]
                for s in range(self.dim):
                    if bmr[s] != self.field.zero:
                        row[s] = self.field.add(row[s], self.field.mul(c, bmr[s]))
        return out

    def element_product(self, u, v):
        return linalg.mat_vec(self.field, self.element_mult_matrix(u), v)

    def unit_coords(self):
        self._require_finite()
        coords = [self.field.zero] * self.dim
        coords[self.unit_index] = self.field.one
        return coords

    def graded_dims(self):
        """Staircase monomial counts per total degree (degree-graded ideals)."""
        self._require_finite()
        if not self.staircase:
            return []
        top = max(sum(m) for m in self.staircase)
        dims = [0] * (top + 1)
        for m in self.staircase:
            dims[sum(m)] += 1
        return dims

    def to_json(self):
        data = {
            "field": "Q" if self.field.char == 0 else f"F{self.field.char}",
            "dim": len(self.staircase) if self.finite else None,
            "finite": self.finite,
            "staircase": self.basis_labels() if self.finite else None,
        }
        if self.source_ring is not None:
            data["variables"] = list(self.source_ring.variables)
            data["generators"] = [g.to_json() for g in self.source_gens]
        return data


def _staircase_from_leads(names, leads):
    """BFS over the divisor-closed set of standard monomials.

    Returns None when some variable has no pure power among the leading
    monomials (infinite-dimensional quotient).
    """
    nvars = len(names)
    zero = (0,) * nvars
    if any(lm == zero for lm in leads):
        return []  # unit ideal
    for v in range(nvars):
        if not any(
            lm[v] > 0 and all(lm[w] == 0 for w in range(nvars) if w != v)
            for lm in leads
        ):
            return None
    seen = {zero}
    queue = [zero]
    out = []
    while queue:
        m = queue.pop()
        out.append(m)
        for v in range(nvars):
            nxt = m[:v] + (m[v] + 1,) + m[v + 1 :]
            if nxt in seen:
                continue
            seen.add(nxt)
            if not any(_divides(lm, nxt) for lm in leads):
                queue.append(nxt)
    return out


def _build_quotient(field, names, gen_dicts, order, budget, source_ring=None,
                    n_laurent=None, source_gens=()):
    gb = buchberger(field, gen_dicts, order, budget)
    okey = order.key
    leads = [_leading(g, okey) for g in gb]
    staircase = _staircase_from_leads(names, leads)
    qa = QuotientAlgebra(
        field=field,
        names=tuple(names),
        order=order,
        gb=gb,
        finite=staircase is not None,
        staircase=sorted(staircase, key=okey) if staircase is not None else [],
        unit_index=None,
        mult_matrices={},
        source_ring=source_ring,
        n_laurent=n_laurent,
        source_gens=list(source_gens),
    )
    if not qa.finite:
        return qa
    index = {m: i for i, m in enumerate(qa.staircase)}
    zero_m = (0,) * len(names)
    qa.unit_index = index.get(zero_m)
    basis_pairs = list(zip(gb, leads))
    dim = len(qa.staircase)
    for v in range(len(names)):
        mat = linalg.zeros(field, dim, dim)
        for j, m in enumerate(qa.staircase):
            shifted = m[:v] + (m[v] + 1,) + m[v + 1 :]
            r = normal_form_poly(field, {shifted: field.one}, basis_pairs, okey, budget)
            for mono, c in r.items():
                mat[index[mono]][j] = c
        qa.mult_matrices[v] = mat
    return qa


def polynomial_quotient(field, names, gen_dicts, order=DEGREVLEX, budget=None):
    """Quotient of an ordinary polynomial ring by explicit generator dicts."""
    if budget is None:
        budget = Budget()
    return _build_quotient(field, names, gen_dicts, order, budget)


def laurent_quotient(gens, order=DEGREVLEX, budget=None) -> QuotientAlgebra:
    """Quotient of a Laurent ring by `gens`, via the inverse-variable encoding.

    An infinite-dimensional quotient is a valid outcome, reported through the
    `finite` flag rather than an exception.
    """
    if not gens:
        raise UsageError("empty generator list")
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise UsageError("generators live in different rings")
    if budget is None:
        budget = Budget()
    n = ring.nvars
    names = tuple(f"{v}_inv" for v in ring.variables) + tuple(ring.variables)
    field = ring.field
    gen_dicts = []
    for g in gens:
        if g.is_zero():
            continue
        # clear to polynomial form: multiply by the minimal monomial in the
        # original variables making all exponents nonnegative (a unit move)
        shift = [0] * n
        for e in g.terms:
            for i, x in enumerate(e):
                shift[i] = max(shift[i], -x)
        d = {}
        for e, c in g.terms.items():
            enc = (0,) * n + tuple(x + s for x, s in zip(e, shift))
            d[enc] = c
        gen_dicts.append(d)
    if not gen_dicts:
        raise UsageError("all generators are zero")
    for i in range(n):
        rel = {(0,) * (2 * n): field.neg(field.one)}
        e = [0] * (2 * n)
        e[i] = 1
        e[n + i] = 1
        rel[tuple(e)] = field.one
        gen_dicts.append(rel)
    return _build_quotient(
        field, names, gen_dicts, order, budget,
        source_ring=ring, n_laurent=n, source_gens=list(gens),
    )


# --- algebra morphisms ---------------------------------------------------------


@dataclass
class Morphism:
    well_defined: bool
    failing_relation: int | None
    reason: str | None
    matrix: list | None
    kernel_dim: int | None
    surjective: bool | None
    domain_dim: int
    codomain_dim: int

    def to_json(self):
        return {
            "well_defined": self.well_defined,
            "failing_relation": self.failing_relation,
            "kernel_dim": self.kernel_dim,
            "surjective": self.surjective,
            "domain_dim": self.domain_dim,
            "codomain_dim": self.codomain_dim,
        }


def _evaluate_laurent_in_algebra(codomain, poly: LaurentPoly, images, inverses):
    """Image of a Laurent polynomial under generator substitution.

    `images`/`inverses` are coordinate vectors in the codomain; an entry of
    `inverses` may be None when never needed.
    """
    F = codomain.field
    total = [F.zero] * codomain.dim
    for e, c in poly.terms.items():
        acc = codomain.unit_coords()
        for i, exp in enumerate(e):
            if exp == 0:
                continue
            vec = images[i] if exp > 0 else inverses[i]
            if vec is None:
                return None
            m = codomain.element_mult_matrix(vec)
            p = linalg.mat_pow(F, m, abs(exp))
            acc = linalg.mat_vec(F, p, acc)
        total = [F.add(x, F.mul(c, y)) for x, y in zip(total, acc)]
    return total


def algebra_morphism(domain: QuotientAlgebra, codomain: QuotientAlgebra, images):
    """Linear data of the algebra map sending domain generators to `images`.

    The map is well defined exactly when every domain relation evaluates to
    zero in the codomain (and every generator image is invertible, as Laurent
    generators are units).  Failures are reported in the result, not raised.
    """
    domain._require_finite()
    codomain._require_finite()
    if domain.n_laurent is None:
        raise UsageError("domain must be a Laurent quotient")
    n = domain.n_laurent
    if len(images) != n:
        raise UsageError("need one image per domain generator")
    F = codomain.field
    img_coords = [codomain.nf_coords(p) for p in images]
    inv_coords = [None] * n

    def ensure_inverse(i):
        if inv_coords[i] is None:
            m = codomain.element_mult_matrix(img_coords[i])
            sol = linalg.solve(F, m, codomain.unit_coords())
            inv_coords[i] = sol
        return inv_coords[i]

    # relations first: report the offending index rather than raising
    for ridx, rel in enumerate(domain.source_gens):
        for e in rel.terms:
            for i, exp in enumerate(e):
                if exp < 0 and ensure_inverse(i) is None:
                    return Morphism(
                        False, ridx, f"image of generator {i} is not invertible",
                        None, None, None, domain.dim, codomain.dim,
                    )
        val = _evaluate_laurent_in_algebra(codomain, rel, img_coords, inv_coords)
        if any(x != F.zero for x in val):
            return Morphism(
                False, ridx, "relation does not map to zero",
                None, None, None, domain.dim, codomain.dim,
            )
    # invertibility is still required to push staircase monomials through
    for i in range(n):
        if ensure_inverse(i) is None:
            return Morphism(
                False, None, f"image of generator {i} is not invertible",
                None, None, None, domain.dim, codomain.dim,
            )
    columns = []
    for mono in domain.staircase:
        acc = codomain.unit_coords()
        for v, exp in enumerate(mono):
            if exp == 0:
                continue
            vec = inv_coords[v] if v < n else img_coords[v - n]
            m = codomain.element_mult_matrix(vec)
            p = linalg.mat_pow(F, m, exp)
            acc = linalg.mat_vec(F, p, acc)
        columns.append(acc)
    matrix = linalg.transpose(columns)
    rk = linalg.rank(F, matrix)
    return Morphism(
        True, None, None, matrix,
        domain.dim - rk, rk == codomain.dim, domain.dim, codomain.dim,
    )
