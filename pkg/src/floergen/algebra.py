"""Structure theory of finite-dimensional commutative algebras.

Covers the nilradical in characteristic p (iterated Frobenius kernel),
decomposition into local factors, Bezout idempotents for generalized
eigenspace splittings, and m-adic filtration profiles.

The local decomposition splits along minimal polynomials of designated
generators first.  That alone can miss splittings (two independent degree-d
residue field extensions give every generator a primary minimal polynomial),
so a fallback splits along the Frobenius-fixed space modulo the radical,
whose dimension equals the number of local factors.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import linalg
from .errors import DomainError, UsageError
from .scalar import PrimeField, UniPoly, univariate_factor

# --- exact linear-map utilities (the `linear` operation family) ---------------


def kernel(field, matrix):
    return linalg.kernel_basis(field, matrix)


def image(field, matrix):
    return linalg.image_basis(field, matrix)


def containment(field, vectors_a, vectors_b) -> bool:
    return linalg.subspace_contained(field, vectors_a, vectors_b)


@dataclass
class FiniteAlgebra:
    """Commutative algebra given by basis products.

    products[i][j] is the coordinate vector of basis_i * basis_j.  Designated
    generators (coordinate vectors plus display names) drive the local
    decomposition and point recovery.
    """

    field: object
    dim: int
    labels: list
    products: list
    unit: list
    generators: list = dc_field(default_factory=list)
    generator_names: list = dc_field(default_factory=list)

    @classmethod
    def from_quotient(cls, qa, generator_indices=None, generator_names=None):
        """Build basis products from a QuotientAlgebra's mult matrices."""
        qa._require_finite()
        dim = qa.dim
        products = [
            [
                [qa.basis_mult_matrix(j)[r][i] for r in range(dim)]
                for j in range(dim)
            ]
            for i in range(dim)
        ]
        gens = []
        names = []
        if generator_indices is None and qa.n_laurent is not None:
            generator_indices = list(range(qa.n_laurent, 2 * qa.n_laurent))
        for v in generator_indices or []:
            e = [0] * len(qa.names)
            e[v] = 1
            coords = [qa.field.zero] * dim
            r = qa.reduce_poly({tuple(e): qa.field.one})
            index = {m: k for k, m in enumerate(qa.staircase)}
            for mono, c in r.items():
                coords[index[mono]] = c
            gens.append(coords)
            names.append(qa.names[v])
        return cls(
            field=qa.field,
            dim=dim,
            labels=qa.basis_labels(),
            products=products,
            unit=qa.unit_coords(),
            generators=gens,
            generator_names=generator_names or names,
        )

    def mult(self, u, v):
        F = self.field
        out = [F.zero] * self.dim
        for i, a in enumerate(u):
            if a == F.zero:
                continue
            for j, b in enumerate(v):
                if b == F.zero:
                    continue
                c = F.mul(a, b)
                for r, s in enumerate(self.products[i][j]):
                    if s != F.zero:
                        out[r] = F.add(out[r], F.mul(c, s))
        return out

    def mult_matrix(self, u):
        cols = [
            self.mult(u, [self.field.one if k == j else self.field.zero
                          for k in range(self.dim)])
            for j in range(self.dim)
        ]
        return linalg.transpose(cols)

    def power(self, u, e: int):
        acc = list(self.unit)
        base = u
        while e:
            if e & 1:
                acc = self.mult(acc, base)
            base = self.mult(base, base)
            e >>= 1
        return acc

    def eval_poly(self, poly: UniPoly, u):
        F = self.field
        acc = [F.zero] * self.dim
        for c in reversed(poly.coeffs):
            acc = self.mult(acc, u)
            acc = [F.add(x, F.mul(c, y)) for x, y in zip(acc, self.unit)]
        return acc

    def is_commutative(self, samples=None):
        idx = samples or range(self.dim)
        for i in idx:
            for j in idx:
                if self.products[i][j] != self.products[j][i]:
                    return False
        return True

    def element_min_poly(self, u) -> UniPoly:
        return linalg.minimal_polynomial(self.field, self.mult_matrix(u))


def _require_char_p(A: FiniteAlgebra):
    if not isinstance(A.field, PrimeField):
        raise UsageError("operation requires a prime field F_p")
    if not A.is_commutative():
        raise UsageError("operation requires a commutative algebra")


def frobenius_matrix_of(A: FiniteAlgebra):
    """Matrix of x -> x^p, F_p-linear in characteristic p."""
    p = A.field.char
    cols = []
    for j in range(A.dim):
        basis_vec = [A.field.one if k == j else A.field.zero for k in range(A.dim)]
        cols.append(A.power(basis_vec, p))
    return linalg.transpose(cols)


def radical_char_p(A: FiniteAlgebra):
    """Nilradical basis: kernel of the k-fold p-power map with p^k >= dim."""
    _require_char_p(A)
    p = A.field.char
    frob = frobenius_matrix_of(A)
    k = 0
    pk = 1
    while pk < max(A.dim, 1):
        pk *= p
        k += 1
    m = linalg.mat_pow(A.field, frob, max(k, 1))
    return linalg.kernel_basis(A.field, m)


@dataclass
class LocalFactor:
    idempotent: list
    algebra: FiniteAlgebra
    block_basis: list
    maximal_ideal: list
    residue_degree: int
    point: list | None

    @property
    def dim(self):
        return self.algebra.dim


def _restrict_to_block(A: FiniteAlgebra, idempotent):
    """Sub-FiniteAlgebra on the ideal e*A, with unit e."""
    F = A.field
    e_mat = A.mult_matrix(idempotent)
    basis = linalg.image_basis(F, e_mat)
    bmat = linalg.transpose(basis)

    def coords_in_block(v):
        return linalg.solve(F, bmat, v)

    d = len(basis)
    products = [[None] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            products[i][j] = coords_in_block(A.mult(basis[i], basis[j]))
    gens = [coords_in_block(A.mult(idempotent, g)) for g in A.generators]
    block = FiniteAlgebra(
        field=F,
        dim=d,
        labels=[f"b{i}" for i in range(d)],
        products=products,
        unit=coords_in_block(idempotent),
        generators=gens,
        generator_names=list(A.generator_names),
    )
    return block, basis


def _split_along(A, idempotent, elem, minpoly_factors):
    """CRT idempotents from coprime primary factors of elem's minimal poly."""
    F = A.field
    qs = []
    mu = UniPoly(F, [F.one])
    for f, m in minpoly_factors:
        fm = f
        for _ in range(m - 1):
            fm = fm * f
        qs.append(fm)
        mu = mu * fm
    # cofactors q_i = mu / f_i^{m_i}; find u_i with sum u_i q_i = 1
    cof = [mu // q for q in qs]
    # iterative extended gcd across the cofactors
    combo = [UniPoly(F, []) for _ in cof]
    g = cof[0]
    combo[0] = UniPoly(F, [F.one])
    for i in range(1, len(cof)):
        g2, (s, t) = _ext_gcd(g, cof[i])
        combo = [c * s for c in combo]
        combo[i] = t
        g = g2
    # g is a nonzero constant since the primary parts are pairwise coprime
    scale = F.inv(g.coeffs[0])
    out = []
    for u, q in zip(combo, cof):
        eq = (u * q).scale(scale)
        e_i = A.eval_poly(eq, elem)
        e_i = A.mult(e_i, idempotent)
        out.append(e_i)
    return out


def _ext_gcd(a: UniPoly, b: UniPoly):
    F = a.field
    r0, r1 = a, b
    s0, s1 = UniPoly(F, [F.one]), UniPoly(F, [])
    t0, t1 = UniPoly(F, []), UniPoly(F, [F.one])
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return r0, (s0, t0)


def _frobenius_fixed_split_candidates(block: FiniteAlgebra):
    """Elements fixed by Frobenius modulo the radical; their minimal
    polynomials split into linear factors, exposing any missed idempotents."""
    F = block.field
    frob = frobenius_matrix_of(block)
    rad = radical_char_p(block)
    n = block.dim
    fmi = linalg.mat_sub(F, frob, linalg.identity(F, n))
    if not rad:
        fixed = linalg.kernel_basis(F, fmi)
        return fixed, len(fixed)
    # solve (frob - id) x in span(rad): kernel of [frob - id | -rad]
    aug_cols = linalg.transpose(fmi) + [[F.neg(x) for x in r] for r in rad]
    big = linalg.transpose(aug_cols)
    ker = linalg.kernel_basis(F, big)
    fixed = []
    for v in ker:
        fixed.append(v[:n])
    # count distinct residues: rank of fixed modulo radical
    stacked = fixed + rad
    r_count = linalg.rank(F, stacked) - linalg.rank(F, rad)
    return fixed, r_count


def local_decompose(A: FiniteAlgebra):
    """Pairwise-orthogonal idempotents with local factors, summing to 1."""
    _require_char_p(A)
    pending = [A.unit]
    finished = []
    candidates = list(A.generators)
    while pending:
        e = pending.pop()
        block, _ = _restrict_to_block(A, e)
        split = None
        pool = candidates + [
            [A.field.one if k == j else A.field.zero for k in range(A.dim)]
            for j in range(A.dim)
        ]
        for elem in pool:
            restricted = A.mult(e, elem)
            mp = _min_poly_on_block(A, e, restricted)
            factors = univariate_factor(mp)
            if len(factors) > 1:
                split = _split_along(A, e, restricted, factors)
                break
        if split is None:
            fixed, n_factors = _frobenius_fixed_split_candidates(block)
            if n_factors > 1:
                _, basis = _restrict_to_block(A, e)
                for v in fixed:
                    lifted = _lift_block_vector(A, basis, v)
                    mp = _min_poly_on_block(A, e, lifted)
                    factors = univariate_factor(mp)
                    if len(factors) > 1:
                        split = _split_along(A, e, lifted, factors)
                        break
        if split is None:
            finished.append(e)
        else:
            pending.extend(split)
    factors = [_finalize_factor(A, e) for e in finished]
    factors.sort(key=lambda lf: _factor_sort_key(A, lf))
    return factors


def _lift_block_vector(A, block_basis, v):
    F = A.field
    out = [F.zero] * A.dim
    for c, b in zip(v, block_basis):
        if c != F.zero:
            out = [F.add(x, F.mul(c, y)) for x, y in zip(out, b)]
    return out


def _min_poly_on_block(A, e, elem):
    """Minimal polynomial of mult-by-elem restricted to the ideal e*A."""
    F = A.field
    basis = linalg.image_basis(F, A.mult_matrix(e))
    bmat = linalg.transpose(basis)
    cols = [linalg.solve(F, bmat, A.mult(elem, b)) for b in basis]
    return linalg.minimal_polynomial(F, linalg.transpose(cols))


def _finalize_factor(A, e):
    block, basis = _restrict_to_block(A, e)
    rad = radical_char_p(block)
    residue_degree = block.dim - len(rad)
    point = None
    if residue_degree == 1 and block.generators:
        point = []
        for g in block.generators:
            mp = linalg.minimal_polynomial(block.field, block.mult_matrix(g))
            roots = [
                f.coeffs[0]
                for f, _ in univariate_factor(mp)
                if f.degree == 1
            ]
            # primary (t - c)^k: the unique eigenvalue is c = -constant term
            point.append(block.field.neg(roots[0]))
    return LocalFactor(
        idempotent=e,
        algebra=block,
        block_basis=basis,
        maximal_ideal=rad,
        residue_degree=residue_degree,
        point=point,
    )


def _factor_sort_key(A, lf: LocalFactor):
    coords = lf.idempotent
    if A.field.char == 0:
        tie = tuple((c.numerator, c.denominator) for c in coords)
    else:
        tie = tuple(coords)
    return (lf.dim, lf.residue_degree, tie)


def bezout_idempotents(A: FiniteAlgebra, a, lam):
    """Split off the generalized lam-eigenspace of mult-by-a.

    chi = char poly of mult-by-a, q = chi with the (t-lam) power removed;
    Bezout cofactors of ((t-lam)^n, q) give e = (q g)(a).  Returns
    (e, e_perp, found) with e = 0 and found=False when lam is not a root.
    """
    F = A.field
    m = A.mult_matrix(a)
    chi = linalg.charpoly(F, m)
    lin = UniPoly(F, [F.neg(lam), F.one])
    mult = 0
    q = chi
    while True:
        quo, rem = q.divmod(lin)
        if rem.is_zero():
            q = quo
            mult += 1
        else:
            break
    if mult == 0:
        zero = [F.zero] * A.dim
        return zero, list(A.unit), False
    n = A.dim
    tn = UniPoly(F, [F.one])
    for _ in range(n):
        tn = tn * lin
    g, (f_cof, g_cof) = _ext_gcd(tn, q)
    scale = F.inv(g.coeffs[0])
    e = A.eval_poly((q * g_cof).scale(scale), a)
    e_perp = [F.sub(x, y) for x, y in zip(A.unit, e)]
    return e, e_perp, True


def madic_profile(factor: LocalFactor):
    """Graded dimensions dim(m^p / m^(p+1)) until the filtration dies."""
    block = factor.algebra
    F = block.field
    if not factor.maximal_ideal:
        return [block.dim]
    profile = []
    current = [list(v) for v in factor.maximal_ideal]
    prev_dim = block.dim
    while current:
        d = linalg.rank(F, current)
        profile.append(prev_dim - d)
        prev_dim = d
        nxt = []
        for v in current:
            for w in factor.maximal_ideal:
                nxt.append(block.mult(v, w))
        basis = []
        for v in nxt:
            if not linalg.span_contains(F, basis, v):
                basis.append(v)
        if linalg.rank(F, basis) == d:
            raise DomainError("filtration does not terminate; factor not local")
        current = basis
    profile.append(prev_dim)
    if profile and profile[-1] == 0:
        profile.pop()
    return profile
