"""Quantum cohomology presentations, Jacobian rings, the closed-open map,
first-Chern-class spectra, critical local systems, and toric split-generation
reports.

The divisor presentation uses one ambient variable Z_j per facet, the linear
relations sum_j nu_j Z_j = 0, and one monomial relation Z^A - 1 per basis
vector A of the sphere-class lattice (Z^{2A} - 1 for the mod-2-weights
variant).  Instantiating the monomial relations only on a lattice basis
suffices because (Z^A - 1) Z^B + (Z^B - 1) = Z^{A+B} - 1; a unit test
exercises random combinations.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import linalg
from .algebra import FiniteAlgebra, LocalFactor, bezout_idempotents, local_decompose
from .errors import AnomalyError, UsageError
from .grobner import Budget, Morphism, QuotientAlgebra, algebra_morphism, laurent_quotient
from .laurent import LaurentPoly, LaurentRing
from .scalar import Field, PrimeField, UniPoly, field_name, rational_roots, univariate_factor
from .toric import DelzantPolytope, h2_lattice, is_normalized, minimal_chern, superpotential


def jacobian_ring(W: LaurentPoly, budget: Budget | None = None) -> QuotientAlgebra:
    """Quotient of the Laurent ring by all log-derivatives z_i dW/dz_i."""
    gens = [W.log_derivative(i) for i in range(W.ring.nvars)]
    if all(g.is_zero() for g in gens):
        raise UsageError("all log-derivatives vanish; quotient is the whole ring")
    return laurent_quotient([g for g in gens], budget=budget)


@dataclass
class QHPresentation:
    variant: str  # "plain" | "mod2_weights"
    polytope: DelzantPolytope
    field: Field
    algebra: QuotientAlgebra
    linear_relations: list
    monomial_relations: list

    @property
    def dim(self):
        return self.algebra.dim


def _qh_generators(P: DelzantPolytope, field: Field, variant: str):
    N = P.num_facets
    ring = LaurentRing([f"Z{j + 1}" for j in range(N)], field)
    linear = []
    for i in range(P.n):
        terms = []
        for j in range(N):
            c = field.from_int(P.normals[j][i])
            if c != field.zero:
                e = [0] * N
                e[j] = 1
                terms.append((tuple(e), c))
        g = ring.from_terms(terms)
        if not g.is_zero():
            linear.append(g)
    scale = 2 if variant == "mod2_weights" else 1
    monomial = []
    for p in h2_lattice(P).basis:
        e = tuple(scale * x for x in p)
        monomial.append(ring.monomial(e) - ring.one())
    return ring, linear, monomial


def qh_presentation(P: DelzantPolytope, field: Field, variant: str = "plain",
                    budget: Budget | None = None) -> QHPresentation:
    if variant not in ("plain", "mod2_weights"):
        raise UsageError(f"unknown variant {variant!r}")
    if variant == "mod2_weights" and field.char != 2:
        raise UsageError("mod2_weights presentation requires the field F2")
    if not is_normalized(P):
        raise UsageError("presentation needs a monotone-normalized polytope")
    ring, linear, monomial = _qh_generators(P, field, variant)
    algebra = laurent_quotient(linear + monomial, budget=budget)
    return QHPresentation(
        variant=variant,
        polytope=P,
        field=field,
        algebra=algebra,
        linear_relations=linear,
        monomial_relations=monomial,
    )


def co0_map(P: DelzantPolytope, field: Field, budget: Budget | None = None):
    """Divisor classes to boundary monomials: Z_j -> z^{nu_j}.

    Returns (presentation, jacobian, morphism).  A failure of the expected
    isomorphism on valid input is an anomaly, reported by the caller.
    """
    pres = qh_presentation(P, field, "plain", budget)
    W = superpotential(P, field)
    jac = jacobian_ring(W, budget)
    if not jac.finite:
        raise UsageError("Jacobian ring is infinite-dimensional")
    zring = W.ring
    images = [zring.monomial(tuple(nu)) for nu in P.normals]
    mor = algebra_morphism(pres.algebra, jac, images)
    return pres, jac, mor


def c1_element(target: str, P: DelzantPolytope, field: Field,
               algebra: QuotientAlgebra | None = None,
               budget: Budget | None = None):
    """Coordinates of the first Chern class: sum Z_j in the divisor
    presentation, or the class of W in the Jacobian ring."""
    if target == "qh":
        qa = algebra
        if qa is None:
            qa = qh_presentation(P, field, "plain", budget).algebra
        ring = qa.source_ring
        total = ring.zero()
        for j in range(P.num_facets):
            e = [0] * P.num_facets
            e[j] = 1
            total = total + ring.monomial(tuple(e))
        return qa.nf_coords(total)
    if target == "jac":
        W = superpotential(P, field)
        qa = algebra if algebra is not None else jacobian_ring(W, budget)
        return qa.nf_coords(W)
    raise UsageError("target must be 'qh' or 'jac'")


@dataclass
class SpectrumReport:
    char_poly: UniPoly
    factors: list  # (UniPoly, multiplicity) over F_p; (root, mult) pairs over Q
    residual: UniPoly | None  # nontrivial only over Q
    eigenspaces: list  # (label, generalized eigenspace dim)

    def to_json(self):
        F = self.char_poly.field
        return {
            "char_poly": [F.to_str(c) for c in self.char_poly.coeffs],
            "factors": [
                {"factor": [F.to_str(c) for c in f.coeffs], "multiplicity": m}
                if isinstance(f, UniPoly)
                else {"root": F.to_str(f), "multiplicity": m}
                for f, m in self.factors
            ],
            "residual": [F.to_str(c) for c in self.residual.coeffs]
            if self.residual is not None and self.residual.degree > 0
            else None,
            "eigenspaces": [{"at": lbl, "dim": d} for lbl, d in self.eigenspaces],
        }


def c1_spectrum(qa: QuotientAlgebra, c1_coords, seed: int = 2) -> SpectrumReport:
    """Exact characteristic polynomial of quantum multiplication by c1,
    factored over F_p, or split into rational roots plus a residual over Q."""
    F = qa.field
    m = qa.element_mult_matrix(c1_coords)
    chi = linalg.charpoly(F, m)
    eigen = []
    if isinstance(F, PrimeField):
        factors = univariate_factor(chi, seed=seed)
        residual = None
        for f, mult in factors:
            op = linalg.eval_poly_at_matrix(F, f, m)
            op = linalg.mat_pow(F, op, qa.dim)
            eigen.append((repr(f), len(linalg.kernel_basis(F, op))))
    else:
        roots = rational_roots(chi)
        factors = roots
        residual = chi
        for r, mult in roots:
            lin = UniPoly(F, [F.neg(r), F.one])
            for _ in range(mult):
                residual = residual // lin
            op = linalg.eval_poly_at_matrix(F, lin, m)
            op = linalg.mat_pow(F, op, qa.dim)
            eigen.append((F.to_str(r), len(linalg.kernel_basis(F, op))))
        if residual.degree > 0:
            eigen.append((f"residual {residual!r}", residual.degree))
    return SpectrumReport(chi, factors, residual, eigen)


@dataclass
class CriticalPointReport:
    points: list  # lists of field elements, one per residue-degree-1 factor
    factors: list  # all LocalFactor objects, split or not
    algebra: FiniteAlgebra

    @property
    def nonsplit(self):
        return [f for f in self.factors if f.residue_degree > 1]


def critical_points(W: LaurentPoly, budget: Budget | None = None) -> CriticalPointReport:
    """Local decomposition of Jac W; residue-degree-1 factors yield points in
    (F_p^x)^n, verified against the vanishing of every log-derivative."""
    if not isinstance(W.ring.field, PrimeField):
        raise UsageError("critical point enumeration is implemented over F_p")
    jac = jacobian_ring(W, budget)
    if not jac.finite:
        raise UsageError("Jacobian ring is infinite-dimensional")
    A = FiniteAlgebra.from_quotient(jac)
    factors = local_decompose(A)
    points = []
    for f in factors:
        if f.residue_degree == 1 and f.point is not None:
            pt = f.point
            for i in range(W.ring.nvars):
                val = W.log_derivative(i).evaluate(pt)
                if val != W.ring.field.zero:
                    raise AnomalyError(
                        f"recovered point {pt} does not annihilate log-derivative {i}"
                    )
            points.append(pt)
    return CriticalPointReport(points=points, factors=factors, algebra=A)


@dataclass
class GenerationSummand:
    dim: int
    residue_degree: int
    point: list | None
    critical_value: object | None
    kernel_dim: int
    verdict: str
    statement: str

    def to_json(self, field):
        return {
            "dim": self.dim,
            "residue_degree": self.residue_degree,
            "point": [field.to_str(x) for x in self.point] if self.point else None,
            "critical_value": field.to_str(self.critical_value)
            if self.critical_value is not None
            else None,
            "kernel_dim": self.kernel_dim,
            "verdict": self.verdict,
            "statement": self.statement,
        }


@dataclass
class GenerationReport:
    input_name: str
    field: Field
    co0: Morphism
    summands: list
    minimal_chern: int | None
    notes: list = dc_field(default_factory=list)
    anomaly: bool = False
    extra: dict = dc_field(default_factory=dict)

    def to_json(self):
        data = {
            "input": self.input_name,
            "field": field_name(self.field),
            "co0": self.co0.to_json() if self.co0 is not None else None,
            "summands": [s.to_json(self.field) for s in self.summands],
            "minimal_chern": self.minimal_chern,
            "notes": list(self.notes),
            "anomaly": self.anomaly,
        }
        data.update(self.extra)
        return data


_SPLIT_STATEMENT = (
    "monotone fibre with this local system split-generates the matching "
    "summand: the closed-open map is an isomorphism and restricts to an "
    "injection on the summand"
)


def _fp_summands(W: LaurentPoly, budget):
    """Local decomposition route over a prime field."""
    field = W.ring.field
    out = []
    cp = critical_points(W, budget)
    for f in cp.factors:
        if f.residue_degree == 1 and f.point is not None:
            out.append(
                GenerationSummand(
                    dim=f.dim,
                    residue_degree=f.residue_degree,
                    point=f.point,
                    critical_value=W.evaluate(f.point),
                    kernel_dim=0,
                    verdict="split-generates",
                    statement=_SPLIT_STATEMENT,
                )
            )
        else:
            out.append(
                GenerationSummand(
                    dim=f.dim,
                    residue_degree=f.residue_degree,
                    point=None,
                    critical_value=None,
                    kernel_dim=0,
                    verdict="nonsplit",
                    statement=(
                        f"critical local system defined over "
                        f"F_{field.char ** f.residue_degree}, not split over "
                        f"the base field F_{field.char}"
                    ),
                )
            )
    return out


def _rational_summands(W: LaurentPoly, jac: QuotientAlgebra, budget):
    """Bezout idempotent route over Q: split along rational eigenvalues of
    quantum multiplication by the first Chern class."""
    F = jac.field
    A = FiniteAlgebra.from_quotient(jac)
    c1 = jac.nf_coords(W)
    m = jac.element_mult_matrix(c1)
    chi = linalg.charpoly(F, m)
    out = []
    remaining = list(A.unit)
    covered = 0
    for lam, mult in rational_roots(chi):
        e, _, found = bezout_idempotents(A, c1, lam)
        if not found:
            continue
        block_basis = linalg.image_basis(F, A.mult_matrix(e))
        dim = len(block_basis)
        covered += dim
        remaining = [F.sub(x, y) for x, y in zip(remaining, e)]
        # try to read off a critical point: each coordinate variable must act
        # with a single rational eigenvalue on the summand
        point = []
        for g in A.generators:
            bmat = linalg.transpose(block_basis)
            cols = [linalg.solve(F, bmat, A.mult(g, b)) for b in block_basis]
            mp = linalg.minimal_polynomial(F, linalg.transpose(cols))
            if mp.degree == 1:
                point.append(F.neg(mp.coeffs[0]))
            else:
                point = None
                break
        if point is not None:
            for i in range(W.ring.nvars):
                if W.log_derivative(i).evaluate(point) != F.zero:
                    point = None
                    break
        out.append(
            GenerationSummand(
                dim=dim,
                residue_degree=1,
                point=point,
                critical_value=lam,
                kernel_dim=0,
                verdict="split-generates",
                statement=_SPLIT_STATEMENT,
            )
        )
    if covered < A.dim:
        out.append(
            GenerationSummand(
                dim=A.dim - covered,
                residue_degree=0,
                point=None,
                critical_value=None,
                kernel_dim=0,
                verdict="nonsplit",
                statement=(
                    "complementary summand for the irrational part of the "
                    "first-Chern-class spectrum; no rational critical local "
                    "system"
                ),
            )
        )
    return out


def toric_generation_report(P: DelzantPolytope, field: Field,
                            budget: Budget | None = None) -> GenerationReport:
    """Split-generation verdicts for the monotone fibre, one per local factor
    of the Jacobian ring (over F_p) or per rational eigenvalue summand (over
    Q), matched to quantum cohomology through the divisor-to-boundary-monomial
    isomorphism."""
    pres, jac, mor = co0_map(P, field, budget)
    nx = minimal_chern(P)
    report = GenerationReport(
        input_name=P.name or "polytope",
        field=field,
        co0=mor,
        summands=[],
        minimal_chern=nx,
    )
    if not (mor.well_defined and mor.kernel_dim == 0 and mor.surjective):
        report.anomaly = True
        report.notes.append(
            "divisor-to-boundary map is not an isomorphism; "
            "out-of-contract input or implementation bug"
        )
        return report
    W = superpotential(P, field)
    if isinstance(field, PrimeField):
        report.summands = _fp_summands(W, budget)
    else:
        report.summands = _rational_summands(W, jac, budget)
    total = sum(s.dim for s in report.summands)
    if total != jac.dim:
        raise AnomalyError("summand dims do not sum to the algebra dimension")
    return report


def s_mod_m2(n: int, rho, field: Field, budget: Budget | None = None):
    """The square-zero extension S/m^2 at the local system rho.

    Returns (QuotientAlgebra, checks dict).  The quotient has dimension n+1,
    the ideal m = (z_i - rho_i) squares to zero, and the product matches
    (l1, s1)(l2, s2) = (l1 l2, l1 s2 + l2 s1) on the basis 1, z_i - rho_i.
    """
    if len(rho) != n:
        raise UsageError("need one monodromy value per variable")
    for r in rho:
        if r == field.zero:
            raise UsageError("monodromy values must be invertible")
    ring = LaurentRing([f"z{i + 1}" for i in range(n)], field)
    lins = [ring.variable(i) - ring.constant(rho[i]) for i in range(n)]
    gens = [lins[i] * lins[j] for i in range(n) for j in range(i, n)]
    qa = laurent_quotient(gens, budget=budget)
    checks = {"dim_expected": n + 1, "dim": qa.dim if qa.finite else None}
    ok = qa.finite and qa.dim == n + 1
    if ok:
        basis = [qa.nf_coords(l) for l in lins]
        msq_zero = all(
            all(x == field.zero for x in qa.element_product(u, v))
            for u in basis
            for v in basis
        )
        checks["m_squared_zero"] = msq_zero
        # basis (1, z_i - rho_i) spans iff m squares to zero and the table is
        # the square-zero extension product, so independence is the last check
        spanning = linalg.rank(field, [qa.unit_coords()] + basis) == n + 1
        checks["square_zero_extension"] = msq_zero and spanning
        ok = ok and checks["square_zero_extension"]
    checks["ok"] = ok
    return qa, checks
