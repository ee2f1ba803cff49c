"""Delzant polytopes: validation, monotone normalization, lattice of sphere
classes, facet combinatorics, toric cohomology presentations, and the
superpotential of the monotone fibre.

Vertices are enumerated by exact linear solves over all n-subsets of facets;
no LP machinery at desk scale.  Compactness is certified by showing the
recession cone is trivial (no kernel line, no extreme ray on any rank-(n-1)
subset of facet normals).

Polytope JSON:
    {"name": "CP2", "dim": 2, "normals": [[1,0],[0,1],[-1,-1]],
     "lambda": ["1", "1", "1"]}
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import linalg
from .errors import NotMonotoneError, UsageError, ValidationError
from .grobner import DEGREVLEX, polynomial_quotient
from .laurent import LaurentPoly, LaurentRing
from .scalar import QQ, Field, PrimeField


@dataclass
class DelzantPolytope:
    n: int
    normals: list  # N rows of n integers
    lambdas: list  # N rationals
    name: str = ""
    normalization: dict | None = None  # transcript from monotone_normalize

    @property
    def num_facets(self):
        return len(self.normals)

    @classmethod
    def from_json(cls, data: dict) -> "DelzantPolytope":
        try:
            n = int(data["dim"])
            normals = [[int(x) for x in row] for row in data["normals"]]
            lambdas = [Fraction(str(x)) for x in data["lambda"]]
            name = str(data.get("name", ""))
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"malformed polytope JSON: {exc}") from exc
        if any(len(row) != n for row in normals):
            raise UsageError("normal vectors must have length dim")
        if len(lambdas) != len(normals):
            raise UsageError("need one support constant per facet")
        return cls(n=n, normals=normals, lambdas=lambdas, name=name)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "dim": self.n,
            "normals": [list(r) for r in self.normals],
            "lambda": [str(l) for l in self.lambdas],
        }


@dataclass
class VertexData:
    vertices: list  # rational points
    incidence: list  # per-vertex sorted facet index lists (0-based)


@dataclass
class H2Lattice:
    basis: list  # integer vectors p with sum p_j nu_j = 0

    @property
    def rank(self):
        return len(self.basis)


def _dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def _int_det(rows):
    """Exact determinant of a small integer matrix (fraction-free enough
    at desk scale via Fraction elimination)."""
    n = len(rows)
    m = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for c in range(n):
        pivot = None
        for r in range(c, n):
            if m[r][c] != 0:
                pivot = r
                break
        if pivot is None:
            return 0
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            det = -det
        det *= m[c][c]
        inv = m[c][c]
        for r in range(c + 1, n):
            if m[r][c] != 0:
                f = m[r][c] / inv
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return det


def validate(P: DelzantPolytope) -> VertexData:
    """Full Delzant validation; raises ValidationError naming the culprit."""
    n, N = P.n, P.num_facets
    if N < n + 1:
        raise ValidationError("facet_count", f"need at least {n + 1} facets, got {N}")

    # recession cone must be trivial: no kernel line ...
    if linalg.rank(QQ, [[Fraction(x) for x in row] for row in P.normals]) < n:
        raise ValidationError(
            "compactness", "facet normals do not span; polytope is unbounded"
        )
    # ... and no extreme ray
    if n == 1:
        for d in ([Fraction(1)], [Fraction(-1)]):
            if all(_dot(P.normals[i], d) >= 0 for i in range(N)):
                raise ValidationError(
                    "compactness", f"unbounded along recession ray {d}"
                )
    # check every rank-(n-1) subset's kernel direction
    for subset in itertools.combinations(range(N), max(n - 1, 1)):
        mat = [[Fraction(x) for x in P.normals[i]] for i in subset]
        ker = linalg.kernel_basis(QQ, mat)
        if len(ker) != 1:
            continue
        ray = ker[0]
        for cand in (ray, [-x for x in ray]):
            if all(_dot(P.normals[i], cand) >= 0 for i in range(N)):
                raise ValidationError(
                    "compactness",
                    f"unbounded along recession ray {cand} (facets {sorted(subset)})",
                    facets=sorted(i + 1 for i in subset),
                )

    # vertex enumeration over n-subsets
    points = {}
    for subset in itertools.combinations(range(N), n):
        mat = [[Fraction(x) for x in P.normals[i]] for i in subset]
        rhs = [-P.lambdas[i] for i in subset]
        sol = linalg.solve(QQ, mat, rhs)
        if sol is None or linalg.rank(QQ, mat) < n:
            continue
        if any(_dot(P.normals[i], sol) < -P.lambdas[i] for i in range(N)):
            continue
        points[tuple(sol)] = sol
    vertices = []
    incidence = []
    for pt in sorted(points):
        on = [i for i in range(N) if _dot(P.normals[i], pt) == -P.lambdas[i]]
        if len(on) > n:
            raise ValidationError(
                "simplicity",
                f"point ({', '.join(str(x) for x in pt)}) lies on facets "
                f"{[i + 1 for i in on]}",
                facets=[i + 1 for i in on],
                vertex=[str(x) for x in pt],
            )
        vertices.append(list(pt))
        incidence.append(on)
    if not vertices:
        raise ValidationError("nonempty", "no vertices found; polytope empty")

    for pt, on in zip(vertices, incidence):
        det = _int_det([P.normals[i] for i in on])
        if abs(det) != 1:
            raise ValidationError(
                "unimodularity",
                f"facets {[i + 1 for i in on]} meet at "
                f"({', '.join(str(x) for x in pt)}) with |det| = {abs(det)}",
                facets=[i + 1 for i in on],
                vertex=[str(x) for x in pt],
            )

    covered = set()
    for on in incidence:
        covered.update(on)
    for i in range(N):
        if i not in covered:
            raise ValidationError(
                "irredundancy",
                f"facet {i + 1} contains no vertex (redundant inequality)",
                facets=[i + 1],
            )

    # nonempty interior: the vertex barycenter must satisfy all strictly
    k = len(vertices)
    bary = [sum(v[j] for v in vertices) / k for j in range(P.n)]
    for i in range(N):
        if _dot(P.normals[i], bary) <= -P.lambdas[i]:
            raise ValidationError(
                "full_dimension",
                f"polytope has empty interior (tight at facet {i + 1})",
                facets=[i + 1],
            )
    return VertexData(vertices=vertices, incidence=incidence)


def monotone_normalize(P: DelzantPolytope) -> DelzantPolytope:
    """Translate and rescale so every support constant equals 1.

    Solves lambda_j + <nu_j, a> = c exactly; inconsistency means the polytope
    is not monotone.  Idempotent on already-normalized input.
    """
    validate(P)
    n, N = P.n, P.num_facets
    # unknowns (a_1..a_n, c): <nu_j, a> - c = -lambda_j
    mat = [[Fraction(x) for x in P.normals[j]] + [Fraction(-1)] for j in range(N)]
    rhs = [-l for l in P.lambdas]
    sol = linalg.solve(QQ, mat, rhs)
    if sol is None:
        raise NotMonotoneError(
            f"{P.name or 'polytope'}: no translation equalizes the support constants"
        )
    a, c = sol[:n], sol[n]
    if c <= 0:
        raise NotMonotoneError("support constants equalize at a nonpositive value")
    out = DelzantPolytope(
        n=P.n,
        normals=[list(r) for r in P.normals],
        lambdas=[Fraction(1)] * N,
        name=P.name,
        normalization={"translation": [str(x) for x in a], "scale": str(c)},
    )
    validate(out)
    return out


def is_normalized(P: DelzantPolytope) -> bool:
    return all(l == 1 for l in P.lambdas)


def h2_lattice(P: DelzantPolytope) -> H2Lattice:
    """Integral basis of {p : sum_j p_j nu_j = 0} via unimodular column ops."""
    N, n = P.num_facets, P.n
    # columns of `m` are the normals' coordinates per facet; reduce columns
    m = [[P.normals[j][i] for j in range(N)] for i in range(n)]  # n x N
    tracker = [[1 if i == j else 0 for j in range(N)] for i in range(N)]  # N x N cols

    def col(mat, j):
        return [mat[i][j] for i in range(len(mat))]

    def addmul_col(mat, dst, src, q):
        for i in range(len(mat)):
            mat[i][dst] += q * mat[i][src]

    def swap_col(mat, a, b):
        for i in range(len(mat)):
            mat[i][a], mat[i][b] = mat[i][b], mat[i][a]

    row = 0
    fixed = 0
    while row < n and fixed < N:
        while True:
            nz = [j for j in range(fixed, N) if m[row][j] != 0]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(m[row][j]))
            if j0 != fixed:
                swap_col(m, fixed, j0)
                swap_col(tracker, fixed, j0)
            done = True
            for j in range(fixed + 1, N):
                if m[row][j] != 0:
                    q = -(m[row][j] // m[row][fixed])
                    addmul_col(m, j, fixed, q)
                    addmul_col(tracker, j, fixed, q)
                    if m[row][j] != 0:
                        done = False
            if done:
                break
        if m[row][fixed] != 0:
            fixed += 1
        row += 1
    basis = []
    for j in range(fixed, N):
        if all(m[i][j] == 0 for i in range(n)):
            basis.append(col(tracker, j))
    # canonical sign/order for reproducibility
    canon = []
    for v in basis:
        lead = next((x for x in v if x != 0), 0)
        canon.append([-x for x in v] if lead < 0 else list(v))
    canon.sort(reverse=True)
    lat = H2Lattice(basis=canon)
    assert lat.rank == N - n
    return lat


def minimal_chern(P: DelzantPolytope) -> int | None:
    """gcd of |sum_j p_j| over the sphere-class lattice basis; None when the
    first Chern class kills every class (degenerate)."""
    lat = h2_lattice(P)
    g = 0
    for p in lat.basis:
        g = gcd(g, abs(sum(p)))
    return g if g > 0 else None


def primitive_collections(V: VertexData, num_facets: int):
    """Minimal facet subsets with empty common intersection.

    A subset meets iff it sits inside some vertex's incidence set, so the
    collections are the minimal subsets contained in no incidence set.
    """
    inc_sets = [frozenset(on) for on in V.incidence]
    minimal = []
    for size in range(1, num_facets + 1):
        for J in itertools.combinations(range(num_facets), size):
            Js = set(J)
            if any(Js <= inc for inc in inc_sets):
                continue
            if any(set(M) <= Js for M in minimal):
                continue
            minimal.append(J)
    return [sorted(J) for J in minimal]


def _cohomology_quotient(P: DelzantPolytope, field: Field, budget=None):
    V = validate(P)
    N = P.num_facets
    names = [f"H{j + 1}" for j in range(N)]
    gens = []
    for i in range(P.n):
        g = {}
        for j in range(N):
            c = field.from_int(P.normals[j][i])
            if c != field.zero:
                e = [0] * N
                e[j] = 1
                g[tuple(e)] = c
        if g:
            gens.append(g)
    for J in primitive_collections(V, N):
        e = [0] * N
        for j in J:
            e[j] = 1
        gens.append({tuple(e): field.one})
    return polynomial_quotient(field, names, gens, DEGREVLEX, budget)


def classical_cohomology(P: DelzantPolytope, field: Field, budget=None):
    """Graded dims of the divisor-class presentation; slot j is degree 2j."""
    return _cohomology_quotient(P, field, budget).graded_dims()


def real_cohomology_dims(P: DelzantPolytope, budget=None):
    """Mod-2 Betti numbers of the real locus: same presentation over F_2."""
    return _cohomology_quotient(P, PrimeField(2), budget).graded_dims()


def superpotential(P: DelzantPolytope, field: Field) -> LaurentPoly:
    """W = sum_j z^{nu_j} for the monotone fibre; input must be normalized."""
    if not is_normalized(P):
        raise UsageError(
            "superpotential needs a monotone-normalized polytope (all lambda = 1)"
        )
    ring = LaurentRing([f"z{i + 1}" for i in range(P.n)], field)
    return ring.from_terms((tuple(nu), field.one) for nu in P.normals)


# --- corpus builders ----------------------------------------------------------


def projective_space(n: int) -> DelzantPolytope:
    normals = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    normals.append([-1] * n)
    return DelzantPolytope(
        n=n,
        normals=normals,
        lambdas=[Fraction(1)] * (n + 1),
        name=f"CP{n}",
    )


def polytope_product(P: DelzantPolytope, Q: DelzantPolytope, name="") -> DelzantPolytope:
    normals = [list(nu) + [0] * Q.n for nu in P.normals]
    normals += [[0] * P.n + list(nu) for nu in Q.normals]
    return DelzantPolytope(
        n=P.n + Q.n,
        normals=normals,
        lambdas=list(P.lambdas) + list(Q.lambdas),
        name=name or f"{P.name}x{Q.name}",
    )


def corpus():
    cp1 = projective_space(1)
    return {
        "CP1": cp1,
        "CP2": projective_space(2),
        "CP3": projective_space(3),
        "CP1xCP1": polytope_product(cp1, cp1),
        "CP1xCP1xCP1": polytope_product(polytope_product(cp1, cp1), cp1,
                                        name="CP1xCP1xCP1"),
    }
