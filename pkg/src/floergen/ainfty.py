"""Finite-dimensional Z/2-graded A-infinity structures, Hochschild cochains,
and the chain-level maps used in the closed-open comparison arguments.

Conventions, fixed once and used everywhere:

  * operation tensors are keyed by input tuples in written order, so the key
    (i_k, ..., i_1) holds mu^k(b_{i_k}, ..., b_{i_1});
  * maltese_i is the shifted degree sum |a_1| + ... + |a_i| - i of the i
    rightmost inputs;
  * a dg-algebra embeds via mu^1(a) = (-1)^{|a|} d a and
    mu^2(a2, a1) = (-1)^{|a1|} a2 a1;
  * the opposite structure reverses inputs with the sign
    (-1)^{triangle_l + l - 1}, triangle_l = sum_{s<t} (|c_s|-1)(|c_t|-1);
  * the Hochschild differential with coefficients in a bimodule P is
      mu^1_CC(phi) = sum (-1)^{|phi| maltese_l + 1}
                         mu^{k|1|l}_P(..., phi(...), ...^l)
                   + sum (-1)^{|phi| + maltese_i} phi(..., mu(...), ...^i),
    and the diagonal bimodule mu^{k|1|l}(a..., b, a'...) =
    (-1)^{maltese_l + 1} mu^{k+1+l}(a..., b, a'...) recovers the classical
    differential on CC^*(A, A);
  * hom_k(M, N) of left modules is a bimodule via
      mu^{0|1|0}(z)(m) = (-1)^{|m|} (mu_N^1(z(m)) - z(mu_M^1(m))),
      mu^{k|1|0}(a..., z)(m) = (-1)^{|m|} mu_N(a..., z(m)),
      mu^{0|1|l}(z, a...)(m) = (-1)^{|m|+1} z(mu_M(a..., m)),
    all other components zero; a structure viewed as a module over itself
    carries mu_M = -mu.

Truncation discipline: cochains carry a length cap; every operation reports
the component range on which the computation is exact (`exact window`), and
test assertions only fire inside it.  Module/bimodule coherence is verified
operationally, by squaring the relevant differentials on a spanning set of
elementary cochains within the window.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field as dc_field

from . import linalg
from .errors import DomainError, UsageError
from .scalar import Field, field_name, parse_field


def _sign(field, exponent):
    return field.one if exponent % 2 == 0 else field.neg(field.one)


def _vadd(field, target, src, coeff):
    for i, c in src.items():
        acc = field.add(target.get(i, field.zero), field.mul(coeff, c))
        if acc == field.zero:
            target.pop(i, None)
        else:
            target[i] = acc


@dataclass
class AInftyStructure:
    field: Field
    degrees: list
    arity_cap: int
    ops: dict  # k -> {written-order input tuple -> {output index -> coeff}}
    unit: int | None = None
    labels: list | None = None
    complete: bool = True  # operations above arity_cap vanish identically

    def __post_init__(self):
        if self.labels is None:
            self.labels = [f"b{i}" for i in range(self.dim)]
        for k, tensor in self.ops.items():
            for key, out in tensor.items():
                if len(key) != k:
                    raise UsageError(f"arity-{k} tensor keyed by {len(key)} inputs")
                want = (sum(self.degrees[i] for i in key) + 2 - k) % 2
                for idx, c in out.items():
                    if c != self.field.zero and self.degrees[idx] % 2 != want:
                        raise UsageError(
                            f"mu^{k}{key} output {idx} violates degree parity"
                        )

    @property
    def dim(self):
        return len(self.degrees)

    def op(self, k, key):
        """Sparse output of mu^k on a written-order basis tuple."""
        if k > self.arity_cap and self.complete:
            return {}
        tensor = self.ops.get(k)
        if tensor is None:
            return {}
        return tensor.get(tuple(key), {})

    def op_linear(self, k, keys_with_coeffs):
        F = self.field
        out = {}
        for key, c in keys_with_coeffs:
            _vadd(F, out, self.op(k, key), c)
        return out

    def maltese(self, key) -> int:
        """Shifted degree sum of a written-order tuple (all of it)."""
        return sum(self.degrees[i] - 1 for i in key) % 2

    def mu1_matrix(self):
        F = self.field
        m = linalg.zeros(F, self.dim, self.dim)
        for j in range(self.dim):
            for i, c in self.op(1, (j,)).items():
                m[i][j] = c
        return m

    def to_json(self):
        F = self.field
        return {
            "field": field_name(F),
            "degrees": list(self.degrees),
            "unit": self.unit,
            "labels": list(self.labels),
            "mu": {
                str(k): [
                    {
                        "inputs": list(key),
                        "output": {str(i): F.to_str(c) for i, c in sorted(out.items())},
                    }
                    for key, out in sorted(tensor.items())
                ]
                for k, tensor in sorted(self.ops.items())
            },
        }

    @classmethod
    def from_json(cls, data):
        try:
            F = parse_field(data["field"])
            degrees = [int(d) % 2 for d in data["degrees"]]
            ops = {}
            for k_str, entries in data.get("mu", {}).items():
                k = int(k_str)
                tensor = {}
                for entry in entries:
                    key = tuple(int(i) for i in entry["inputs"])
                    out = {
                        int(i): F.from_str(str(c))
                        for i, c in entry["output"].items()
                    }
                    out = {i: c for i, c in out.items() if c != F.zero}
                    if out:
                        tensor[key] = out
                if tensor:
                    ops[k] = tensor
            unit = data.get("unit")
            cap = max(ops, default=1)
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"malformed A-infinity JSON: {exc}") from exc
        return cls(
            field=F,
            degrees=degrees,
            arity_cap=cap,
            ops=ops,
            unit=int(unit) if unit is not None else None,
            labels=list(data.get("labels", [])) or None,
        )


def from_dga(field, degrees, diff, prod, unit=None, labels=None) -> AInftyStructure:
    """Embed a dg-algebra: diff[j] = d(b_j) sparse, prod[(i, j)] = b_i b_j."""
    dim = len(degrees)
    mu1 = {}
    for j in range(dim):
        out = {}
        for i, c in diff.get(j, {}).items():
            if c != field.zero:
                out[i] = field.mul(_sign(field, degrees[j]), c)
        if out:
            mu1[(j,)] = out
    mu2 = {}
    for (i, j), val in prod.items():
        out = {}
        for r, c in val.items():
            if c != field.zero:
                out[r] = field.mul(_sign(field, degrees[j]), c)
        if out:
            mu2[(i, j)] = out
    ops = {}
    if mu1:
        ops[1] = mu1
    if mu2:
        ops[2] = mu2
    return AInftyStructure(
        field=field, degrees=list(degrees), arity_cap=2, ops=ops,
        unit=unit, labels=labels,
    )


# --- relations and basic constructions -----------------------------------------


def ainfty_residuals(A: AInftyStructure, up_to_arity: int):
    """All nonzero A-infinity relation residuals up to the given arity."""
    F = A.field
    failures = []
    for k in range(1, up_to_arity + 1):
        for key in itertools.product(range(A.dim), repeat=k):
            total = {}
            for j in range(1, k + 1):
                for i in range(0, k - j + 1):
                    inner_key = key[k - i - j : k - i]
                    inner = A.op(j, inner_key)
                    if not inner:
                        continue
                    malt = sum(A.degrees[t] - 1 for t in key[k - i :]) % 2
                    s = _sign(F, malt)
                    for b, c in inner.items():
                        outer_key = key[: k - i - j] + (b,) + key[k - i :]
                        coeff = F.mul(s, c)
                        _vadd(F, total, A.op(k - j + 1, outer_key), coeff)
            if total:
                failures.append((k, key, total))
    return failures


def check_ainfty_relations(A: AInftyStructure, up_to_arity: int) -> bool:
    return not ainfty_residuals(A, up_to_arity)


def opposite(A: AInftyStructure) -> AInftyStructure:
    """Reverse inputs with the sign (-1)^{triangle_l + l - 1}."""
    F = A.field
    ops = {}
    for l, tensor in A.ops.items():
        new = {}
        for key, out in tensor.items():
            degs = [A.degrees[i] for i in key]
            tri = 0
            for s in range(len(degs)):
                for t in range(s + 1, len(degs)):
                    tri += (degs[s] - 1) * (degs[t] - 1)
            sgn = _sign(F, tri + l - 1)
            rev = tuple(reversed(key))
            entry = {i: F.mul(sgn, c) for i, c in out.items()}
            if entry:
                new[rev] = entry
        if new:
            ops[l] = new
    return AInftyStructure(
        field=F, degrees=list(A.degrees), arity_cap=A.arity_cap, ops=ops,
        unit=A.unit, labels=list(A.labels), complete=A.complete,
    )


@dataclass
class GradedAlgebra:
    """Cohomology output: representatives, degrees, and the induced product."""

    field: Field
    degrees: list
    representatives: list  # cocycle coordinate vectors in the ambient A
    products: list  # products[i][j] = coordinate vector in this basis
    unit: int | None = None

    @property
    def dim(self):
        return len(self.degrees)

    def graded_opposite(self) -> "GradedAlgebra":
        F = self.field
        prods = [
            [
                [
                    F.mul(_sign(F, self.degrees[i] * self.degrees[j]), c)
                    for c in self.products[j][i]
                ]
                for j in range(self.dim)
            ]
            for i in range(self.dim)
        ]
        return GradedAlgebra(F, list(self.degrees), list(self.representatives),
                             prods, self.unit)


def cohomology(A: AInftyStructure) -> GradedAlgebra:
    """ker mu^1 / im mu^1 with product [c2][c1] = (-1)^{|c1|} [mu^2(c2, c1)]."""
    F = A.field
    d = A.mu1_matrix()
    if any(any(x != F.zero for x in row) for row in linalg.mat_mul(F, d, d)):
        raise DomainError("mu^1 does not square to zero")
    ker = linalg.kernel_basis(F, d)
    im = linalg.image_basis(F, d)
    reps = []
    span = [list(v) for v in im]
    for v in ker:
        if not linalg.span_contains(F, span, v):
            reps.append(v)
            span.append(v)
    # coordinates in the quotient: solve against [reps | im]
    proj_mat = linalg.transpose(reps + im) if reps or im else []

    def quotient_coords(vec):
        if not reps:
            return []
        sol = linalg.solve(F, proj_mat, vec)
        if sol is None:
            raise DomainError("product of cocycles is not a cocycle")
        return sol[: len(reps)]

    def mu2_elem(u, v):
        out = {}
        for i, cu in enumerate(u):
            if cu == F.zero:
                continue
            for j, cv in enumerate(v):
                if cv == F.zero:
                    continue
                _vadd(F, out, A.op(2, (i, j)), F.mul(cu, cv))
        dense = [F.zero] * A.dim
        for i, c in out.items():
            dense[i] = c
        return dense

    degrees = []
    for r in reps:
        degs = {A.degrees[i] for i, c in enumerate(r) if c != F.zero}
        if len(degs) != 1:
            raise DomainError("inhomogeneous cohomology representative")
        degrees.append(degs.pop())
    products = []
    for i, u in enumerate(reps):
        row = []
        for j, v in enumerate(reps):
            prod = mu2_elem(u, v)
            sgn = _sign(F, degrees[j])
            row.append([F.mul(sgn, c) for c in quotient_coords(prod)])
        products.append(row)
    unit = None
    if A.unit is not None:
        unit_vec = [F.one if i == A.unit else F.zero for i in range(A.dim)]
        coords = quotient_coords(unit_vec)
        nz = [i for i, c in enumerate(coords) if c != F.zero]
        if len(nz) == 1 and coords[nz[0]] == F.one:
            unit = nz[0]
    # spot-check associativity of the induced product
    for i in range(len(reps)):
        for j in range(len(reps)):
            for k in range(len(reps)):
                left = _table_mul(F, products, _table_mul_basis(F, products, i, j), k)
                right = _table_mul_right(F, products, i, _table_mul_basis(F, products, j, k))
                if left != right:
                    raise DomainError("induced product is not associative")
    return GradedAlgebra(F, degrees, reps, products, unit)


def _table_mul_basis(F, products, i, j):
    return products[i][j]


def _table_mul(F, products, vec, k):
    out = [F.zero] * len(products)
    for i, c in enumerate(vec):
        if c == F.zero:
            continue
        for r, x in enumerate(products[i][k]):
            out[r] = F.add(out[r], F.mul(c, x))
    return out


def _table_mul_right(F, products, i, vec):
    out = [F.zero] * len(products)
    for j, c in enumerate(vec):
        if c == F.zero:
            continue
        for r, x in enumerate(products[i][j]):
            out[r] = F.add(out[r], F.mul(c, x))
    return out


# --- modules and bimodules ------------------------------------------------------


@dataclass
class Module:
    """Left module over A: op(r, a_tuple, m) -> sparse output, r >= 0 algebra
    inputs in written order, op(0, (), m) the differential."""

    algebra: AInftyStructure
    degrees: list
    action: object  # callable (r, a_key, m_idx) -> {m_out: coeff}

    @property
    def dim(self):
        return len(self.degrees)


def self_module(A: AInftyStructure) -> Module:
    """A as a left module over itself, with the standard sign mu_M = -mu."""

    F = A.field

    def action(r, a_key, m_idx):
        out = A.op(r + 1, tuple(a_key) + (m_idx,))
        return {i: F.neg(c) for i, c in out.items()}

    return Module(algebra=A, degrees=list(A.degrees), action=action)


@dataclass
class BimoduleStructure:
    """Bimodule over A with basis degrees and operations mu^{k|1|l}."""

    algebra: AInftyStructure
    degrees: list
    labels: list
    op: object  # callable (k, l, left_key, p_idx, right_key) -> {p_out: coeff}

    @property
    def dim(self):
        return len(self.degrees)

    def tensor(self, k, l):
        """Materialize one operation family (used by equality tests)."""
        A = self.algebra
        out = {}
        for left in itertools.product(range(A.dim), repeat=k):
            for right in itertools.product(range(A.dim), repeat=l):
                for p in range(self.dim):
                    val = self.op(k, l, left, p, right)
                    if val:
                        out[(left, p, right)] = dict(val)
        return out


def diagonal_bimodule(A: AInftyStructure) -> BimoduleStructure:
    F = A.field

    def op(k, l, left_key, p_idx, right_key):
        malt = sum(A.degrees[i] - 1 for i in right_key) % 2
        sgn = _sign(F, malt + 1)
        raw = A.op(k + 1 + l, tuple(left_key) + (p_idx,) + tuple(right_key))
        return {i: F.mul(sgn, c) for i, c in raw.items()}

    return BimoduleStructure(
        algebra=A, degrees=list(A.degrees), labels=list(A.labels), op=op
    )


def hom_bimodule(M: Module, N: Module) -> BimoduleStructure:
    """hom_k(M, N) with matrix-unit basis z_{p,q}: m_q -> n_p."""
    A = M.algebra
    F = A.field
    dim_m, dim_n = M.dim, N.dim
    units = [(p, q) for p in range(dim_n) for q in range(dim_m)]
    index = {pq: i for i, pq in enumerate(units)}
    degrees = [(N.degrees[p] + M.degrees[q]) % 2 for p, q in units]
    labels = [f"E[{p},{q}]" for p, q in units]

    def op(k, l, left_key, z_idx, right_key):
        p, q = units[z_idx]
        out = {}
        if k == 0 and l == 0:
            # z'(m) = (-1)^{|m|} (mu_N^1(z(m)) - z(mu_M^1(m)))
            for pp, c in N.action(0, (), p).items():
                _vadd(F, out, {index[(pp, q)]: c}, _sign(F, M.degrees[q]))
            for qq in range(dim_m):
                dm = M.action(0, (), qq)
                c = dm.get(q)
                if c is not None:
                    _vadd(
                        F,
                        out,
                        {index[(p, qq)]: c},
                        _sign(F, M.degrees[qq] + 1),
                    )
            return out
        if l == 0:
            for pp, c in N.action(k, left_key, p).items():
                _vadd(F, out, {index[(pp, q)]: c}, _sign(F, M.degrees[q]))
            return out
        if k == 0:
            for qq in range(dim_m):
                act = M.action(l, right_key, qq)
                c = act.get(q)
                if c is not None:
                    _vadd(
                        F,
                        out,
                        {index[(p, qq)]: c},
                        _sign(F, M.degrees[qq] + 1),
                    )
            return out
        return {}

    return BimoduleStructure(algebra=A, degrees=degrees, labels=labels, op=op)


def end_bimodule_tensors(A: AInftyStructure, k, l):
    """Direct endomorphism-bimodule tensors for comparison tests:
    mu^{0|1|0}(z)(x) = (-1)^{|x|+1}(mu^1(z(x)) - z(mu^1(x))),
    mu^{k|1|0}(a..., z)(x) = (-1)^{|x|+1} mu(a..., z(x)),
    mu^{0|1|l}(z, a...)(x) = (-1)^{|x|} z(mu(a..., x))."""
    F = A.field
    dim = A.dim
    units = [(p, q) for p in range(dim) for q in range(dim)]
    index = {pq: i for i, pq in enumerate(units)}
    out = {}
    for left in itertools.product(range(dim), repeat=k):
        for right in itertools.product(range(dim), repeat=l):
            for zi, (p, q) in enumerate(units):
                val = {}
                if k == 0 and l == 0:
                    for pp, c in A.op(1, (p,)).items():
                        _vadd(F, val, {index[(pp, q)]: c}, _sign(F, A.degrees[q] + 1))
                    for qq in range(dim):
                        c = A.op(1, (qq,)).get(q)
                        if c is not None:
                            _vadd(F, val, {index[(p, qq)]: c}, _sign(F, A.degrees[qq]))
                elif l == 0:
                    for pp, c in A.op(k + 1, tuple(left) + (p,)).items():
                        _vadd(F, val, {index[(pp, q)]: c}, _sign(F, A.degrees[q] + 1))
                elif k == 0:
                    for qq in range(dim):
                        c = A.op(l + 1, tuple(right) + (qq,)).get(q)
                        if c is not None:
                            _vadd(F, val, {index[(p, qq)]: c}, _sign(F, A.degrees[qq]))
                if val:
                    out[(left, zi, right)] = val
    return out


# --- Hochschild cochains ----------------------------------------------------------


@dataclass
class HochschildCochain:
    """Components phi^r: A[1]^{x r} -> coefficient space, r <= cap."""

    algebra: AInftyStructure
    coeff_degrees: list
    degree: int
    cap: int
    components: dict = dc_field(default_factory=dict)
    exact_upto: int | None = None  # None: exact on every stored component

    def component(self, r):
        return self.components.get(r, {})

    def value(self, r, key):
        return self.component(r).get(tuple(key), {})

    def set_value(self, r, key, val):
        if val:
            self.components.setdefault(r, {})[tuple(key)] = val

    def window(self):
        return self.cap if self.exact_upto is None else self.exact_upto

    def is_zero_within(self, upto):
        for r, tensor in self.components.items():
            if r > upto:
                continue
            for val in tensor.values():
                if val:
                    return False
        return True


def unit_cochain(A: AInftyStructure) -> HochschildCochain:
    if A.unit is None:
        raise UsageError("structure has no designated unit")
    phi = HochschildCochain(A, list(A.degrees), 0, cap=0)
    phi.set_value(0, (), {A.unit: A.field.one})
    phi.cap = 10**9  # genuinely zero beyond length 0
    return phi


def element_cochain(A: AInftyStructure, coords, degree=None) -> HochschildCochain:
    F = A.field
    val = {i: c for i, c in enumerate(coords) if c != F.zero}
    degs = {A.degrees[i] for i in val}
    if degree is None:
        if len(degs) > 1:
            raise UsageError("element is not homogeneous; pass its degree")
        degree = degs.pop() if degs else 0
    phi = HochschildCochain(A, list(A.degrees), degree, cap=10**9)
    phi.set_value(0, (), val)
    return phi


def _window_after(A: AInftyStructure, phi_cap: int) -> int:
    if A.complete:
        return phi_cap
    return max(phi_cap - A.arity_cap + 1, 0)


def hochschild_diff(A: AInftyStructure, P: BimoduleStructure,
                    phi: HochschildCochain, cap: int | None = None) -> HochschildCochain:
    """The bimodule Hochschild differential; exact on components within the
    window annotation of the result.  Component r of the output only reads
    phi^{<= r}, so the window never shrinks below min(cap, phi window)."""
    F = A.field
    if cap is None:
        cap = phi.cap
    if cap >= 10**9:
        raise UsageError("pass an explicit length cap for unbounded cochains")
    out = HochschildCochain(
        A, list(P.degrees), (phi.degree + 1) % 2,
        cap=cap,
        exact_upto=min(_window_after(A, phi.window()), phi.window(), cap),
    )
    top = min(cap, out.window())
    for r in range(top + 1):
        for key in itertools.product(range(A.dim), repeat=r):
            total = {}
            # bimodule action terms
            for l in range(r + 1):
                for j in range(r - l + 1):
                    k = r - l - j
                    right = key[r - l :]
                    mid = key[r - l - j : r - l]
                    left = key[: r - l - j]
                    phi_val = phi.value(j, mid)
                    if not phi_val:
                        continue
                    malt = sum(A.degrees[t] - 1 for t in right) % 2
                    sgn = _sign(F, phi.degree * malt + 1)
                    for p, c in phi_val.items():
                        res = P.op(k, l, left, p, right)
                        if res:
                            _vadd(F, total, res, F.mul(sgn, c))
            # inner mu insertions
            for i in range(r + 1):
                for j in range(1, r - i + 1):
                    rem = r - j + 1
                    inner = A.op(j, key[r - i - j : r - i])
                    if not inner:
                        continue
                    malt = sum(A.degrees[t] - 1 for t in key[r - i :]) % 2
                    sgn = _sign(F, phi.degree + malt)
                    for b, c in inner.items():
                        new_key = key[: r - i - j] + (b,) + key[r - i :]
                        val = phi.value(rem, new_key)
                        if val:
                            _vadd(F, total, val, F.mul(sgn, c))
            out.set_value(r, key, total)
    return out


def hochschild_diff_diagonal_direct(A: AInftyStructure, phi: HochschildCochain,
                                    cap: int | None = None) -> HochschildCochain:
    """Independent expansion of the classical diagonal-coefficient formula,
    kept as an oracle against the bimodule specialization."""
    F = A.field
    if cap is None:
        cap = phi.cap
    if cap >= 10**9:
        raise UsageError("pass an explicit length cap for unbounded cochains")
    out = HochschildCochain(
        A, list(A.degrees), (phi.degree + 1) % 2, cap=cap,
        exact_upto=min(_window_after(A, phi.window()), phi.window(), cap),
    )
    top = min(cap, out.window())
    for r in range(top + 1):
        for key in itertools.product(range(A.dim), repeat=r):
            total = {}
            for i in range(r + 1):
                for j in range(r - i + 1):
                    mid = key[r - i - j : r - i]
                    phi_val = phi.value(j, mid)
                    if not phi_val:
                        continue
                    malt = sum(A.degrees[t] - 1 for t in key[r - i :]) % 2
                    sgn = _sign(F, (phi.degree + 1) * malt)
                    for b, c in phi_val.items():
                        outer = key[: r - i - j] + (b,) + key[r - i :]
                        _vadd(F, total, A.op(r - j + 1, outer), F.mul(sgn, c))
            for i in range(r + 1):
                for j in range(1, r - i + 1):
                    inner = A.op(j, key[r - i - j : r - i])
                    if not inner:
                        continue
                    malt = sum(A.degrees[t] - 1 for t in key[r - i :]) % 2
                    sgn = _sign(F, phi.degree + malt)
                    for b, c in inner.items():
                        new_key = key[: r - i - j] + (b,) + key[r - i :]
                        val = phi.value(r - j + 1, new_key)
                        if val:
                            _vadd(F, total, val, F.mul(sgn, c))
            out.set_value(r, key, total)
    return out


def hochschild_prod(A: AInftyStructure, psi: HochschildCochain,
                    phi: HochschildCochain, cap: int | None = None) -> HochschildCochain:
    """Cup-type product on algebra-valued cochains:
    sum (-1)^{(|psi|-1) maltese_l + (|phi|-1) maltese_i}
        mu(..., psi(...), ..., phi(...), ...^i)."""
    F = A.field
    win = min(psi.window(), phi.window())
    if cap is None:
        cap = min(psi.cap, phi.cap)
    if cap >= 10**9:
        raise UsageError("pass an explicit length cap for unbounded cochains")
    out = HochschildCochain(
        A, list(A.degrees), (psi.degree + phi.degree) % 2,
        cap=cap,
        exact_upto=min(_window_after(A, win), win, cap),
    )
    top = min(cap, out.window())
    for r in range(top + 1):
        for key in itertools.product(range(A.dim), repeat=r):
            total = {}
            for i in range(r + 1):
                for j in range(r - i + 1):
                    for l in range(i + j, r + 1):
                        for m in range(r - l + 1):
                            phi_val = phi.value(j, key[r - i - j : r - i])
                            if not phi_val:
                                continue
                            psi_val = psi.value(m, key[r - l - m : r - l])
                            if not psi_val:
                                continue
                            malt_i = sum(A.degrees[t] - 1 for t in key[r - i :]) % 2
                            malt_l = sum(A.degrees[t] - 1 for t in key[r - l :]) % 2
                            sgn = _sign(
                                F,
                                (psi.degree + 1) * malt_l + (phi.degree + 1) * malt_i,
                            )
                            for b1, c1 in phi_val.items():
                                for b2, c2 in psi_val.items():
                                    outer = (
                                        key[: r - l - m]
                                        + (b2,)
                                        + key[r - l : r - i - j]
                                        + (b1,)
                                        + key[r - i :]
                                    )
                                    coeff = F.mul(sgn, F.mul(c1, c2))
                                    _vadd(
                                        F, total,
                                        A.op(r - j - m + 2, outer), coeff,
                                    )
            out.set_value(r, key, total)
    return out


def theta_map(A: AInftyStructure, c_coords, cap: int) -> HochschildCochain:
    """theta(c)(a_k, ..., a_1)(x) = (-1)^{|c| (|x|-1)} mu(a_k, ..., a_1, x, c),
    valued in the endomorphism coefficient space (matrix units over A)."""
    F = A.field
    dim = A.dim
    val0 = {i: c for i, c in enumerate(c_coords) if c != F.zero}
    degs = {A.degrees[i] for i in val0}
    if len(degs) > 1:
        raise UsageError("theta needs a homogeneous element")
    c_deg = degs.pop() if degs else 0
    units = [(p, q) for p in range(dim) for q in range(dim)]
    index = {pq: i for i, pq in enumerate(units)}
    unit_degrees = [(A.degrees[p] + A.degrees[q]) % 2 for p, q in units]
    out = HochschildCochain(A, unit_degrees, c_deg, cap=cap)
    if A.complete:
        out.exact_upto = None
    else:
        out.exact_upto = max(A.arity_cap - 2, 0)
    for k in range(cap + 1):
        for key in itertools.product(range(dim), repeat=k):
            val = {}
            for x in range(dim):
                sgn = _sign(F, c_deg * (A.degrees[x] + 1))
                for ci, cc in val0.items():
                    res = A.op(k + 2, tuple(key) + (x, ci))
                    for p, c in res.items():
                        _vadd(F, val, {index[(p, x)]: c}, F.mul(sgn, cc))
            out.set_value(k, key, val)
    return out


def pi_map(A: AInftyStructure, phi: HochschildCochain):
    """(-1)^{|phi|} phi^0 evaluated at the unit; end-valued cochains yield an
    element of A, algebra-valued ones a scalar multiple reading."""
    if A.unit is None:
        raise UsageError("structure has no designated unit")
    F = A.field
    dim = A.dim
    val0 = phi.value(0, ())
    out = [F.zero] * dim
    units = [(p, q) for p in range(dim) for q in range(dim)]
    sgn = _sign(F, phi.degree)
    if len(phi.coeff_degrees) == dim * dim:
        for i, c in val0.items():
            p, q = units[i]
            if q == A.unit:
                out[p] = F.add(out[p], F.mul(sgn, c))
    elif len(phi.coeff_degrees) == dim:
        for i, c in val0.items():
            out[i] = F.add(out[i], F.mul(sgn, c))
    else:
        raise UsageError("unrecognized coefficient space")
    return out


# --- premorphism complex (module coherence, verified operationally) ---------------


def premorphism_diff(M: Module, N: Module, psi_components, psi_degree, cap):
    """Differential on A-module premorphisms hom_A(M, N):
    sum mu_N(..., psi(..., m)) + sum (-1)^{|psi|+1} psi(..., mu_M(..., m))
    + sum (-1)^{|psi| + maltese_i + |m| + 1} psi(..., mu(...), ...^i, m)."""
    A = M.algebra
    F = A.field
    out = {}
    for r in range(cap + 1):
        for key in itertools.product(range(A.dim), repeat=r):
            for mi in range(M.dim):
                total = {}
                for j in range(r + 1):
                    inner = psi_components.get(j, {}).get((key[r - j :], mi))
                    if inner:
                        for m_out, c in inner.items():
                            res = N.action(r - j, key[: r - j], m_out)
                            _vadd(F, total, res, c)
                for j in range(r + 1):
                    act = M.action(j, key[r - j :], mi)
                    for m_mid, c in act.items():
                        val = psi_components.get(r - j, {}).get(
                            (key[: r - j], m_mid)
                        )
                        if val:
                            _vadd(
                                F, total, val,
                                F.mul(_sign(F, psi_degree + 1), c),
                            )
                for i in range(r + 1):
                    for j in range(1, r - i + 1):
                        inner = A.op(j, key[r - i - j : r - i])
                        if not inner:
                            continue
                        malt = sum(A.degrees[t] - 1 for t in key[r - i :]) % 2
                        sgn = _sign(F, psi_degree + malt + M.degrees[mi] + 1)
                        for b, c in inner.items():
                            new_key = key[: r - i - j] + (b,) + key[r - i :]
                            val = psi_components.get(r - j + 1, {}).get(
                                (new_key, mi)
                            )
                            if val:
                                _vadd(F, total, val, F.mul(sgn, c))
                if total:
                    out.setdefault(r, {})[(key, mi)] = total
    return out


def check_module_relations(M: Module, cap: int = 2) -> bool:
    """Square the premorphism differential on elementary premorphisms."""
    A = M.algebra
    for r in range(cap + 1):
        for key in itertools.product(range(A.dim), repeat=r):
            for mi in range(M.dim):
                for mo in range(M.dim):
                    psi = {r: {(key, mi): {mo: A.field.one}}}
                    deg = (M.degrees[mo] + M.degrees[mi] + sum(
                        A.degrees[t] - 1 for t in key
                    )) % 2
                    once = premorphism_diff(M, M, psi, deg, cap)
                    twice = premorphism_diff(M, M, once, (deg + 1) % 2, cap)
                    # component rr only reads inputs of index <= rr, so the
                    # whole computed range is exact
                    for tensor in twice.values():
                        for val in tensor.values():
                            if val:
                                return False
    return True


def check_bimodule_relations(P: BimoduleStructure, cap: int = 3) -> bool:
    """Square the Hochschild differential on elementary cochains; linearity
    makes this a complete check within the window."""
    A = P.algebra
    F = A.field
    for r in range(cap + 1):
        for key in itertools.product(range(A.dim), repeat=r):
            for p in range(P.dim):
                phi = HochschildCochain(A, list(P.degrees), 0, cap=cap)
                deg = (P.degrees[p] + sum(A.degrees[t] - 1 for t in key)) % 2
                phi.degree = deg
                phi.set_value(r, key, {p: F.one})
                once = hochschild_diff(A, P, phi)
                twice = hochschild_diff(A, P, once)
                if not twice.is_zero_within(twice.window()):
                    return False
    return True


# --- cochain linearization (rank arguments in tests) ------------------------------


def cochain_coordinates(A: AInftyStructure, coeff_dim: int, cap: int):
    coords = []
    for r in range(cap + 1):
        for key in itertools.product(range(A.dim), repeat=r):
            for p in range(coeff_dim):
                coords.append((r, key, p))
    return coords


def flatten_cochain(phi: HochschildCochain, coords):
    F = phi.algebra.field
    out = []
    for r, key, p in coords:
        out.append(phi.value(r, key).get(p, F.zero))
    return out


def load_example(name: str) -> AInftyStructure:
    """Shipped corpus: lambda_x, lambda_xy, triangular, dga3."""
    from importlib import resources

    path = resources.files("floergen.data").joinpath(f"{name}.json")
    with path.open("r", encoding="utf-8") as fh:
        return AInftyStructure.from_json(json.load(fh))
