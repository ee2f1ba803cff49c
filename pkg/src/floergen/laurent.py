"""Sparse multivariate Laurent polynomials with integer exponent vectors.

A LaurentRing is (variable names, field); a LaurentPoly stores a map from
exponent tuples to nonzero coefficients.  Terms are kept in a plain dict and
rendered in lexicographic exponent order, so printing and JSON output are
deterministic.

JSON form:
    {"variables": ["x", "y"], "field": "F7",
     "terms": [{"coeff": "3", "exps": [1, -2]}, ...]}
with coefficients as decimal strings ("a/b" allowed over Q).
"""

from __future__ import annotations

from .errors import DomainError, UsageError
from .scalar import Field, field_name, parse_field

# exponents stay far from any machine bound at desk scale, but guard anyway
_EXP_BOUND = 10**9


class LaurentRing:
    def __init__(self, variables, field: Field):
        self.variables = tuple(variables)
        self.field = field
        if len(set(self.variables)) != len(self.variables):
            raise UsageError("duplicate variable names")

    @property
    def nvars(self):
        return len(self.variables)

    def __eq__(self, other):
        return (
            isinstance(other, LaurentRing)
            and self.variables == other.variables
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.variables, self.field))

    def __repr__(self):
        return f"{field_name(self.field)}[{', '.join(v + '^±1' for v in self.variables)}]"

    def zero(self):
        return LaurentPoly(self, {})

    def one(self):
        return self.constant(self.field.one)

    def constant(self, c):
        if c == self.field.zero:
            return self.zero()
        return LaurentPoly(self, {(0,) * self.nvars: c})

    def monomial(self, exps, coeff=None):
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise UsageError("exponent vector length mismatch")
        c = self.field.one if coeff is None else coeff
        if c == self.field.zero:
            return self.zero()
        return LaurentPoly(self, {exps: c})

    def variable(self, i):
        e = [0] * self.nvars
        e[i] = 1
        return self.monomial(e)

    def from_terms(self, pairs):
        out = {}
        F = self.field
        for exps, c in pairs:
            exps = tuple(exps)
            if len(exps) != self.nvars:
                raise UsageError("exponent vector length mismatch")
            if any(abs(e) > _EXP_BOUND for e in exps):
                raise UsageError("exponent overflow")
            acc = F.add(out.get(exps, F.zero), c)
            if acc == F.zero:
                out.pop(exps, None)
            else:
                out[exps] = acc
        return LaurentPoly(self, out)


class LaurentPoly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: LaurentRing, terms: dict):
        self.ring = ring
        self.terms = terms

    def is_zero(self):
        return not self.terms

    def _check(self, other):
        if self.ring != other.ring:
            raise UsageError("operands live in different Laurent rings")

    def __eq__(self, other):
        return (
            isinstance(other, LaurentPoly)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.terms.items()))))

    def __add__(self, other):
        self._check(other)
        items = list(self.terms.items()) + list(other.terms.items())
        return self.ring.from_terms(items)

    def __neg__(self):
        F = self.ring.field
        return LaurentPoly(self.ring, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        F = self.ring.field
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if any(abs(x) > _EXP_BOUND for x in e):
                    raise UsageError("exponent overflow")
                acc = F.add(out.get(e, F.zero), F.mul(c1, c2))
                if acc == F.zero:
                    out.pop(e, None)
                else:
                    out[e] = acc
        return LaurentPoly(self.ring, out)

    def scalar_mul(self, c):
        F = self.ring.field
        if c == F.zero:
            return self.ring.zero()
        return LaurentPoly(self.ring, {e: F.mul(c, x) for e, x in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise UsageError("use explicit inverse monomials for negative powers")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def log_derivative(self, i: int) -> "LaurentPoly":
        """z_i * d/dz_i: each term c*z^e picks up the factor e_i."""
        if not 0 <= i < self.ring.nvars:
            raise UsageError("variable index out of range")
        F = self.ring.field
        out = {}
        for e, c in self.terms.items():
            w = F.mul(F.from_int(e[i]), c)
            if w != F.zero:
                out[e] = w
        return LaurentPoly(self.ring, out)

    def evaluate(self, point):
        """Exact substitution; every coordinate must be invertible."""
        F = self.ring.field
        if len(point) != self.ring.nvars:
            raise UsageError("point length mismatch")
        for x in point:
            if x == F.zero:
                raise DomainError("Laurent evaluation needs nonzero coordinates")
        inverses = [F.inv(x) for x in point]
        total = F.zero
        for e, c in self.terms.items():
            acc = c
            for i, exp in enumerate(e):
                if exp > 0:
                    base, n = point[i], exp
                elif exp < 0:
                    base, n = inverses[i], -exp
                else:
                    continue
                while n:
                    if n & 1:
                        acc = F.mul(acc, base)
                    base = F.mul(base, base)
                    n >>= 1
            total = F.add(total, acc)
        return total

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __repr__(self):
        if self.is_zero():
            return "0"
        F = self.ring.field
        names = self.ring.variables
        chunks = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"{names[i]}^{x}" if x != 1 else names[i]
                for i, x in enumerate(e)
                if x != 0
            )
            cs = F.to_str(c)
            if mono:
                chunks.append(mono if cs == "1" else f"{cs}*{mono}")
            else:
                chunks.append(cs)
        return " + ".join(chunks)

    def to_json(self) -> dict:
        return {
            "variables": list(self.ring.variables),
            "field": field_name(self.ring.field),
            "terms": [
                {"coeff": self.ring.field.to_str(c), "exps": list(e)}
                for e, c in self.sorted_terms()
            ],
        }


def laurent_from_json(data: dict, field: Field | None = None) -> LaurentPoly:
    try:
        variables = data["variables"]
        fld = field if field is not None else parse_field(data["field"])
        ring = LaurentRing(variables, fld)
        pairs = [
            (tuple(t["exps"]), fld.from_str(str(t["coeff"]))) for t in data["terms"]
        ]
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed Laurent polynomial JSON: {exc}") from exc
    return ring.from_terms(pairs)
