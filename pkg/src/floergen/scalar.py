"""Exact scalar arithmetic: the rationals and prime fields F_p.

Field elements are plain Python values (Fraction over Q, ints in [0, p) over
F_p); a Field object carries the operations.  Univariate polynomials are dense
coefficient lists, lowest degree first, with a nonzero leading coefficient.

Factorization over F_p is squarefree decomposition, then distinct-degree,
then Cantor-Zassenhaus equal-degree splitting.  The equal-degree stage draws
from random.Random(seed) with a fixed default seed so output is reproducible.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import DomainError, UsageError

DEFAULT_SEED = 2
_active_seed = DEFAULT_SEED


def set_default_seed(seed: int) -> None:
    """Reseed the factorization randomness process-wide (CLI --seed)."""
    global _active_seed
    _active_seed = seed


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond 2^31 desk scale."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """Field operation bundle; subclasses fix the element representation."""

    kind = None
    char = None

    def __eq__(self, other):
        return type(self) is type(other) and self.char == other.char

    def __hash__(self):
        return hash((self.kind, self.char))

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def from_int(self, n):
        raise NotImplementedError

    def to_str(self, a) -> str:
        return str(a)

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    def sum(self, items):
        acc = self.zero
        for x in items:
            acc = self.add(acc, x)
        return acc


class Rationals(Field):
    kind = "rationals"
    char = 0

    def __repr__(self):
        return "Q"

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise DomainError("division by zero")
        return Fraction(1) / a

    def from_int(self, n):
        return Fraction(n)

    def from_str(self, s: str):
        return Fraction(s)


class PrimeField(Field):
    kind = "prime_field"

    def __init__(self, p: int):
        if not is_prime(p):
            raise UsageError(f"{p} is not prime")
        self.p = p
        self.char = p

    def __repr__(self):
        return f"F{self.p}"

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DomainError("division by zero")
        return pow(a, self.p - 2, self.p)

    def from_int(self, n):
        return n % self.p

    def from_str(self, s: str):
        if "/" in s:
            num, den = s.split("/")
            return self.div(self.from_int(int(num)), self.from_int(int(den)))
        return self.from_int(int(s))


QQ = Rationals()


def parse_field(spec: str) -> Field:
    """Parse "Q" or "F<p>" into a Field instance."""
    spec = spec.strip()
    if spec == "Q":
        return QQ
    if spec.startswith("F") and spec[1:].isdigit():
        return PrimeField(int(spec[1:]))
    raise UsageError(f"unrecognized field spec {spec!r}; expected Q or F<p>")


def field_name(field: Field) -> str:
    return "Q" if field.char == 0 else f"F{field.char}"


# --- univariate polynomials -------------------------------------------------
#
# A UniPoly is just (field, coeffs); module-level functions keep the
# representation transparent for the callers in algebra/ and quantum/.


class UniPoly:
    """Dense univariate polynomial; coeffs[i] multiplies t^i."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs):
        c = list(coeffs)
        while c and c[-1] == field.zero:
            c.pop()
        self.field = field
        self.coeffs = c

    @classmethod
    def from_ints(cls, field, ints):
        return cls(field, [field.from_int(n) for n in ints])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self):
        if self.is_zero():
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        return (
            isinstance(other, UniPoly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field, tuple(self.coeffs)))

    def __add__(self, other):
        F = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + [F.zero] * (n - len(self.coeffs))
        b = other.coeffs + [F.zero] * (n - len(other.coeffs))
        return UniPoly(F, [F.add(x, y) for x, y in zip(a, b)])

    def __neg__(self):
        F = self.field
        return UniPoly(F, [F.neg(x) for x in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        F = self.field
        if self.is_zero() or other.is_zero():
            return UniPoly(F, [])
        out = [F.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == F.zero:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = F.add(out[i + j], F.mul(a, b))
        return UniPoly(F, out)

    def scale(self, c):
        F = self.field
        return UniPoly(F, [F.mul(c, x) for x in self.coeffs])

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.leading()))

    def divmod(self, other):
        F = self.field
        if other.is_zero():
            raise DomainError("division by zero polynomial")
        rem = list(self.coeffs)
        q = [F.zero] * max(0, len(rem) - len(other.coeffs) + 1)
        inv_lead = F.inv(other.leading())
        d = other.degree
        while len(rem) - 1 >= d and rem:
            k = len(rem) - 1 - d
            c = F.mul(rem[-1], inv_lead)
            q[k] = c
            for i, b in enumerate(other.coeffs):
                rem[k + i] = F.sub(rem[k + i], F.mul(c, b))
            while rem and rem[-1] == F.zero:
                rem.pop()
        return UniPoly(F, q), UniPoly(F, rem)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def derivative(self):
        F = self.field
        return UniPoly(
            F, [F.mul(F.from_int(i), c) for i, c in enumerate(self.coeffs)][1:]
        )

    def evaluate(self, x):
        F = self.field
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def pow_mod(self, e: int, modulus: "UniPoly") -> "UniPoly":
        F = self.field
        result = UniPoly(F, [F.one])
        base = self % modulus
        while e:
            if e & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return result

    def __repr__(self):
        if self.is_zero():
            return "UniPoly(0)"
        F = self.field
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == F.zero:
                continue
            if i == 0:
                terms.append(F.to_str(c))
            elif i == 1:
                terms.append(f"{F.to_str(c)}*t")
            else:
                terms.append(f"{F.to_str(c)}*t^{i}")
        return "UniPoly(" + " + ".join(terms) + ")"


def _coeff_sort_key(field, poly):
    if field.char == 0:
        return tuple((c.numerator, c.denominator) for c in poly.coeffs)
    return tuple(poly.coeffs)


def _squarefree_decomposition(f: UniPoly):
    """Yield (squarefree factor, multiplicity) over F_p, Yun-style with
    p-th root recursion when the derivative vanishes."""
    F = f.field
    p = F.char
    out = []

    def rec(g, mult):
        if g.degree <= 0:
            return
        gp = g.derivative()
        if gp.is_zero():
            # g is a polynomial in t^p; take the p-th root (coefficients are
            # already p-th powers over the prime field: c^(1/p) = c^(p^(k-1)))
            root = UniPoly(F, [g.coeffs[i] for i in range(0, len(g.coeffs), p)])
            rec(root, mult * p)
            return
        c = g.gcd(gp)
        w = (g // c).monic()
        m = 1
        while w.degree > 0:
            y = w.gcd(c)
            z = (w // y).monic()
            if z.degree > 0:
                out.append((z, mult * m))
            w = y
            c = (c // y).monic()
            m += 1
        if c.degree > 0:
            rec(c, mult)

    rec(f.monic(), 1)
    return out


def _distinct_degree(f: UniPoly):
    """Split a squarefree monic f over F_p into (product of degree-d
    irreducibles, d) pieces."""
    F = f.field
    p = F.char
    pieces = []
    x = UniPoly(F, [F.zero, F.one])
    h = x
    g = f
    d = 0
    while g.degree >= 2 * (d + 1):
        d += 1
        h = h.pow_mod(p, g)
        gd = g.gcd(h - x)
        if gd.degree > 0:
            pieces.append((gd, d))
            g = (g // gd).monic()
            h = h % g
    if g.degree > 0:
        pieces.append((g, g.degree))
    return pieces


def _equal_degree_split(f: UniPoly, d: int, rng: random.Random):
    """Cantor-Zassenhaus: split monic squarefree f, all factors of degree d."""
    F = f.field
    p = F.char
    n = f.degree
    if n == d:
        return [f]
    while True:
        a = UniPoly(F, [F.from_int(rng.randrange(p)) for _ in range(n)])
        if a.degree < 1:
            continue
        if p == 2:
            # trace map sum a^(2^i) over the degree-d subfield tower
            t = a
            acc = a
            for _ in range(d - 1):
                t = t.pow_mod(2, f)
                acc = (acc + t) % f
            g = f.gcd(acc)
        else:
            g = f.gcd(a)
            if 0 < g.degree < n:
                pass
            else:
                b = a.pow_mod((p**d - 1) // 2, f)
                g = f.gcd(b - UniPoly(F, [F.one]))
        if 0 < g.degree < n:
            left = _equal_degree_split(g.monic(), d, rng)
            right = _equal_degree_split((f // g).monic(), d, rng)
            return left + right


def univariate_factor(f: UniPoly, seed: int | None = None):
    """Factor f over F_p into monic irreducibles.

    Returns a list of (factor, multiplicity), sorted by degree then by
    coefficient tuple, so repeated runs agree exactly.  Randomness in the
    equal-degree stage comes from random.Random(seed); the process-wide
    default is DEFAULT_SEED unless set_default_seed changed it.
    """
    if not isinstance(f.field, PrimeField):
        raise UsageError("univariate_factor requires a prime field")
    if f.is_zero():
        raise DomainError("cannot factor the zero polynomial")
    rng = random.Random(_active_seed if seed is None else seed)
    factors = []
    for sqf, mult in _squarefree_decomposition(f):
        for piece, d in _distinct_degree(sqf):
            for irr in _equal_degree_split(piece.monic(), d, rng):
                factors.append((irr, mult))
    merged = {}
    for g, m in factors:
        key = (g.degree, _coeff_sort_key(f.field, g))
        if key in merged:
            merged[key] = (g, merged[key][1] + m)
        else:
            merged[key] = (g, m)
    return [merged[k] for k in sorted(merged)]


def _int_divisors(n: int):
    n = abs(n)
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


def rational_roots(f: UniPoly):
    """All rational roots of f over Q, with multiplicities.

    Candidates come from the rational root theorem applied to the primitive
    integer form.  Returned sorted ascending.
    """
    if f.field != QQ:
        raise UsageError("rational_roots requires rational coefficients")
    if f.is_zero():
        raise DomainError("cannot extract roots of the zero polynomial")
    roots = []
    g = f
    # strip powers of t
    t_mult = 0
    while g.coeffs and g.coeffs[0] == 0:
        g = UniPoly(QQ, g.coeffs[1:])
        t_mult += 1
    if t_mult:
        roots.append((Fraction(0), t_mult))
    if g.degree < 1:
        return roots
    from math import lcm

    den = lcm(*[c.denominator for c in g.coeffs])
    ints = [int(c * den) for c in g.coeffs]
    from math import gcd

    content = 0
    for v in ints:
        content = gcd(content, v)
    ints = [v // content for v in ints]
    a0, an = ints[0], ints[-1]
    candidates = set()
    for num in _int_divisors(a0):
        for d in _int_divisors(an):
            candidates.add(Fraction(num, d))
            candidates.add(Fraction(-num, d))
    for r in candidates:
        mult = 0
        while g.degree >= 1 and g.evaluate(r) == 0:
            g = g // UniPoly(QQ, [-r, Fraction(1)])
            mult += 1
        if mult:
            roots.append((r, mult))
    return sorted(roots, key=lambda rm: rm[0], reverse=True)
