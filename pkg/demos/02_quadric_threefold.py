"""The quadric threefold torus is a non-toric input: its superpotential
x + y + z + 1/(xy) + 1/(yz) comes from a degeneration, so we feed the Laurent
polynomial in directly.  The Jacobian ring collapses to one variable with
2x^3 = 1, the first Chern class image is 6x (so the degree-2 generator H goes
to 2x), and the local structure swings with the characteristic:
char 3 gives a single fat point, char 31 three split points."""

from floergen import LaurentRing, PrimeField, QQ, critical_points, jacobian_ring
from floergen.algebra import madic_profile


def quadric_superpotential(field):
    ring = LaurentRing(["x", "y", "z"], field)
    one = field.one
    return ring.from_terms([
        ((1, 0, 0), one), ((0, 1, 0), one), ((0, 0, 1), one),
        ((-1, -1, 0), one), ((0, -1, -1), one),
    ])


for p in (None, 5):
    field = QQ if p is None else PrimeField(p)
    W = quadric_superpotential(field)
    jac = jacobian_ring(W)
    ring = jac.source_ring
    x = ring.variable(0)
    print(f"field {field!r}: dim Jac = {jac.dim}, basis {jac.basis_labels()}")
    w_class = jac.nf_coords(W)
    x_class = jac.nf_coords(x)
    print("  class of W:", w_class, "= 6 * class of x:",
          [field.mul(field.from_int(6), c) for c in x_class])
    third = field.inv(field.from_int(3))
    print("  H = c1/3 maps to:", [field.mul(third, c) for c in w_class],
          "= 2x:", [field.mul(field.from_int(2), c) for c in x_class])

print()
for p in (3, 5, 31):
    field = PrimeField(p)
    cp = critical_points(quadric_superpotential(field))
    print(f"char {p}: {len(cp.factors)} local factor(s)")
    for f in cp.factors:
        where = f"point {f.point}" if f.point else f"residue degree {f.residue_degree}"
        print(f"  dim {f.dim}, {where}, filtration profile {madic_profile(f)}")
