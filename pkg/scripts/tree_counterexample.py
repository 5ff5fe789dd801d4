"""Exact tripod configurations where the tree bicombing is neither consistent nor convex.

The tripod has centre o and unit legs e0, e1, e2. Subtrees are printed as
(edge, from, to) intervals measured from the centre.
"""
from hyperbicomb.cb_bicombing import CBForm, cb_sigma
from hyperbicomb.hausdorff import hausdorff_distance
from hyperbicomb.sets import Subtree
from hyperbicomb.spaces import TreePoint, star_tree

T = CBForm.TREE


def consistency(sp) -> None:
    A = Subtree.from_intervals(sp, [(1, 0.0, 1.0), (2, 0.0, 0.5)])
    B = Subtree.point(sp, sp.as_point(TreePoint(0, 0.5)))
    r, s, t = 0.25, 0.75, 0.5
    Sr, Ss = cb_sigma(sp, T, A, B, r), cb_sigma(sp, T, A, B, s)
    lhs = cb_sigma(sp, T, Sr, Ss, t)
    rhs = cb_sigma(sp, T, A, B, (1 - t) * r + t * s)
    print("consistency, r = 1/4, s = 3/4, t = 1/2")
    for name, S in (("A", A), ("B", B), ("S(r)", Sr), ("S(s)", Ss), ("S(S(r), S(s), t)", lhs), ("S(1/2)", rhs)):
        print(f"  {name:<17} {S.as_intervals()}")
    print(f"  gap {hausdorff_distance(sp, lhs, rhs):.6f} (1/16 = {1 / 16})")


def convexity(sp) -> None:
    a = Subtree.from_intervals(sp, [(0, 0.0, 0.5), (1, 0.0, 1.0)])
    b = Subtree.point(sp, sp.as_point(TreePoint(2, 0.5)))
    c = Subtree.from_intervals(sp, [(0, 0.0, 1.0)])
    ts = (0.0, 0.25, 0.5, 0.75, 1.0)
    f = [hausdorff_distance(sp, cb_sigma(sp, T, a, b, t), cb_sigma(sp, T, c, c, t)) for t in ts]
    print("\nconvexity, c = d = leg e0")
    print("  t    " + "  ".join(f"{t:<5}" for t in ts))
    print("  f(t) " + "  ".join(f"{v:<5}" for v in f))
    print(f"  f(1/2) - (f(1/4) + f(3/4)) / 2 = {f[2] - (f[1] + f[3]) / 2}")


if __name__ == "__main__":
    tripod = star_tree([1.0, 1.0, 1.0])
    consistency(tripod)
    convexity(tripod)
