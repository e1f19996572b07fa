"""Pure-Python permutation kernels.

Permutations are image tuples over 0..n-1 and compose left to right:
(p * q)(x) = q(p(x)).  These functions are the innermost loops of the
package; the compiled module _fastkernels implements the same contract.
"""
from math import gcd

BACKEND = "python"


def compose(p, q):
    """Image tuple of p followed by q."""
    return tuple(q[x] for x in p)


def inverse(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def conjugate(p, g):
    """Image tuple of g^-1 * p * g, computed in one pass."""
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[g[i]] = g[x]
    return tuple(out)


def power(p, n):
    deg = len(p)
    ident = tuple(range(deg))
    if n == 0:
        return ident
    if n < 0:
        p = inverse(p)
        n = -n
    acc = ident
    base = p
    while n:
        if n & 1:
            acc = compose(acc, base)
        n >>= 1
        if n:
            base = compose(base, base)
    return acc


def perm_order(p):
    """Least k >= 1 with p^k = identity (lcm of cycle lengths)."""
    seen = [False] * len(p)
    order = 1
    for start in range(len(p)):
        if seen[start] or p[start] == start:
            seen[start] = True
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = p[x]
            length += 1
        order = order * length // gcd(order, length)
    return order


def orbit_transversal(gens, base, degree):
    """Breadth-first orbit of a point with coset representatives.

    Returns (orbit, transversal) where orbit lists points in discovery
    order and transversal[point] is an image tuple u with u(base) = point.
    Generators are applied in list order, so the result is deterministic.
    """
    ident = tuple(range(degree))
    orbit = [base]
    transversal = {base: ident}
    head = 0
    while head < len(orbit):
        point = orbit[head]
        head += 1
        u = transversal[point]
        for g in gens:
            image = g[point]
            if image not in transversal:
                transversal[image] = compose(u, g)
                orbit.append(image)
    return orbit, transversal


def closure(seed, cap):
    """Multiplicative closure of a set of image tuples.

    Returns the closed set including the identity, or None when its size
    would exceed cap.
    """
    if not seed:
        return None
    degree = len(next(iter(seed)))
    ident = tuple(range(degree))
    gens = [t for t in seed if t != ident]
    els = set(gens)
    els.add(ident)
    frontier = list(gens)
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                c = compose(a, g)
                if c not in els:
                    els.add(c)
                    new.append(c)
                    if len(els) > cap:
                        return None
        frontier = new
    return els
