"""Slow reference implementation over frozensets of points.

Written straight from the definitions, sharing no code with the package, so
the bitmask implementation can be checked against it.
"""

from itertools import chain, combinations


def powerset(X):
    X = sorted(X)
    return [frozenset(c) for c in chain.from_iterable(combinations(X, r) for r in range(len(X) + 1))]


class Topo:
    def __init__(self, n, opens):
        self.X = frozenset(range(n))
        self.opens = [frozenset(u) for u in opens]
        self.closeds = [self.X - u for u in self.opens]
        self.subsets = powerset(self.X)

    def cl(self, A):
        out = set(self.X)
        for F in self.closeds:
            if A <= F:
                out &= F
        return frozenset(out)

    def int(self, A):
        return frozenset().union(*[U for U in self.opens if U <= A])

    def cl_delta(self, A):
        return frozenset(
            x for x in self.X if all(self.int(self.cl(U)) & A for U in self.opens if x in U)
        )

    def int_delta(self, A):
        return frozenset(
            x for x in self.X if any(self.int(self.cl(U)) <= A for U in self.opens if x in U)
        )

    def family(self, kind):
        cl, it, cld, itd = self.cl, self.int, self.cl_delta, self.int_delta
        preds = {
            "OPEN": lambda A: A in self.opens,
            "SEMI": lambda A: A <= cl(it(A)),
            "PRE": lambda A: A <= it(cl(A)),
            "B": lambda A: A <= cl(it(A)) | it(cl(A)),
            "BETA": lambda A: A <= cl(it(cl(A))),
            "E": lambda A: A <= cl(itd(A)) | it(cld(A)),
            "ESTAR": lambda A: A <= cl(it(cld(A))),
        }
        return {A for A in self.subsets if preds[kind](A)}

    def kcl(self, kind, A):
        fam = self.family(kind)
        out = set(self.X)
        for U in fam:
            if A <= self.X - U:
                out &= self.X - U
        return frozenset(out)

    def theta_cl(self, base, A):
        fam = self.family(base)
        return frozenset(x for x in self.X if all(self.kcl(base, U) & A for U in fam if x in U))

    def theta_open(self, base):
        return {U for U in self.subsets if self.theta_cl(base, self.X - U) == self.X - U}

    def regular(self, fam):
        """Closed F and x outside F separated by disjoint members of fam."""
        for F in self.closeds:
            for x in self.X - F:
                if not any(
                    F <= U and x in V and not U & V for U in fam for V in fam
                ):
                    return False
        return True

    def normal(self, closeds, fam):
        for F1 in closeds:
            for F2 in closeds:
                if not F1 & F2 and not any(
                    F1 <= U and F2 <= V and not U & V for U in fam for V in fam
                ):
                    return False
        return True


def is_topology(n, fam):
    X = frozenset(range(n))
    fam = set(fam)
    if frozenset() not in fam or X not in fam:
        return False
    return all(a | b in fam and a & b in fam for a in fam for b in fam)


def count_topologies(n):
    """Generate-and-filter: every family of proper nonempty subsets."""
    X = frozenset(range(n))
    proper = [s for s in powerset(X) if s and s != X]
    total = 0
    for mask in range(1 << len(proper)):
        fam = {frozenset(), X} | {proper[i] for i in range(len(proper)) if mask >> i & 1}
        if is_topology(n, fam):
            total += 1
    return total
