"""
Finite posets: validation, rays, maxima, antichains, chains, meets and the
rank filtration.

Elements are hashable ids (usually strings); the full order relation is
stored after transitive closure, covers are derived.

>>> P = FinPoset.from_covers("abc", [("a", "b"), ("b", "c")])
>>> P.chains(1)
[('a', 'b'), ('a', 'c'), ('b', 'c')]
>>> P.ray("b", strict=False).elements
('a', 'b')
>>> P.height
2
"""

from __future__ import annotations

from functools import cached_property
from itertools import combinations


class PosetError(Exception):
    pass


class NotReflexive(PosetError):
    def __init__(self, i):
        super().__init__(f"{i!r} is not <= itself")
        self.element = i


class NotAntisymmetric(PosetError):
    def __init__(self, i, j):
        super().__init__(f"{i!r} <= {j!r} and {j!r} <= {i!r} but they differ")
        self.pair = (i, j)


class NotTransitive(PosetError):
    def __init__(self, i, j, k):
        super().__init__(f"{i!r} <= {j!r} <= {k!r} but not {i!r} <= {k!r}")
        self.triple = (i, j, k)


class UnknownElement(PosetError, KeyError):
    def __init__(self, i):
        super().__init__(f"unknown poset element {i!r}")
        self.element = i

    def __str__(self):
        return self.args[0]


class CyclicCovers(PosetError):
    pass


class FinPoset:
    """A finite partial order.

    Build with :func:`validate_poset` (checks the axioms on a relation) or
    :meth:`from_covers` (takes the transitive closure of a cover list).
    """

    def __init__(self, elements, leq_pairs, _checked=False):
        self.elements = tuple(elements)
        self.index = {e: n for n, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise PosetError("duplicate element ids")
        n = len(self.elements)
        self._leq = [[False] * n for _ in range(n)]
        for a, b in leq_pairs:
            self._leq[self._idx(a)][self._idx(b)] = True
        if not _checked:
            self._check_axioms()

    def _idx(self, e):
        try:
            return self.index[e]
        except (KeyError, TypeError):
            raise UnknownElement(e) from None

    def _check_axioms(self):
        L, E = self._leq, self.elements
        n = len(E)
        for a in range(n):
            if not L[a][a]:
                raise NotReflexive(E[a])
        for a in range(n):
            for b in range(a + 1, n):
                if L[a][b] and L[b][a]:
                    raise NotAntisymmetric(E[a], E[b])
        for a in range(n):
            for b in range(n):
                if L[a][b]:
                    for c in range(n):
                        if L[b][c] and not L[a][c]:
                            raise NotTransitive(E[a], E[b], E[c])

    @classmethod
    def from_covers(cls, elements, covers):
        """Poset generated by ``covers`` (pairs ``(lower, upper)``)."""
        elements = tuple(elements)
        index = {e: n for n, e in enumerate(elements)}
        n = len(elements)
        up = [set() for _ in range(n)]
        for a, b in covers:
            if a not in index:
                raise UnknownElement(a)
            if b not in index:
                raise UnknownElement(b)
            if a == b:
                raise CyclicCovers(f"cover ({a!r}, {a!r}) is a loop")
            up[index[a]].add(index[b])
        reach = []
        for a in range(n):
            seen = {a}
            stack = [a]
            while stack:
                x = stack.pop()
                for y in up[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            reach.append(seen)
        for a in range(n):
            for b in reach[a]:
                if b != a and a in reach[b]:
                    raise CyclicCovers(f"covers contain a cycle through {elements[a]!r} and {elements[b]!r}")
        pairs = [(elements[a], elements[b]) for a in range(n) for b in reach[a]]
        return cls(elements, pairs, _checked=True)

    @classmethod
    def chain(cls, elements):
        elements = tuple(elements)
        return cls.from_covers(elements, list(zip(elements, elements[1:])))

    @classmethod
    def antichain(cls, elements):
        return cls.from_covers(elements, [])

    # basic relation ---------------------------------------------------

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, e):
        try:
            return e in self.index
        except TypeError:
            return False

    def leq(self, a, b):
        return self._leq[self._idx(a)][self._idx(b)]

    def lt(self, a, b):
        return a != b and self.leq(a, b)

    def comparable(self, a, b):
        return self.leq(a, b) or self.leq(b, a)

    def relation(self):
        E, L = self.elements, self._leq
        return [(E[a], E[b]) for a in range(len(E)) for b in range(len(E)) if L[a][b]]

    def __eq__(self, other):
        if not isinstance(other, FinPoset):
            return NotImplemented
        return set(self.elements) == set(other.elements) and set(self.relation()) == set(other.relation())

    def __hash__(self):
        return hash(frozenset(self.relation()))

    def __repr__(self):
        return f"<FinPoset {len(self)} elements, height {self.height}>"

    # derived structure ------------------------------------------------

    @cached_property
    def _covers(self):
        E = self.elements
        out = []
        for a in E:
            for b in E:
                if self.lt(a, b) and not any(self.lt(a, c) and self.lt(c, b) for c in E):
                    out.append((a, b))
        return tuple(out)

    def covers(self):
        """Cover pairs ``(lower, upper)``."""
        return list(self._covers)

    def lower_covers(self, j):
        self._idx(j)
        return [a for a, b in self._covers if b == j]

    def upper_covers(self, j):
        self._idx(j)
        return [b for a, b in self._covers if a == j]

    def below(self, i, strict=True):
        """Elements ``j < i`` (or ``j <= i``), in the poset's element order."""
        self._idx(i)
        return [j for j in self.elements if (self.lt(j, i) if strict else self.leq(j, i))]

    def above(self, i, strict=True):
        self._idx(i)
        return [j for j in self.elements if (self.lt(i, j) if strict else self.leq(i, j))]

    def downset(self, S):
        S = list(S)
        for s in S:
            self._idx(s)
        return [j for j in self.elements if any(self.leq(j, s) for s in S)]

    def subposet(self, S):
        S = set(S)
        for s in S:
            self._idx(s)
        elems = [e for e in self.elements if e in S]
        pairs = [(a, b) for a in elems for b in elems if self.leq(a, b)]
        return FinPoset(elems, pairs, _checked=True)

    def ray(self, i, strict=True):
        """Induced subposet on ``{j : j < i}`` or ``{j : j <= i}``."""
        return self.subposet(self.below(i, strict))

    def maxima(self, J):
        """Maximal elements of ``J``, in the poset's element order."""
        J = set(J)
        for j in J:
            self._idx(j)
        return tuple(j for j in self.elements if j in J and not any(self.lt(j, k) for k in J))

    def minima(self, J=None):
        J = set(self.elements if J is None else J)
        return tuple(j for j in self.elements if j in J and not any(self.lt(k, j) for k in J))

    def is_antichain(self, S):
        S = list(S)
        return all(not self.comparable(a, b) for a, b in combinations(S, 2))

    def antichains_below(self, i):
        """All antichains inside ``{j : j <= i}``, the empty one first."""
        return self._antichains_in(self.below(i, strict=False))

    def antichains(self):
        return self._antichains_in(self.elements)

    def _antichains_in(self, pool):
        pool = list(pool)
        out = []

        def extend(start, current):
            out.append(tuple(current))
            for n in range(start, len(pool)):
                x = pool[n]
                if all(not self.comparable(x, y) for y in current):
                    current.append(x)
                    extend(n + 1, current)
                    current.pop()

        extend(0, [])
        return out

    @cached_property
    def _chains(self):
        """``chains[p]`` lists strictly increasing (p+1)-tuples."""
        E = self.elements
        layers = [[(e,) for e in E]]
        while layers[-1]:
            nxt = [c + (e,) for c in layers[-1] for e in E if self.lt(c[-1], e)]
            layers.append(nxt)
        return layers

    def chains(self, p):
        if p < 0:
            return []
        if p >= len(self._chains):
            return []
        return list(self._chains[p])

    @cached_property
    def height(self):
        """Length (number of steps) of the longest strict chain; -1 when empty."""
        if not self.elements:
            return -1
        return len(self._chains) - 2

    def lower_bounds(self, j, k):
        return [m for m in self.elements if self.leq(m, j) and self.leq(m, k)]

    def meet(self, j, k):
        """Greatest lower bound of ``j`` and ``k``, or None if there is none."""
        lbs = self.lower_bounds(j, k)
        for m in lbs:
            if all(self.leq(x, m) for x in lbs):
                return m
        return None

    def is_meet_semilattice(self):
        return all(self.meet(j, k) is not None for j, k in combinations(self.elements, 2))

    @cached_property
    def _rank(self):
        rank = {}
        for e in self.linear_extension():
            rank[e] = max((rank[j] + 1 for j in self.lower_covers(e)), default=0)
        return rank

    def rank_filtration(self):
        """``rank(j)``: length of the longest chain ending at ``j``."""
        return dict(self._rank)

    def rank(self, j):
        return self._rank[j]

    def linear_extension(self):
        """Elements listed so that ``j < i`` puts ``j`` first; stable in element order."""
        E = self.elements
        done, out = set(), []
        while len(out) < len(E):
            for e in E:
                if e not in done and all(j in done for j in E if self.lt(j, e)):
                    done.add(e)
                    out.append(e)
                    break
        return out

    def rank_order(self):
        """Elements sorted by rank, ties in element order."""
        return sorted(self.elements, key=lambda e: (self._rank[e], self.index[e]))

    def to_json(self):
        return {"elements": list(self.elements), "covers": [list(c) for c in self._covers]}


def validate_poset(elements, leq_pairs):
    """Check the partial order axioms on ``leq_pairs`` over ``elements``.

    >>> validate_poset(["a"], [("a", "a")]).elements
    ('a',)
    >>> validate_poset(["a", "b"], [("a", "a"), ("b", "b"), ("a", "b"), ("b", "a")])
    Traceback (most recent call last):
    ...
    posetcolim.poset.NotAntisymmetric: 'a' <= 'b' and 'b' <= 'a' but they differ
    """
    return FinPoset(elements, leq_pairs)
