"""
Finitely generated abelian groups in presented form, their homomorphisms
and subgroups.

A group is ``Z^n / <relators>`` over one of the rings Z, Q or Z/m.  Every
group caches a canonical form computed by Smith normal form: a change of
generators after which the relations become diagonal, ``Z/d_1 + ... +
Z/d_k + Z^r``.  All decisions (zero tests, membership, kernels, equality
of homomorphisms) happen in those canonical coordinates, so two
presentations of the same group are interchangeable.

>>> G = FgAbGroup(2, [[2, -3]])
>>> G.describe()
'Z'
>>> H = FgAbGroup.from_invariants(torsion=[4, 2])
>>> H.invariant_factors(), H.order()
([2, 4], 8)
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import cached_property
from math import gcd, prod

from .linalg import Matrix, smith


class AbGroupError(Exception):
    pass


class ShapeMismatch(AbGroupError):
    pass


class AmbientMismatch(AbGroupError):
    pass


class NotWellDefined(AbGroupError):
    pass


class Ring:
    """Coefficient ring: ``Z``, ``Q`` or ``Z/m``.

    Z/m is handled as Z with the extra relations ``m * e_i`` on every
    group, so only Z and Q need their own arithmetic.
    """

    __slots__ = ("kind", "modulus")

    def __init__(self, kind, modulus=0):
        if kind not in ("Z", "Q", "Z/m"):
            raise ValueError(f"unknown ring {kind!r}")
        if kind == "Z/m" and modulus < 2:
            raise ValueError("Z/m needs m >= 2")
        self.kind = kind
        self.modulus = modulus if kind == "Z/m" else 0

    @classmethod
    def parse(cls, text):
        text = str(text).strip().replace(" ", "")
        if text in ("Z", "ZZ"):
            return ZZ
        if text in ("Q", "QQ"):
            return QQ
        if text.startswith("Z/"):
            return cls("Z/m", int(text[2:]))
        raise ValueError(f"cannot parse ring {text!r}")

    @property
    def field(self):
        return self.kind == "Q"

    def coerce(self, x):
        if self.field:
            return Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return int(x)
        if isinstance(x, str):
            return int(x)
        if int(x) != x:
            raise ValueError(f"{x} is not an integer")
        return int(x)

    def __eq__(self, other):
        return isinstance(other, Ring) and (self.kind, self.modulus) == (other.kind, other.modulus)

    def __hash__(self):
        return hash((self.kind, self.modulus))

    def __str__(self):
        return f"Z/{self.modulus}" if self.kind == "Z/m" else self.kind

    __repr__ = __str__


ZZ = Ring("Z")
QQ = Ring("Q")


def Zmod(m):
    return Ring("Z/m", m)


def _reduce(x, d):
    return x % d if d else x


class FgAbGroup:
    """Finitely generated abelian group ``R^ngens / <rels>``.

    ``rels`` is a sequence of relators, each a vector of length ``ngens``.
    Elements are tuples of length ``ngens`` in these generators.
    """

    def __init__(self, ngens, rels=(), ring=ZZ):
        self.ngens = int(ngens)
        self.ring = ring
        rels = tuple(tuple(ring.coerce(x) for x in r) for r in rels)
        for r in rels:
            if len(r) != self.ngens:
                raise ShapeMismatch(f"relator of length {len(r)} for {self.ngens} generators")
        self.rels = rels

    # constructors -----------------------------------------------------

    @classmethod
    def free(cls, n, ring=ZZ):
        return cls(n, (), ring)

    @classmethod
    def zero(cls, ring=ZZ):
        return cls(0, (), ring)

    @classmethod
    def cyclic(cls, d, ring=ZZ):
        return cls.from_invariants(torsion=[d] if d else [], free_rank=0 if d else 1, ring=ring)

    @classmethod
    def from_invariants(cls, free_rank=0, torsion=(), ring=ZZ):
        """Diagonal presentation: torsion generators first, then free ones."""
        torsion = [int(d) for d in torsion]
        n = len(torsion) + free_rank
        rels = []
        for i, d in enumerate(torsion):
            r = [0] * n
            r[i] = d
            rels.append(r)
        return cls(n, rels, ring)

    # canonical form ---------------------------------------------------

    def relation_matrix(self):
        """Relators as the columns of an ``ngens``-row matrix."""
        cols = list(self.rels)
        if self.ring.kind == "Z/m":
            m = self.ring.modulus
            cols += [[m * int(i == j) for j in range(self.ngens)] for i in range(self.ngens)]
        return Matrix.from_columns(cols, self.ngens)

    @cached_property
    def _canon(self):
        S = smith(self.relation_matrix(), self.ring.field, inverse=True)
        factors = S.invariant_factors()
        if self.ring.field:
            kept = [i for i, d in enumerate(factors) if d == 0]
        else:
            kept = [i for i, d in enumerate(factors) if d != 1]
        orders = tuple(int(factors[i]) if not self.ring.field else 0 for i in kept)
        to_canon = S.U.submatrix(kept, range(self.ngens))
        from_canon = S.Uinv.submatrix(range(self.ngens), kept)
        return orders, to_canon, from_canon

    @property
    def orders(self):
        """Order of each canonical generator; 0 stands for infinite."""
        return self._canon[0]

    @property
    def to_canon(self):
        return self._canon[1]

    @property
    def from_canon(self):
        return self._canon[2]

    @property
    def rank(self):
        """Number of canonical generators."""
        return len(self.orders)

    def invariant_factors(self):
        return [d for d in self.orders if d]

    @property
    def free_rank(self):
        return sum(1 for d in self.orders if d == 0)

    def canonical_form(self):
        return self.free_rank, tuple(self.invariant_factors())

    def is_trivial(self):
        return not self.orders

    def is_finite(self):
        return self.free_rank == 0

    def order(self):
        """Cardinality, or 0 when the group is infinite."""
        return prod(self.orders) if self.is_finite() else 0

    def describe(self):
        """Human-readable invariant-factor string such as ``Z ⊕ Z/2 ⊕ Z/6``."""
        if self.is_trivial():
            return "0"
        base = "Q" if self.ring.field else "Z"
        parts = [base] * self.free_rank + [f"Z/{d}" for d in self.invariant_factors()]
        return " ⊕ ".join(parts)

    def to_json(self):
        return {"free_rank": self.free_rank, "torsion": self.invariant_factors()}

    def __eq__(self, other):
        if not isinstance(other, FgAbGroup):
            return NotImplemented
        return self.ring == other.ring and self.canonical_form() == other.canonical_form()

    def __hash__(self):
        return hash((self.ring, self.canonical_form()))

    def __repr__(self):
        return f"<FgAbGroup {self.describe()} over {self.ring} ({self.ngens} gens)>"

    # elements ---------------------------------------------------------

    def element(self, x):
        x = tuple(self.ring.coerce(v) for v in x)
        if len(x) != self.ngens:
            raise ShapeMismatch(f"element of length {len(x)} in a group on {self.ngens} generators")
        return x

    def canon(self, x):
        """Reduced canonical coordinates of ``x``: a normal form."""
        y = self.to_canon @ self.element(x)
        return tuple(_reduce(v, d) for v, d in zip(y, self.orders))

    def from_canonical(self, y):
        return tuple(self.from_canon @ list(y))

    def is_zero(self, x):
        return not any(self.canon(x))

    def equal(self, x, y):
        return self.canon(x) == self.canon(y)

    def zero_element(self):
        return (self.ring.coerce(0),) * self.ngens

    def basis_element(self, i):
        return tuple(self.ring.coerce(int(i == j)) for j in range(self.ngens))

    def elements(self):
        """Every element once, in user coordinates (finite groups only)."""
        if not self.is_finite():
            raise ValueError("infinite group")
        for y in itertools.product(*(range(d) for d in self.orders)):
            yield self.from_canonical(y)

    def canonical_group(self):
        """The diagonal presentation together with an isomorphism onto it."""
        C = FgAbGroup.from_invariants(self.free_rank, self.invariant_factors(), self.ring)
        # canonical coordinates list torsion first, then free: same order as C
        return C, Hom(self, C, self.to_canon, check=False)


def direct_sum(*groups, ring=None):
    """Direct sum with user generators concatenated in order."""
    if not groups:
        return FgAbGroup.zero(ring or ZZ)
    ring = groups[0].ring
    if any(G.ring != ring for G in groups):
        raise AmbientMismatch("direct sum of groups over different rings")
    n = sum(G.ngens for G in groups)
    rels = []
    offset = 0
    for G in groups:
        for r in G.rels:
            v = [0] * n
            v[offset:offset + G.ngens] = r
            rels.append(v)
        offset += G.ngens
    return FgAbGroup(n, rels, ring)


def _as_matrix(m, nrows, ncols, ring):
    if isinstance(m, Matrix):
        rows = m.rows
        if m.shape != (nrows, ncols):
            raise ShapeMismatch(f"matrix shape {m.shape}, expected {(nrows, ncols)}")
    else:
        rows = [list(r) for r in m]
        if len(rows) != nrows or any(len(r) != ncols for r in rows):
            raise ShapeMismatch(f"matrix shape does not match {(nrows, ncols)}")
    return Matrix([[ring.coerce(x) for x in r] for r in rows], ncols)


class Hom:
    """Homomorphism ``src -> dst`` given by an ``ngens(dst) x ngens(src)`` matrix.

    Construction checks that relators of ``src`` land in the relations of
    ``dst``; internal callers that know this already pass ``check=False``.
    """

    def __init__(self, src, dst, matrix, check=True):
        if src.ring != dst.ring:
            raise AmbientMismatch("homomorphism between groups over different rings")
        self.src = src
        self.dst = dst
        self.matrix = _as_matrix(matrix, dst.ngens, src.ngens, src.ring)
        if check:
            for r in src.rels:
                if not dst.is_zero(self.matrix @ list(r)):
                    raise NotWellDefined(f"relator {list(r)} is not sent to zero")

    @classmethod
    def identity(cls, G):
        return cls(G, G, Matrix.identity(G.ngens), check=False)

    @classmethod
    def zero(cls, src, dst):
        return cls(src, dst, Matrix.zeros(dst.ngens, src.ngens), check=False)

    @classmethod
    def scalar(cls, G, c):
        return cls(G, G, Matrix.identity(G.ngens).scale(G.ring.coerce(c)), check=False)

    @cached_property
    def canonical_matrix(self):
        M = self.dst.to_canon @ self.matrix @ self.src.from_canon
        for row, d in zip(M.rows, self.dst.orders):
            if d:
                row[:] = [x % d for x in row]
        return M

    def __call__(self, x):
        return tuple(self.matrix @ self.src.element(x))

    def __matmul__(self, other):
        """Composition: ``(g @ f)(x) == g(f(x))``."""
        if not isinstance(other, Hom):
            return NotImplemented
        if other.dst.ngens != self.src.ngens or other.dst != self.src:
            raise ShapeMismatch("composition of non-matching homomorphisms")
        return Hom(other.src, self.dst, self.matrix @ other.matrix, check=False)

    def _check_parallel(self, other):
        if (self.src.ngens, self.dst.ngens) != (other.src.ngens, other.dst.ngens) or self.src != other.src or self.dst != other.dst:
            raise ShapeMismatch("homomorphisms with different endpoints")

    def __add__(self, other):
        self._check_parallel(other)
        return Hom(self.src, self.dst, self.matrix + other.matrix, check=False)

    def __neg__(self):
        return Hom(self.src, self.dst, -self.matrix, check=False)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, Hom):
            return NotImplemented
        try:
            self._check_parallel(other)
        except ShapeMismatch:
            return False
        return self.canonical_matrix == other.canonical_matrix

    __hash__ = None

    def is_zero(self):
        return self.canonical_matrix.is_zero()

    def __repr__(self):
        return f"<Hom {self.src.describe()} -> {self.dst.describe()} {self.matrix.rows}>"

    # subgroups --------------------------------------------------------

    def image(self):
        return Subgroup(self.dst, self.matrix.columns())

    def kernel(self):
        """Kernel of the induced map on presented groups, as a subgroup of ``src``."""
        X, Y = self.src, self.dst
        A = _with_orders(self.canonical_matrix, Y.orders)
        S = smith(A, X.ring.field)
        kx = X.rank
        gens = [X.from_canonical(v[:kx]) for v in S.kernel_basis()]
        return Subgroup(X, [g for g in gens if not X.is_zero(g)])

    def preimage(self, y):
        """Some ``x`` with ``self(x) == y`` in ``dst``, or None."""
        X, Y = self.src, self.dst
        A = _with_orders(self.canonical_matrix, Y.orders)
        sol = smith(A, X.ring.field).solve(list(Y.to_canon @ Y.element(y)))
        if sol is None:
            return None
        return X.from_canonical(sol[:X.rank])

    def is_injective(self):
        return self.kernel().is_trivial()

    def is_surjective(self):
        return self.image() == Subgroup.whole(self.dst)

    def inverse(self):
        """Two-sided inverse, or None if this is not an isomorphism."""
        g = solve_right(self, Hom.identity(self.dst))
        if g is None:
            return None
        if g @ self != Hom.identity(self.src):
            return None
        return g

    def classify(self):
        """Flags computed on the presented groups, plus the inverse for isos."""
        inj = self.is_injective()
        surj = self.is_surjective()
        inv = self.inverse() if inj and surj else None
        return {"injective": inj, "surjective": surj, "isomorphism": inv is not None, "inverse": inv}

    def is_isomorphism(self):
        return self.is_injective() and self.is_surjective()


def _with_orders(M, orders):
    """Append the columns ``d * e_r`` for the finite orders among ``orders``."""
    extra = [[d * int(i == r) for i in range(M.nrows)] for r, d in enumerate(orders) if d]
    if not extra:
        return M
    return M.hstack(Matrix.from_columns(extra, M.nrows))


def snf(A):
    """``(U, D, V)`` with ``U @ A @ V == D`` over the integers, ``U`` and ``V`` unimodular.

    >>> U, D, V = snf(Matrix([[2, -3]]))
    >>> D.rows
    [[1, 0]]
    """
    S = smith(A if isinstance(A, Matrix) else Matrix(A))
    return S.U, S.D, S.V


def hom_direct_sum(*homs):
    """Block-diagonal map between the direct sums of sources and targets."""
    src = direct_sum(*(f.src for f in homs))
    dst = direct_sum(*(f.dst for f in homs))
    M = Matrix.block_diagonal([f.matrix for f in homs])
    return Hom(src, dst, M, check=False)


def hom_from_sum(homs, dst, src=None):
    """``(x_1, ..., x_k) -> sum f_i(x_i)``; all ``homs`` end in ``dst``."""
    if src is None:
        src = direct_sum(*(f.src for f in homs))
    if not homs:
        return Hom.zero(src, dst)
    M = homs[0].matrix.hstack(*(f.matrix for f in homs[1:]))
    return Hom(src, dst, M, check=False)


def hom_to_sum(homs, src, dst=None):
    """``x -> (f_1(x), ..., f_k(x))``; all ``homs`` start at ``src``."""
    if dst is None:
        dst = direct_sum(*(f.dst for f in homs))
    if not homs:
        return Hom.zero(src, dst)
    M = homs[0].matrix.vstack(*(f.matrix for f in homs[1:]))
    return Hom(src, dst, M, check=False)


def inclusions(groups, total=None):
    """Summand inclusions into the direct sum."""
    total = total if total is not None else direct_sum(*groups)
    out, offset = [], 0
    for G in groups:
        M = Matrix.zeros(total.ngens, G.ngens)
        for i in range(G.ngens):
            M.rows[offset + i][i] = 1
        out.append(Hom(G, total, M, check=False))
        offset += G.ngens
    return out


def projections(groups, total=None):
    """Summand projections out of the direct sum."""
    total = total if total is not None else direct_sum(*groups)
    out, offset = [], 0
    for G in groups:
        M = Matrix.zeros(G.ngens, total.ngens)
        for i in range(G.ngens):
            M.rows[i][offset + i] = 1
        out.append(Hom(total, G, M, check=False))
        offset += G.ngens
    return out


def _divisor_pattern(src_order, dst_orders):
    """Multipliers ``q_r`` such that ``x -> q_r * s`` ranges over the entries
    allowed in a column sending a generator of order ``src_order`` into
    coordinates of orders ``dst_orders``."""
    out = []
    for d in dst_orders:
        if src_order == 0:
            out.append(1)
        elif d == 0:
            out.append(0)
        else:
            out.append(d // gcd(d, src_order))
    return out


def solve_right(f, c):
    """Find ``beta: c.src -> f.src`` with ``f @ beta == c``, or None.

    The system is solved column by column in canonical coordinates; the
    well-definedness of ``beta`` is built into the unknowns, so any
    solution returned is a genuine homomorphism.
    """
    if f.dst.ngens != c.dst.ngens or f.dst != c.dst:
        raise ShapeMismatch("f and c must share their target")
    X, Y, Z = f.src, f.dst, c.src
    Mf, Mc = f.canonical_matrix, c.canonical_matrix
    field = X.ring.field
    B = Matrix.zeros(X.rank, Z.rank)
    systems = {}
    for k, e in enumerate(Z.orders):
        q = _divisor_pattern(e, X.orders)
        key = tuple(q)
        if key not in systems:
            scaled = Matrix([[a * qi for a, qi in zip(row, q)] for row in Mf.rows], X.rank)
            systems[key] = smith(_with_orders(scaled, Y.orders), field)
        sol = systems[key].solve(Mc.col(k))
        if sol is None:
            return None
        for r in range(X.rank):
            v = q[r] * sol[r]
            d = X.orders[r]
            B.rows[r][k] = v % d if d else v
    beta = X.from_canon @ B @ Z.to_canon
    return Hom(Z, X, beta, check=False)


def solve_left(f, c):
    """Find ``beta: f.dst -> c.dst`` with ``beta @ f == c``, or None."""
    if f.src.ngens != c.src.ngens or f.src != c.src:
        raise ShapeMismatch("f and c must share their source")
    X, Y, Z = f.src, f.dst, c.dst
    Mf, Mc = f.canonical_matrix, c.canonical_matrix
    field = X.ring.field
    B = Matrix.zeros(Z.rank, Y.rank)
    for r, e in enumerate(Z.orders):
        q = []
        for d in Y.orders:
            if d == 0:
                q.append(1)
            elif e == 0:
                q.append(0)
            else:
                q.append(e // gcd(e, d))
        # unknowns s (entries of row r of B divided by q) and u (mod e slack)
        A = Matrix([[Mf.rows[s][t] * q[s] for s in range(Y.rank)] for t in range(X.rank)], Y.rank)
        if e:
            A = A.hstack(Matrix.identity(X.rank).scale(e))
        sol = smith(A, field).solve(Mc.rows[r])
        if sol is None:
            return None
        for s in range(Y.rank):
            v = q[s] * sol[s]
            B.rows[r][s] = v % e if e else v
    beta = Z.from_canon @ B @ Y.to_canon
    return Hom(Y, Z, beta, check=False)


class Subgroup:
    """Subgroup of ``ambient`` generated by ``gens`` (ambient elements)."""

    def __init__(self, ambient, gens=()):
        self.ambient = ambient
        self.gens = tuple(ambient.element(g) for g in gens)

    @classmethod
    def whole(cls, G):
        return cls(G, [G.basis_element(i) for i in range(G.ngens)])

    @classmethod
    def trivial(cls, G):
        return cls(G, [])

    @cached_property
    def _system(self):
        G = self.ambient
        cols = [G.to_canon @ list(g) for g in self.gens]
        M = Matrix.from_columns(cols, G.rank)
        return smith(_with_orders(M, G.orders), G.ring.field)

    def coefficients(self, x):
        """``c`` with ``x == sum c_i gens[i]`` in the ambient group, or None."""
        G = self.ambient
        sol = self._system.solve(list(G.to_canon @ G.element(x)))
        if sol is None:
            return None
        return tuple(sol[:len(self.gens)])

    def contains(self, x):
        return self.coefficients(x) is not None

    __contains__ = contains

    def _same_ambient(self, other):
        if self.ambient.ngens != other.ambient.ngens or self.ambient != other.ambient:
            raise AmbientMismatch("subgroups of different groups")

    def __le__(self, other):
        self._same_ambient(other)
        return all(other.contains(g) for g in self.gens)

    def __ge__(self, other):
        return other <= self

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self <= other and other <= self

    __hash__ = None

    def __add__(self, other):
        self._same_ambient(other)
        return Subgroup(self.ambient, self.gens + other.gens)

    def is_trivial(self):
        return all(self.ambient.is_zero(g) for g in self.gens)

    def escaping(self, other):
        """First generator of ``self`` not in ``other`` (None if contained)."""
        self._same_ambient(other)
        for g in self.gens:
            if not other.contains(g):
                return g
        return None

    def intersection(self, other):
        self._same_ambient(other)
        G = self.ambient
        S = [G.to_canon @ list(g) for g in self.gens]
        T = [[-x for x in G.to_canon @ list(g)] for g in other.gens]
        M = Matrix.from_columns(S + T, G.rank)
        K = smith(_with_orders(M, G.orders), G.ring.field).kernel_basis()
        s = len(S)
        Sm = Matrix.from_columns(S, G.rank)
        gens = [G.from_canonical(Sm @ v[:s]) for v in K]
        return Subgroup(G, [g for g in gens if not G.is_zero(g)])

    def image_under(self, f):
        if f.src.ngens != self.ambient.ngens:
            raise AmbientMismatch("map does not start at the ambient group")
        return Subgroup(f.dst, [f(g) for g in self.gens])

    def to_group(self):
        """Presented group isomorphic to the subgroup, with its inclusion."""
        G = self.ambient
        s = len(self.gens)
        rels = [v[:s] for v in self._system.kernel_basis()]
        rels = [r for r in rels if any(r)]
        H = FgAbGroup(s, rels, G.ring)
        incl = Hom(H, G, Matrix.from_columns(self.gens, G.ngens), check=False)
        return H, incl

    def order(self):
        return self.to_group()[0].order()

    def __repr__(self):
        return f"<Subgroup of {self.ambient.describe()} on {len(self.gens)} generators>"


def quotient(G, S):
    """``G / S`` presented on the generators of ``G``; the projection is the identity matrix."""
    if S.ambient.ngens != G.ngens or S.ambient != G:
        raise AmbientMismatch("subgroup is not inside this group")
    Q = FgAbGroup(G.ngens, G.rels + S.gens, G.ring)
    return Q


def projection_to_quotient(G, Q):
    return Hom(G, Q, Matrix.identity(G.ngens), check=False)
