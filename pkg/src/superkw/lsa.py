"""Lie superalgebra data model, axiom validation, and structural queries.

Basis convention: even elements first, then odd.  Structure constants are a
dense tensor c[i][j][l] with [x_i, x_j] = sum_l c[i][j][l] x_l, stored for
all (i, j); the validator enforces the sign rule rather than deriving half
the table, so corrupt input fails loudly.  The p-operation is given on even
basis elements and extended to arbitrary even vectors through the standard
expansion of (x + y)^[p] by the s_i corrections.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence

import numpy as np

from .gflin import (
    Field,
    coords_in_rowspace,
    find_embedding,
    inv_matrix,
    nullspace,
    reduce_vector,
    rref,
)


class LsaError(ValueError):
    pass


class NeedsFieldExtension(Exception):
    """Raised when a search requires eigenvalues outside the working field."""

    def __init__(self, message, degree_hint=2):
        super().__init__(message)
        self.degree_hint = degree_hint


@dataclass
class Violation:
    axiom: str
    witness: tuple
    message: str

    def __str__(self):
        return f"[{self.axiom}] {self.message} (witness {self.witness})"


class Subspace:
    """Graded subspace of the ambient algebra, basis kept in rref.

    Every basis row is parity-homogeneous; rows with pivots in the even
    coordinate block precede the odd ones because the ambient ordering is
    even-first.
    """

    def __init__(self, field: Field, s_even: int, ambient: int, basis: np.ndarray):
        self.field = field
        self.s_even = s_even
        self.ambient = ambient
        basis = np.asarray(basis, dtype=np.int64)
        if basis.size == 0:
            basis = np.zeros((0, ambient), dtype=np.int64)
        else:
            basis = basis.reshape(-1, ambient)
        r, pivots = rref(field, basis)
        r = r[: len(pivots)]
        self.basis = r
        self.pivots = pivots
        for row in self.basis:
            if np.any(row[:s_even]) and np.any(row[s_even:]):
                raise LsaError("subspace basis row is not parity-homogeneous")

    @classmethod
    def from_vectors(cls, field, s_even, ambient, vectors) -> "Subspace":
        """Graded span: parity components of the inputs are split first."""
        rows = []
        for v in vectors:
            v = np.asarray(v, dtype=np.int64)
            ev = v.copy()
            ev[s_even:] = 0
            od = v.copy()
            od[:s_even] = 0
            if np.any(ev):
                rows.append(ev)
            if np.any(od):
                rows.append(od)
        if not rows:
            return cls.zero(field, s_even, ambient)
        return cls(field, s_even, ambient, np.array(rows))

    @classmethod
    def zero(cls, field, s_even, ambient) -> "Subspace":
        return cls(field, s_even, ambient, np.zeros((0, ambient), dtype=np.int64))

    @classmethod
    def full(cls, field, s_even, ambient) -> "Subspace":
        return cls(field, s_even, ambient, field.eye(ambient))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def row_parity(self, r: int) -> int:
        return 0 if self.pivots[r] < self.s_even else 1

    @property
    def superdim(self) -> tuple:
        even = sum(1 for p in self.pivots if p < self.s_even)
        return (even, self.dim - even)

    def even_rows(self) -> np.ndarray:
        even = sum(1 for p in self.pivots if p < self.s_even)
        return self.basis[:even]

    def odd_rows(self) -> np.ndarray:
        even = sum(1 for p in self.pivots if p < self.s_even)
        return self.basis[even:]

    def contains(self, v: np.ndarray) -> bool:
        return not np.any(reduce_vector(self.field, self.basis, v))

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(row) for row in other.basis)

    def reduce(self, v: np.ndarray) -> np.ndarray:
        return reduce_vector(self.field, self.basis, v)

    def coords_of(self, v: np.ndarray) -> Optional[np.ndarray]:
        return coords_in_rowspace(self.field, self.basis, v)

    def sum_with(self, other: "Subspace") -> "Subspace":
        return Subspace(
            self.field,
            self.s_even,
            self.ambient,
            np.vstack([self.basis, other.basis]),
        )

    def complement_columns(self) -> list:
        return [c for c in range(self.ambient) if c not in self.pivots]

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.dim == other.dim
            and np.array_equal(self.basis, other.basis)
        )

    def __repr__(self):
        return f"Subspace(dim={self.dim}, superdim={self.superdim})"


class LieSuperAlgebra:
    """Structure constants plus an optional p-operation over GF(p^k)."""

    def __init__(
        self,
        field: Field,
        names: Sequence[str],
        parities: Sequence[int],
        structure: np.ndarray,
        pmap: Optional[np.ndarray] = None,
    ):
        self.field = field
        self.names = list(names)
        self.parities = np.asarray(parities, dtype=np.int64)
        n = len(self.names)
        if self.parities.shape != (n,):
            raise LsaError("parity vector length mismatch")
        if np.any(np.diff(self.parities) < 0):
            raise LsaError("basis must list even elements before odd ones")
        self.n = n
        self.s_even = int(np.sum(self.parities == 0))
        self.t_odd = n - self.s_even
        self.structure = np.asarray(structure, dtype=np.int64)
        if self.structure.shape != (n, n, n):
            raise LsaError("structure tensor must be n x n x n")
        if pmap is not None:
            pmap = np.asarray(pmap, dtype=np.int64)
            if pmap.shape != (self.s_even, n):
                raise LsaError("pmap must give one coordinate vector per even basis element")
        self.pmap = pmap

    @property
    def restricted(self) -> bool:
        return self.pmap is not None

    @property
    def superdim(self) -> tuple:
        return (self.s_even, self.t_odd)

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.n, dtype=np.int64)
        v[i] = 1
        return v

    def full_space(self) -> Subspace:
        return Subspace.full(self.field, self.s_even, self.n)

    def zero_space(self) -> Subspace:
        return Subspace.zero(self.field, self.s_even, self.n)

    def parity_of(self, v: np.ndarray) -> Optional[int]:
        """0/1 for homogeneous vectors, None for mixed or zero."""
        ev = np.any(v[: self.s_even])
        od = np.any(v[self.s_even :])
        if ev and od:
            return None
        if od:
            return 1
        if ev:
            return 0
        return None

    # -- bracket machinery -------------------------------------------------

    def bracket(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        f = self.field
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        if x.shape != (self.n,) or y.shape != (self.n,):
            raise LsaError("bracket operands must be coordinate vectors of length n")
        t = f.matmul(x[None, :], self.structure.reshape(self.n, -1)).reshape(
            self.n, self.n
        )
        return f.matmul(y[None, :], t).ravel()

    def ad_matrix(self, x: np.ndarray) -> np.ndarray:
        """Matrix of ad(x): column j holds [x, e_j]."""
        f = self.field
        x = np.asarray(x, dtype=np.int64)
        t = f.matmul(x[None, :], self.structure.reshape(self.n, -1)).reshape(
            self.n, self.n
        )
        return t.T

    def pair_bracket(self, i: int, j: int) -> np.ndarray:
        return self.structure[i, j].copy()

    # -- p-operation -------------------------------------------------------

    def s_corrections(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Sum of the correction terms in the expansion of (x + y)^[p].

        The individual terms are read off as coefficients of powers of the
        auxiliary indeterminate in the (p-1)-fold application of
        ad(x t + y) to x, each divided by its index.
        """
        f, p = self.field, self.field.p
        adx = self.ad_matrix(x)
        ady = self.ad_matrix(y)
        w = np.zeros((self.n, p), dtype=np.int64)
        w[:, 0] = x
        for _ in range(p - 1):
            shifted = np.zeros_like(w)
            shifted[:, 1:] = f.matmul(adx, w)[:, :-1]
            w = f.add_arr(shifted, f.matmul(ady, w))
        total = np.zeros(self.n, dtype=np.int64)
        for i in range(1, p):
            coeff = f.inv(i % p)
            total = f.add_arr(total, f.mul_arr(coeff, w[:, i - 1]))
        return total

    def p_power(self, x: np.ndarray) -> np.ndarray:
        """x^[p] for an even coordinate vector, from the stored basis values."""
        if self.pmap is None:
            raise LsaError("algebra has no p-operation")
        f, p = self.field, self.field.p
        x = np.asarray(x, dtype=np.int64)
        if np.any(x[self.s_even :]):
            raise LsaError("p-power is defined on even vectors only")
        support = [i for i in range(self.s_even) if x[i]]
        if not support:
            return np.zeros(self.n, dtype=np.int64)
        acc = None
        acc_pow = None
        for i in support:
            term = np.zeros(self.n, dtype=np.int64)
            term[i] = x[i]
            term_pow = f.mul_arr(f.pow(int(x[i]), p), self.pmap[i])
            if acc is None:
                acc, acc_pow = term, term_pow
            else:
                corr = self.s_corrections(acc, term)
                acc_pow = f.add_arr(f.add_arr(acc_pow, term_pow), corr)
                acc = f.add_arr(acc, term)
        return acc_pow

    # -- validation ----------------------------------------------------------

    def validate(self, samples: int = 200, seed: int = 0) -> List[Violation]:
        f = self.field
        n, s = self.n, self.s_even
        out: List[Violation] = []
        par = self.parities

        for i in range(n):
            for j in range(n):
                target = (par[i] + par[j]) % 2
                for l in range(n):
                    if self.structure[i, j, l] and par[l] != target:
                        out.append(
                            Violation(
                                "grading",
                                (i, j, l),
                                f"[{self.names[i]},{self.names[j]}] has a "
                                f"component of wrong parity on {self.names[l]}",
                            )
                        )

        for i in range(n):
            for j in range(i, n):
                if (par[i] * par[j]) % 2 == 0:
                    expect = f.neg_arr(self.structure[i, j])
                else:
                    expect = self.structure[i, j]
                if not np.array_equal(self.structure[j, i], expect):
                    out.append(
                        Violation(
                            "super-skew",
                            (i, j),
                            f"[{self.names[j]},{self.names[i]}] disagrees with the "
                            f"sign rule applied to [{self.names[i]},{self.names[j]}]",
                        )
                    )

        for i in range(n):
            for j in range(n):
                for l in range(n):
                    lhs = self.bracket(self.basis_vector(i), self.structure[j, l])
                    t1 = self.bracket(self.structure[i, j], self.basis_vector(l))
                    t2 = self.bracket(self.basis_vector(j), self.structure[i, l])
                    if (par[i] * par[j]) % 2 == 1:
                        t2 = f.neg_arr(t2)
                    if not np.array_equal(lhs, f.add_arr(t1, t2)):
                        out.append(
                            Violation(
                                "super-jacobi",
                                (i, j, l),
                                "Jacobi identity fails on basis triple "
                                f"({self.names[i]},{self.names[j]},{self.names[l]})",
                            )
                        )

        if self.pmap is not None:
            for i in range(s):
                if np.any(self.pmap[i, s:]):
                    out.append(
                        Violation(
                            "pmap-parity",
                            (i,),
                            f"{self.names[i]}^[p] has odd components",
                        )
                    )
            for i in range(s):
                adp = f.mat_pow(self.ad_matrix(self.basis_vector(i)), f.p)
                adq = self.ad_matrix(self.pmap[i])
                if not np.array_equal(adp, adq):
                    out.append(
                        Violation(
                            "p-map-ad",
                            (i,),
                            f"ad({self.names[i]}^[p]) differs from ad({self.names[i]})^p",
                        )
                    )
            rng = np.random.default_rng(seed)
            ok_shapes = not out
            if ok_shapes and s > 0:
                for t in range(samples):
                    x = np.zeros(n, dtype=np.int64)
                    x[:s] = f.rand(rng, s)
                    c = int(f.rand(rng))
                    lhs = self.p_power(f.mul_arr(c, x))
                    rhs = f.mul_arr(f.pow(c, f.p), self.p_power(x))
                    if not np.array_equal(lhs, rhs):
                        out.append(
                            Violation(
                                "p-map-scalar",
                                (t,),
                                "scalar-multiple rule (kx)^[p] = k^p x^[p] fails "
                                f"for sampled k={c}",
                            )
                        )
                        break
                for t in range(samples):
                    x = np.zeros(n, dtype=np.int64)
                    y = np.zeros(n, dtype=np.int64)
                    x[:s] = f.rand(rng, s)
                    y[:s] = f.rand(rng, s)
                    lhs = self.p_power(f.add_arr(x, y))
                    rhs = f.add_arr(
                        f.add_arr(self.p_power(x), self.p_power(y)),
                        self.s_corrections(x, y),
                    )
                    if not np.array_equal(lhs, rhs):
                        out.append(
                            Violation(
                                "p-map-sum",
                                (t,),
                                "additive expansion of (x+y)^[p] fails on a sample",
                            )
                        )
                        break
        return out

    def __repr__(self):
        tag = "restricted " if self.restricted else ""
        return f"<{tag}LieSuperAlgebra dim ({self.s_even}|{self.t_odd}) over {self.field}>"


# ---------------------------------------------------------------------------
# structural queries


def bracket_span(g: LieSuperAlgebra, a: Subspace, b: Subspace) -> Subspace:
    rows = []
    for u in a.basis:
        for v in b.basis:
            w = g.bracket(u, v)
            if np.any(w):
                rows.append(w)
    if not rows:
        return g.zero_space()
    return Subspace(g.field, g.s_even, g.n, np.array(rows))


def derived_subalgebra(g: LieSuperAlgebra, S: Optional[Subspace] = None) -> Subspace:
    S = S if S is not None else g.full_space()
    return bracket_span(g, S, S)


def derived_series(g: LieSuperAlgebra) -> List[Subspace]:
    series = [g.full_space()]
    while series[-1].dim > 0:
        nxt = bracket_span(g, series[-1], series[-1])
        if nxt.dim == series[-1].dim:
            break
        series.append(nxt)
    return series


def is_solvable(g: LieSuperAlgebra) -> bool:
    return derived_series(g)[-1].dim == 0


def lower_central_series(g: LieSuperAlgebra, h: Subspace) -> List[Subspace]:
    series = [h]
    while series[-1].dim > 0:
        nxt = bracket_span(g, h, series[-1])
        if nxt.dim == series[-1].dim:
            break
        series.append(nxt)
    return series


def is_nilpotent_subalg(g: LieSuperAlgebra, h: Subspace) -> bool:
    return lower_central_series(g, h)[-1].dim == 0


def is_completely_solvable(g: LieSuperAlgebra) -> bool:
    return is_nilpotent_subalg(g, derived_subalgebra(g))


def center(g: LieSuperAlgebra) -> Subspace:
    m = g.structure.transpose(1, 2, 0).reshape(g.n * g.n, g.n)
    return Subspace(g.field, g.s_even, g.n, nullspace(g.field, m))


def centralizer_of(g: LieSuperAlgebra, S: Subspace) -> Subspace:
    """All X with [X, S] = 0."""
    if S.dim == 0:
        return g.full_space()
    swapped = g.structure.transpose(1, 0, 2).reshape(g.n, -1)
    blocks = []
    for d in S.basis:
        t = g.field.matmul(d[None, :], swapped).reshape(g.n, g.n)
        # t[i, l] = sum_j c[i,j,l] d_j; conditions are rows indexed by l
        blocks.append(t.T)
    m = np.vstack(blocks)
    return Subspace(g.field, g.s_even, g.n, nullspace(g.field, m))


def subalgebra_closure(g: LieSuperAlgebra, vectors: Iterable[np.ndarray]) -> Subspace:
    S = Subspace.from_vectors(g.field, g.s_even, g.n, list(vectors))
    while True:
        grown = S.sum_with(bracket_span(g, S, S))
        if grown.dim == S.dim:
            return S
        S = grown


def intersect_spaces(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient != b.ambient:
        raise LsaError("ambient dimension mismatch")
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.field, a.s_even, a.ambient)
    stacked = np.concatenate([a.basis.T, a.field.neg_arr(b.basis.T)], axis=1)
    ker = nullspace(a.field, stacked)
    rows = a.field.matmul(ker[:, : a.dim], a.basis)
    return Subspace(a.field, a.s_even, a.ambient, rows)


def is_subalgebra(g: LieSuperAlgebra, S: Subspace) -> bool:
    for u in S.basis:
        for v in S.basis:
            if not S.contains(g.bracket(u, v)):
                return False
    return True


def is_ideal(g: LieSuperAlgebra, S: Subspace) -> bool:
    for j in range(g.n):
        ej = g.basis_vector(j)
        for v in S.basis:
            if not S.contains(g.bracket(ej, v)):
                return False
    return True


def is_p_closed(g: LieSuperAlgebra, S: Subspace) -> bool:
    """pmap(S_even) inside S; sufficient for full p-closure when S is a
    subalgebra, by the additive expansion."""
    if g.pmap is None:
        raise LsaError("p-closure needs a p-operation")
    for u in S.even_rows():
        if not S.contains(g.p_power(u)):
            return False
    return True


def restricted_closure(g: LieSuperAlgebra, S: Subspace) -> Subspace:
    """Smallest graded subspace containing S closed under bracket and [p]."""
    cur = S
    while True:
        grown = cur.sum_with(bracket_span(g, cur, cur))
        if g.pmap is not None:
            rows = [grown.basis]
            for u in grown.even_rows():
                rows.append(g.p_power(u)[None, :])
            grown = Subspace(g.field, g.s_even, g.n, np.vstack(rows))
        if grown.dim == cur.dim:
            return cur
        cur = grown


# ---------------------------------------------------------------------------
# quotients, basis change, subalgebra presentation


def quotient_by_ideal(g: LieSuperAlgebra, z: Subspace):
    """Quotient Lie superalgebra on the non-pivot coordinates of z.

    Returns (quotient algebra without p-operation, list of lifted column
    indices).  Coordinates of the quotient are the complement columns, so a
    vector is projected by reducing modulo z and reading off those columns.
    """
    if not is_ideal(g, z):
        raise LsaError("quotient requires an ideal")
    keep = z.complement_columns()
    names = [g.names[c] for c in keep]
    parities = [int(g.parities[c]) for c in keep]
    m = len(keep)
    structure = np.zeros((m, m, m), dtype=np.int64)
    for a, ca in enumerate(keep):
        for b, cb in enumerate(keep):
            w = z.reduce(g.structure[ca, cb])
            structure[a, b] = w[keep]
    q = LieSuperAlgebra(g.field, names, parities, structure, None)
    return q, keep


def project_to_quotient(z: Subspace, keep: list, v: np.ndarray) -> np.ndarray:
    return z.reduce(v)[keep]


def lift_from_quotient(ambient_n: int, keep: list, v: np.ndarray) -> np.ndarray:
    out = np.zeros(ambient_n, dtype=np.int64)
    out[keep] = v
    return out


def change_basis(g: LieSuperAlgebra, P: np.ndarray, names=None) -> LieSuperAlgebra:
    """Rewrite g in the basis given by the rows of P (old coordinates).

    P must be invertible and graded: rows keep the even-first layout.
    """
    f = g.field
    P = np.asarray(P, dtype=np.int64)
    n, s = g.n, g.s_even
    if P.shape != (n, n):
        raise LsaError("basis-change matrix has wrong shape")
    for a in range(n):
        expected = 0 if a < s else 1
        par = g.parity_of(P[a])
        if par != expected:
            raise LsaError(f"basis-change row {a} is not homogeneous of the right parity")
    Pinv = inv_matrix(f, P)
    to_new = lambda v: f.matmul(v[None, :], Pinv).ravel()
    structure = np.zeros_like(g.structure)
    for a in range(n):
        for b in range(n):
            structure[a, b] = to_new(g.bracket(P[a], P[b]))
    pmap = None
    if g.pmap is not None:
        pmap = np.zeros((s, n), dtype=np.int64)
        for a in range(s):
            pmap[a] = to_new(g.p_power(P[a]))
    names = names or [f"b{a}" for a in range(n)]
    return LieSuperAlgebra(f, names, g.parities.copy(), structure, pmap)


@dataclass
class Subalgebra:
    """A subalgebra presented as its own algebra plus the embedding rows."""

    parent: LieSuperAlgebra
    space: Subspace
    alg: LieSuperAlgebra

    @property
    def rows(self) -> np.ndarray:
        return self.space.basis

    def lift(self, v: np.ndarray) -> np.ndarray:
        return self.parent.field.matmul(
            np.asarray(v, dtype=np.int64)[None, :], self.rows
        ).ravel()

    def drop(self, v: np.ndarray) -> np.ndarray:
        c = self.space.coords_of(v)
        if c is None:
            raise LsaError("vector is outside the subalgebra")
        return c


def as_subalgebra(g: LieSuperAlgebra, S: Subspace, with_pmap: bool = True) -> Subalgebra:
    rows = S.basis
    m = rows.shape[0]
    structure = np.zeros((m, m, m), dtype=np.int64)
    for a in range(m):
        for b in range(a, m):
            w = g.bracket(rows[a], rows[b])
            c = S.coords_of(w)
            if c is None:
                raise LsaError("subspace is not bracket-closed")
            structure[a, b] = c
            if a != b:
                pa, pb = S.row_parity(a), S.row_parity(b)
                sign_neg = (pa * pb) % 2 == 0
                structure[b, a] = g.field.neg_arr(c) if sign_neg else c
    parities = [S.row_parity(a) for a in range(m)]
    names = [f"s{a}" for a in range(m)]
    s_ev = sum(1 for p in parities if p == 0)
    pmap = None
    if with_pmap and g.pmap is not None:
        pmap = np.zeros((s_ev, m), dtype=np.int64)
        for a in range(s_ev):
            w = g.p_power(rows[a])
            c = S.coords_of(w)
            if c is None:
                # not p-closed: present it as a plain Lie superalgebra
                pmap = None
                break
            pmap[a] = c
    alg = LieSuperAlgebra(g.field, names, parities, structure, pmap)
    return Subalgebra(g, S, alg)


def extend_scalars(g: LieSuperAlgebra, big: Field):
    """Base change GF(p^k) -> GF(p^K) through the canonical embedding."""
    table = find_embedding(g.field, big)
    structure = table[g.structure]
    pmap = table[g.pmap] if g.pmap is not None else None
    return LieSuperAlgebra(big, g.names, g.parities.copy(), structure, pmap), table


# ---------------------------------------------------------------------------
# flags of ideals and codimension-one extensions (completely solvable)


def _line_ideal(g: LieSuperAlgebra) -> Subspace:
    """A one-dimensional ideal of a completely solvable algebra.

    Works inside the centralizer of the derived subalgebra, where the basis
    generators act as super-commuting operators: odd operators are killed by
    kernel intersection, even ones by iterated eigenspace intersection.
    Raises NeedsFieldExtension when an even operator has no eigenvalue in
    the working field.
    """
    f = g.field
    D = derived_subalgebra(g)
    Z = centralizer_of(g, D)
    if Z.dim == 0:
        raise LsaError("centralizer of the derived subalgebra vanished; "
                       "input is not completely solvable")
    K = Z
    for j in range(g.n):
        if K.dim == 0:
            break
        ej = g.basis_vector(j)
        images = np.array([g.bracket(ej, row) for row in K.basis])
        A = np.zeros((K.dim, K.dim), dtype=np.int64)
        for r in range(K.dim):
            c = K.coords_of(images[r])
            if c is None:
                raise LsaError("centralizer is not invariant; structure corrupt")
            A[r] = c
        A = A.T  # act on column coordinate vectors
        if g.parities[j] == 1:
            ker = nullspace(f, A)
        else:
            ker = None
            for lam in range(f.q):
                shifted = f.sub_arr(A, f.mul_arr(lam, f.eye(K.dim)))
                nz = nullspace(f, shifted)
                if nz.shape[0] > 0:
                    ker = nz
                    break
            if ker is None:
                raise NeedsFieldExtension(
                    f"no eigenvalue of ad({g.names[j]}) in {f}", degree_hint=2
                )
        if ker.shape[0] == 0:
            raise LsaError("no common eigenvector; input is not completely solvable")
        rows = f.matmul(ker, K.basis)
        K = Subspace(f, g.s_even, g.n, rows)
    v = K.basis[0]
    line = Subspace(f, g.s_even, g.n, v[None, :])
    if not is_ideal(g, line):
        raise LsaError("eigenvector search produced a non-ideal; "
                       "reported as a counterexample candidate")
    return line


def one_dim_ideal_flag(g: LieSuperAlgebra) -> List[Subspace]:
    """Chain g = g_0 > g_1 > ... > 0 of ideals of g descending by one."""
    if not is_completely_solvable(g):
        raise LsaError("flag construction requires a completely solvable algebra")
    if g.n == 0:
        return [g.zero_space()]
    z = _line_ideal(g)
    q, keep = quotient_by_ideal(g, z)
    sub = one_dim_ideal_flag(q) if q.n > 0 else [q.zero_space()]
    flag = []
    for m in sub:
        rows = [lift_from_quotient(g.n, keep, row) for row in m.basis]
        rows.append(z.basis[0])
        flag.append(Subspace(g.field, g.s_even, g.n, np.array(rows)))
    flag.append(g.zero_space())
    return flag


def graded_hyperplanes_containing(g: LieSuperAlgebra, W: Subspace):
    """Graded codimension-one subspaces of g containing W, in a fixed order:
    even-side kernels first, functionals enumerated lexicographically."""
    f = g.field
    comp = W.complement_columns()
    comp_even = [c for c in comp if c < g.s_even]
    comp_odd = [c for c in comp if c >= g.s_even]
    for side in (comp_even, comp_odd):
        c = len(side)
        if c == 0:
            continue
        other = comp_odd if side is comp_even else comp_even
        for phi in _normalized_functionals(f, c):
            t = next(i for i in range(c) if phi[i])
            rows = [W.basis] if W.dim else []
            extra = []
            for u in range(c):
                if u == t:
                    continue
                vec = np.zeros(g.n, dtype=np.int64)
                vec[side[u]] = 1
                vec[side[t]] = f.neg(int(phi[u]))
                extra.append(vec)
            for cc in other:
                vec = np.zeros(g.n, dtype=np.int64)
                vec[cc] = 1
                extra.append(vec)
            if extra:
                rows.append(np.array(extra))
            basis = np.vstack(rows) if rows else np.zeros((0, g.n), dtype=np.int64)
            yield Subspace(f, g.s_even, g.n, basis)


def _normalized_functionals(f: Field, c: int):
    """Nonzero functionals up to scalar: first nonzero coefficient is 1."""
    from itertools import product

    for t in range(c):
        for tail in product(range(f.q), repeat=c - t - 1):
            yield (0,) * t + (1,) + tail


def codim1_extend(g: LieSuperAlgebra, h: Subspace) -> Subspace:
    """A codimension-one subalgebra of g containing the proper subalgebra h."""
    if h.dim >= g.n:
        raise LsaError("subalgebra is not proper")
    if h.dim == g.n - 1:
        return h
    # any hyperplane containing h + [g,g] is a subalgebra; try those first by
    # seeding the search with the enlarged subspace, then fall back to a scan
    D = derived_subalgebra(g)
    seed = h.sum_with(D)
    if seed.dim < g.n:
        for H in graded_hyperplanes_containing(g, seed):
            return H
    for H in graded_hyperplanes_containing(g, h):
        if is_subalgebra(g, H):
            return H
    raise NeedsFieldExtension("no codimension-one subalgebra over the working field")
