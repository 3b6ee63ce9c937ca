"""Geometry of a p-character: Gram blocks of (X, Y) -> chi([X, Y]),
centralizers, isotropy data, the maximal-dimension invariant of the algebra,
degraded-subalgebra predicates, and the polarization construction for
completely solvable inputs.

Floor/ceiling convention: everything here uses the standard meaning.  With
b0 = rank of the even Gram block and b1 = rank of the odd block, the
dimension target attached to a character is p^(b0/2) * 2^ceil(b1/2), and the
maximal isotropic super-dimension is ((s + z0)/2 | floor((t + z1)/2)).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import List, NamedTuple, Optional

import numpy as np

from .gflin import Field, nullspace, rank
from .lsa import (
    LieSuperAlgebra,
    LsaError,
    Subalgebra,
    Subspace,
    as_subalgebra,
    bracket_span,
    graded_hyperplanes_containing,
    is_completely_solvable,
    is_p_closed,
    is_subalgebra,
)


class SuperDim(NamedTuple):
    even: int
    odd: int

    def __str__(self):
        return f"({self.even}|{self.odd})"


class BudgetExceeded(RuntimeError):
    pass


class CounterexampleError(RuntimeError):
    """A construction the theory guarantees has failed; the payload is a
    report, not a crash site."""


def check_chi(g: LieSuperAlgebra, chi) -> np.ndarray:
    chi = np.asarray(chi, dtype=np.int64)
    if chi.shape != (g.s_even,):
        raise LsaError(f"character must have one value per even basis element "
                       f"({g.s_even}), got shape {chi.shape}")
    if np.any(chi < 0) or np.any(chi >= g.field.q):
        raise LsaError(f"character values must be field codes in [0, {g.field.q})")
    return chi


def gram_matrix(g: LieSuperAlgebra, chi: np.ndarray) -> np.ndarray:
    """Full n x n Gram matrix of (X, Y) -> chi([X, Y]) on basis pairs."""
    f = g.field
    s = g.s_even
    flat = g.structure[:, :, :s].reshape(g.n * g.n, s)
    return f.matmul(flat, chi.reshape(s, 1)).reshape(g.n, g.n)


@dataclass
class CharacterGeometry:
    chi: np.ndarray
    even_gram: np.ndarray
    odd_gram: np.ndarray
    centralizer: Subspace
    even_rank: int          # rank of the even block; always even
    odd_rank: int           # rank of the odd (symmetric) block
    max_isotropic: SuperDim
    exp_pair: SuperDim      # (m|n): attached dimension is p^m * 2^n

    def value(self, p: int) -> int:
        return p**self.exp_pair.even * 2**self.exp_pair.odd


def chi_geometry(g: LieSuperAlgebra, chi) -> CharacterGeometry:
    f = g.field
    chi = check_chi(g, chi)
    s, t, n = g.s_even, g.t_odd, g.n
    G = gram_matrix(g, chi)
    if np.any(G[:s, s:]) or np.any(G[s:, :s]):
        raise CounterexampleError(
            "mixed-parity Gram block is nonzero: chi does not vanish on odd "
            "brackets, which contradicts the grading")
    even_block = G[:s, :s]
    odd_block = G[s:, s:]
    if not np.array_equal(even_block, f.neg_arr(even_block.T)) or np.any(
        np.diagonal(even_block)
    ):
        raise CounterexampleError("even Gram block is not alternating")
    if not np.array_equal(odd_block, odd_block.T):
        raise CounterexampleError("odd Gram block is not symmetric")
    zc = Subspace(f, s, n, nullspace(f, G.T))
    b0 = rank(f, even_block)
    b1 = rank(f, odd_block)
    if b0 % 2 != 0:
        raise CounterexampleError(f"even block rank {b0} is odd")
    if zc.dim != n - b0 - b1:
        raise CounterexampleError("centralizer dimension disagrees with block ranks")
    z0, z1 = zc.superdim
    d = SuperDim((s + z0) // 2, (t + z1) // 2)
    i = SuperDim(b0 // 2, (b1 + 1) // 2)
    assert d.even + i.even == s and d.odd + i.odd == t
    return CharacterGeometry(chi, even_block, odd_block, zc, b0, b1, d, i)


def isotropy_profile(geo: CharacterGeometry) -> tuple:
    """(maximal isotropic super-dimension, its complement = exponent pair)."""
    return geo.max_isotropic, geo.exp_pair


def restrict_chi(chi: np.ndarray, sub: Subalgebra) -> np.ndarray:
    """Values of chi on the even basis rows of a subalgebra."""
    g = sub.parent
    s_sub = sub.alg.s_even
    out = np.zeros(s_sub, dtype=np.int64)
    for a in range(s_sub):
        row = sub.rows[a]
        out[a] = int(
            g.field.matmul(row[None, : g.s_even], chi.reshape(-1, 1)).ravel()[0]
        )
    return out


# ---------------------------------------------------------------------------
# maximal dimension scan


@dataclass
class MaxDimReport:
    pairs: List[SuperDim]            # all (m|n) attaining the maximum value
    witnesses: List[np.ndarray]      # first character found for each pair
    value_exponents: SuperDim        # lexicographically smallest maximizing pair
    exhaustive: bool
    scanned: int
    b0_max: int
    b1_max: int
    simultaneous_witness: Optional[np.ndarray]  # chi attaining both b0_max, b1_max

    def value(self, p: int) -> int:
        return p**self.value_exponents.even * 2**self.value_exponents.odd


def _iter_exhaustive(q: int, s: int):
    for tup in product(range(q), repeat=s):
        yield np.array(tup, dtype=np.int64)


def _iter_random(field: Field, s: int, samples: int, seed: int):
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        yield field.rand(rng, s)


def max_exponents(
    g: LieSuperAlgebra,
    strategy: str = "exhaustive",
    budget: int = 10**6,
    seed: int = 0,
    samples: int = 200,
) -> MaxDimReport:
    """Scan characters for the largest attached dimension p^m * 2^n.

    Exhaustive mode enumerates all q^s characters (rejected when that count
    exceeds the budget); random mode draws seeded samples.  Because both
    block ranks are ranks of matrices linear in the character, random
    sampling finds the generic (maximal) ranks with high probability once q
    is not tiny; the report records the sample count so the caller can judge.
    """
    f, p, s = g.field, g.field.p, g.s_even
    if strategy == "exhaustive":
        total = f.q**s
        if total > budget:
            raise BudgetExceeded(
                f"exhaustive scan needs {total} characters, budget is {budget}")
        it = _iter_exhaustive(f.q, s)
        exhaustive = True
    elif strategy == "random":
        it = _iter_random(f, s, samples, seed)
        exhaustive = False
    else:
        raise ValueError(f"unknown strategy {strategy!r}")

    best = -1
    pairs: List[SuperDim] = []
    witnesses: List[np.ndarray] = []
    b0_max = b1_max = 0
    simultaneous = None
    scanned = 0
    for chi in it:
        geo = chi_geometry(g, chi)
        scanned += 1
        val = geo.value(p)
        if val > best:
            best = val
            pairs = [geo.exp_pair]
            witnesses = [chi.copy()]
        elif val == best and geo.exp_pair not in pairs:
            pairs.append(geo.exp_pair)
            witnesses.append(chi.copy())
        b0_max = max(b0_max, geo.even_rank)
        b1_max = max(b1_max, geo.odd_rank)
    # second pass for a simultaneous maximizer of both ranks (cheap: ranks
    # were already maximal on the same grid)
    if exhaustive:
        for chi in _iter_exhaustive(f.q, s):
            geo = chi_geometry(g, chi)
            if geo.even_rank == b0_max and geo.odd_rank == b1_max:
                simultaneous = chi.copy()
                break
    else:
        for chi in _iter_random(f, s, samples, seed):
            geo = chi_geometry(g, chi)
            if geo.even_rank == b0_max and geo.odd_rank == b1_max:
                simultaneous = chi.copy()
                break
    order = sorted(range(len(pairs)), key=lambda i: tuple(pairs[i]))
    pairs = [pairs[i] for i in order]
    witnesses = [witnesses[i] for i in order]
    return MaxDimReport(
        pairs, witnesses, pairs[0], exhaustive, scanned, b0_max, b1_max, simultaneous
    )


# ---------------------------------------------------------------------------
# degraded subalgebras and polarization


def is_degraded(g: LieSuperAlgebra, chi, S: Subspace, geo: Optional[CharacterGeometry] = None):
    """Whether S has the maximal isotropic super-dimension and chi kills its
    derived subalgebra.  Returns (verdict, diagnostics)."""
    chi = check_chi(g, chi)
    if not is_subalgebra(g, S):
        raise LsaError("degradedness is only defined for subalgebras")
    geo = geo or chi_geometry(g, chi)
    derived = bracket_span(g, S, S)
    chi_kills = all(
        int(g.field.matmul(row[None, : g.s_even], chi.reshape(-1, 1)).ravel()[0]) == 0
        for row in derived.even_rows()
    )
    verdict = (SuperDim(*S.superdim) == geo.max_isotropic) and chi_kills
    diagnostics = {
        "superdim": SuperDim(*S.superdim),
        "target": geo.max_isotropic,
        "chi_kills_derived": chi_kills,
        "contains_centralizer": S.contains_space(geo.centralizer),
        "p_closed": is_p_closed(g, S) if g.restricted else None,
    }
    return verdict, diagnostics


def polarization(g: LieSuperAlgebra, chi) -> Subspace:
    """A degraded subalgebra of a completely solvable algebra.

    Descends from the whole algebra through codimension-one subalgebras that
    contain the centralizer and keep the super-dimension at or above the
    isotropy target; among valid steps the first in the fixed hyperplane
    enumeration order is taken, so the output is deterministic.
    """
    chi = check_chi(g, chi)
    if not is_completely_solvable(g):
        raise LsaError("polarization requires a completely solvable algebra")
    geo = chi_geometry(g, chi)
    d = geo.max_isotropic
    cand = g.full_space()
    while SuperDim(*cand.superdim) != d:
        sub = as_subalgebra(g, cand, with_pmap=False)
        zc_rows = [sub.drop(row) for row in geo.centralizer.basis]
        z_sub = Subspace.from_vectors(
            g.field, sub.alg.s_even, sub.alg.n, zc_rows
        )
        found = None
        for H in graded_hyperplanes_containing(sub.alg, z_sub):
            sd = SuperDim(*H.superdim)
            if sd.even < d.even or sd.odd < d.odd:
                continue
            if not is_subalgebra(sub.alg, H):
                continue
            found = H
            break
        if found is None:
            raise CounterexampleError(
                "polarization descent found no valid codimension-one step at "
                f"super-dimension {SuperDim(*cand.superdim)}; this contradicts "
                "the completely solvable theory over a closed field")
        rows = g.field.matmul(found.basis, sub.rows)
        nxt = Subspace(g.field, g.s_even, g.n, rows)
        nxt_sub = as_subalgebra(g, nxt, with_pmap=False)
        nxt_geo = chi_geometry(nxt_sub.alg, restrict_chi(chi, nxt_sub))
        if nxt_geo.max_isotropic != d:
            raise CounterexampleError(
                "isotropy target changed under a codimension-one step that "
                "contains the centralizer; monotonicity probe failed")
        cand = nxt
    verdict, diag = is_degraded(g, chi, cand, geo)
    if not verdict:
        raise CounterexampleError(
            f"polarization candidate is not degraded: {diag}")
    return cand
