"""Reduced enveloping algebra: PBW basis, straightening multiplication, and
the induced-module constructors (left regular module as the special case of
inducing from the zero subalgebra).

Monomials are pairs (alpha, gamma): even exponents in [0, p) and odd bits.
Words are straightened rightmost-disorder-first; the relations used are the
super-commutation swap, the odd-square rule y*y = (1/2)[y,y], and the even
p-th power rule x^p = x^[p] + chi(x)^p.  Termination follows from the
(degree, inversion-count) measure: swaps lower inversions, everything else
lowers degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .chargeom import BudgetExceeded, check_chi
from .gflin import inv_matrix
from .lsa import LieSuperAlgebra, LsaError, Subalgebra, as_subalgebra, change_basis
from .modules import SuperModule

Word = Tuple[int, ...]
Monomial = Tuple[Tuple[int, ...], Tuple[int, ...]]


class ReducedAlgebra:
    """U_chi(g) with a fixed PBW generator order.

    `order_key` permutes straightening priorities (used by the induced-module
    builder to push subalgebra generators to the right); the default is the
    basis order itself.
    """

    def __init__(self, g: LieSuperAlgebra, chi, order_key: Optional[Sequence[int]] = None):
        if not g.restricted:
            raise LsaError("reduced enveloping algebra needs a restricted algebra")
        self.g = g
        self.field = g.field
        self.chi = check_chi(g, chi)
        self.order_key = list(order_key) if order_key is not None else list(range(g.n))
        if sorted(self.order_key) != list(range(g.n)):
            raise LsaError("order_key must be a permutation of the generators")
        f = self.field
        self.chi_p = np.array(
            [f.pow(int(c), f.p) for c in self.chi], dtype=np.int64
        )
        self.half = f.inv(2 % f.p)
        # sparse bracket table
        self.pair = {}
        for i in range(g.n):
            for j in range(g.n):
                nz = np.nonzero(g.structure[i, j])[0]
                if nz.size:
                    self.pair[(i, j)] = [(int(l), int(g.structure[i, j, l])) for l in nz]

    @property
    def dim_exponents(self) -> tuple:
        return (self.g.s_even, self.g.t_odd)

    def dimension(self) -> int:
        return self.field.p ** self.g.s_even * 2 ** self.g.t_odd

    # -- straightening ---------------------------------------------------

    def straighten(self, words: Dict[Word, int]) -> Dict[Word, int]:
        """Rewrite a scalar combination of words into sorted reduced words."""
        f = self.field
        p = f.p
        par = self.g.parities
        key = self.order_key
        out: Dict[Word, int] = {}
        agenda: List[Tuple[Word, int]] = [(w, c) for w, c in words.items() if c]
        while agenda:
            w, c = agenda.pop()
            if not c:
                continue
            m = self._rightmost_violation(w)
            if m is None:
                run = self._even_p_run(w)
                if run is None:
                    out[w] = f.add(out.get(w, 0), c)
                    if not out[w]:
                        del out[w]
                    continue
                start, gen = run
                rest = w[:start] + w[start + p :]
                for l, cl in self._pmap_terms(gen):
                    agenda.append((self._insert_sorted_later(rest, start, l), f.mul(c, cl)))
                cp = int(self.chi_p[gen])
                if cp:
                    agenda.append((rest, f.mul(c, cp)))
                continue
            a, b = w[m], w[m + 1]
            if a == b:
                # adjacent equal odd generators: the square rule
                for l, cl in self.pair.get((a, a), []):
                    agenda.append(
                        (w[:m] + (l,) + w[m + 2 :], f.mul(c, f.mul(self.half, cl)))
                    )
                continue
            sign_c = f.neg(c) if (par[a] * par[b]) % 2 == 1 else c
            agenda.append((w[:m] + (b, a) + w[m + 2 :], sign_c))
            for l, cl in self.pair.get((a, b), []):
                agenda.append((w[:m] + (l,) + w[m + 2 :], f.mul(c, cl)))
        return out

    def _rightmost_violation(self, w: Word) -> Optional[int]:
        par = self.g.parities
        key = self.order_key
        for m in range(len(w) - 2, -1, -1):
            a, b = w[m], w[m + 1]
            if key[a] > key[b]:
                return m
            if a == b and par[a] == 1:
                return m
        return None

    def _even_p_run(self, w: Word):
        p = self.field.p
        count = 1
        for m in range(len(w) - 1, 0, -1):
            if w[m - 1] == w[m]:
                count += 1
                if count == p:
                    return m - 1, w[m]
            else:
                count = 1
        return None

    @staticmethod
    def _insert_sorted_later(rest: Word, pos: int, l: int) -> Word:
        return rest[:pos] + (l,) + rest[pos:]

    def _pmap_terms(self, gen: int):
        row = self.g.pmap[gen]
        nz = np.nonzero(row)[0]
        return [(int(l), int(row[l])) for l in nz]

    # -- normal form and product -----------------------------------------

    def word_to_monomial(self, w: Word) -> Monomial:
        s, t = self.g.s_even, self.g.t_odd
        alpha = [0] * s
        gamma = [0] * t
        for gidx in w:
            if gidx < s:
                alpha[gidx] += 1
            else:
                gamma[gidx - s] += 1
        if any(a >= self.field.p for a in alpha) or any(cb > 1 for cb in gamma):
            raise LsaError("word is not reduced")
        return tuple(alpha), tuple(gamma)

    def monomial_to_word(self, mono: Monomial) -> Word:
        alpha, gamma = mono
        s = self.g.s_even
        w: List[int] = []
        for i, a in enumerate(alpha):
            w.extend([i] * a)
        for j, cb in enumerate(gamma):
            if cb:
                w.append(s + j)
        return tuple(w)

    def normal_form(self, word: Sequence[int], coeff: int = 1) -> Dict[Monomial, int]:
        """PBW-ordered representative of a scalar multiple of a word."""
        res = self.straighten({tuple(word): coeff})
        out: Dict[Monomial, int] = {}
        for w, c in res.items():
            mono = self.word_to_monomial(w)
            cur = self.field.add(out.get(mono, 0), c)
            if cur:
                out[mono] = cur
            elif mono in out:
                del out[mono]
        return out

    def multiply(self, u: Dict[Monomial, int], v: Dict[Monomial, int]) -> Dict[Monomial, int]:
        words: Dict[Word, int] = {}
        f = self.field
        for m1, c1 in u.items():
            w1 = self.monomial_to_word(m1)
            for m2, c2 in v.items():
                w = w1 + self.monomial_to_word(m2)
                c = f.mul(c1, c2)
                if c:
                    words[w] = f.add(words.get(w, 0), c)
        res = self.straighten(words)
        out: Dict[Monomial, int] = {}
        for w, c in res.items():
            mono = self.word_to_monomial(w)
            cur = f.add(out.get(mono, 0), c)
            if cur:
                out[mono] = cur
            elif mono in out:
                del out[mono]
        return out

    def one(self) -> Dict[Monomial, int]:
        s, t = self.g.s_even, self.g.t_odd
        return {((0,) * s, (0,) * t): 1}

    def generator(self, i: int) -> Dict[Monomial, int]:
        return self.normal_form((i,))

    def element_parity(self, u: Dict[Monomial, int]) -> Optional[int]:
        """0/1 for homogeneous elements, None for mixed (or zero)."""
        seen = {sum(gamma) % 2 for (_, gamma) in u}
        if len(seen) == 1:
            return seen.pop()
        return None

    def format_element(self, u: Dict[Monomial, int]) -> str:
        """Canonical PBW-ordered printing, stable for golden files."""
        if not u:
            return "0"
        names = self.g.names
        s = self.g.s_even
        parts = []
        for (alpha, gamma) in sorted(u.keys()):
            c = u[(alpha, gamma)]
            factors = []
            for i, a in enumerate(alpha):
                if a == 1:
                    factors.append(names[i])
                elif a > 1:
                    factors.append(f"{names[i]}^{a}")
            for j, cb in enumerate(gamma):
                if cb:
                    factors.append(names[s + j])
            body = "*".join(factors) if factors else "1"
            parts.append(f"{c}*{body}")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# induced modules


@dataclass
class InducedModule:
    """Module induced from a p-closed subalgebra, with the basis layout
    e^alpha f^gamma (x) v_b kept explicit for filtration arguments.

    Basis index = (mixed-radix alpha, little-endian) * 2^c1 + gamma bits,
    then * dim(base) + b.
    """

    module: SuperModule
    h: Subalgebra
    base: SuperModule
    even_cobasis: np.ndarray   # (c0, n) vectors of the ambient algebra
    odd_cobasis: np.ndarray    # (c1, n)

    @property
    def c0(self) -> int:
        return self.even_cobasis.shape[0]

    @property
    def c1(self) -> int:
        return self.odd_cobasis.shape[0]

    def index(self, alpha: Sequence[int], gamma: Sequence[int], b: int) -> int:
        p = self.h.parent.field.p
        ai = 0
        for i in reversed(range(self.c0)):
            ai = ai * p + alpha[i]
        gi = 0
        for j in reversed(range(self.c1)):
            gi = gi * 2 + gamma[j]
        return (ai * 2**self.c1 + gi) * self.base.dim + b

    def unindex(self, idx: int):
        p = self.h.parent.field.p
        b = idx % self.base.dim
        idx //= self.base.dim
        gi = idx % 2**self.c1
        ai = idx // 2**self.c1
        gamma = tuple((gi >> j) & 1 for j in range(self.c1))
        alpha = []
        for _ in range(self.c0):
            alpha.append(ai % p)
            ai //= p
        return tuple(alpha), gamma, b

    def degree(self, idx: int) -> int:
        alpha, gamma, _ = self.unindex(idx)
        return sum(alpha) + sum(gamma)


def trivial_base_module(g: LieSuperAlgebra, chi) -> SuperModule:
    """One-dimensional even module over the zero subalgebra of g."""
    sub_space = g.zero_space()
    sub = as_subalgebra(g, sub_space)
    return SuperModule(
        alg=sub.alg,
        chi=np.zeros(0, dtype=np.int64),
        parities=np.zeros(1, dtype=np.int64),
        action=np.zeros((0, 1, 1), dtype=np.int64),
    )


def character_module(h: Subalgebra, chi_h, lam: np.ndarray) -> SuperModule:
    """One-dimensional module of a restricted subalgebra: even generators act
    by the weight, odd ones by zero.  The caller is responsible for the
    weight solving the p-compatibility equations."""
    alg = h.alg
    s = alg.s_even
    action = np.zeros((alg.n, 1, 1), dtype=np.int64)
    for a in range(s):
        action[a, 0, 0] = lam[a]
    return SuperModule(
        alg=alg,
        chi=np.asarray(chi_h, dtype=np.int64),
        parities=np.zeros(1, dtype=np.int64),
        action=action,
    )


def induce(
    g: LieSuperAlgebra,
    chi,
    h: Subalgebra,
    S: SuperModule,
    budget: int = 4000,
) -> InducedModule:
    """U_chi(g) tensored over U_chi(h) with S, for p-closed h.

    The ambient algebra is rewritten in a basis [even cobasis, h-even rows,
    odd cobasis, h-odd rows]; straightening with cobasis generators ordered
    first turns every word into (cobasis monomial) * (h-word), and the h-word
    is applied to S through its action matrices.
    """
    f = g.field
    chi = check_chi(g, chi)
    if not h.alg.restricted:
        raise LsaError("induction requires a p-closed subalgebra")
    if h.alg.n != S.alg.n or S.alg.n != S.action.shape[0]:
        raise LsaError("base module does not match the subalgebra")
    s, t, n = g.s_even, g.t_odd, g.n
    comp = h.space.complement_columns()
    ce = [c for c in comp if c < s]
    co = [c for c in comp if c >= s]
    c0, c1 = len(ce), len(co)
    dim = f.p**c0 * 2**c1 * S.dim
    if dim > budget:
        raise BudgetExceeded(f"induced module dimension {dim} exceeds budget {budget}")

    h_even = h.space.even_rows()
    h_odd = h.space.odd_rows()
    rows = []
    for c in ce:
        v = np.zeros(n, dtype=np.int64)
        v[c] = 1
        rows.append(v)
    rows.extend(h_even)
    for c in co:
        v = np.zeros(n, dtype=np.int64)
        v[c] = 1
        rows.append(v)
    rows.extend(h_odd)
    P = np.array(rows, dtype=np.int64)
    g2 = change_basis(g, P)
    chi2 = np.array(
        [int(f.matmul(P[a][None, :s], chi.reshape(-1, 1)).ravel()[0]) for a in range(s)],
        dtype=np.int64,
    )

    # straightening priority: even cobasis, odd cobasis, then h generators
    key = [0] * n
    pos = 0
    for a in range(c0):
        key[a] = pos
        pos += 1
    for a in range(s, s + c1):
        key[a] = pos
        pos += 1
    for a in range(c0, s):
        key[a] = pos
        pos += 1
    for a in range(s + c1, n):
        key[a] = pos
        pos += 1
    A = ReducedAlgebra(g2, chi2, order_key=key)

    # map h generator index in g2 to the base module's generator index
    def h_action(word):
        mat = f.eye(S.dim)
        for gi in word:
            if gi < s:
                k = gi - c0
            else:
                k = (s - c0) + (gi - s - c1)
            mat = f.matmul(mat, S.action[k])
        return mat

    from itertools import product as iproduct

    blocks = list(iproduct(range(f.p), repeat=c0))
    gbits = list(iproduct(range(2), repeat=c1))
    induced = InducedModule(
        module=None,  # filled below
        h=h,
        base=S,
        even_cobasis=P[:c0].copy(),
        odd_cobasis=P[s : s + c1].copy(),
    )

    action2 = np.zeros((n, dim, dim), dtype=np.int64)
    for u in range(n):
        mat = action2[u]
        for alpha in blocks:
            for gamma in gbits:
                word = [u]
                for i, a in enumerate(alpha):
                    word.extend([i] * a)
                for j, cb in enumerate(gamma):
                    if cb:
                        word.append(s + j)
                res = A.straighten({tuple(word): 1})
                col0 = induced.index(alpha, gamma, 0)
                for w, c in res.items():
                    cut = len(w)
                    for pos2, gi in enumerate(w):
                        if not (gi < c0 or (s <= gi < s + c1)):
                            cut = pos2
                            break
                    prefix, suffix = w[:cut], w[cut:]
                    a2 = [0] * c0
                    g2bits = [0] * c1
                    for gi in prefix:
                        if gi < c0:
                            a2[gi] += 1
                        else:
                            g2bits[gi - s] += 1
                    row0 = induced.index(a2, g2bits, 0)
                    hmat = h_action(suffix)
                    block = f.mul_arr(c, hmat)
                    mat[row0 : row0 + S.dim, col0 : col0 + S.dim] = f.add_arr(
                        mat[row0 : row0 + S.dim, col0 : col0 + S.dim], block
                    )

    # back to the original generators
    Pinv = inv_matrix(f, P)
    action = np.zeros_like(action2)
    for i in range(n):
        acc = np.zeros((dim, dim), dtype=np.int64)
        for a in range(n):
            cval = int(Pinv[i, a])
            if cval:
                acc = f.add_arr(acc, f.mul_arr(cval, action2[a]))
        action[i] = acc

    parities = np.zeros(dim, dtype=np.int64)
    for alpha in blocks:
        for gamma in gbits:
            for b in range(S.dim):
                idx = induced.index(alpha, gamma, b)
                parities[idx] = (sum(gamma) + int(S.parities[b])) % 2

    induced.module = SuperModule(alg=g, chi=chi, parities=parities, action=action)
    return induced


def regular_module(ralg: ReducedAlgebra, budget: int = 4000) -> InducedModule:
    """Left regular module of U_chi(g), as induction from the zero subalgebra."""
    g = ralg.g
    sub = as_subalgebra(g, g.zero_space())
    base = trivial_base_module(g, ralg.chi)
    return induce(g, ralg.chi, sub, base, budget=budget)
