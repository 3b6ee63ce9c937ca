"""Exact dense linear algebra over GF(p^k).

Field elements are encoded as integers in [0, q) with q = p^k: the base-p
digits of the code, little-endian, are the coordinates in the power basis of
GF(p)[x]/(modulus).  That digit vector is also the on-disk serialization of a
scalar.  Matrices are numpy int64 arrays of codes; all arithmetic is exact.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Optional

import numpy as np

# Lex-smallest monic irreducible of degree k over GF(p), little-endian
# coefficients including the leading 1.  Fixed table so that serialized data
# is bit-exact across runs and machines; entries are re-verified at Field
# construction.  Pairs outside the table are generated on demand by
# `smallest_irreducible` (same lex-smallest rule).
DEFAULT_MODULI = {
    (3, 1): (1, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 0, 2, 1),
    (3, 4): (1, 0, 1, 1, 1),
    (5, 1): (1, 1),
    (5, 2): (1, 1, 1),
    (5, 3): (1, 0, 1, 1),
    (5, 4): (1, 0, 1, 1, 1),
    (7, 1): (1, 1),
    (7, 2): (1, 0, 1),
    (7, 3): (1, 0, 1, 1),
    (7, 4): (1, 0, 0, 1, 1),
    (11, 1): (1, 1),
    (11, 2): (1, 0, 1),
    (11, 3): (1, 0, 4, 1),
    (11, 4): (1, 0, 0, 4, 1),
    (13, 1): (1, 1),
    (13, 2): (1, 3, 1),
    (13, 3): (1, 0, 4, 1),
    (13, 4): (1, 0, 0, 1, 1),
}


class FieldError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# polynomial helpers over the prime field GF(p) (little-endian int lists)

def _pdeg(a):
    d = len(a) - 1
    while d >= 0 and a[d] == 0:
        d -= 1
    return d


def _pmulmod(a, b, f, p):
    k = len(f) - 1
    r = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                r[i + j] = (r[i + j] + ai * bj) % p
    for d in range(len(r) - 1, k - 1, -1):
        c = r[d]
        if c:
            r[d] = 0
            for j in range(k):
                r[d - k + j] = (r[d - k + j] - c * f[j]) % p
    r = r[:k]
    r.extend([0] * (k - len(r)))
    return r


def _xpow(e, f, p):
    k = len(f) - 1
    if k == 1:
        return [pow((-f[0]) % p, e, p)]
    result = [1] + [0] * (k - 1)
    base = [0, 1] + [0] * (k - 2)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a, b = list(a), list(b)
    while _pdeg(b) >= 0:
        da, db = _pdeg(a), _pdeg(b)
        if da < db:
            a, b = b, a
            continue
        c = (a[da] * pow(b[db], p - 2, p)) % p
        sh = da - db
        for j in range(db + 1):
            a[j + sh] = (a[j + sh] - c * b[j]) % p
    return a


def is_irreducible(coeffs: Iterable[int], p: int) -> bool:
    """Monic polynomial irreducibility over GF(p), little-endian coeffs."""
    f = list(coeffs)
    k = _pdeg(f)
    if k < 1 or f[k] != 1:
        return False
    if k == 1:
        return True
    if f[0] == 0:
        return False
    xid = [0, 1] + [0] * (k - 2)
    if _xpow(p**k, f, p) != xid:
        return False
    n, primes = k, []
    d = 2
    while d * d <= n:
        if n % d == 0:
            primes.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        primes.append(n)
    for r in primes:
        g = _xpow(p ** (k // r), f, p)
        g = list(g)
        g[1] = (g[1] - 1) % p
        if _pdeg(_pgcd(f, g, p)) != 0:
            return False
    return True


@lru_cache(maxsize=None)
def smallest_irreducible(p: int, k: int) -> tuple:
    """Lex-smallest monic irreducible of degree k over GF(p)."""
    if (p, k) in DEFAULT_MODULI:
        return DEFAULT_MODULI[(p, k)]
    from itertools import product

    for tail in product(range(p), repeat=k):
        if tail[0] == 0:
            continue
        f = tail + (1,)
        if is_irreducible(f, p):
            return f
    raise FieldError(f"no irreducible of degree {k} over GF({p})")


class Field:
    """GF(p^k); p an odd prime, modulus verified irreducible at construction."""

    def __init__(self, p: int, k: int = 1, modulus: Optional[Iterable[int]] = None):
        if not _is_prime(p) or p < 3:
            raise FieldError(f"p must be an odd prime, got {p}")
        if k < 1:
            raise FieldError(f"extension degree must be >= 1, got {k}")
        self.p = p
        self.k = k
        self.q = p**k
        if modulus is None:
            modulus = smallest_irreducible(p, k)
        self.modulus = tuple(int(c) % p for c in modulus)
        if len(self.modulus) != k + 1 or self.modulus[k] != 1:
            raise FieldError(f"modulus must be monic of degree {k}")
        if not is_irreducible(self.modulus, p):
            raise FieldError(f"modulus {self.modulus} is reducible over GF({p})")
        self._add_table = None
        self._mul_table = None
        self._neg_table = None
        if k > 1:
            # row i: x^(k+i) mod modulus, as a k-vector; products of two
            # degree-<k polynomials need degrees up to 2k-2
            red = np.zeros((k - 1, k), dtype=np.int64)
            cur = [(-c) % p for c in self.modulus[:k]]
            red[0] = cur
            for i in range(1, k - 1):
                nxt = [0] + cur[:-1]
                top = cur[-1]
                if top:
                    for j in range(k):
                        nxt[j] = (nxt[j] + top * red[0][j]) % p
                red[i] = nxt
                cur = nxt
            self._red = red
            self._powbase = p ** np.arange(k, dtype=np.int64)
            if self.q <= 1024:
                codes = np.arange(self.q, dtype=np.int64)
                a, b = np.meshgrid(codes, codes, indexing="ij")
                self._add_table = self.undigits(self.digits(a) + self.digits(b))
                self._mul_table = self._mul_digits(a, b)
                self._neg_table = self.undigits(-self.digits(codes))

    # -- code <-> power-basis digits ------------------------------------

    def coords(self, a: int) -> tuple:
        """Little-endian power-basis coordinates of a code (the wire format)."""
        return tuple((a // self.p**i) % self.p for i in range(self.k))

    def from_coords(self, coords: Iterable[int]) -> int:
        cs = list(coords)
        if len(cs) != self.k:
            raise FieldError(f"expected {self.k} coordinates, got {len(cs)}")
        return sum((int(c) % self.p) * self.p**i for i, c in enumerate(cs))

    def digits(self, a: np.ndarray) -> np.ndarray:
        """Digit tensor of an array of codes, last axis length k."""
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self._powbase) % self.p

    def undigits(self, d: np.ndarray) -> np.ndarray:
        return (np.asarray(d, dtype=np.int64) % self.p) @ self._powbase

    # -- scalar arithmetic on codes ---------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        return int(self.add_arr(np.int64(a), np.int64(b)))

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return int(self.neg_arr(np.int64(a)))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        return int(self.mul_arr(np.int64(a), np.int64(b)))

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(q)")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        r, base = 1, a
        while e:
            if e & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            e >>= 1
        return r

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    # -- vectorized arithmetic on arrays of codes -------------------------

    def add_arr(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a + b) % self.p
        if self._add_table is not None:
            return self._add_table[a, b]
        return self.undigits(self.digits(a) + self.digits(b))

    def neg_arr(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.k == 1:
            return (-a) % self.p
        if self._neg_table is not None:
            return self._neg_table[a]
        return self.undigits(-self.digits(a))

    def sub_arr(self, a, b):
        return self.add_arr(a, self.neg_arr(b))

    def mul_arr(self, a, b):
        """Elementwise product with numpy broadcasting."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a * b) % self.p
        if self._mul_table is not None:
            return self._mul_table[a, b]
        return self._mul_digits(a, b)

    def _mul_digits(self, a, b):
        da, db = self.digits(a), self.digits(b)
        da, db = np.broadcast_arrays(da, db)
        k = self.k
        prod = np.zeros(da.shape[:-1] + (2 * k - 1,), dtype=np.int64)
        for i in range(k):
            for j in range(k):
                prod[..., i + j] += da[..., i] * db[..., j]
        prod %= self.p
        return self._reduce_digits(prod)

    def _reduce_digits(self, prod):
        k = self.k
        out = prod[..., :k].copy()
        for i in range(k - 1):
            c = prod[..., k + i]
            out += c[..., None] * self._red[i]
        out %= self.p
        return self.undigits(out)

    def pow_arr(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        if self.k == 1:
            # elementwise modular pow; p is tiny so this stays exact
            r = np.ones_like(a)
            base = a % self.p
            while e:
                if e & 1:
                    r = (r * base) % self.p
                base = (base * base) % self.p
                e >>= 1
            return r
        r = np.ones_like(a)
        base = a
        while e:
            if e & 1:
                r = self.mul_arr(r, base)
            base = self.mul_arr(base, base)
            e >>= 1
        return r

    def rand(self, rng: np.random.Generator, shape=()) -> np.ndarray:
        return rng.integers(0, self.q, size=shape, dtype=np.int64)

    # -- matrices ----------------------------------------------------------

    def zeros(self, *shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Exact matrix product; float64 BLAS is safe since entries < p and
        accumulated sums stay far below 2^53 at the dimensions used here."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.k == 1:
            c = np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
            return c % self.p
        da, db = self.digits(a), self.digits(b)
        k = self.k
        prod = np.zeros(a.shape[:-1] + b.shape[1:] + (2 * k - 1,), dtype=np.int64)
        for i in range(k):
            for j in range(k):
                t = np.rint(
                    da[..., i].astype(np.float64) @ db[..., j].astype(np.float64)
                ).astype(np.int64)
                prod[..., i + j] += t % self.p
        prod %= self.p
        return self._reduce_digits(prod)

    def mat_pow(self, a: np.ndarray, e: int) -> np.ndarray:
        n = a.shape[0]
        r = self.eye(n)
        base = a
        while e:
            if e & 1:
                r = self.matmul(r, base)
            base = self.matmul(base, base)
            e >>= 1
        return r

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and self.p == other.p
            and self.k == other.k
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"


# ---------------------------------------------------------------------------
# echelon forms

def rref(f: Field, m: np.ndarray):
    """Reduced row echelon form.  Returns (rref matrix, pivot column list)."""
    m = np.array(m, dtype=np.int64)
    if m.ndim != 2:
        raise ValueError("rref expects a 2-d matrix")
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        inv = f.inv(int(m[r, c]))
        m[r] = f.mul_arr(m[r], inv)
        other = np.nonzero(m[:, c])[0]
        other = other[other != r]
        if other.size:
            factors = m[other, c]
            m[other] = f.sub_arr(m[other], f.mul_arr(factors[:, None], m[r][None, :]))
        pivots.append(c)
        r += 1
    return m, pivots


def rank(f: Field, m: np.ndarray) -> int:
    return len(rref(f, m)[1])


def nullspace(f: Field, m: np.ndarray) -> np.ndarray:
    """Rows form a basis of the right kernel {x : m x = 0}."""
    m = np.asarray(m, dtype=np.int64)
    rows, cols = m.shape
    r, pivots = rref(f, m)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, c in enumerate(free):
        basis[i, c] = 1
        for j, pc in enumerate(pivots):
            basis[i, pc] = f.neg(int(r[j, c]))
    return basis


def solve(f: Field, m: np.ndarray, b: np.ndarray) -> Optional[np.ndarray]:
    """One solution x of m x = b, or None when the system is inconsistent."""
    m = np.asarray(m, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if b.ndim != 1 or b.shape[0] != m.shape[0]:
        raise ValueError("right-hand side length must equal the row count")
    aug = np.concatenate([m, b[:, None]], axis=1)
    r, pivots = rref(f, aug)
    cols = m.shape[1]
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for j, pc in enumerate(pivots):
        x[pc] = r[j, cols]
    return x


def inv_matrix(f: Field, m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("inverse needs a square matrix")
    aug = np.concatenate([np.asarray(m, dtype=np.int64), f.eye(n)], axis=1)
    r, pivots = rref(f, aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return r[:, n:]


def row_space_contains(f: Field, basis_rref: np.ndarray, v: np.ndarray) -> bool:
    """Membership test against a basis already in rref."""
    return not np.any(reduce_vector(f, basis_rref, v))


def reduce_vector(f: Field, basis_rref: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Residue of v after elimination by an rref basis."""
    v = np.array(v, dtype=np.int64)
    for row in basis_rref:
        nz = np.nonzero(row)[0]
        if nz.size == 0:
            continue
        c = nz[0]
        if v[c]:
            v = f.sub_arr(v, f.mul_arr(int(v[c]), row))
    return v


def coords_in_rowspace(f: Field, basis: np.ndarray, v: np.ndarray) -> Optional[np.ndarray]:
    """Coefficients x with x @ basis = v, or None if v is outside the span."""
    return solve(f, np.asarray(basis, dtype=np.int64).T, np.asarray(v, dtype=np.int64))


# ---------------------------------------------------------------------------
# field extension embeddings

def find_embedding(small: Field, big: Field) -> np.ndarray:
    """Code-translation table for the embedding GF(p^k) -> GF(p^K), k | K.

    Deterministic: the image of the power-basis generator is the smallest
    (in code order) root of the small field's modulus in the big field.
    """
    if small.p != big.p or big.k % small.k != 0:
        raise FieldError(f"no embedding {small} -> {big}")
    if small.k == 1:
        table = np.zeros(small.q, dtype=np.int64)
        for a in range(small.p):
            acc = 0
            for _ in range(a):
                acc = big.add(acc, 1)
            table[a] = acc
        return table
    root = None
    for cand in range(big.q):
        acc = 0
        for c in reversed(small.modulus):
            acc = big.add(big.mul(acc, cand), c % big.p)
        if acc == 0:
            root = cand
            break
    if root is None:
        raise FieldError(f"modulus of {small} has no root in {big}")
    powers = [1]
    for _ in range(1, small.k):
        powers.append(big.mul(powers[-1], root))
    table = np.zeros(small.q, dtype=np.int64)
    for a in range(small.q):
        acc = 0
        for i, c in enumerate(small.coords(a)):
            term = big.mul(int(c), powers[i])
            acc = big.add(acc, term)
        table[a] = acc
    return table


def extend_field(f: Field, degree: int) -> Field:
    """GF(p^(k*degree)) with the canonical stored modulus."""
    return Field(f.p, f.k * degree)
