"""Irreducible-module engine for solvable restricted Lie superalgebras:
ideal descent with induction, one-dimensional base characters, the
equidimensionality probe, and polarization-induced modules.

The descent mirrors the effective content of the inductive construction:
find an abelian ideal on which the character geometry is nontrivial, pass to
its stabilizer, recurse, and induce.  Where the literal recipe does not
apply (the base weight has no solution over the working field, or no usable
ideal exists) the engine extends the field up to a cap, falls over to the
polarization route for completely solvable inputs, and finally to the brute
force oracle; every produced module is re-validated and its irreducibility
re-checked, so wrong answers cannot escape, only honest fallbacks.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield
from typing import List, Optional, Tuple

import numpy as np

from .chargeom import (
    BudgetExceeded,
    CharacterGeometry,
    SuperDim,
    check_chi,
    chi_geometry,
    polarization,
    restrict_chi,
)
from .env import ReducedAlgebra, character_module, induce, regular_module
from .gflin import Field, nullspace, solve as lin_solve
from .lsa import (
    LieSuperAlgebra,
    LsaError,
    NeedsFieldExtension,
    Subalgebra,
    Subspace,
    as_subalgebra,
    bracket_span,
    derived_series,
    derived_subalgebra,
    extend_scalars,
    intersect_spaces,
    is_completely_solvable,
    is_ideal,
    is_nilpotent_subalg,
    is_p_closed,
    is_solvable,
    one_dim_ideal_flag,
)
from .modules import (
    SuperModule,
    composition_factors,
    is_graded_irreducible,
    validate_module,
)

MAX_WEIGHT_SOLUTIONS = 4096


class ConstructionFailure(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# stabilizer of an ideal


def i_chi(g: LieSuperAlgebra, I: Subspace, chi) -> Subspace:
    """Stabilizer {X : chi([X, I]) = 0}; a subalgebra, p-closed when g is
    restricted.  It contains I precisely when chi kills [I, I]."""
    chi = check_chi(g, chi)
    if not is_ideal(g, I):
        raise LsaError("the stabilizer is defined for ideals only")
    f = g.field
    if I.dim == 0:
        return g.full_space()
    rows = []
    for b in I.basis:
        t = f.matmul(b[None, :], g.structure.transpose(1, 0, 2).reshape(g.n, -1))
        t = t.reshape(g.n, g.n)  # t[i, l] = sum_j c[i,j,l] b_j
        rows.append(f.matmul(t[:, : g.s_even], chi.reshape(-1, 1)).ravel())
    K = np.array(rows, dtype=np.int64)
    return Subspace(f, g.s_even, g.n, nullspace(f, K))


# ---------------------------------------------------------------------------
# weight equations: lambda(x)^p - lambda(x^[p]) = chi(x)^p plus linear pins


def solve_weight_equations(
    alg: LieSuperAlgebra,
    chi_h: np.ndarray,
    pins: Tuple[Tuple[np.ndarray, int], ...] = (),
    limit: int = MAX_WEIGHT_SOLUTIONS,
) -> List[np.ndarray]:
    """All functionals on the even part satisfying the p-compatibility
    equations and the given linear constraints, over the working field.

    The map lambda -> lambda(x)^p - lambda(x^[p]) is additive, so after
    expanding field elements in the power basis this is a linear system over
    the prime field; the full solution set is enumerated (capped).
    """
    if not alg.restricted:
        raise LsaError("weight equations need a p-operation")
    f = alg.field
    p, k, s = f.p, f.k, alg.s_even
    pins = tuple((np.asarray(v, dtype=np.int64), int(val)) for v, val in pins)
    if s == 0:
        for v, val in pins:
            if val != 0 and not np.any(v):
                return []
        return [np.zeros(0, dtype=np.int64)]

    def eval_map(lam: np.ndarray) -> List[int]:
        out = []
        for a in range(s):
            t1 = f.pow(int(lam[a]), p)
            t2 = 0
            for j in range(s):
                cj = int(alg.pmap[a][j])
                if cj:
                    t2 = f.add(t2, f.mul(cj, int(lam[j])))
            out.append(f.sub(t1, t2))
        for v, _ in pins:
            acc = 0
            for j in range(s):
                cj = int(v[j])
                if cj:
                    acc = f.add(acc, f.mul(cj, int(lam[j])))
            out.append(acc)
        return out

    rows_per = s + len(pins)
    cols = s * k
    M = np.zeros((rows_per * k, cols), dtype=np.int64)
    for col in range(cols):
        a, j = divmod(col, k)
        lam = np.zeros(s, dtype=np.int64)
        lam[a] = f.from_coords(tuple(1 if t == j else 0 for t in range(k)))
        vals = eval_map(lam)
        digits = []
        for v in vals:
            digits.extend(f.coords(v))
        M[:, col] = digits
    rhs_codes = [f.pow(int(chi_h[a]), p) for a in range(s)] + [val for _, val in pins]
    b = []
    for v in rhs_codes:
        b.extend(f.coords(v))
    b = np.array(b, dtype=np.int64)

    prime = Field(p)
    x0 = lin_solve(prime, M, b)
    if x0 is None:
        return []
    ker = nullspace(prime, M)
    if p ** ker.shape[0] > limit:
        raise BudgetExceeded(
            f"weight solution set has {p ** ker.shape[0]} elements, cap is {limit}")
    from itertools import product as iproduct

    sols = []
    for coeffs in iproduct(range(p), repeat=ker.shape[0]):
        u = x0.copy()
        for c, row in zip(coeffs, ker):
            u = (u + c * row) % p
        lam = np.array(
            [f.from_coords(tuple(u[a * k : (a + 1) * k])) for a in range(s)],
            dtype=np.int64,
        )
        sols.append(lam)
    sols.sort(key=lambda l: tuple(int(c) for c in l))
    return sols


def one_dim_weights(
    sub: Subalgebra, chi_sub: np.ndarray, pins=()
) -> List[np.ndarray]:
    """Weights of one-dimensional modules: kill the even part of the derived
    subalgebra and satisfy the p-compatibility equations."""
    alg = sub.alg
    der = derived_subalgebra(alg)
    all_pins = [(row[: alg.s_even], 0) for row in der.even_rows()]
    all_pins.extend(pins)
    return solve_weight_equations(alg, chi_sub, tuple(all_pins))


# ---------------------------------------------------------------------------
# descent trace


@dataclass
class DescentStep:
    ideal_dim: tuple
    stabilizer_dim: tuple
    codims: tuple         # (even codim, odd codim) of the induction
    weight_on_ideal: Optional[np.ndarray]  # values on the ideal's even rows


@dataclass
class DescentTrace:
    steps: List[DescentStep] = dfield(default_factory=list)
    terminal: str = ""            # "base" | "polarization" | "oracle"
    terminal_weight: Optional[np.ndarray] = None
    extension_degree: int = 1
    fallback: bool = False

    def predicted_dim(self, p: int, base_dim: int) -> int:
        d = base_dim
        for st in self.steps:
            d *= p ** st.codims[0] * 2 ** st.codims[1]
        return d


# ---------------------------------------------------------------------------
# the constructive engine


def _abelian_ideal_candidates(g: LieSuperAlgebra) -> List[Subspace]:
    """Deterministically ordered abelian ideals to try in the descent."""
    cands: List[Subspace] = []
    seen = set()

    def push(S: Subspace):
        if S.dim == 0:
            return
        keyb = (S.dim, S.basis.tobytes())
        if keyb in seen:
            return
        if not is_ideal(g, S):
            return
        if bracket_span(g, S, S).dim != 0:
            return
        seen.add(keyb)
        cands.append(S)

    for term in derived_series(g)[1:]:
        push(term)
    try:
        flag = one_dim_ideal_flag(g)
    except (NeedsFieldExtension, LsaError):
        flag = []
    for member in flag:
        push(member)
        push(intersect_spaces(member, derived_subalgebra(g)))
    cands.sort(key=lambda S: (S.dim, S.basis.tobytes()))
    return cands


def _chi_value(g: LieSuperAlgebra, chi: np.ndarray, v: np.ndarray) -> int:
    return int(g.field.matmul(v[None, : g.s_even], chi.reshape(-1, 1)).ravel()[0])


def _module_is_eigen(g, chi, I: Subspace, S: SuperModule, sub: Subalgebra, mu_vals) -> bool:
    """Whether every vector of S is a mu-eigenvector for the ideal."""
    f = g.field
    for r, row in enumerate(I.basis):
        coords = sub.space.coords_of(row)
        if coords is None:
            return False
        op = S.rho(coords)
        expect = f.mul_arr(int(mu_vals[r]), f.eye(S.dim))
        if not np.array_equal(op, expect):
            return False
    return True


def construct_irreducible(
    g: LieSuperAlgebra,
    chi,
    seed: int = 0,
    ext_cap: int = 4,
    budget: int = 4000,
) -> Tuple[SuperModule, DescentTrace]:
    """A graded-irreducible module over U_chi(g) for solvable restricted g,
    with the construction trace.  The result may live over a field
    extension (recorded in the trace)."""
    chi = check_chi(g, chi)
    if not is_solvable(g) or not g.restricted:
        raise LsaError("the engine handles solvable restricted algebras")
    base_field = g.field
    last_exc: Optional[Exception] = None
    degree = 1
    while base_field.k * degree <= ext_cap:
        if degree == 1:
            gx, chix = g, chi
        else:
            big = Field(base_field.p, base_field.k * degree)
            gx, table = extend_scalars(g, big)
            chix = table[chi]
        try:
            M, trace = _construct(gx, chix, seed, budget, pins=())
            trace.extension_degree = degree
            return M, trace
        except (NeedsFieldExtension, ConstructionFailure) as exc:
            last_exc = exc
            degree += 1
    # out of extensions: fall back to the oracle over the base field
    try:
        return _oracle_fallback(g, chi, seed, budget)
    except BudgetExceeded:
        raise ConstructionFailure(
            f"constructive routes exhausted ({last_exc}) and the oracle "
            "budget is insufficient")


def _construct(g, chi, seed, budget, pins) -> Tuple[SuperModule, DescentTrace]:
    f = g.field
    derived = derived_subalgebra(g)
    chi_kills_derived = all(
        _chi_value(g, chi, row) == 0 for row in derived.even_rows()
    )
    whole = as_subalgebra(g, g.full_space())
    if chi_kills_derived and is_nilpotent_subalg(g, derived):
        sols = one_dim_weights(whole, chi, pins=_pins_to_sub(whole, pins))
        if not sols:
            raise NeedsFieldExtension("no one-dimensional weight over the working field")
        lam = sols[0]
        S = character_module(whole, chi, lam)
        bad = validate_module(S)
        if bad:
            raise ConstructionFailure(f"base module failed validation: {bad[0]}")
        trace = DescentTrace(terminal="base", terminal_weight=lam)
        return S, trace

    pending_extension = None
    for I in _abelian_ideal_candidates(g):
        gram_nonzero = any(
            _chi_value(g, chi, g.bracket(g.basis_vector(j), row))
            for j in range(g.n)
            for row in I.basis
        )
        if not gram_nonzero:
            continue
        # admissible eigenvalue functionals on the ideal
        sub_I = as_subalgebra(g, I)
        chi_I = restrict_chi(chi, sub_I)
        mu_list = []
        chi_restr_ok = all(
            _chi_value(g, chi, g.p_power(row)) == 0 for row in I.even_rows()
        )
        if chi_restr_ok:
            mu_list.append(chi_I)
        if sub_I.alg.restricted:
            try:
                for lam in solve_weight_equations(sub_I.alg, chi_I):
                    if not any(np.array_equal(lam, m) for m in mu_list):
                        mu_list.append(lam)
            except BudgetExceeded:
                pass
        for mu in mu_list:
            # mu as values on the rows of I (odd rows get zero)
            mu_vals = np.zeros(I.dim, dtype=np.int64)
            s_I = sub_I.alg.s_even
            mu_vals[:s_I] = mu
            # full functional on I in ambient coordinates, for the stabilizer
            stab = _mu_stabilizer(g, I, mu_vals)
            if stab.dim == g.n:
                continue
            h = as_subalgebra(g, stab)
            if not h.alg.restricted:
                continue
            chi_h = restrict_chi(chi, h)
            new_pins = []
            ok = True
            for r, row in enumerate(I.basis):
                c = stab.coords_of(row)
                if c is None:
                    ok = False
                    break
                if np.any(c[h.alg.s_even :]):
                    continue  # odd row; acts by zero on a one-dim base anyway
                new_pins.append((c[: h.alg.s_even], int(mu_vals[r])))
            if not ok:
                continue
            carried = _pins_to_sub(h, pins)
            if carried is None:
                continue
            try:
                S, subtrace = _construct(
                    h.alg, chi_h, seed, budget, pins=tuple(new_pins) + carried
                )
            except ConstructionFailure:
                continue
            except NeedsFieldExtension as exc:
                pending_extension = exc
                continue
            if not _module_is_eigen(g, chi, I, S, h, mu_vals):
                continue
            try:
                ind = induce(g, chi, h, S, budget=budget)
            except BudgetExceeded:
                continue
            M = ind.module
            if validate_module(M):
                continue
            if not is_graded_irreducible(M, seed):
                continue
            se, so = stab.superdim
            step = DescentStep(
                ideal_dim=I.superdim,
                stabilizer_dim=stab.superdim,
                codims=(g.s_even - se, g.t_odd - so),
                weight_on_ideal=mu_vals,
            )
            trace = subtrace
            trace.steps.insert(0, step)
            return M, trace

    # polarization route for completely solvable inputs
    if is_completely_solvable(g):
        try:
            M, lam = _polarization_module_inner(g, chi, seed, budget)
            if not validate_module(M) and is_graded_irreducible(M, seed):
                trace = DescentTrace(terminal="polarization", terminal_weight=lam)
                return M, trace
        except NeedsFieldExtension as exc:
            pending_extension = exc
        except (ConstructionFailure, LsaError):
            pass

    if pending_extension is not None:
        raise pending_extension
    raise ConstructionFailure("no constructive route applied over this field")


def _pins_to_sub(h: Subalgebra, pins):
    """Translate pinned linear conditions into subalgebra coordinates;
    None when a pinned vector falls outside the subalgebra."""
    out = []
    for vec, val in pins:
        # pins are stored in the coordinates of h's parent
        amb = np.zeros(h.parent.n, dtype=np.int64)
        amb[: len(vec)] = vec
        c = h.space.coords_of(amb)
        if c is None:
            return None
        if np.any(c[h.alg.s_even :]):
            continue
        out.append((c[: h.alg.s_even], val))
    return tuple(out)


def _mu_stabilizer(g: LieSuperAlgebra, I: Subspace, mu_vals: np.ndarray) -> Subspace:
    """{X : mu([X, I]) = 0} for a functional given on the rows of I."""
    f = g.field
    rows = []
    for j in range(g.n):
        ej = g.basis_vector(j)
        vals = []
        for row in I.basis:
            w = g.bracket(ej, row)
            c = I.coords_of(w)
            if c is None:
                raise LsaError("ideal is not ad-invariant")
            acc = 0
            for r in range(I.dim):
                cr = int(c[r])
                if cr:
                    acc = f.add(acc, f.mul(cr, int(mu_vals[r])))
            vals.append(acc)
        rows.append(vals)
    K = np.array(rows, dtype=np.int64).T  # conditions (rows of I) x generators
    if K.size == 0:
        return g.full_space()
    return Subspace(f, g.s_even, g.n, nullspace(f, K))


def _oracle_fallback(g, chi, seed, budget) -> Tuple[SuperModule, DescentTrace]:
    ralg = ReducedAlgebra(g, chi)
    reg = regular_module(ralg, budget=budget)
    best = None
    stack = [reg.module]
    from .modules import _find_proper_submodule, quotient_module, submodule_module

    while stack:
        cur = stack.pop()
        if cur.dim == 0:
            continue
        W = _find_proper_submodule(cur, seed)
        if W is None:
            if best is None or cur.dim > best.dim:
                best = cur
            continue
        stack.append(submodule_module(cur, W))
        stack.append(quotient_module(cur, W))
    trace = DescentTrace(terminal="oracle", fallback=True)
    return best, trace


# ---------------------------------------------------------------------------
# probes


def verify_dim_form(dims, p: int) -> bool:
    """Every dimension factors as p^m * 2^n."""
    for d in dims:
        d = int(d)
        if d <= 0:
            return False
        while d % p == 0:
            d //= p
        while d % 2 == 0:
            d //= 2
        if d != 1:
            return False
    return True


@dataclass
class EquidimReport:
    predicted_exponents: SuperDim
    predicted_dim: int
    factor_dims: List[int]           # raw dimensions over the working field
    geometric_dims: List[int]        # divided by even endomorphism degree
    equidimensional: bool
    agrees_with_prediction: bool
    dim_form_ok: bool


def equidim_probe(g: LieSuperAlgebra, chi, seed: int = 0, budget: int = 4000) -> EquidimReport:
    """Compare the character-geometry prediction with the oracle's factors.

    This is a report, never an assertion: the prediction can fail over a
    non-closed field or for characters whose p-center behaviour depends on
    the choice of p-operation, and the point of the probe is to record that
    faithfully."""
    chi = check_chi(g, chi)
    geo = chi_geometry(g, chi)
    ralg = ReducedAlgebra(g, chi)
    reg = regular_module(ralg, budget=budget)
    rep = composition_factors(reg.module, seed)
    predicted = geo.value(g.field.p)
    gd = rep.geometric_dims
    return EquidimReport(
        predicted_exponents=geo.exp_pair,
        predicted_dim=predicted,
        factor_dims=rep.dims,
        geometric_dims=gd,
        equidimensional=len(set(gd)) <= 1,
        agrees_with_prediction=all(d == predicted for d in gd),
        dim_form_ok=verify_dim_form(gd, g.field.p),
    )


def _polarization_module_inner(g, chi, seed, budget):
    h_space = polarization(g, chi)
    if g.restricted and not is_p_closed(g, h_space):
        raise ConstructionFailure(
            "polarization subalgebra is not p-closed; reported rather than assumed")
    sub = as_subalgebra(g, h_space)
    chi_h = restrict_chi(chi, sub)
    sols = one_dim_weights(sub, chi_h)
    if not sols:
        raise NeedsFieldExtension(
            "no weight for the polarization over the working field")
    lam = sols[0]
    S = character_module(sub, chi_h, lam)
    bad = validate_module(S)
    if bad:
        raise ConstructionFailure(f"polarization base character invalid: {bad[0]}")
    ind = induce(g, chi, sub, S, budget=budget)
    return ind.module, lam


@dataclass
class PolarizationModuleReport:
    module: SuperModule
    weight: np.ndarray
    irreducible: bool
    extension_degree: int
    polarization_superdim: tuple


def polarization_module(
    g: LieSuperAlgebra, chi, seed: int = 0, ext_cap: int = 4, budget: int = 4000
) -> PolarizationModuleReport:
    """Induce a one-dimensional character from a polarization; extends the
    base field when the weight equations demand it."""
    chi = check_chi(g, chi)
    if not is_completely_solvable(g):
        raise LsaError("polarization modules need a completely solvable algebra")
    base_field = g.field
    degree = 1
    last = None
    while base_field.k * degree <= ext_cap:
        if degree == 1:
            gx, chix = g, chi
        else:
            big = Field(base_field.p, base_field.k * degree)
            gx, table = extend_scalars(g, big)
            chix = table[chi]
        try:
            M, lam = _polarization_module_inner(gx, chix, seed, budget)
            h_sd = SuperDim(*polarization(gx, chix).superdim)
            return PolarizationModuleReport(
                module=M,
                weight=lam,
                irreducible=is_graded_irreducible(M, seed),
                extension_degree=degree,
                polarization_superdim=h_sd,
            )
        except NeedsFieldExtension as exc:
            last = exc
            degree += 1
    raise ConstructionFailure(f"field extension cap reached: {last}")
