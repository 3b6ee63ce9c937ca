import numpy as np
import pytest

from superkw.chargeom import chi_geometry, max_exponents
from superkw.classical import (
    CatalogError,
    baby_verma,
    catalog,
    is_regular_semisimple,
    kw_divisibility_check,
    lambda_set,
    zhao_check,
)
from superkw.env import ReducedAlgebra, regular_module
from superkw.lsa import LsaError, is_p_closed
from superkw.modules import composition_factors, validate_module


def vec(*vals):
    return np.array(vals, dtype=np.int64)


# ---------------------------------------------------------------------------
# catalog


def test_catalog_gl11_dims(gl11):
    assert gl11.algebra.superdim == (2, 2)
    assert gl11.algebra.validate() == []
    assert gl11.triangular.cartan.dim == 2
    assert gl11.triangular.n_plus.superdim == (0, 1)
    assert gl11.triangular.n_minus.superdim == (0, 1)
    # the odd coroot is the full supertrace direction
    (root,) = gl11.triangular.roots
    assert root.parity == 1
    assert np.array_equal(root.coroot, vec(1, 1, 0, 0))


def test_catalog_osp12_dims(osp12):
    assert osp12.algebra.superdim == (3, 2)
    assert osp12.algebra.validate() == []
    assert osp12.triangular.cartan.dim == 1
    assert osp12.triangular.n_minus.superdim == (1, 1)
    assert len(osp12.triangular.roots) == 2
    assert sorted(r.parity for r in osp12.triangular.roots) == [0, 1]


def test_catalog_sl2(sl2_p5):
    assert sl2_p5.algebra.superdim == (3, 0)
    assert sl2_p5.algebra.validate() == []


def test_catalog_gl21():
    ent = catalog("gl(2|1)", 3)
    assert ent.algebra.superdim == (5, 4)
    assert ent.algebra.validate() == []


def test_catalog_sl21():
    ent = catalog("sl(2|1)", 3)
    assert ent.algebra.superdim == (4, 4)
    assert ent.algebra.validate() == []


def test_catalog_sl11_rejected():
    with pytest.raises(CatalogError):
        catalog("sl(1|1)", 3)


def test_catalog_unknown_name():
    with pytest.raises(CatalogError):
        catalog("e8", 3)


def test_catalog_borels_p_closed(gl11, osp12):
    for ent in (gl11, osp12):
        assert is_p_closed(ent.algebra, ent.triangular.borel())


# ---------------------------------------------------------------------------
# weight sets


def test_lambda_set_chi0_gl11(gl11):
    rep = lambda_set(gl11.algebra, gl11.triangular, vec(0, 0))
    assert rep.expected == 9
    assert len(rep.weights) == 9
    assert rep.complete and rep.completion_degree is None


def test_lambda_set_typical_needs_cubic_extension(gl11):
    rep = lambda_set(gl11.algebra, gl11.triangular, vec(1, 1))
    assert rep.expected == 9
    assert len(rep.weights) == 0
    assert not rep.complete
    assert rep.completion_degree == 3


def test_lambda_set_osp12_gf9_complete():
    ent = catalog("osp(1|2)", 3, k=2)
    # chi(h) in the kernel of the relative trace: code 3 is the generator t
    rep = lambda_set(ent.algebra, ent.triangular, vec(3, 0, 0))
    assert rep.expected == 3
    assert rep.complete


# ---------------------------------------------------------------------------
# baby Verma modules


def test_baby_verma_gl11_dim2(gl11):
    ind = baby_verma(gl11.algebra, gl11.triangular, vec(0, 0), vec(1, 0))
    assert ind.module.dim == 2
    assert validate_module(ind.module) == []


def test_baby_verma_osp12_dim6(osp12):
    ind = baby_verma(osp12.algebra, osp12.triangular, vec(0, 0, 0), vec(0))
    assert ind.module.dim == 6  # 3^1 * 2^1
    assert validate_module(ind.module) == []


def test_baby_verma_sl2_dim5(sl2_p5):
    ind = baby_verma(sl2_p5.algebra, sl2_p5.triangular, vec(0, 0, 0), vec(1))
    assert ind.module.dim == 5
    assert validate_module(ind.module) == []


def test_baby_verma_rejects_bad_weight(gl11):
    with pytest.raises(LsaError):
        baby_verma(gl11.algebra, gl11.triangular, vec(1, 1), vec(0, 0))


def test_baby_verma_rejects_chi_on_nplus(gl11):
    g, tri = gl11.algebra, gl11.triangular
    # characters live on the even part only here, and n_plus is odd for
    # gl(1|1); use osp(1|2) where the even positive root exists
    ent = catalog("osp(1|2)", 3)
    with pytest.raises(LsaError):
        baby_verma(ent.algebra, ent.triangular, vec(0, 1, 0), vec(0))


def test_baby_verma_dim_formula_all_weights(gl11):
    g, tri = gl11.algebra, gl11.triangular
    for lam in lambda_set(g, tri, vec(0, 0)).weights:
        ind = baby_verma(g, tri, vec(0, 0), lam)
        assert ind.module.dim == 2


# ---------------------------------------------------------------------------
# regular semisimplicity and the published desk checks


def test_regular_semisimple_predicate(gl11, osp12):
    g, tri = gl11.algebra, gl11.triangular
    assert not is_regular_semisimple(g, tri, vec(0, 0))
    assert is_regular_semisimple(g, tri, vec(1, 1))
    assert not is_regular_semisimple(g, tri, vec(1, 2))  # kills the coroot
    g2, tri2 = osp12.algebra, osp12.triangular
    count = sum(
         1 for c in range(1, 3) if is_regular_semisimple(g2, tri2, vec(c, 0, 0))
    )
    assert count == 2  # both nonzero values work for osp(1|2) over GF(3)


def test_centralizer_is_cartan_at_regular_chi(osp12):
    # cross-check with the character geometry: z^chi = h
    g, tri = osp12.algebra, osp12.triangular
    geo = chi_geometry(g, vec(1, 0, 0))
    assert geo.centralizer == tri.cartan
    assert geo.exp_pair.even == tri.n_minus.superdim[0]
    assert geo.exp_pair.odd == tri.n_minus.superdim[1]


def test_zhao_check_gl11_typical(gl11):
    g, tri = gl11.algebra, gl11.triangular
    rep = zhao_check(g, tri, vec(1, 1), seed=0)
    assert rep.extension_degree == 3
    assert rep.weights_found == rep.weights_expected == 9
    assert rep.verma_dims == [2] * 9
    assert rep.all_verma_irreducible
    assert rep.lemma_bound_ok


def test_zhao_check_osp12_gf9():
    ent = catalog("osp(1|2)", 3, k=2)
    g, tri = ent.algebra, ent.triangular
    rep = zhao_check(g, tri, vec(3, 0, 0), seed=0)
    assert rep.extension_degree == 1
    assert rep.weights_found == 3
    assert rep.verma_dims == [6, 6, 6]
    assert rep.all_verma_irreducible
    assert rep.max_factor_dim == 6
    assert rep.lemma_bound_ok


def test_zhao_check_sl2_gf25():
    ent = catalog("sl(2)", 5, k=2)
    g, tri = ent.algebra, ent.triangular
    f = g.field
    # chi(h) nonzero in the kernel of the relative trace so the weights are
    # rational over GF(25)
    c = next(
        c for c in range(1, 25)
        if f.add(f.pow(c, 5), c) == 0
    )
    chi = vec(c, 0, 0)
    assert is_regular_semisimple(g, tri, chi)
    rep = zhao_check(g, tri, chi, seed=0)
    assert rep.verma_dims == [5] * 5
    assert rep.all_verma_irreducible
    assert rep.lemma_bound_ok


def test_kw_divisibility(gl11, osp12):
    # chi = 0: divisor 1
    assert kw_divisibility_check(gl11.algebra, vec(0, 0), [1, 2, 7])
    # typical gl(1|1): divisor 2
    rep = composition_factors(
        regular_module(ReducedAlgebra(gl11.algebra, vec(1, 0))).module, 0
    )
    assert kw_divisibility_check(gl11.algebra, vec(1, 0), rep.geometric_dims)
    assert not kw_divisibility_check(gl11.algebra, vec(1, 0), [3])


def test_mdim_matches_scan_corollary(gl11, osp12):
    # the maximum oracle factor dimension over all characters equals the
    # evaluated invariant for the small catalog members
    g = gl11.algebra
    best = 0
    for a in range(3):
        for b in range(3):
            rep = composition_factors(
                regular_module(ReducedAlgebra(g, vec(a, b))).module, 0
            )
            best = max(best, max(rep.geometric_dims))
    assert best == max_exponents(g).value(3) == 2


def test_mdim_scan_corollary_osp12(osp12):
    # over GF(3) the regular semisimple character attains the invariant: the
    # rational factors have dimension 18 with a cubic endomorphism field
    g = osp12.algebra
    best = 0
    for chi in (vec(1, 0, 0), vec(0, 0, 1), vec(0, 0, 0)):
        rep = composition_factors(
            regular_module(ReducedAlgebra(g, chi)).module, 0
        )
        best = max(best, max(rep.geometric_dims))
    assert best == max_exponents(g).value(3) == 6
