import random
from math import prod

import numpy as np
import pytest
import sympy.combinatorics as sc

from amalgam_rep.errors import ClosureExceedsCap, OrbitNotInvariant
from amalgam_rep.fields import PrimeField
from amalgam_rep.groups import kernels
from amalgam_rep.groups.closure import (
    bfs_closure,
    elementary_abelian_2_rank,
    intersection,
    is_subgroup_member,
    verify_presentation_gl23,
)
from amalgam_rep.groups.domain import Domain
from amalgam_rep.groups.formulas import group_order_formula
from amalgam_rep.groups.orbits import orbit_partition, projective_orbits
from amalgam_rep.groups.perm import PermGroup, perm_image, perm_mul, stabilizer_order, transitivity_tower
from amalgam_rep.groups.schreier import matrix_group_order
from amalgam_rep.linalg import MatrixR
from amalgam_rep.reduction import make_context
from amalgam_rep.suites import m11_certificate, reduced_generators


@pytest.fixture(scope="module")
def closures(gens):
    a, b, c, d = (gens[k] for k in "abcd")
    return {"D": bfs_closure([a, b]), "K": bfs_closure([a, b, d]), "H": bfs_closure([b, c])}


def test_closure_sizes(closures):
    assert len(closures["D"]) == 8
    assert len(closures["K"]) == 24
    assert len(closures["H"]) == 48


def test_closure_cap(gens):
    with pytest.raises(ClosureExceedsCap):
        bfs_closure([gens["b"], gens["c"]], cap=20)
    with pytest.raises(ClosureExceedsCap):
        bfs_closure([gens["c"], gens["d"]])  # <c,d> is not one of the finite vertex groups


def test_membership_and_intersection(gens, closures):
    H, K, D = closures["H"], closures["K"], closures["D"]
    assert not is_subgroup_member(gens["d"], H)
    assert is_subgroup_member(gens["a"], H)
    meet = intersection(H, K)
    assert meet.keys() == D.keys() and len(meet) == 8
    assert intersection(H, H).keys() == H.keys()


def test_determinants_in_closures(closures):
    for g in closures.values():
        assert all(m.det().is_rational and m.det() == 1 for m in g)


def test_presentation(gens):
    b, c = gens["b"], gens["c"]
    res = verify_presentation_gl23(b, c)
    assert res.ok and res.order == 48 and res.noncentral_involution is not None
    degenerate = verify_presentation_gl23(MatrixR.identity(), c)
    assert dict(degenerate.relations)["b^2"] and not degenerate.ok
    # c -> c^2: every relation is still evaluated; (c^2)^2 = c, so the
    # generated group is unchanged and the check passes with order 48
    squared = verify_presentation_gl23(b, c @ c)
    assert dict(squared.relations)["c^3"]
    assert "(bc)^8" in dict(squared.relations)
    assert squared.order == 48 and squared.ok
    # a genuinely wrong second generator: relations fail, witnesses name them
    wrong = verify_presentation_gl23(b, gens["d"])
    assert not wrong.ok
    assert "(bc)^8: FAILS" in wrong.witnesses()


def test_order_formula():
    assert group_order_formula("SL", 2, 3).value == 24
    assert group_order_formula("SL", 5, 3).value == 237783237120
    assert group_order_formula("SU", 5, 5).value == 5 ** 10 * (5 ** 2 - 1) * (5 ** 3 + 1) * (5 ** 4 - 1) * (5 ** 5 + 1)
    with pytest.raises(ValueError):
        group_order_formula("SL", 5, 6)


def test_sl23_closure_matches_formula():
    F = PrimeField(3)
    s = np.array([[1, 1], [0, 1]])
    t = np.array([[1, 0], [1, 1]])
    assert len(bfs_closure([s, t], field=F)) == group_order_formula("SL", 2, 3).value
    res = matrix_group_order([s, t], F, strategy="deterministic")
    assert res.order == 24


def _small_subgroups(p):
    ctx = make_context(p)
    gens_all = dict(zip("abcdf", reduced_generators(ctx, "abcdf")))
    F = ctx.field
    words = dict(gens_all)
    words["bc"] = F.mat_mul(gens_all["b"], gens_all["c"])
    words["ad"] = F.mat_mul(gens_all["a"], gens_all["d"])
    words["af"] = F.mat_mul(gens_all["a"], gens_all["f"])
    names = sorted(words)
    found = []
    for r in (1, 2):
        for i in range(len(names)):
            for j in range(i, len(names)) if r == 2 else [i]:
                sel = sorted({names[i], names[j]})
                try:
                    g = bfs_closure([words[n] for n in sel], 100, field=F)
                except ClosureExceedsCap:
                    continue
                found.append((sel, [words[n] for n in sel], len(g)))
    return F, found


@pytest.mark.parametrize("p", [3, 5, 11])
def test_schreier_sims_matches_bfs(p):
    F, found = _small_subgroups(p)
    assert len(found) >= 10
    seen = set()
    for sel, mats, size in found:
        for strategy in ("deterministic", "auto"):
            res = matrix_group_order(mats, F, strategy=strategy, domain="auto", seed=7)
            assert res.order == size, (sel, strategy)
        proj = matrix_group_order(mats, F, domain="projective", strategy="deterministic")
        assert proj.order == size, sel
        seen.add(size)
    assert {2, 3, 4, 5, 8, 24, 48} <= seen


@pytest.mark.parametrize("p", [3, 5, 11])
def test_order_equals_closure_for_vertex_groups(gens, p):
    ctx = make_context(p)
    red = {k: ctx.reduce_matrix(m) for k, m in gens.items()}
    for word, size in (("ab", 8), ("abd", 24), ("bc", 48)):
        mats = [red[k] for k in word]
        assert matrix_group_order(mats, ctx.field, strategy="deterministic").order == size
        assert all(ctx.field.mat_det(m) == 1 for m in bfs_closure(mats, field=ctx.field))


@pytest.mark.parametrize("ideal", ["plus", "minus"])
def test_l3_order(ideal):
    ctx = make_context(3, ideal)
    mats = reduced_generators(ctx)
    res = matrix_group_order(mats, ctx.field, strategy="deterministic")
    assert res.order == 7920
    assert group_order_formula("SL", 5, 3).value % res.order == 0
    assert prod(res.chain.orbit_sizes) == 7920


def test_orbit_partition_examples():
    ctx = make_context(3, "minus")
    assert sorted(orbit_partition(reduced_generators(ctx), ctx.field)) == [11, 110]
    assert orbit_partition([ctx.field.identity()], ctx.field) == [1] * 121
    plus = make_context(3, "plus")
    sizes = orbit_partition(reduced_generators(plus), plus.field)
    assert sum(sizes) == 121
    assert sorted(orbit_partition(reduced_generators(plus), plus.field, dual=True)) == [11, 110]


def test_orbit_partition_p11_transitive():
    ctx = make_context(11)
    assert orbit_partition(reduced_generators(ctx), ctx.field) == [(11 ** 5 - 1) // 10] == [16105]


def test_orbit_partition_sums_inert():
    ctx = make_context(5)
    sizes = orbit_partition(reduced_generators(ctx), ctx.field)
    assert sum(sizes) == (25 ** 5 - 1) // 24


def test_transitivity_tower_examples():
    s3 = PermGroup(3, ((1, 0, 2), (1, 2, 0)))
    assert s3.order == 6
    assert transitivity_tower(s3) == [3, 2]
    triv = PermGroup(11, (tuple(range(11)),))
    assert transitivity_tower(triv) == [1]
    assert triv.order == 1


def test_transitivity_tower_properties():
    rng = random.Random(0)
    for _ in range(10):
        n = rng.randint(4, 9)
        gens = [tuple(rng.sample(range(n), n)) for _ in range(2)]
        g = PermGroup(n, gens)
        tower = transitivity_tower(g)
        assert all(x > y for x, y in zip(tower, tower[1:]))
        assert g.order % prod(tower) == 0
        assert g.order == sc.PermutationGroup([sc.Permutation(list(p)) for p in gens]).order()


@pytest.mark.parametrize("ideal", ["plus", "minus"])
def test_m11_certificate(ideal):
    cert = m11_certificate(make_context(3, ideal))
    assert cert["perm_order"] == 7920
    assert cert["tower"] == [11, 10, 9, 8]
    assert cert["final_stabilizer"] == 1
    assert cert["transitive"]
    assert cert["perm110_order"] == 7920
    assert cert["source"] == ("points" if ideal == "minus" else "hyperplanes")


def test_m11_order_against_sympy():
    ctx = make_context(3, "minus")
    mats = reduced_generators(ctx)
    orbit = next(o for o in projective_orbits(mats, ctx.field) if o.size == 11)
    img = perm_image(mats, Domain(ctx.field, "projective"), orbit)
    sym = sc.PermutationGroup([sc.Permutation(list(p)) for p in img.gens])
    assert sym.order() == img.order == 7920
    assert sym.is_transitive()
    assert stabilizer_order(img, [0, 1, 2, 3]) == 1


def test_perm_image_is_homomorphism():
    ctx = make_context(3, "minus")
    F = ctx.field
    mats = reduced_generators(ctx)
    dom = Domain(F, "projective")
    orbit = next(o for o in projective_orbits(mats, F) if o.size == 110)
    img = perm_image(mats, dom, orbit)
    rng = random.Random(0)
    for _ in range(20):
        idx = [rng.randrange(4) for _ in range(rng.randint(2, 7))]
        m, p = F.identity(), tuple(range(img.degree))
        for i in idx:
            m, p = F.mat_mul(m, mats[i]), perm_mul(p, img.gens[i])
        assert perm_image([m], dom, orbit).gens[0] == p
    ident = perm_image([F.identity()], dom, orbit)
    assert ident.gens[0] == tuple(range(110))


def test_perm_image_rejects_non_invariant():
    ctx = make_context(3, "minus")
    mats = reduced_generators(ctx)
    with pytest.raises(OrbitNotInvariant):
        perm_image(mats, Domain(ctx.field, "projective"), [0, 1, 2])


def test_elementary_abelian_rank():
    ctx = make_context(3)
    red = dict(zip("abcdf", reduced_generators(ctx, "abcdf")))
    g = bfs_closure([red["b"], red["f"]], field=ctx.field)
    assert len(g) == 80
    assert elementary_abelian_2_rank(g) == 4
    assert elementary_abelian_2_rank(bfs_closure([ctx.field.identity()], field=ctx.field)) == 0
    assert elementary_abelian_2_rank(bfs_closure([red["a"], red["b"]], field=ctx.field)) == 2


def test_signed_permutation_oracle_for_bf(gens):
    # b is diagonal of signs, f a 5-cycle: <b,f> = (signs of even weight) x C5
    b, f = gens["b"], gens["f"]
    for i in range(5):
        for j in range(5):
            assert (b[i, j] != 0) == (i == j)
    assert len(bfs_closure([b, f])) == 16 * 5


@pytest.mark.skipif("compiled" not in kernels.BACKENDS, reason="extension not built")
@pytest.mark.parametrize("p,kind", [(3, "vectors"), (3, "projective"), (5, "projective"), (11, "projective")])
def test_backends_agree(p, kind):
    ctx = make_context(p)
    mats = reduced_generators(ctx)
    dom = Domain(ctx.field, kind)
    start = dom.basis_point(0)
    out = {}
    for name in ("compiled", "python"):
        kernels.use_backend(name)
        try:
            pts = dom.all_points()[:5000]
            out[name] = (dom.orbit(mats, start), [dom.apply(m, pts) for m in mats],
                         [dom.first_moved(m) for m in mats])
        finally:
            kernels.use_backend("compiled")
    (o1, a1, f1), (o2, a2, f2) = out["compiled"], out["python"]
    assert np.array_equal(o1, o2)
    assert all(np.array_equal(x, y) for x, y in zip(a1, a2))
    assert f1 == f2


def test_python_backend_order():
    prev = kernels.backend_name()
    kernels.use_backend("python")
    try:
        ctx = make_context(3, "minus")
        assert matrix_group_order(reduced_generators(ctx), ctx.field).order == 7920
    finally:
        kernels.use_backend(prev)


def test_domain_encode_decode():
    F = make_context(5).field
    for kind in ("vectors", "projective"):
        dom = Domain(F, kind)
        rng = random.Random(1)
        lo, hi = dom.point_range()
        for _ in range(200):
            x = rng.randrange(lo, hi)
            assert dom.encode(dom.decode(x)) == x
