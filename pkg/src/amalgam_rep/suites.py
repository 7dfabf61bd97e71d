"""The verification suites behind the command-line interface."""

from __future__ import annotations

import random
from typing import Literal

import numpy as np

from .fields import legendre_minus_two
from .groups.closure import (
    bfs_closure,
    elementary_abelian_2_rank,
    intersection,
    verify_presentation_gl23,
)
from .groups.formulas import group_order_formula
from .groups.orbits import contragredient, projective_orbits
from .groups.perm import perm_image, stabilizer_order, tower_with_base
from .groups.domain import Domain
from .groups.schreier import DEFAULT_MAX_MEM, matrix_group_order
from .linalg import (
    GENERATOR_NAMES,
    MatrixR,
    builtin_generators,
    char_poly,
    element_order,
    is_self_reciprocal,
    CharPoly,
)
from .reduction import ReductionContext, check_unitary_form, make_context
from .report import Skip, VerificationReport
from .ring import ONE, OMEGA

EXPECTED_ORDERS = {"a": 4, "b": 2, "c": 3, "d": 3, "bc": 8, "ad": 2}
M11_ORDER = 7920
M11_TOWER = [11, 10, 9, 8]

REF_GENS = "representation: generator matrices a, b, c, d, f"
REF_UNITARY = "representation: unitary over Z[1/sqrt(-2)], image in SU(5)"
REF_ORDERS = "representation: a order 4, b order 2, c and d order 3, bc order 8, ad order 2"
REF_PRES = "representation: <b,c | b^2 = c^3 = (bc)^8 = [b,(bc)^4] = [c,(bc)^4] = 1> = GL(2,3)"
REF_H = "representation: H = <b,c> ~ GL(2,3)"
REF_K = "representation: K = <a,b,d> ~ S4"
REF_D8 = "representation: H meet K = <a,b> dihedral of order 8"
REF_A = "representation: a = (c^-1 b c^-1)^2"
REF_NOT_SUB = "representation: K not contained in H"
REF_CENTRAL = "representation: (bc)^4 commutes with b and c"
REF_SPECTRUM = "spectrum: bc has eigenvalues -1, i, -i, z, z^3 (z a primitive 8th root of 1); not inverse-closed"
REF_RES = "mod p: -2 is a square mod p iff p = 1, 3 mod 8"
REF_L3 = "mod 3: L_3 ~ M11"
REF_SL = "mod p: L_p = SL(5,p) for p = 1, 3 mod 8, p > 3"
REF_SU = "mod p: L_p = SU(5,p) for p = 5, 7 mod 8"
REF_ORBITS = "mod 3: orbits of length 11 and 110 on 1-spaces mod (1+sqrt(-2))"
REF_EA8 = "mod 3: L_3 has no elementary abelian subgroup of order 8"
REF_BF = "mod 3: <b,f> has an elementary abelian subgroup of order 16"


def _entry_witness(m: MatrixR) -> str:
    eye = MatrixR.identity(m.n)
    for i in range(m.n):
        for j in range(m.n):
            if m[i, j] != eye[i, j]:
                return f"entry ({i + 1},{j + 1}) = {m[i, j]}"
    return ""


# --- exact layer -------------------------------------------------------------


def verify_exact(gens: dict[str, MatrixR] | None = None, *, cap: int = 10_000,
                 seed: int = 0) -> VerificationReport:
    gens = dict(gens or builtin_generators())
    missing = [n for n in GENERATOR_NAMES if n not in gens]
    if missing:
        raise ValueError(f"generator file lacks {', '.join(missing)}")
    a, b, c, d = (gens[k] for k in "abcd")
    rep = VerificationReport("verify exact", seed)

    for name in GENERATOR_NAMES:
        m = gens[name]

        def unitary(m=m):
            prod_ = m @ m.adjoint()
            ok = prod_.is_identity()
            return ok, "m m* = I" if ok else "m m* != I at " + _entry_witness(prod_)

        def det_one(m=m):
            det = m.det()
            return det == ONE, f"det = {det}"

        rep.run(f"exact.unitary.{name}", REF_UNITARY, unitary)
        rep.run(f"exact.det.{name}", REF_UNITARY, det_one)

    words = {"a": a, "b": b, "c": c, "d": d, "bc": b @ c, "ad": a @ d}
    for name, want in EXPECTED_ORDERS.items():
        def order(m=words[name], want=want):
            got = element_order(m)
            return got == want, f"order {got}, expected {want}"

        rep.run(f"exact.order.{name}", REF_ORDERS, order)

    def presentation():
        res = verify_presentation_gl23(b, c)
        return res.ok, "; ".join(res.witnesses())

    rep.run("exact.presentation.gl23", REF_PRES, presentation)

    closures = {}

    def closure(name, mats, want):
        def body():
            g = bfs_closure(mats, cap)
            closures[name] = g
            return len(g) == want, f"order {len(g)}, expected {want}"
        return body

    rep.run("exact.closure.ab", REF_D8, closure("D", [a, b], 8))
    rep.run("exact.closure.abd", REF_K, closure("K", [a, b, d], 24))
    rep.run("exact.closure.bc", REF_H, closure("H", [b, c], 48))

    def a_identity():
        ci = c.adjoint()
        w = (ci @ b @ ci) ** 2
        if w == a:
            return True, ""
        rel = "a^-1" if w == a.adjoint() else "neither a nor a^-1"
        return False, f"(c^-1 b c^-1)^2 = {rel}; (c b c)^2 == a is {(c @ b @ c) ** 2 == a}"

    rep.run("exact.identity.a_eq_(c^-1bc^-1)^2", REF_A, a_identity)

    def a_in_h():
        ok = (c @ b @ c) ** 2 == a
        return ok, "(c b c)^2 == a" if ok else "(c b c)^2 != a"

    rep.run("exact.identity.a_eq_(cbc)^2", REF_A, a_in_h)

    def d_not_in_h():
        if "H" not in closures:
            raise RuntimeError("closure of <b,c> unavailable")
        inside = d in closures["H"]
        return not inside, "d lies in <b,c>" if inside else f"d outside <b,c> (|<b,c>| = {len(closures['H'])})"

    rep.run("exact.membership.d_not_in_H", REF_NOT_SUB, d_not_in_h)

    def meet():
        if not {"H", "K", "D"} <= closures.keys():
            raise RuntimeError("closures unavailable")
        inter = intersection(closures["H"], closures["K"])
        same = inter.keys() == closures["D"].keys()
        return len(inter) == 8 and same, f"|H meet K| = {len(inter)}, equals <a,b>: {same}"

    rep.run("exact.intersection.H_K", REF_D8, meet)

    def centrality():
        z = (b @ c) ** 4
        ok = not z.is_identity() and z @ b == b @ z and z @ c == c @ z
        return ok, f"(bc)^4 = I: {z.is_identity()}, commutes with b: {z @ b == b @ z}, with c: {z @ c == c @ z}"

    rep.run("exact.centrality.(bc)^4", REF_CENTRAL, centrality)
    rep.merge(verify_spectrum(b, c, seed=seed, prefix="exact."))
    return rep


BC_FACTORS = (CharPoly([1, 1]), CharPoly([1, 0, 1]), CharPoly([-ONE, OMEGA, ONE]))


def verify_spectrum(b: MatrixR | None = None, c: MatrixR | None = None, *, seed: int = 0,
                    prefix: str = "") -> VerificationReport:
    """Order-8 and spectrum checks for bc."""
    if b is None or c is None:
        g = builtin_generators()
        b, c = g["b"], g["c"]
    bc = b @ c
    rep = VerificationReport("spectrum bc", seed)

    def powers():
        p4, p8 = bc ** 4, bc ** 8
        return p8.is_identity() and not p4.is_identity(), f"(bc)^8 = I: {p8.is_identity()}, (bc)^4 = I: {p4.is_identity()}"

    def not_reciprocal():
        cp = char_poly(bc)
        return not is_self_reciprocal(cp), f"char poly {cp}"

    def factorization():
        cp = char_poly(bc)
        f = BC_FACTORS[0] * BC_FACTORS[1] * BC_FACTORS[2]
        return cp == f, f"char poly {cp} vs (x+1)(x^2+1)(x^2+wx-1) = {f}"

    rep.run(prefix + "spectrum.bc.order8", REF_SPECTRUM, powers)
    rep.run(prefix + "spectrum.bc.not_self_reciprocal", REF_SPECTRUM, not_reciprocal)
    rep.run(prefix + "spectrum.bc.factorization", REF_SPECTRUM, factorization)
    return rep


# --- reductions --------------------------------------------------------------


def _random_word(rng: random.Random, names: str, length: int) -> str:
    return "".join(rng.choice(names) for _ in range(length))


def reduced_generators(ctx: ReductionContext, names: str = "abcd") -> list[np.ndarray]:
    g = builtin_generators()
    return [ctx.reduce_matrix(g[n]) for n in names]


def m11_certificate(ctx: ReductionContext) -> dict:
    """Orbits on points and hyperplanes and the M11 data of the 11-orbit."""
    mats = reduced_generators(ctx)
    fld = ctx.field
    point_orbits = projective_orbits(mats, fld)
    hyper_orbits = projective_orbits(mats, fld, dual=True)
    out = {
        "points": sorted(o.size for o in point_orbits),
        "hyperplanes": sorted(o.size for o in hyper_orbits),
    }
    for where, orbits, acting in (("points", point_orbits, mats),
                                  ("hyperplanes", hyper_orbits, [contragredient(fld, m) for m in mats])):
        eleven = [o for o in orbits if o.size == 11]
        if eleven:
            dom = Domain(fld, "projective")
            img = perm_image(acting, dom, eleven[0])
            tower, fixed = tower_with_base(img)
            big = [o for o in orbits if o.size == 110]
            out.update(
                source=where,
                perm_order=img.order,
                tower=tower,
                final_stabilizer=stabilizer_order(img, fixed),
                transitive=img.is_transitive(),
                perm110_order=perm_image(acting, dom, big[0]).order if big else None,
            )
            break
    return out


def verify_mod(p: int, ideal: Literal["plus", "minus"] = "plus",
               level: Literal["quick", "full"] = "quick", *, seed: int = 0,
               cap: int = 100_000, max_mem: int = DEFAULT_MAX_MEM,
               domain: str = "auto") -> VerificationReport:
    ctx = make_context(p, ideal)
    fld = ctx.field
    gens = builtin_generators()
    red = {k: ctx.reduce_matrix(m) for k, m in gens.items()}
    rep = VerificationReport(f"verify mod --prime {p} --ideal {ideal} --level {level}", seed)
    tag = f"mod{p}."

    def residue():
        kind = legendre_minus_two(p)
        by_class = "square" if p % 8 in (1, 3) else "nonsquare"
        return kind == by_class, f"{ctx.describe()}; -2 is a {kind} mod {p} (p = {p % 8} mod 8)"

    rep.run(tag + "residue_class", REF_RES, residue)

    def homomorphism():
        rng = random.Random(seed)
        for _ in range(20):
            w = _random_word(rng, "abcd", rng.randint(2, 6))
            exact = MatrixR.identity()
            modp = fld.identity()
            for ch in w:
                exact = exact @ gens[ch]
                modp = fld.mat_mul(modp, red[ch])
            if not np.array_equal(ctx.reduce_matrix(exact), modp):
                return False, f"word {w}"
        return True, "20 random words"

    rep.run(tag + "homomorphism", REF_GENS, homomorphism)

    for name, word, want, ref in (("ab", "ab", 8, REF_D8), ("abd", "abd", 24, REF_K), ("bc", "bc", 48, REF_H)):
        def inj(word=word, want=want):
            size = len(bfs_closure([red[ch] for ch in word], cap, field=fld))
            return size == want, f"|reduced <{','.join(word)}>| = {size}, exact {want}"

        rep.run(tag + f"injective.{name}", ref, inj)

    def dets():
        bad = [k for k in "abcdf" if fld.mat_det(red[k]) != 1]
        return not bad, f"det != 1 for {bad}" if bad else "det = 1 for a, b, c, d, f"

    rep.run(tag + "det", REF_SL if ctx.kind == "split" else REF_SU, dets)

    def form():
        if ctx.kind == "split":
            raise Skip("split prime: membership in SL(5,p) is det = 1 only")
        bad = [k for k in "abcdf" if not check_unitary_form(red[k], ctx)]
        return not bad, f"not unitary: {bad}" if bad else "frob(g)^T g = I for a, b, c, d, f"

    rep.run(tag + "unitary_form", REF_SU, form)

    if level == "quick":
        return rep

    mats = [red[k] for k in "abcd"]
    if p == 3:
        _full_p3(rep, ctx, mats, red, seed, cap, max_mem)
    else:
        family = "SL" if ctx.kind == "split" else "SU"
        target = group_order_formula(family, 5, p)

        def certified():
            if p == 7 and domain == "auto":
                raise Skip("q = 49: run with --domain projective to attempt (optional)")
            res = matrix_group_order(mats, fld, domain=domain, target=target, seed=seed, max_mem=max_mem)
            ok = res.order == target.value and res.certified
            return ok, (f"order {res.order} via {res.method} ({res.sifts} random elements, "
                        f"orbits {res.chain.orbit_sizes}); {target}")

        rep.run(tag + f"order.{family}", REF_SL if family == "SL" else REF_SU, certified)
    return rep


def _full_p3(rep, ctx, mats, red, seed, cap, max_mem) -> None:
    fld = ctx.field
    cert = {}

    def order():
        res = matrix_group_order(mats, fld, domain="vectors", seed=seed, max_mem=max_mem)
        return res.order == M11_ORDER and res.certified, f"order {res.order} via {res.method}"

    rep.run("mod3.order", REF_L3, order)

    def orbits():
        cert.update(m11_certificate(ctx))
        ok = cert["points"] == [11, 110]
        return ok, f"point orbits {cert['points']}, hyperplane orbits {cert['hyperplanes']}"

    rep.run("mod3.orbits.points", REF_ORBITS, orbits)

    def m11():
        if "source" not in cert:
            return False, "no orbit of length 11 on points or hyperplanes"
        ok = (cert["perm_order"] == M11_ORDER and cert["tower"] == M11_TOWER
              and cert["final_stabilizer"] == 1 and cert["transitive"])
        return ok, (f"11-orbit on {cert['source']}: order {cert['perm_order']}, tower {cert['tower']}, "
                    f"final stabilizer {cert['final_stabilizer']}")

    rep.run("mod3.m11.certificate", REF_L3, m11)

    def faithful110():
        got = cert.get("perm110_order")
        return got == M11_ORDER, f"degree-110 image order {got}"

    rep.run("mod3.m11.degree110", REF_L3, faithful110)

    def ea_rank():
        g = bfs_closure(mats, cap, field=fld)
        r = elementary_abelian_2_rank(g)
        return len(g) == M11_ORDER and r == 2, f"|L_3| = {len(g)}, 2-rank {r}"

    rep.run("mod3.ea_rank.L3", REF_EA8, ea_rank)

    def bf():
        g = bfs_closure([red["b"], red["f"]], cap, field=fld)
        r = elementary_abelian_2_rank(g)
        return len(g) == 80 and r == 4, f"|<b,f>| = {len(g)}, 2-rank {r}"

    rep.run("mod3.ea_rank.bf", REF_BF, bf)
