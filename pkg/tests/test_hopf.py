"""Hopf presentations: axiom batteries, corruption fuzzing, screens."""

import random

import pytest
from gmpy2 import mpq

from braidcheck.errors import InternalInconsistency
from braidcheck.examples_zoo import build_example, suite_members
from braidcheck.hopf import (
    HopfPresentation,
    RMatrix,
    drinfeld_double,
    drinfeld_map_closed,
    integrals,
    is_factorizable,
    monodromy_element,
    verify_hopf,
    verify_quasitriangular,
)


def small_suite():
    """Every suite member except the 27-dimensional quantum group."""
    return [(name, H, R) for name, H, R in suite_members() if H.dim < 27]


def test_axioms_pass_on_small_suite():
    for name, H, R in small_suite():
        rep = verify_hopf(H)
        assert rep.passed, f"{name}: {rep.failing()}"
        qrep = verify_quasitriangular(H, R)
        assert qrep.passed, f"{name}: {qrep.failing()}"


def test_double_dimensions():
    for n in range(2, 7):
        H, _ = build_example("group_algebra", n=n)
        D, RD = drinfeld_double(H)
        assert D.dim == n * n
        assert RD.entries


def test_corruption_fuzzing_small_dims():
    """Perturbing any single structure constant of a small presentation must
    trip at least one axiom (or an index check)."""
    rng = random.Random(20260823)
    targets = [build_example("group_algebra", n=2),
               build_example("group_algebra", n=4),
               build_example("sweedler", lam=1)]
    for H, R in targets:
        if H.dim > 4:
            continue
        for trial in range(30):
            mult = {k: dict(v) for k, v in H.mult.items()}
            comult = {k: dict(v) for k, v in H.comult.items()}
            antipode = {k: dict(v) for k, v in H.antipode.items()}
            which = rng.choice(("mult", "comult", "antipode"))
            tbl = {"mult": mult, "comult": comult, "antipode": antipode}[which]
            i = rng.randrange(H.dim)
            j = rng.randrange(H.dim)
            k = rng.randrange(H.dim)
            if which == "mult":
                tbl.setdefault((i, j), {})
                tbl[(i, j)][k] = tbl[(i, j)].get(k, 0) + 1
            elif which == "comult":
                tbl.setdefault(i, {})
                tbl[i][(j, k)] = tbl[i].get((j, k), 0) + 1
            else:
                tbl.setdefault(i, {})
                tbl[i][j] = tbl[i].get(j, 0) + 1
            corrupted = HopfPresentation(
                H.dim, mult, dict(H.unit), comult, dict(H.counit), antipode,
                conductor=H.conductor)
            rep = verify_hopf(corrupted)
            assert not rep.passed, f"corruption {which} ({i},{j},{k}) went unnoticed"
            assert rep.first_failure, "failing axiom must carry a witness"


def test_quasitriangular_rejects_wrong_r():
    H, R = build_example("sweedler", lam=1)
    wrong = RMatrix({(0, 0): mpq(1), (1, 1): mpq(1)})
    rep = verify_quasitriangular(H, wrong)
    assert not rep.passed


def test_monodromy_symmetric_case_collapses():
    H, R = build_example("group_algebra", n=3)
    M = monodromy_element(H, R)
    # R = 1 (x) 1 means the monodromy is 1 (x) 1 and Dr has rank one
    dr = drinfeld_map_closed(H, R)
    assert dr.rank() == 1
    assert is_factorizable(H, R)["verdict"] is False
    assert set(M) == {(0, 0)}


def test_factorizable_verdicts():
    for name, H, R in small_suite():
        res = is_factorizable(H, R)
        expected = name.startswith("double(")
        assert res["verdict"] is expected, f"{name}: rank {res['rank']}"


def test_factorizable_implies_unimodular():
    """Necessary-condition screen: every factorizable member is unimodular,
    and the non-unimodular Sweedler family is correctly not factorizable."""
    for name, H, R in small_suite():
        ints = integrals(H)
        if is_factorizable(H, R)["verdict"]:
            assert ints["unimodular"], f"{name} factorizable but not unimodular"
    H, R = build_example("sweedler", lam=1)
    assert integrals(H)["unimodular"] is False


def test_integrals_group_algebra():
    H, _ = build_example("group_algebra", n=4)
    ints = integrals(H)
    assert ints["unimodular"]
    # the integral of a group algebra is the sum over the group
    left = ints["left"]
    vals = set(left.values())
    assert len(vals) == 1 and len(left) == 4


def test_double_of_double_axioms():
    H, _ = build_example("group_algebra", n=2)
    D, RD = drinfeld_double(H)
    DD, RDD = drinfeld_double(D)
    assert DD.dim == 16
    assert verify_hopf(DD).passed
    assert verify_quasitriangular(DD, RDD).passed
