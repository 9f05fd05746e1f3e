"""Coend layer: descent, pairing, the two invertibility criteria, action map."""

from gmpy2 import mpq

from braidcheck.coend import (
    action_map,
    build_coend,
    coadjoint_module,
    drinfeld_map_diagrammatic,
    hopf_pairing,
    invertibility_report,
    projection_colmap,
    tau_map,
    verify_braided_hopf,
)
from braidcheck.examples_zoo import build_example, suite_members
from braidcheck.hopf import drinfeld_double, drinfeld_map_closed
from braidcheck.linalg import Matrix
from braidcheck.rep import (
    HModule,
    dual_module,
    hom_space,
    regular_module,
    tensor_module,
    trivial_module,
    verify_module,
)
from braidcheck.sparsetools import veq

_ONE = mpq(1)


def _members(max_dim=16):
    return [(n, H, R) for n, H, R in suite_members() if H.dim <= max_dim]


def test_build_coend_axioms_and_convention():
    for name, H, R in _members():
        real = build_coend(H, R)
        assert real.convention in ("s-left", "s-right"), name
        checks = verify_braided_hopf(real)
        assert all(checks.values()), f"{name}: {checks}"


def test_verdicts_match_expectations():
    for name, H, R in _members():
        rep = invertibility_report(H, R)
        expected = name.startswith("double(")
        assert rep.verdict is expected, f"{name}: {rep.as_dict()}"
        assert rep.omega_rank == rep.drinfeld_rank, name


def test_pairing_rank_one_for_trivial_r():
    """With R = 1 (x) 1 the pairing collapses to f(1) g(1)."""
    H, R = build_example("group_algebra", n=4)
    omega = hopf_pairing(H, R)
    assert omega.rank() == 1
    # f(1) g(1) in the dual basis: e^a(e_0) e^b(e_0)
    for a in range(H.dim):
        for b in range(H.dim):
            want = _ONE if (a == 0 and b == 0) else mpq(0)
            assert omega.data[a][b] == want


def test_diagrammatic_drinfeld_equals_closed_form():
    for name, H, R in _members():
        diag = drinfeld_map_diagrammatic(H, R)
        closed = drinfeld_map_closed(H, R)
        assert diag == closed, name


def test_pairing_duality_against_drinfeld():
    """omega(f, g) = <g o S, Dr(f)>: the pairing and the Drinfeld map are two
    readings of the same tensor, so the matrices match after the antipode
    twist on the second leg."""
    for name, H, R in _members(9):
        omega = hopf_pairing(H, R)
        dr = drinfeld_map_closed(H, R)
        d = H.dim
        gram = Matrix(d, d)
        for a in range(d):
            for b in range(d):
                gram.data[a][b] = dr.data[b][a]
        smat = Matrix(d, d)
        for i, col in H.antipode.items():
            for j, v in col.items():
                smat.data[j][i] = v
        assert omega == gram @ smat.transpose(), name


def test_action_on_trivial_module_is_counit():
    H, R = build_example("sweedler", lam=1)
    real = build_coend(H, R)
    act = action_map(H, R, trivial_module(H))
    assert act.rows == 1 and act.cols == H.dim
    counit = real.counit
    assert act == counit


def test_action_component_identity_small_modules():
    """The induced map F -> y (x) dual(y) agrees with the matching block of
    the Drinfeld map for every module y of dimension at most two."""
    H, R = build_example("sweedler", lam=1)
    mods = [trivial_module(H), _char_module(H, 1), _char_module(H, -1)]
    mods.append(tensor_module(_char_module(H, -1), _char_module(H, -1)))
    mods.append(dual_module(_char_module(H, -1)))
    for y in mods:
        assert verify_module(y)
        # action_map itself verifies the block identity and raises otherwise
        act = action_map(H, R, y)
        assert act.rows == y.dim and act.cols == H.dim * y.dim


def _char_module(H, sign):
    action = {0: {0: {0: _ONE}}, 1: {0: {0: mpq(sign)}}}
    return HModule(H, 1, action, name=f"chi{sign:+d}")


def test_induced_rank_one_symmetric_case():
    H, R = build_example("group_algebra", n=2)
    y = regular_module(H)
    dr = drinfeld_map_closed(H, R)
    d, m = H.dim, y.dim
    induced = Matrix(m * m, d)
    for a in range(d):
        for h in range(d):
            c = dr.data[h][a]
            if not c:
                continue
            mh = y.action_matrix(h)
            for r in range(m):
                for k in range(m):
                    if mh.data[r][k]:
                        induced.data[r * m + k][a] = (
                            induced.data[r * m + k][a] + c * mh.data[r][k])
    assert induced.rank() == 1


def test_tau_invertible():
    for builder, params in (("group_algebra", {"n": 3}), ("sweedler", {"lam": 1})):
        H, R = build_example(builder, **params)
        for V in (trivial_module(H), regular_module(H)):
            tau = tau_map(H, R, V)
            assert tau.rank() == H.dim * V.dim


def test_dinaturality_sample():
    """pi_x (t-dual (x) id) = pi_z (id (x) t) for intertwiners t between
    small modules: the projections assemble into one dinatural family."""
    H, R = build_example("sweedler", lam=1)
    mods = [trivial_module(H), _char_module(H, 1), _char_module(H, -1),
            tensor_module(_char_module(H, -1), _char_module(H, -1))]
    for x in mods:
        for z in mods:
            for t in hom_space(x, z):
                pi_x = projection_colmap(x)
                pi_z = projection_colmap(z)
                mx, mz = x.dim, z.dim
                for a in range(mz):
                    for b in range(mx):
                        lhs = {}
                        for c in range(mx):
                            if t.data[a][c]:
                                for h, v in pi_x.get(c * mx + b, {}).items():
                                    lhs[h] = lhs.get(h, 0) + t.data[a][c] * v
                        rhs = {}
                        for r in range(mz):
                            if t.data[r][b]:
                                for h, v in pi_z.get(a * mz + r, {}).items():
                                    rhs[h] = rhs.get(h, 0) + t.data[r][b] * v
                        assert veq(lhs, rhs), (x.name, z.name)


def test_projection_regular_full_rank():
    for name, H, R in _members(9):
        reg = regular_module(H)
        pi = projection_colmap(reg)
        d = H.dim
        dense = Matrix(d, d * d)
        for col, vec in pi.items():
            for h, v in vec.items():
                dense.data[h][col] = v
        assert dense.rank() == d, name


def test_coadjoint_carrier_is_module():
    for name, H, R in _members(9):
        F = coadjoint_module(H)
        assert verify_module(F), name
