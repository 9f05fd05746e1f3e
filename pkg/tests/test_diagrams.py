"""Diagram IR and evaluator: typing, coherence identities, text format."""

import pytest
from gmpy2 import mpq

from braidcheck.diagrams import (
    Box,
    Braid,
    BraidInv,
    Coev,
    Diagram,
    Ev,
    Id,
    atom,
    atom_dual,
    diagram_to_text,
    evaluate,
    named_diagram,
    parse_diagram,
    typecheck,
)
from braidcheck.errors import ParseError, TypeMismatch, UnboundSymbol
from braidcheck.examples_zoo import build_example
from braidcheck.hopf import drinfeld_double
from braidcheck.linalg import Matrix
from braidcheck.rep import HModule, regular_module, trivial_module, verify_module

_ONE = mpq(1)

X = atom("x")
Y = atom("y")
Z = atom("z")


def sweedler_char(H, sign):
    """The two one-dimensional modules of the four-dimensional algebra."""
    action = {0: {0: {0: _ONE}}, 1: {0: {0: mpq(sign)}}}
    mod = HModule(H, 1, action, name=f"chi{sign:+d}")
    assert verify_module(mod)
    return mod


def test_typecheck_identity_and_snake():
    D = Diagram(slices=((Id(X),),), input_type=(X,), output_type=(X,))
    assert typecheck(D) == [(X,), (X,)]
    snake = Diagram(
        slices=((Coev(X), Id(X)), (Id(X), Ev(X))),
        input_type=(X,),
        output_type=(X,),
    )
    boundaries = typecheck(snake)
    assert boundaries[0] == (X,) and boundaries[-1] == (X,)


def test_typecheck_failure_position():
    bad = Diagram(
        slices=((Braid(X, Y),), (Ev(X),)),
        input_type=(X, Y),
        output_type=(),
    )
    with pytest.raises(TypeMismatch):
        typecheck(bad)


def test_snake_identities_evaluate_to_identity():
    for H, R in (build_example("group_algebra", n=3),
                 build_example("sweedler", lam=1)):
        reg = regular_module(H)
        m = reg.dim
        left_snake = Diagram(
            slices=((Coev(X), Id(X)), (Id(X), Ev(X))),
            input_type=(X,), output_type=(X,))
        xd = atom_dual(X)
        right_snake = Diagram(
            slices=((Id(xd), Coev(X)), (Ev(X), Id(xd))),
            input_type=(xd,), output_type=(xd,))
        assert evaluate(left_snake, {"x": reg}, R=R) == Matrix.identity(m)
        assert evaluate(right_snake, {"x": reg}, R=R) == Matrix.identity(m)


def test_braid_inverse_cancels():
    for builder in (("group_algebra", {"n": 2}), ("sweedler", {"lam": 1})):
        H, R = build_example(builder[0], **builder[1])
        D, RD = drinfeld_double(H)
        reg = regular_module(D)
        triv = trivial_module(D)
        loop = Diagram(
            slices=((Braid(X, Y),), (BraidInv(Y, X),)),
            input_type=(X, Y), output_type=(X, Y))
        for mx, my in ((reg, triv), (triv, reg)):
            n = mx.dim * my.dim
            assert evaluate(loop, {"x": mx, "y": my}, R=RD) == Matrix.identity(n)
        if D.dim <= 4:
            n = reg.dim * reg.dim
            assert evaluate(loop, {"x": reg, "y": reg}, R=RD) == Matrix.identity(n)


def test_yang_baxter_small_modules():
    H, R = build_example("sweedler", lam=1)
    chip = sweedler_char(H, 1)
    chim = sweedler_char(H, -1)
    reg = regular_module(H)
    mods = [("x", chip), ("y", chim), ("z", chip)]
    binding = dict((s, m) for s, m in mods)
    lhs = Diagram(
        slices=((Braid(X, Y), Id(Z)), (Id(Y), Braid(X, Z)), (Braid(Y, Z), Id(X))),
        input_type=(X, Y, Z), output_type=(Z, Y, X))
    rhs = Diagram(
        slices=((Id(X), Braid(Y, Z)), (Braid(X, Z), Id(Y)), (Id(Z), Braid(X, Y))),
        input_type=(X, Y, Z), output_type=(Z, Y, X))
    assert evaluate(lhs, binding, R=R) == evaluate(rhs, binding, R=R)
    # and with a genuinely higher-dimensional strand mixed in
    binding = {"x": reg, "y": chim, "z": reg}
    assert evaluate(lhs, binding, R=R) == evaluate(rhs, binding, R=R)


def test_interchange_disjoint_boxes():
    H, R = build_example("group_algebra", n=2)
    reg = regular_module(H)
    f = Matrix(2, 2, [[mpq(1), mpq(2)], [mpq(0), mpq(1)]])
    g = Matrix(2, 2, [[mpq(3), mpq(0)], [mpq(1), mpq(1)]])
    boxes = {"f": f, "g": g}
    bf = Box("f", (X,), (X,))
    bg = Box("g", (Y,), (Y,))
    first = Diagram(slices=((bf, Id(Y)), (Id(X), bg)),
                    input_type=(X, Y), output_type=(X, Y))
    second = Diagram(slices=((Id(X), bg), (bf, Id(Y))),
                     input_type=(X, Y), output_type=(X, Y))
    both = Diagram(slices=((bf, bg),),
                   input_type=(X, Y), output_type=(X, Y))
    binding = {"x": reg, "y": reg}
    m1 = evaluate(first, binding, boxes=boxes, R=R)
    m2 = evaluate(second, binding, boxes=boxes, R=R)
    m3 = evaluate(both, binding, boxes=boxes, R=R)
    assert m1 == m2 == m3 == f.kron(g)


def _refine(D, k):
    """Split slice k into two slices: generator 0, then the rest."""
    sl = D.slices[k]
    first, rest = sl[0], sl[1:]
    ids_rest = tuple(Id(a) for g in rest for a in g.ins)
    ids_first = tuple(Id(a) for a in first.outs)
    new = D.slices[:k] + ((first,) + ids_rest, ids_first + rest) + D.slices[k + 1:]
    return Diagram(slices=new, input_type=D.input_type, output_type=D.output_type)


def test_slicing_refinement_invariance():
    H, R = build_example("sweedler", lam=1)
    reg = regular_module(H)
    D = named_diagram("pairing_omega")
    binding = {"x": reg, "y": reg}
    base = evaluate(D, binding, R=R)
    for k in range(len(D.slices)):
        if len(D.slices[k]) > 1:
            assert evaluate(_refine(D, k), binding, R=R) == base


def test_named_diagram_types():
    x = atom("x")
    xd = atom_dual(x)
    y = atom("y")
    yd = atom_dual(y)
    assert named_diagram("coend_counit").input_type == (xd, x)
    assert named_diagram("coend_counit").output_type == ()
    assert named_diagram("pairing_omega").input_type == (xd, x, yd, y)
    assert named_diagram("pairing_omega").output_type == ()
    dr = named_diagram("drinfeld")
    assert dr.input_type == (xd, x)
    assert dr.output_type == (y, yd)
    for name in ("coend_mult", "coend_comult", "coend_antipode",
                 "tau_V", "coend_action"):
        typecheck(named_diagram(name))


def test_text_format_roundtrip():
    for name in ("pairing_omega", "drinfeld", "coend_mult", "coend_antipode"):
        D = named_diagram(name)
        assert parse_diagram(diagram_to_text(D)) == D


def test_parse_errors_report_position():
    with pytest.raises(ParseError):
        parse_diagram("id(x); braid(x)")
    with pytest.raises(ParseError):
        parse_diagram("frob(x)")
    with pytest.raises(ParseError):
        parse_diagram("")


def test_unbound_symbol_and_missing_r():
    H, R = build_example("group_algebra", n=2)
    reg = regular_module(H)
    D = Diagram(slices=((Braid(X, Y),),), input_type=(X, Y), output_type=(Y, X))
    with pytest.raises(UnboundSymbol):
        evaluate(D, {"x": reg}, R=R)
    with pytest.raises(UnboundSymbol):
        evaluate(D, {"x": reg, "y": reg}, R=None)
