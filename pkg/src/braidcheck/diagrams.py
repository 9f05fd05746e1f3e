"""Typed string diagrams over the module category, with an exact evaluator.

Wires are atoms (symbol, dual_level); a wire type is a tuple of atoms.
Diagrams are lists of slices read bottom-to-top; each slice is a horizontal
list of generators.  Evaluation is sparse: vectors over tensor products are
dicts of flat indices, pushed column by column (or row by row for maps with
a small output side).

Crossing transcription is fixed once for the whole package: a crossing whose
over-strand moves left (reading upward) is `braid`, one whose over-strand
moves right is `braid_inverse`.  The choice is validated downstream by
comparing the evaluated two-crossing loop diagram against its closed form.
"""

from __future__ import annotations

from dataclasses import dataclass
from gmpy2 import mpq

from .errors import ParseError, ShapeMismatch, TypeMismatch, UnboundSymbol
from .linalg import Matrix
from .rep import (HModule, braiding_colmap, braiding_inverse_colmap,
                  dual_module)
from .sparsetools import colmap_transpose, matrix_to_colmap, vaddmul

_ONE = mpq(1)


def atom(symbol, dual_level=0):
    return (symbol, dual_level)


def atom_dual(a):
    return (a[0], a[1] + 1)


def atom_str(a):
    return a[0] + "~" * a[1]


@dataclass(frozen=True)
class Id:
    wire: tuple

    @property
    def ins(self):
        return (self.wire,)

    @property
    def outs(self):
        return (self.wire,)


@dataclass(frozen=True)
class Braid:
    """Crossing [a, b] -> [b, a] with the over-strand moving left."""
    a: tuple
    b: tuple

    @property
    def ins(self):
        return (self.a, self.b)

    @property
    def outs(self):
        return (self.b, self.a)


@dataclass(frozen=True)
class BraidInv:
    """Crossing [a, b] -> [b, a] with the over-strand moving right."""
    a: tuple
    b: tuple

    @property
    def ins(self):
        return (self.a, self.b)

    @property
    def outs(self):
        return (self.b, self.a)


@dataclass(frozen=True)
class Ev:
    """Evaluation [dual(w), w] -> []."""
    wire: tuple

    @property
    def ins(self):
        return (atom_dual(self.wire), self.wire)

    @property
    def outs(self):
        return ()


@dataclass(frozen=True)
class Coev:
    """Coevaluation [] -> [w, dual(w)]."""
    wire: tuple

    @property
    def ins(self):
        return ()

    @property
    def outs(self):
        return (self.wire, atom_dual(self.wire))


@dataclass(frozen=True)
class Box:
    name: str
    in_type: tuple
    out_type: tuple

    @property
    def ins(self):
        return self.in_type

    @property
    def outs(self):
        return self.out_type


@dataclass(frozen=True)
class Diagram:
    slices: tuple
    input_type: tuple
    output_type: tuple

    def typecheck(self):
        """Wire types at every boundary; TypeMismatch pinpoints the first
        offending slice and wire position."""
        boundaries = [self.input_type]
        cur = self.input_type
        for si, sl in enumerate(self.slices):
            need = tuple(a for g in sl for a in g.ins)
            for pos in range(max(len(need), len(cur))):
                if pos >= len(need) or pos >= len(cur) or need[pos] != cur[pos]:
                    raise TypeMismatch(si, pos,
                                       f"slice needs {[atom_str(a) for a in need]},"
                                       f" has {[atom_str(a) for a in cur]}")
            cur = tuple(a for g in sl for a in g.outs)
            boundaries.append(cur)
        if cur != self.output_type:
            raise TypeMismatch(len(self.slices), 0, "declared output type differs")
        return boundaries


def typecheck(D: Diagram):
    return D.typecheck()


class _Binding:
    """Resolves atoms to modules and generators to local sparse colmaps."""

    def __init__(self, binding, boxes, R):
        self.binding = binding
        self.boxes = boxes or {}
        self.R = R
        self._mods = {}
        self._gen_cache = {}

    def module(self, a):
        if a not in self._mods:
            sym, lvl = a
            if lvl == 0:
                if sym not in self.binding:
                    raise UnboundSymbol(f"no module bound to symbol {sym!r}")
                self._mods[a] = self.binding[sym]
            else:
                self._mods[a] = dual_module(self.module((sym, lvl - 1)))
        return self._mods[a]

    def dim(self, a):
        return self.module(a).dim

    def local(self, g):
        """(in_size, out_size, colmap or None for identity)."""
        if g in self._gen_cache:
            return self._gen_cache[g]
        if isinstance(g, Id):
            m = self.dim(g.wire)
            res = (m, m, None)
        elif isinstance(g, (Braid, BraidInv)):
            if self.R is None:
                raise UnboundSymbol("diagram contains a crossing but no R was supplied")
            A, B = self.module(g.a), self.module(g.b)
            if isinstance(g, Braid):
                cm = braiding_colmap(A, B, self.R)
            else:
                # sigma_{b,a}^{-1} also maps [a,b] to [b,a]
                cm = braiding_inverse_colmap(B, A, self.R)
            res = (A.dim * B.dim, A.dim * B.dim, cm)
        elif isinstance(g, Ev):
            m = self.dim(g.wire)
            res = (m * m, 1, {i * m + i: {0: _ONE} for i in range(m)})
        elif isinstance(g, Coev):
            m = self.dim(g.wire)
            res = (1, m * m, {0: {i * m + i: _ONE for i in range(m)}})
        elif isinstance(g, Box):
            if g.name not in self.boxes:
                raise UnboundSymbol(f"no matrix supplied for box {g.name!r}")
            mat = self.boxes[g.name]
            nin = 1
            for a in g.in_type:
                nin *= self.dim(a)
            nout = 1
            for a in g.out_type:
                nout *= self.dim(a)
            if (mat.rows, mat.cols) != (nout, nin):
                raise ShapeMismatch(
                    f"box {g.name!r} is {mat.rows}x{mat.cols}, needs {nout}x{nin}")
            res = (nin, nout, matrix_to_colmap(mat))
        else:
            raise ShapeMismatch(f"unknown generator {g!r}")
        self._gen_cache[g] = res
        return res


def _apply_slice(locals_, vec):
    """Push a sparse vector through one slice.

    locals_ is a list of (in_size, out_size, colmap-or-None).
    """
    out = {}
    in_sizes = [l[0] for l in locals_]
    out_sizes = [l[1] for l in locals_]
    for key, coeff in vec.items():
        # mixed-radix decomposition of the flat index by generator inputs
        parts = []
        rem = key
        for s in reversed(in_sizes):
            rem, p = divmod(rem, s)
            parts.append(p)
        parts.reverse()
        # local images; identity generators pass their index through
        terms = [(0, coeff)]
        for (isz, osz, cm), p in zip(locals_, parts):
            if cm is None:
                terms = [(base * osz + p, c) for base, c in terms]
                continue
            col = cm.get(p)
            if not col:
                terms = []
                break
            new = []
            for base, c in terms:
                for o, v in col.items():
                    new.append((base * osz + o, c * v))
            terms = new
        for k2, c2 in terms:
            nv = out.get(k2)
            nv = c2 if nv is None else nv + c2
            if nv:
                out[k2] = nv
            else:
                del out[k2]
    return out


def evaluate_cols(D: Diagram, binding, boxes=None, R=None, columns=None):
    """Sparse evaluation: colmap of the diagram, restricted to `columns`
    of the input space when given."""
    D.typecheck()
    env = _Binding(binding, boxes, R)
    slice_locals = [[env.local(g) for g in sl] for sl in D.slices]
    nin = 1
    for a in D.input_type:
        nin *= env.dim(a)
    cols = range(nin) if columns is None else columns
    out = {}
    for j in cols:
        vec = {j: _ONE}
        for locals_ in slice_locals:
            vec = _apply_slice(locals_, vec)
            if not vec:
                break
        if vec:
            out[j] = vec
    return out


def evaluate_rows(D: Diagram, binding, boxes=None, R=None, rows=None):
    """Sparse evaluation by pushing dual basis rows backwards; returns a
    rowmap row -> {col: value}.  Cheap when the output side is small."""
    D.typecheck()
    env = _Binding(binding, boxes, R)
    rev_locals = []
    for sl in reversed(D.slices):
        loc = []
        for g in sl:
            isz, osz, cm = env.local(g)
            loc.append((osz, isz, None if cm is None else colmap_transpose(cm)))
        rev_locals.append(loc)
    nout = 1
    for a in D.output_type:
        nout *= env.dim(a)
    rr = range(nout) if rows is None else rows
    out = {}
    for i in rr:
        vec = {i: _ONE}
        for locals_ in rev_locals:
            vec = _apply_slice(locals_, vec)
            if not vec:
                break
        if vec:
            out[i] = vec
    return out


def compile_diagram(D: Diagram, binding, boxes=None, R=None):
    """Per-slice generator data for custom evaluation schedules.

    Returns (env, slice_locals) where slice_locals[k] is a list of
    (in_size, out_size, colmap-or-None) for slice k."""
    D.typecheck()
    env = _Binding(binding, boxes, R)
    return env, [[env.local(g) for g in sl] for sl in D.slices]


def apply_locals(locals_, vec):
    """Push a sparse vector through one compiled slice."""
    return _apply_slice(locals_, vec)


def transpose_locals(locals_):
    """Compiled slice for the transposed (backward) pass."""
    return [(o, i, None if cm is None else colmap_transpose(cm))
            for i, o, cm in locals_]


def evaluate(D: Diagram, binding, boxes=None, R=None) -> Matrix:
    """Dense evaluation of the whole diagram as an exact matrix."""
    env = _Binding(binding, boxes, R)
    nin = 1
    for a in D.input_type:
        nin *= env.dim(a)
    nout = 1
    for a in D.output_type:
        nout *= env.dim(a)
    cm = evaluate_cols(D, binding, boxes, R)
    out = Matrix(nout, nin)
    for j, col in cm.items():
        for i, v in col.items():
            out.data[i][j] = v
    return out


# -- the figure diagrams -----------------------------------------------------

def _over_left(a, b):
    return Braid(a, b)


def _over_right(a, b):
    return BraidInv(a, b)


def named_diagram(name: str) -> Diagram:
    """The eight structure diagrams, transcribed once and pinned by the
    closed-form cross-checks downstream."""
    x = atom("x")
    xd = atom_dual(x)
    xdd = atom_dual(xd)
    y = atom("y")
    yd = atom_dual(y)
    v = atom("v")

    if name == "coend_mult":
        return Diagram(
            slices=(
                (Id(xd), _over_right(x, yd), Id(y)),
                (_over_right(xd, yd), Id(x), Id(y)),
            ),
            input_type=(xd, x, yd, y),
            output_type=(yd, xd, x, y),
        )
    if name == "coend_comult":
        return Diagram(
            slices=((Id(xd), Coev(x), Id(x)),),
            input_type=(xd, x),
            output_type=(xd, x, xd, x),
        )
    if name == "coend_counit":
        return Diagram(
            slices=((Ev(x),),),
            input_type=(xd, x),
            output_type=(),
        )
    if name == "coend_antipode":
        return Diagram(
            slices=(
                (Coev(xd), Id(xd), Id(x)),
                (Id(xd), Id(xdd), _over_right(xd, x)),
                (Id(xd), _over_right(xdd, x), Id(xd)),
                (Ev(x), Id(xdd), Id(xd)),
            ),
            input_type=(xd, x),
            output_type=(xdd, xd),
        )
    if name == "pairing_omega":
        return Diagram(
            slices=(
                (Id(xd), _over_left(x, yd), Id(y)),
                (Id(xd), _over_left(yd, x), Id(y)),
                (Ev(x), Ev(y)),
            ),
            input_type=(xd, x, yd, y),
            output_type=(),
        )
    if name == "tau_V":
        return Diagram(
            slices=(
                (Id(xd), _over_right(x, v)),
                (_over_left(xd, v), Id(x)),
            ),
            input_type=(xd, x, v),
            output_type=(v, xd, x),
        )
    if name == "drinfeld":
        return Diagram(
            slices=(
                (Id(xd), Coev(y), Id(x)),
                (_over_right(xd, y), Id(yd), Id(x)),
                (Id(y), Id(xd), _over_right(yd, x)),
                (Id(y), Ev(x), Id(yd)),
            ),
            input_type=(xd, x),
            output_type=(y, yd),
        )
    if name == "coend_action":
        return Diagram(
            slices=(
                (Id(xd), _over_left(x, y)),
                (_over_right(xd, y), Id(x)),
                (Id(y), Ev(x)),
            ),
            input_type=(xd, x, y),
            output_type=(y,),
        )
    raise UnboundSymbol(f"unknown named diagram {name!r}")


# -- text format --------------------------------------------------------------
#
# One slice per `;` separator (or per line), generators comma-separated:
#
#   coev(y) ; id(x~), braid(x, y~) ; ev(x)
#
# Atoms are symbols with trailing `~` per dual level.  Generators:
# id(w), braid(a, b), braid_inv(a, b), ev(w), coev(w),
# box(name : a b -> c d)  (types space-separated; `->` may have empty sides).

def _parse_atom(tok, line, col):
    tok = tok.strip()
    base = tok.rstrip("~")
    lvl = len(tok) - len(base)
    if not base.isidentifier():
        raise ParseError(line, col, f"bad wire symbol {tok!r}")
    return (base, lvl)


def parse_diagram(text: str) -> Diagram:
    slices = []
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        for chunk in body.split(";"):
            if chunk.strip():
                lines.append((lineno, chunk))
    for lineno, chunk in lines:
        gens = []
        depth = 0
        cur = ""
        items = []
        for ch in chunk:
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth < 0:
                    raise ParseError(lineno, chunk.index(ch) + 1, "unbalanced ')'")
            if ch == "," and depth == 0:
                items.append(cur)
                cur = ""
            else:
                cur += ch
        if depth != 0:
            raise ParseError(lineno, len(chunk), "unbalanced '('")
        if cur.strip():
            items.append(cur)
        for item in items:
            item = item.strip()
            col = chunk.find(item) + 1
            if "(" not in item or not item.endswith(")"):
                raise ParseError(lineno, col, f"malformed generator {item!r}")
            head, args = item[:-1].split("(", 1)
            head = head.strip()
            if head == "id":
                gens.append(Id(_parse_atom(args, lineno, col)))
            elif head in ("braid", "braid_inv"):
                parts = args.split(",")
                if len(parts) != 2:
                    raise ParseError(lineno, col, f"{head} needs two wires")
                a = _parse_atom(parts[0], lineno, col)
                b = _parse_atom(parts[1], lineno, col)
                gens.append(Braid(a, b) if head == "braid" else BraidInv(a, b))
            elif head == "ev":
                gens.append(Ev(_parse_atom(args, lineno, col)))
            elif head == "coev":
                gens.append(Coev(_parse_atom(args, lineno, col)))
            elif head == "box":
                if ":" not in args or "->" not in args:
                    raise ParseError(lineno, col, "box needs 'name : ins -> outs'")
                bname, types = args.split(":", 1)
                ins, outs = types.split("->", 1)
                in_t = tuple(_parse_atom(t, lineno, col) for t in ins.split())
                out_t = tuple(_parse_atom(t, lineno, col) for t in outs.split())
                gens.append(Box(bname.strip(), in_t, out_t))
            else:
                raise ParseError(lineno, col, f"unknown generator {head!r}")
        slices.append(tuple(gens))
    if not slices:
        raise ParseError(1, 1, "empty diagram")
    in_t = tuple(a for g in slices[0] for a in g.ins)
    out_t = tuple(a for g in slices[-1] for a in g.outs)
    return Diagram(slices=tuple(slices), input_type=in_t, output_type=out_t)


def diagram_to_text(D: Diagram) -> str:
    def gen_str(g):
        if isinstance(g, Id):
            return f"id({atom_str(g.wire)})"
        if isinstance(g, Braid):
            return f"braid({atom_str(g.a)}, {atom_str(g.b)})"
        if isinstance(g, BraidInv):
            return f"braid_inv({atom_str(g.a)}, {atom_str(g.b)})"
        if isinstance(g, Ev):
            return f"ev({atom_str(g.wire)})"
        if isinstance(g, Coev):
            return f"coev({atom_str(g.wire)})"
        ins = " ".join(atom_str(a) for a in g.in_type)
        outs = " ".join(atom_str(a) for a in g.out_type)
        return f"box({g.name} : {ins} -> {outs})"

    return " ;\n".join(", ".join(gen_str(g) for g in sl) for sl in D.slices)
