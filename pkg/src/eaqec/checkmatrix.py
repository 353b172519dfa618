"""Phaseless stabilizer presentations: rows of (x | z) over GF(q).

A CheckMatrix is immutable; every operation returns a new value.  Row
operations (swap, scaled add, scale) change the generating set but not the
generated group; Clifford column operations (DFT, MUL, PHASE, ADD) are the
symplectic transformations induced by conjugating the generators by the
corresponding gates, one column per qudit:

    DFT(i):        (x_i, z_i) -> (z_i, -x_i)
    MUL(g, i):     (x_i, z_i) -> (g^-1 x_i, g z_i),  g != 0
    PHASE(g, i):   (x_i, z_i) -> (x_i, z_i + g x_i)
    ADD(i -> j):   x_j += x_i;  z_i -= z_j          (control i, target j)

All four preserve every pairwise symplectic product.  Qudit and row
indices on the public surface are 1-based, matching the file format.

Text format (bit-exact contract)::

    EACM p m n r
    poly c0 c1 ... cm        # only if m > 1
    a1 .. an | b1 .. bn      # r such rows, entries in 0..q-1

'#' starts a comment; tokens are whitespace-separated.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .errors import (
    BadScalarError,
    DimensionMismatchError,
    EaqecError,
    EntryOutOfRangeError,
    IndexOutOfRangeError,
    NonInvertibleGammaError,
    ParseError,
)
from .field import GaloisField, make_field
from .linalg import rref_mod_p
from .pauli import Row, symplectic_product

DFT = "DFT"
MUL = "MUL"
PHASE = "PHASE"
ADD = "ADD"

SWAP = "SWAP"
ADDMUL = "ADDMUL"
SCALE = "SCALE"


@dataclass(frozen=True)
class CliffordOp:
    """A column operation; `target` (and `control` for ADD) are 1-based qudits."""

    kind: str
    target: int
    gamma: Optional[int] = None
    control: Optional[int] = None

    def __str__(self):
        if self.kind == ADD:
            return f"ADD({self.control}->{self.target})"
        if self.kind == DFT:
            return f"DFT({self.target})"
        return f"{self.kind}({self.gamma},{self.target})"


def dft(target: int) -> CliffordOp:
    return CliffordOp(DFT, target)


def mul(gamma: int, target: int) -> CliffordOp:
    return CliffordOp(MUL, target, gamma=gamma)


def phase(gamma: int, target: int) -> CliffordOp:
    return CliffordOp(PHASE, target, gamma=gamma)


def add(control: int, target: int) -> CliffordOp:
    return CliffordOp(ADD, target, control=control)


@dataclass(frozen=True)
class RowOp:
    """A generating-set operation; row indices are 1-based."""

    kind: str
    dest: int
    src: Optional[int] = None
    scalar: Optional[int] = None

    def __str__(self):
        if self.kind == SWAP:
            return f"SWAP({self.dest},{self.src})"
        if self.kind == SCALE:
            return f"SCALE({self.dest},{self.scalar})"
        return f"R{self.dest} += {self.scalar}*R{self.src}"


def row_op_swap(i: int, j: int) -> RowOp:
    return RowOp(SWAP, i, src=j)


def row_op_addmul(dest: int, src: int, scalar: int) -> RowOp:
    return RowOp(ADDMUL, dest, src=src, scalar=scalar)


def row_op_scale(i: int, scalar: int) -> RowOp:
    return RowOp(SCALE, i, scalar=scalar)


@dataclass(frozen=True)
class CheckMatrix:
    field: GaloisField
    n: int
    rows: Tuple[Row, ...]

    def __post_init__(self):
        for x, z in self.rows:
            if len(x) != self.n or len(z) != self.n:
                raise DimensionMismatchError("every row needs n entries on each side")
            for v in x + z:
                self.field.check(v)

    @classmethod
    def from_rows(cls, field: GaloisField, rows: Sequence[Sequence[Sequence[int]]],
                  n: Optional[int] = None) -> "CheckMatrix":
        rows = tuple((tuple(x), tuple(z)) for x, z in rows)
        if n is None:
            if not rows:
                raise ValueError("n is required for an empty matrix")
            n = len(rows[0][0])
        return cls(field, n, rows)

    @property
    def row_count(self) -> int:
        return len(self.rows)

    def row(self, i: int) -> Row:
        """1-based row access."""
        self._check_row_index(i)
        return self.rows[i - 1]

    def _check_row_index(self, i: int):
        if not 1 <= i <= len(self.rows):
            raise IndexOutOfRangeError(f"row {i} outside 1..{len(self.rows)}")

    def _check_col_index(self, i: int):
        if not 1 <= i <= self.n:
            raise IndexOutOfRangeError(f"qudit {i} outside 1..{self.n}")

    def product(self, i: int, j: int) -> int:
        """Symplectic product of rows i and j (1-based)."""
        return symplectic_product(self.field, self.row(i), self.row(j))

    def symplectic_table(self) -> Tuple[Tuple[int, ...], ...]:
        """Full antisymmetric Gram table of the rows over F_p."""
        r = self.row_count
        return tuple(
            tuple(symplectic_product(self.field, self.rows[i], self.rows[j])
                  for j in range(r))
            for i in range(r))

    def flat_rows(self):
        """Rows as length-2n integer vectors (x then z)."""
        return [list(x) + list(z) for x, z in self.rows]

    def rows_independent(self) -> bool:
        """On-demand check that no nontrivial F_p-combination of rows vanishes."""
        _, pivots = rref_mod_p(_prime_expanded_rows(self), self.field.p)
        return len(pivots) == self.row_count


# ---------------------------------------------------------------------------
# row operations
# ---------------------------------------------------------------------------

def _scalar_domain_check(field: GaloisField, scalar: int):
    limit = field.q if field.m == 1 else field.p
    if not isinstance(scalar, int) or not 0 <= scalar < limit:
        raise BadScalarError(
            f"scalar {scalar!r} outside the allowed domain 0..{limit - 1}")


def row_add(m: CheckMatrix, dest: int, src: int, scalar: int) -> CheckMatrix:
    """dest <- dest + scalar * src; the generated group is unchanged."""
    m._check_row_index(dest)
    m._check_row_index(src)
    if dest == src:
        raise IndexOutOfRangeError("dest and src must differ")
    _scalar_domain_check(m.field, scalar)
    f = m.field
    xd, zd = m.rows[dest - 1]
    xs, zs = m.rows[src - 1]
    new = (tuple(f.add(a, f.scale(scalar, b) if f.m > 1 else f.mul(scalar, b))
                 for a, b in zip(xd, xs)),
           tuple(f.add(a, f.scale(scalar, b) if f.m > 1 else f.mul(scalar, b))
                 for a, b in zip(zd, zs)))
    rows = list(m.rows)
    rows[dest - 1] = new
    return CheckMatrix(f, m.n, tuple(rows))


def row_swap(m: CheckMatrix, i: int, j: int) -> CheckMatrix:
    m._check_row_index(i)
    m._check_row_index(j)
    rows = list(m.rows)
    rows[i - 1], rows[j - 1] = rows[j - 1], rows[i - 1]
    return CheckMatrix(m.field, m.n, tuple(rows))


def row_scale(m: CheckMatrix, i: int, scalar: int) -> CheckMatrix:
    """i <- scalar * i with scalar invertible (generator power)."""
    m._check_row_index(i)
    _scalar_domain_check(m.field, scalar)
    if scalar % m.field.p == 0:
        raise BadScalarError("SCALE scalar must be nonzero")
    f = m.field
    x, z = m.rows[i - 1]
    scl = (lambda v: f.scale(scalar, v)) if f.m > 1 else (lambda v: f.mul(scalar, v))
    rows = list(m.rows)
    rows[i - 1] = (tuple(scl(v) for v in x), tuple(scl(v) for v in z))
    return CheckMatrix(f, m.n, tuple(rows))


def apply_row_op(m: CheckMatrix, op: RowOp) -> CheckMatrix:
    if op.kind == SWAP:
        return row_swap(m, op.dest, op.src)
    if op.kind == ADDMUL:
        return row_add(m, op.dest, op.src, op.scalar)
    if op.kind == SCALE:
        return row_scale(m, op.dest, op.scalar)
    raise ValueError(f"unknown row op kind {op.kind!r}")


# ---------------------------------------------------------------------------
# Clifford column operations
# ---------------------------------------------------------------------------

def apply_clifford(m: CheckMatrix, op: CliffordOp) -> CheckMatrix:
    """Column action of a Clifford gate on every row."""
    f = m.field
    t = op.target
    m._check_col_index(t)
    ti = t - 1
    rows = []
    if op.kind == DFT:
        for x, z in m.rows:
            xl, zl = list(x), list(z)
            xl[ti], zl[ti] = zl[ti], f.neg(xl[ti])
            rows.append((tuple(xl), tuple(zl)))
    elif op.kind == MUL:
        g = op.gamma
        if not isinstance(g, int) or not 0 <= g < f.q:
            raise NonInvertibleGammaError(f"MUL gamma {g!r} is not a field element")
        if g == 0:
            raise NonInvertibleGammaError("MUL gamma must be invertible")
        ginv = f.inv(g)
        for x, z in m.rows:
            xl, zl = list(x), list(z)
            xl[ti] = f.mul(ginv, xl[ti])
            zl[ti] = f.mul(g, zl[ti])
            rows.append((tuple(xl), tuple(zl)))
    elif op.kind == PHASE:
        g = op.gamma
        if not isinstance(g, int) or not 0 <= g < f.q:
            raise NonInvertibleGammaError(f"PHASE gamma {g!r} is not a field element")
        for x, z in m.rows:
            xl, zl = list(x), list(z)
            zl[ti] = f.add(zl[ti], f.mul(g, xl[ti]))
            rows.append((tuple(xl), tuple(zl)))
    elif op.kind == ADD:
        c = op.control
        m._check_col_index(c)
        if c == t:
            raise IndexOutOfRangeError("ADD control and target must differ")
        ci = c - 1
        for x, z in m.rows:
            xl, zl = list(x), list(z)
            xl[ti] = f.add(xl[ti], xl[ci])
            zl[ci] = f.sub(zl[ci], zl[ti])
            rows.append((tuple(xl), tuple(zl)))
    else:
        raise ValueError(f"unknown clifford op kind {op.kind!r}")
    return CheckMatrix(f, m.n, tuple(rows))


def apply_ops(m: CheckMatrix, ops) -> CheckMatrix:
    """Fold a mixed sequence of RowOp / CliffordOp over the matrix."""
    for op in ops:
        m = apply_row_op(m, op) if isinstance(op, RowOp) else apply_clifford(m, op)
    return m


def replay_steps(m: CheckMatrix, ops):
    """Yield (op, matrix-after-op) pairs; useful for invariant auditing."""
    for op in ops:
        m = apply_row_op(m, op) if isinstance(op, RowOp) else apply_clifford(m, op)
        yield op, m


# ---------------------------------------------------------------------------
# row-space comparison
# ---------------------------------------------------------------------------

def _prime_expanded_rows(m: CheckMatrix):
    """Rows as F_p vectors; each GF(p^m) entry becomes m base-p digits."""
    f = m.field
    if f.m == 1:
        return m.flat_rows()
    out = []
    for x, z in m.rows:
        vec = []
        for v in x + z:
            vec.extend(f.digits(v))
        out.append(vec)
    return out


def row_space_equal(m1: CheckMatrix, m2: CheckMatrix) -> bool:
    """True iff the rows span the same F_p-space (phaseless group equality)."""
    if m1.field != m2.field or m1.n != m2.n:
        raise DimensionMismatchError("matrices live on different spaces")
    p = m1.field.p
    r1, _ = rref_mod_p(_prime_expanded_rows(m1), p)
    r2, _ = rref_mod_p(_prime_expanded_rows(m2), p)
    return r1 == r2


# ---------------------------------------------------------------------------
# parsing / serialization
# ---------------------------------------------------------------------------

def _tokenize(text: str):
    """Yield (token, line, column) with comments stripped; 1-based locations."""
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        i, length = 0, len(line)
        while i < length:
            if line[i].isspace():
                i += 1
                continue
            start = i
            while i < length and not line[i].isspace():
                i += 1
            yield line[start:i], ln, start + 1


class _TokenStream:
    def __init__(self, text):
        self.toks = list(_tokenize(text))
        self.pos = 0

    def next(self, what):
        if self.pos >= len(self.toks):
            last = self.toks[-1] if self.toks else (None, 1, 1)
            raise ParseError(f"unexpected end of input, expected {what}",
                             line=last[1], column=last[2])
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def next_int(self, what):
        tok, ln, col = self.next(what)
        try:
            return int(tok), ln, col
        except ValueError:
            raise ParseError(f"expected {what}, got {tok!r}", line=ln, column=col) from None

    @property
    def exhausted(self):
        return self.pos >= len(self.toks)


def parse_check_matrix(text: str) -> CheckMatrix:
    ts = _TokenStream(text)
    magic, ln, col = ts.next("EACM header")
    if magic != "EACM":
        raise ParseError(f"expected 'EACM' magic, got {magic!r}", line=ln, column=col)
    p, _, _ = ts.next_int("p")
    m, _, _ = ts.next_int("m")
    n, ln, col = ts.next_int("n")
    if n < 1:
        raise ParseError("n must be >= 1", line=ln, column=col)
    r, ln, col = ts.next_int("r")
    if r < 0:
        raise ParseError("r must be >= 0", line=ln, column=col)
    modulus = None
    if m > 1:
        tok, ln, col = ts.next("'poly' line")
        if tok != "poly":
            raise ParseError(f"expected 'poly' for m > 1, got {tok!r}", line=ln, column=col)
        modulus = []
        for _ in range(m + 1):
            v, _, _ = ts.next_int("polynomial coefficient")
            modulus.append(v)
    try:
        field = make_field(p, m, modulus)
    except (EaqecError, ValueError) as exc:
        raise ParseError(f"invalid field declaration: {exc}") from exc
    rows = []
    for _ in range(r):
        x = []
        for _ in range(n):
            v, ln, col = ts.next_int("field element")
            if not 0 <= v < field.q:
                raise EntryOutOfRangeError(
                    f"entry {v} outside 0..{field.q - 1}", line=ln, column=col)
            x.append(v)
        bar, ln, col = ts.next("'|' separator")
        if bar != "|":
            raise ParseError(f"expected '|', got {bar!r}", line=ln, column=col)
        z = []
        for _ in range(n):
            v, ln, col = ts.next_int("field element")
            if not 0 <= v < field.q:
                raise EntryOutOfRangeError(
                    f"entry {v} outside 0..{field.q - 1}", line=ln, column=col)
            z.append(v)
        rows.append((tuple(x), tuple(z)))
    if not ts.exhausted:
        tok, ln, col = ts.next("")
        raise ParseError(f"trailing token {tok!r}", line=ln, column=col)
    return CheckMatrix(field, n, tuple(rows))


def serialize_check_matrix(m: CheckMatrix) -> str:
    f = m.field
    lines = [f"EACM {f.p} {f.m} {m.n} {m.row_count}"]
    if f.m > 1:
        lines.append("poly " + " ".join(str(c) for c in f.modulus))
    for x, z in m.rows:
        lines.append(" ".join(str(v) for v in x) + " | " + " ".join(str(v) for v in z))
    return "\n".join(lines) + "\n"
