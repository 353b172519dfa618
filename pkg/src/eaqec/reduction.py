"""Reduction of a check matrix to canonical hyperbolic form.

The algorithm repeatedly locates a non-commuting pair of generators,
normalizes its symplectic product to 1 (by mixing in a third generator, a
la the classical pair-normalization trick, or in `normalized` mode by
rescaling a generator), and clears the pair to ( e_t | 0 ), ( 0 | e_t )
with column operations confined to qudits >= t.  Remaining generators all
commute and are swept into pure-Z rows ( 0 | e_t ).  The result is, in row
order:

    ( e_1 | 0 ), ( 0 | e_1 ), .., ( e_c | 0 ), ( 0 | e_c ),
    ( 0 | e_{c+1} ), .., ( 0 | e_{c+a} )

so c counts ebits, a = rows - 2c counts ancillas, and k = n - a - c.

Modes:

* ``strict``     - only SWAP/ADDMUL row operations.  A residual 2-row
                   block whose product is neither 0 nor 1 cannot be
                   repaired and raises NotConstructibleError.
* ``normalized`` - additionally allows SCALE row operations (replacing a
                   generator by a power of itself), which makes every
                   instance reducible; it follows exactly the strict path
                   and rescales only where strict would fail, so whenever
                   strict succeeds both modes emit the same operation log.

Every emitted operation is recorded; replaying the log over the input
reproduces the canonical matrix bit for bit.  In either mode, 2c equals
the F_p-rank of the input's antisymmetric Gram matrix.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Tuple

from .checkmatrix import (
    ADD,
    ADDMUL,
    DFT,
    MUL,
    PHASE,
    SCALE,
    SWAP,
    CheckMatrix,
    CliffordOp,
    RowOp,
    add,
    apply_clifford,
    apply_ops,
    apply_row_op,
    dft,
    mul,
    phase,
    row_op_addmul,
    row_op_scale,
    row_op_swap,
)
from .errors import (
    DependentRowsError,
    InconsistentCountsError,
    NonPrimeFieldError,
    NotConstructibleError,
    ReductionFailedError,
    ZeroA2Error,
)
from .linalg import rank_mod_p

STRICT = "strict"
NORMALIZED = "normalized"


@dataclass(frozen=True)
class ReductionResult:
    source: CheckMatrix
    canonical: CheckMatrix
    oplog: Tuple
    c: int
    a: int
    k: int
    mode: str
    augmented: CheckMatrix

    @property
    def params(self):
        f = self.source.field
        return {"n": self.source.n, "k": self.k, "c": self.c, "a": self.a,
                "p": f.p, "m": f.m}

    def display(self) -> str:
        return f"[[{self.source.n},{self.k};{self.c}]]_{self.source.field.q}"


def normalize_pair(p: int, a1: int, a2: int) -> int:
    """Multiplier m with a1 + m*a2 = 1 (mod p); the pair-repair coefficient."""
    if a2 % p == 0:
        raise ZeroA2Error("a2 must be nonzero mod p")
    return ((1 - a1) * pow(a2 % p, -1, p)) % p


def code_params(n: int, row_count: int, c: int) -> Tuple[int, int]:
    """(ancillas, logicals) from qudit, generator and ebit counts."""
    if not (0 <= 2 * c <= row_count <= n + c):
        raise InconsistentCountsError(
            f"need 0 <= 2c <= rows <= n + c, got n={n} rows={row_count} c={c}")
    a = row_count - 2 * c
    return a, n - a - c


def gram_matrix(m: CheckMatrix):
    """Antisymmetric table of all pairwise symplectic products, over F_p."""
    return [list(row) for row in m.symplectic_table()]


class _Reducer:
    """Single-use state machine; tracks the working matrix and the op log."""

    def __init__(self, matrix: CheckMatrix, mode: str):
        self.field = matrix.field
        self.p = matrix.field.p
        self.n = matrix.n
        self.mode = mode
        self.work = matrix
        self.ops = []

    # -- op emission (identity ops are skipped so logs stay minimal) --

    def row(self, op: RowOp):
        self.work = apply_row_op(self.work, op)
        self.ops.append(op)

    def gate(self, op: CliffordOp):
        self.work = apply_clifford(self.work, op)
        self.ops.append(op)

    def swap_rows(self, i, j):
        if i != j:
            self.row(row_op_swap(i, j))

    def addmul(self, dest, src, scalar):
        if scalar % self.p:
            self.row(row_op_addmul(dest, src, scalar % self.p))

    def add_times(self, ctl, tgt, times):
        for _ in range(times % self.p):
            self.gate(add(ctl, tgt))

    def x(self, r, col):
        return self.work.rows[r - 1][0][col - 1]

    def z(self, r, col):
        return self.work.rows[r - 1][1][col - 1]

    def product(self, i, j):
        return self.work.product(i, j)

    # -- pivot handling --

    def find_pivot(self, start):
        """Lexicographically first non-commuting pair among rows >= start."""
        r = self.work.row_count
        for i in range(start, r + 1):
            for j in range(i + 1, r + 1):
                if self.product(i, j) != 0:
                    return i, j
        return None

    def normalize_product(self, s):
        """Make product(row s, row s+1) = 1 using rows > s."""
        r = self.work.row_count
        v = self.product(s, s + 1)
        if v == 1:
            return
        j2 = next((j for j in range(s + 2, r + 1) if self.product(s, j) != 0), None)
        if j2 is not None:
            self.addmul(s + 1, j2, normalize_pair(self.p, v, self.product(s, j2)))
            return
        # row s+1 is the only partner; v != 0 here because a pivot was found
        if r >= s + 2:
            # borrow a commuting row, give it product 1, swap it into place
            self.addmul(s + 2, s + 1, normalize_pair(self.p, 0, v))
            self.swap_rows(s + 1, s + 2)
            return
        if self.mode == NORMALIZED:
            self.row(row_op_scale(s + 1, pow(v, -1, self.p)))
            return
        raise NotConstructibleError(
            f"residual 2-row block has symplectic product {v}, not 0 or 1")

    # -- column clearing --

    def make_unit_x_row(self, s, t):
        """Drive row s to ( e_t | 0 ) using columns >= t only."""
        n = self.n
        # pivot an X entry into column t (ADD preferred, DFT to swap sides)
        if self.x(s, t) == 0:
            cx = next((c for c in range(t + 1, n + 1) if self.x(s, c) != 0), None)
            if cx is not None:
                self.gate(add(cx, t))
            elif self.z(s, t) != 0:
                self.gate(dft(t))
            else:
                cz = next((c for c in range(t + 1, n + 1) if self.z(s, c) != 0), None)
                if cz is None:
                    raise DependentRowsError("generator row vanished during reduction")
                self.gate(dft(cz))
                self.gate(add(cz, t))
        # scale the pivot to 1
        g = self.x(s, t)
        if g != 1:
            self.gate(mul(g, t))
        # clear the rest of the X side
        for c in range(t + 1, n + 1):
            self.add_times(t, c, -self.x(s, c))
        # clear the Z diagonal entry
        zt = self.z(s, t)
        if zt != 0:
            self.gate(phase((-zt) % self.p, t))
        # clear the rest of the Z side (swap each entry to the X side first)
        for c in range(t + 1, n + 1):
            zc = self.z(s, c)
            if zc != 0:
                self.gate(dft(c))
                self.add_times(t, c, -self.x(s, c))

    def clear_pair(self, s, t):
        """Rows s, s+1 with product 1 -> ( e_t | 0 ), ( 0 | e_t )."""
        self.make_unit_x_row(s, t)
        # partner row: its z_t equals the symplectic product, i.e. 1 already
        w = s + 1
        for c in range(t + 1, self.n + 1):
            zc = self.z(w, c)
            if zc != 0:
                self.add_times(c, t, zc)
            if self.x(w, c) != 0:
                self.gate(dft(c))
                self.add_times(c, t, self.z(w, c))
        # only column t remains; cancel the X part against row s
        self.addmul(w, s, -self.x(w, t))

    def make_unit_z_row(self, s, t):
        """Drive commuting row s to ( 0 | e_t ) using columns >= t only."""
        n = self.n
        has_x = any(self.x(s, c) != 0 for c in range(t, n + 1))
        if has_x:
            self.make_unit_x_row(s, t)
            self.gate(dft(t))
            if self.p > 2:
                self.gate(mul(self.p - 1, t))
            return
        if self.z(s, t) == 0:
            cz = next((c for c in range(t + 1, n + 1) if self.z(s, c) != 0), None)
            if cz is None:
                raise DependentRowsError("generator row vanished during reduction")
            self.gate(add(t, cz))
        zt = self.z(s, t)
        if zt != 1:
            self.gate(mul(pow(zt, -1, self.p), t))
        for c in range(t + 1, n + 1):
            self.add_times(c, t, self.z(s, c))

    def eliminate_column(self, s_x, s_z, t, start):
        """Row-reduce column t out of rows >= start using the finished pair."""
        for v in range(start, self.work.row_count + 1):
            if s_x is not None:
                self.addmul(v, s_x, -self.x(v, t))
            if s_z is not None:
                self.addmul(v, s_z, -self.z(v, t))

    def run(self) -> Tuple[CheckMatrix, list, int]:
        pairs = 0
        while True:
            s = 2 * pairs + 1
            pivot = self.find_pivot(s)
            if pivot is None:
                break
            i, _ = pivot
            self.swap_rows(s, i)
            self.normalize_product(s)
            t = pairs + 1
            self.clear_pair(s, t)
            self.eliminate_column(s, s + 1, t, s + 2)
            pairs += 1
        c = pairs
        for idx in range(2 * c + 1, self.work.row_count + 1):
            t = c + (idx - 2 * c)
            self.make_unit_z_row(idx, t)
            self.eliminate_column(None, idx, t, idx + 1)
        return self.work, self.ops, c


def _canonical_layout(field, n, c, a):
    rows = []
    for i in range(c):
        ex = [0] * n
        ex[i] = 1
        rows.append((tuple(ex), (0,) * n))
        rows.append(((0,) * n, tuple(ex)))
    for i in range(a):
        ez = [0] * n
        ez[c + i] = 1
        rows.append(((0,) * n, tuple(ez)))
    return tuple(rows)


def reduce_matrix(matrix: CheckMatrix, mode: str = STRICT) -> ReductionResult:
    """Full reduction: canonical form, op log, (c, a, k) and ebit-augmented matrix."""
    if mode not in (STRICT, NORMALIZED):
        raise ValueError(f"mode must be {STRICT!r} or {NORMALIZED!r}")
    field = matrix.field
    if field.m != 1:
        raise NonPrimeFieldError("reduction is defined over prime fields only")
    r = matrix.row_count
    if rank_mod_p(matrix.flat_rows(), field.p) != r:
        raise DependentRowsError("input rows are linearly dependent over F_p")
    reducer = _Reducer(matrix, mode)
    canonical, ops, c = reducer.run()
    a, k = code_params(matrix.n, r, c)
    if canonical.rows != _canonical_layout(field, matrix.n, c, a):
        raise ReductionFailedError("internal error: canonical layout violated")
    prelim = ReductionResult(
        source=matrix, canonical=canonical, oplog=tuple(ops),
        c=c, a=a, k=k, mode=mode, augmented=canonical)
    return dataclasses.replace(prelim, augmented=augment_ebits(prelim))


def augment_ebits(result: ReductionResult) -> CheckMatrix:
    """Append one receiver column per hyperbolic pair.

    The X row of pair t gains x = 1 and its Z partner gains z = p - 1 in
    receiver column n + t, which makes the whole generator set abelian.
    """
    canonical = result.canonical
    field = canonical.field
    n, c = canonical.n, result.c
    if c == 0:
        return canonical
    rows = []
    for idx, (x, z) in enumerate(canonical.rows):
        bob_x, bob_z = [0] * c, [0] * c
        if idx < 2 * c:
            pair, is_z = divmod(idx, 2)
            if is_z:
                bob_z[pair] = field.p - 1
            else:
                bob_x[pair] = 1
        rows.append((tuple(x) + tuple(bob_x), tuple(z) + tuple(bob_z)))
    return CheckMatrix(field, n + c, tuple(rows))


# ---------------------------------------------------------------------------
# replay helpers
# ---------------------------------------------------------------------------

def replay(matrix: CheckMatrix, ops) -> CheckMatrix:
    """Fold the op log forward; reproduces `canonical` from `source`."""
    return apply_ops(matrix, ops)


def inverse_ops(ops, field):
    """Inverted log in reverse order; gate set closed under repetition."""
    out = []
    p = field.p
    for op in reversed(list(ops)):
        if isinstance(op, RowOp):
            if op.kind == SWAP:
                out.append(op)
            elif op.kind == ADDMUL:
                out.append(row_op_addmul(op.dest, op.src, (-op.scalar) % p))
            elif op.kind == SCALE:
                out.append(row_op_scale(op.dest, pow(op.scalar, -1, p)))
            else:
                raise ValueError(f"unknown row op {op!r}")
        elif op.kind == DFT:
            out.extend([dft(op.target)] * 3)
        elif op.kind == MUL:
            out.append(mul(field.inv(op.gamma), op.target))
        elif op.kind == PHASE:
            out.append(phase(field.neg(op.gamma), op.target))
        elif op.kind == ADD:
            out.extend([add(op.control, op.target)] * (p - 1))
        else:
            raise ValueError(f"unknown op {op!r}")
    return out


def augmented_source(result: ReductionResult) -> CheckMatrix:
    """The input generators carrying their induced receiver-column entries.

    Obtained by replaying the inverted full op log over the augmented
    canonical matrix; the sender-side part equals the input matrix exactly.
    """
    return apply_ops(result.augmented, inverse_ops(result.oplog, result.source.field))


def encoded_generators(result: ReductionResult) -> CheckMatrix:
    """Augmented canonical rows pushed through the inverted column operations.

    Row order (and hence the pair / isotropic split) is preserved because
    row operations are excluded; the row space equals augmented_source's.
    """
    gates = inverse_ops(
        [op for op in result.oplog if isinstance(op, CliffordOp)],
        result.source.field)
    return apply_ops(result.augmented, gates)
