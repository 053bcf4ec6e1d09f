"""Matrices over a Euclidean domain and the Smith normal form.

The reduction is classical norm-descent elimination: pick the minimal-norm
nonzero entry as pivot (lowest (row, col) on ties), clear its row and column
with Euclidean division, restart whenever a division leaves a remainder, and
repair the divisibility chain by folding offending rows back in.  The
unimodular transforms P, Q are accumulated alongside.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .rings import GaussInt, Ring, get_ring


@dataclass
class RingMatrix:
    """Dense exact matrix over one of the supported rings."""

    ring: Ring
    entries: list  # list of rows

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise ValueError("matrix must be non-empty")
        width = len(self.entries[0])
        self.entries = [
            [self.ring.coerce(x) for x in row] for row in self.entries
        ]
        for row in self.entries:
            if len(row) != width:
                raise ValueError("ragged matrix")

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @classmethod
    def identity(cls, ring: Ring, n: int) -> RingMatrix:
        one, zero = ring.one(), ring.zero()
        return cls(ring, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, ring: Ring, diag: list) -> RingMatrix:
        zero = ring.zero()
        n = len(diag)
        return cls(ring, [[diag[i] if i == j else zero for j in range(n)] for i in range(n)])

    def copy(self) -> RingMatrix:
        return RingMatrix(self.ring, [row[:] for row in self.entries])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: RingMatrix) -> RingMatrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        r = self.ring
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = r.zero()
                for k in range(self.cols):
                    acc = r.add(acc, r.mul(self.entries[i][k], other.entries[k][j]))
                row.append(acc)
            out.append(row)
        return RingMatrix(r, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingMatrix):
            return NotImplemented
        if self.ring is not other.ring or self.rows != other.rows or self.cols != other.cols:
            return False
        return all(
            self.ring.eq(a, b)
            for ra, rb in zip(self.entries, other.entries)
            for a, b in zip(ra, rb)
        )

    def transpose(self) -> RingMatrix:
        return RingMatrix(
            self.ring,
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
        )

    def is_zero(self) -> bool:
        return all(self.ring.is_zero(x) for row in self.entries for x in row)


def determinant(a: RingMatrix):
    """Fraction-free (Bareiss) determinant; all divisions are exact."""
    if a.rows != a.cols:
        raise ValueError("determinant of a non-square matrix")
    r = a.ring
    m = [row[:] for row in a.entries]
    n = a.rows
    sign_flip = False
    prev = r.one()
    for k in range(n - 1):
        if r.is_zero(m[k][k]):
            for i in range(k + 1, n):
                if not r.is_zero(m[i][k]):
                    m[k], m[i] = m[i], m[k]
                    sign_flip = not sign_flip
                    break
            else:
                return r.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = r.sub(r.mul(m[i][j], m[k][k]), r.mul(m[i][k], m[k][j]))
                m[i][j] = r.exact_div(num, prev)
            m[i][k] = r.zero()
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return r.neg(det) if sign_flip else det


@dataclass
class SnfResult:
    """Diagonal d with unimodular p, q such that p @ a @ q == diag(d)."""

    d: list
    p: RingMatrix
    q: RingMatrix
    ring: Ring = field(repr=False, default=None)

    def diagonal_matrix(self, rows: int, cols: int) -> RingMatrix:
        zero = self.ring.zero()
        out = [[zero for _ in range(cols)] for _ in range(rows)]
        for i, v in enumerate(self.d):
            out[i][i] = v
        return RingMatrix(self.ring, out)

    def invariant_factors(self) -> list:
        """Nonzero non-unit diagonal entries, in chain order."""
        return [v for v in self.d if not self.ring.is_zero(v) and not self.ring.is_unit(v)]


class _Worker:
    """Mutable elimination state: A plus the accumulated P (rows), Q (cols)."""

    def __init__(self, a: RingMatrix):
        self.r = a.ring
        self.a = [row[:] for row in a.entries]
        self.m = a.rows
        self.n = a.cols
        self.p = RingMatrix.identity(a.ring, a.rows).entries
        self.q = RingMatrix.identity(a.ring, a.cols).entries

    def swap_rows(self, i, j):
        if i != j:
            self.a[i], self.a[j] = self.a[j], self.a[i]
            self.p[i], self.p[j] = self.p[j], self.p[i]

    def swap_cols(self, i, j):
        if i != j:
            for row in self.a:
                row[i], row[j] = row[j], row[i]
            for row in self.q:
                row[i], row[j] = row[j], row[i]

    def row_addmul(self, i, j, c):
        # row_i += c * row_j
        r = self.r
        self.a[i] = [r.add(x, r.mul(c, y)) for x, y in zip(self.a[i], self.a[j])]
        self.p[i] = [r.add(x, r.mul(c, y)) for x, y in zip(self.p[i], self.p[j])]

    def col_addmul(self, i, j, c):
        # col_i += c * col_j
        r = self.r
        for row in self.a:
            row[i] = r.add(row[i], r.mul(c, row[j]))
        for row in self.q:
            row[i] = r.add(row[i], r.mul(c, row[j]))

    def scale_row(self, i, u):
        r = self.r
        self.a[i] = [r.mul(u, x) for x in self.a[i]]
        self.p[i] = [r.mul(u, x) for x in self.p[i]]

    def min_pivot(self, t):
        r = self.r
        best = None
        for i in range(t, self.m):
            for j in range(t, self.n):
                x = self.a[i][j]
                if r.is_zero(x):
                    continue
                key = (r.norm(x), i, j)
                if best is None or key < best:
                    best = key
        return None if best is None else (best[1], best[2])


def smith_normal_form(a: RingMatrix) -> SnfResult:
    """Smith normal form with canonical-associate diagonal entries."""
    w = _Worker(a)
    r = w.r
    t = 0
    steps = min(w.m, w.n)
    while t < steps:
        loc = w.min_pivot(t)
        if loc is None:
            break
        w.swap_rows(t, loc[0])
        w.swap_cols(t, loc[1])
        # clear column t and row t; restart on any nonzero remainder because
        # the remainder has strictly smaller norm than the current pivot
        while True:
            dirty = False
            for i in range(t + 1, w.m):
                if r.is_zero(w.a[i][t]):
                    continue
                q, rem = r.divmod(w.a[i][t], w.a[t][t])
                w.row_addmul(i, t, r.neg(q))
                if not r.is_zero(rem):
                    w.swap_rows(i, t)
                    dirty = True
            for j in range(t + 1, w.n):
                if r.is_zero(w.a[t][j]):
                    continue
                q, rem = r.divmod(w.a[t][j], w.a[t][t])
                w.col_addmul(j, t, r.neg(q))
                if not r.is_zero(rem):
                    w.swap_cols(j, t)
                    dirty = True
            if not dirty:
                break
        # pivot must divide every remaining entry to keep the chain
        viol = None
        pivot = w.a[t][t]
        for i in range(t + 1, w.m):
            for j in range(t + 1, w.n):
                if not r.divides(pivot, w.a[i][j]):
                    viol = i
                    break
            if viol is not None:
                break
        if viol is not None:
            w.row_addmul(t, viol, r.one())
            continue
        t += 1
    for i in range(min(w.m, w.n)):
        x = w.a[i][i]
        if not r.is_zero(x):
            u = r.canonical_unit(x)
            if not r.eq(u, r.one()):
                w.scale_row(i, u)
    d = [w.a[i][i] for i in range(min(w.m, w.n))]
    return SnfResult(
        d=d,
        p=RingMatrix(r, w.p),
        q=RingMatrix(r, w.q),
        ring=r,
    )


def invariant_factors_of_quotient(j: RingMatrix) -> list:
    """Non-unit invariant factors of a nonsingular square transition matrix."""
    if j.rows != j.cols:
        raise ValueError("transition matrix must be square")
    res = smith_normal_form(j)
    if any(j.ring.is_zero(v) for v in res.d):
        raise ValueError("transition matrix is singular; the quotient is not finite")
    return res.invariant_factors()


def matrix_inverse_unimodular(u: RingMatrix) -> RingMatrix:
    """Exact inverse of a matrix whose determinant is a unit."""
    if u.rows != u.cols:
        raise ValueError("only square matrices can be inverted")
    r = u.ring
    res = smith_normal_form(u)
    if not all(r.is_unit(v) for v in res.d):
        raise ValueError("matrix is not unimodular")
    # p @ u @ q = diag(d)  =>  u^-1 = q @ diag(d^-1) @ p
    dinv = RingMatrix.diagonal(r, [r.unit_inverse(v) for v in res.d])
    return res.q @ dinv @ res.p


def matrix_to_json(a: RingMatrix) -> dict:
    if a.ring.name == "Z":
        entries = [x for row in a.entries for x in row]
    elif a.ring.name == "Zi":
        entries = [[x.re, x.im] for row in a.entries for x in row]
    else:
        raise ValueError("JSON matrices support rings Z and Zi only")
    return {"ring": a.ring.name, "rows": a.rows, "cols": a.cols, "entries": entries}


def matrix_from_json(obj: dict) -> RingMatrix:
    ring = get_ring(obj["ring"])
    rows, cols = int(obj["rows"]), int(obj["cols"])
    flat = obj["entries"]
    if len(flat) != rows * cols:
        raise ValueError(f"expected {rows * cols} entries, got {len(flat)}")
    if ring.name == "Z":
        elems = [ring.coerce(int(x)) for x in flat]
    elif ring.name == "Zi":
        elems = []
        for item in flat:
            if isinstance(item, (int, float)):
                elems.append(ring.from_int(int(item)))
            else:
                re, im = item
                elems.append(GaussInt(int(re), int(im)))
    else:
        raise ValueError("JSON matrices support rings Z and Zi only")
    entries = [elems[i * cols : (i + 1) * cols] for i in range(rows)]
    return RingMatrix(ring, entries)
