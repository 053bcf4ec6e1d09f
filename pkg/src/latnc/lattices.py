"""Nested lattice quotients and their linear labelings.

The exact algebra (generator matrices over T, the transition matrix J, the
labeling transforms) is kept separate from floating-point geometry, so
kernel/homomorphism checks never touch floats.  Quantization here covers the
coordinate-wise case (coarse lattice a scalar multiple of Z[i]^n); structured
fine-lattice quantizers live in the codec.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .rings import Residue, Ring, ZI, Z
from .smith import (
    RingMatrix,
    SnfResult,
    determinant,
    matrix_inverse_unimodular,
    smith_normal_form,
)


def round_gauss_array(z: np.ndarray) -> np.ndarray:
    """Componentwise nearest Gaussian integer, halves toward -infinity."""
    z = np.asarray(z, dtype=np.complex128)
    return np.ceil(z.real - 0.5) + 1j * np.ceil(z.imag - 0.5)


def reduce_mod_scalar(z: np.ndarray, c: complex) -> np.ndarray:
    """Reduce componentwise modulo the lattice c * Z[i]."""
    z = np.asarray(z, dtype=np.complex128)
    return z - c * round_gauss_array(z / c)


@dataclass
class LatticeQuotient:
    """Nested pair fine/coarse given by G_coarse = J @ G_fine over T."""

    ring: Ring
    n: int
    g_fine: RingMatrix
    j: RingMatrix
    gamma: float | None = None
    unitary: np.ndarray | None = None

    def __post_init__(self):
        if self.g_fine.rows != self.n or self.g_fine.cols != self.n:
            raise ValueError("g_fine must be n x n")
        if self.j.rows != self.n or self.j.cols != self.n:
            raise ValueError("j must be n x n")
        if self.g_fine.ring is not self.ring or self.j.ring is not self.ring:
            raise ValueError("matrix ring does not match quotient ring")

    def index(self) -> int:
        """|fine/coarse| = |norm(det J)|."""
        d = determinant(self.j)
        if self.ring.is_zero(d):
            raise ValueError("transition matrix is singular")
        return self.ring.norm(d) if self.ring is not Z else abs(d)

    def coarse_scalar(self):
        """The scalar c with coarse generator c*I, if the quotient has one."""
        g_coarse = self.j @ self.g_fine
        c = g_coarse.entries[0][0]
        r = self.ring
        for i in range(self.n):
            for k in range(self.n):
                want = c if i == k else r.zero()
                if not r.eq(g_coarse.entries[i][k], want):
                    raise ValueError(
                        "coarse lattice is not a scalar multiple of Z[i]^n; "
                        "coordinate-wise quantization unsupported"
                    )
        return c

    def fine_volume(self) -> float:
        """Complex volume V(fine): for a Z[i]-lattice this is |det|^2."""
        if self.ring is not ZI:
            raise ValueError("complex volume convention requires ring Zi")
        return float(self.ring.norm(determinant(self.g_fine)))


@dataclass(frozen=True)
class Message:
    """Tuple of residues, component i modulo pi_i."""

    components: tuple

    def __len__(self) -> int:
        return len(self.components)

    def __getitem__(self, i) -> Residue:
        return self.components[i]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __add__(self, other: "Message") -> "Message":
        return Message(tuple(a + b for a, b in zip(self.components, other.components)))

    def __rmul__(self, scalar) -> "Message":
        return Message(tuple(c * scalar for c in self.components))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Message):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash(self.components)


@dataclass
class LinearLabeling:
    """Surjective T-module map fine -> prod T/<pi_i> with kernel = coarse.

    Coordinates are always taken against the quotient's own g_fine basis;
    q_tilde carries them to the normal-form basis where the label is just a
    componentwise reduction.
    """

    ring: Ring
    n: int
    pis: list
    q_tilde: RingMatrix
    q_tilde_inv: RingMatrix
    g_normal: RingMatrix
    snf: SnfResult | None = field(default=None, repr=False)

    @property
    def k(self) -> int:
        return len(self.pis)

    def moduli_reversed(self) -> list:
        """Largest modulus first; the packet-header layer consumes this."""
        return list(reversed(self.pis))

    def message_space_size(self) -> int:
        size = 1
        for pi in self.pis:
            size *= self.ring.norm(pi) if self.ring is not Z else abs(pi)
        return size

    def message_rate(self) -> float:
        if self.n == 0:
            return 0.0
        return math.log2(self.message_space_size()) / self.n

    def zero_message(self) -> Message:
        return Message(tuple(Residue(self.ring.zero(), pi, self.ring) for pi in self.pis))

    def message_from_values(self, values: Sequence) -> Message:
        if len(values) != self.k:
            raise ValueError(f"expected {self.k} components, got {len(values)}")
        return Message(
            tuple(Residue(self.ring.coerce(v), pi, self.ring) for v, pi in zip(values, self.pis))
        )

    def label(self, coords: Sequence) -> Message:
        """Label of the lattice point coords @ g_fine."""
        r = self.ring
        row = RingMatrix(r, [[r.coerce(x) for x in coords]])
        r_norm = (row @ self.q_tilde).entries[0]
        return Message(
            tuple(Residue(r_norm[i], self.pis[i], r) for i in range(self.k))
        )

    def embed(self, msg: Message) -> list:
        """Coordinates (in the g_fine basis) of the canonical preimage."""
        r = self.ring
        if len(msg) != self.k:
            raise ValueError("message does not match the labeling")
        r_norm = [msg[i].value for i in range(self.k)] + [r.zero()] * (self.n - self.k)
        row = RingMatrix(r, [r_norm])
        return (row @ self.q_tilde_inv).entries[0]

    def embed_point(self, msg: Message, quotient: LatticeQuotient) -> list:
        coords = self.embed(msg)
        row = RingMatrix(self.ring, [coords])
        return (row @ quotient.g_fine).entries[0]


def build_labeling(q: LatticeQuotient) -> LinearLabeling:
    """Construct the labeling from the Smith normal form of J."""
    r = q.ring
    res = smith_normal_form(q.j)
    if any(r.is_zero(v) for v in res.d):
        raise ValueError("transition matrix is singular; the quotient is not finite")
    n = q.n
    n_units = sum(1 for v in res.d if r.is_unit(v))
    k = n - n_units
    # move the non-unit block to the front: D~ = Pi D Pi^T
    perm = list(range(n_units, n)) + list(range(n_units))
    zero, one = r.zero(), r.one()
    pi_mat = RingMatrix(
        r, [[one if perm[i] == jj else zero for jj in range(n)] for i in range(n)]
    )
    q_tilde = res.q @ pi_mat.transpose()
    q_tilde_inv = matrix_inverse_unimodular(q_tilde)
    g_normal = q_tilde_inv @ q.g_fine
    pis = [res.d[n_units + i] for i in range(k)]
    return LinearLabeling(
        ring=r,
        n=n,
        pis=pis,
        q_tilde=q_tilde,
        q_tilde_inv=q_tilde_inv,
        g_normal=g_normal,
        snf=res,
    )


def mod_coarse(q: LatticeQuotient, x: np.ndarray) -> np.ndarray:
    """x mod coarse for coarse = c * Z[i]^n (optionally scaled/rotated)."""
    c = q.ring.to_complex(q.coarse_scalar())
    x = np.asarray(x, dtype=np.complex128)
    if q.unitary is not None:
        u = np.asarray(q.unitary, dtype=np.complex128)
        x = u.conj().T @ x
    scale = q.gamma if q.gamma is not None else 1.0
    y = scale * reduce_mod_scalar(x / scale, c)
    if q.unitary is not None:
        y = np.asarray(q.unitary, dtype=np.complex128) @ y
    return y


def min_intercoset_distance_bruteforce(
    q: LatticeQuotient,
    radius_bound: int,
    budget: int = 20_000_000,
    labeling: LinearLabeling | None = None,
) -> tuple[int, int]:
    """Exhaustive (d^2, kissing) over the coordinate box |r_i| <= bound.

    Valid whenever the box is large enough to contain every shortest vector
    of fine \\ coarse; the caller is responsible for choosing the bound.
    """
    if labeling is None:
        labeling = build_labeling(q)
    if labeling.k == 0:
        raise ValueError("fine and coarse lattices coincide; no inter-coset distance")
    r = q.ring
    span = range(-radius_bound, radius_bound + 1)
    if r is ZI:
        vals = np.array([complex(a, b) for a in span for b in span])
    elif r is Z:
        vals = np.array([complex(a) for a in span])
    else:
        raise ValueError("brute-force enumeration supports rings Z and Zi")
    v = len(vals)
    total = v**q.n
    if total > budget:
        raise ValueError(f"enumeration of {total} points exceeds budget {budget}")

    gc = np.array(
        [[r.to_complex(e) for e in row] for row in q.g_fine.entries], dtype=np.complex128
    )
    qt = np.array(
        [[r.to_complex(e) for e in row] for row in labeling.q_tilde.entries],
        dtype=np.complex128,
    )
    pis_c = [r.to_complex(pi) for pi in labeling.pis]

    best = None
    count = 0
    chunk = 1 << 16
    powers = [v**p for p in range(q.n)]
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        coords = np.empty((len(idx), q.n), dtype=np.complex128)
        for p in range(q.n):
            coords[:, p] = vals[(idx // powers[p]) % v]
        pts = coords @ gc
        norms = np.rint(np.sum(pts.real**2 + pts.imag**2, axis=1)).astype(np.int64)
        r_norm = coords @ qt
        non_coarse = np.zeros(len(idx), dtype=bool)
        for i, pi in enumerate(pis_c):
            rem = r_norm[:, i] - pi * round_gauss_array(r_norm[:, i] / pi)
            non_coarse |= np.abs(rem) > 1e-6
        norms = norms[non_coarse]
        if norms.size == 0:
            continue
        m = int(norms.min())
        c = int(np.count_nonzero(norms == m))
        if best is None or m < best:
            best, count = m, c
        elif m == best:
            count += c
    if best is None:
        raise ValueError("no non-coarse point found inside the box; enlarge the bound")
    return best, count


def nominal_coding_gain(d_sq: float, fine_volume: float, n: int) -> float:
    """d^2 / V(fine)^(1/n), scale-invariant figure of merit."""
    if d_sq <= 0 or fine_volume <= 0 or n <= 0:
        raise ValueError("inputs must be positive")
    return d_sq / fine_volume ** (1.0 / n)


def quotient_from_json(obj: dict) -> LatticeQuotient:
    from .smith import matrix_from_json

    g_fine = matrix_from_json(obj["g_fine"])
    j = matrix_from_json(obj["j"])
    if g_fine.ring is not j.ring:
        raise ValueError("g_fine and j must share a ring")
    unitary = obj.get("unitary")
    return LatticeQuotient(
        ring=g_fine.ring,
        n=g_fine.rows,
        g_fine=g_fine,
        j=j,
        gamma=obj.get("gamma"),
        unitary=None if unitary is None else np.asarray(unitary, dtype=np.complex128),
    )
