"""Exact arithmetic in Z, Z[i], Z[w] (w = exp(2*pi*i/3)) and their quotients.

Elements of Z are plain Python ints; Gaussian and Eisenstein integers get
their own value classes.  A small Ring adapter per domain exposes the
operations the matrix/lattice layers need (Euclidean division, norms,
canonical associates) without caring about the element type.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

# half of omega's imaginary part, used only for complex embeddings
_SQRT3_2 = math.sqrt(3.0) / 2.0


def _rhd_ratio(num: int, den: int) -> int:
    """Round num/den to an integer, halves toward -infinity. Exact."""
    if den < 0:
        num, den = -num, -den
    # ceil((2*num - den) / (2*den))
    p, q = 2 * num - den, 2 * den
    return -((-p) // q)


def is_prime_int(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond 64-bit inputs."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class GaussInt:
    """Gaussian integer re + im*i."""

    re: int = 0
    im: int = 0

    def __add__(self, other: GaussInt) -> GaussInt:
        other = _as_gauss(other)
        return GaussInt(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other: GaussInt) -> GaussInt:
        other = _as_gauss(other)
        return GaussInt(self.re - other.re, self.im - other.im)

    def __rsub__(self, other: Any) -> GaussInt:
        return _as_gauss(other) - self

    def __mul__(self, other: GaussInt) -> GaussInt:
        other = _as_gauss(other)
        return GaussInt(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __neg__(self) -> GaussInt:
        return GaussInt(-self.re, -self.im)

    def conj(self) -> GaussInt:
        return GaussInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def to_complex(self) -> complex:
        return complex(self.re, self.im)

    def __repr__(self) -> str:
        return f"GaussInt({self.re}, {self.im})"

    def __str__(self) -> str:
        return f"{self.re}{self.im:+}i"


def _as_gauss(x: Any) -> GaussInt:
    if isinstance(x, GaussInt):
        return x
    if isinstance(x, int):
        return GaussInt(x, 0)
    raise TypeError(f"cannot coerce {x!r} to GaussInt")


@dataclass(frozen=True)
class EisenInt:
    """Eisenstein integer a + b*w with w = exp(2*pi*i/3), w^2 = -1 - w."""

    a: int = 0
    b: int = 0

    def __add__(self, other: EisenInt) -> EisenInt:
        other = _as_eisen(other)
        return EisenInt(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other: EisenInt) -> EisenInt:
        other = _as_eisen(other)
        return EisenInt(self.a - other.a, self.b - other.b)

    def __rsub__(self, other: Any) -> EisenInt:
        return _as_eisen(other) - self

    def __mul__(self, other: EisenInt) -> EisenInt:
        other = _as_eisen(other)
        # (a + bw)(c + dw) = ac + (ad + bc)w + bd w^2,  w^2 = -1 - w
        ac = self.a * other.a
        bd = self.b * other.b
        return EisenInt(ac - bd, self.a * other.b + self.b * other.a - bd)

    __rmul__ = __mul__

    def __neg__(self) -> EisenInt:
        return EisenInt(-self.a, -self.b)

    def conj(self) -> EisenInt:
        # complex conjugate: conj(w) = w^2 = -1 - w
        return EisenInt(self.a - self.b, -self.b)

    def norm(self) -> int:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def to_complex(self) -> complex:
        return complex(self.a - self.b / 2.0, self.b * _SQRT3_2)

    def __repr__(self) -> str:
        return f"EisenInt({self.a}, {self.b})"

    def __str__(self) -> str:
        return f"{self.a}{self.b:+}w"


def _as_eisen(x: Any) -> EisenInt:
    if isinstance(x, EisenInt):
        return x
    if isinstance(x, int):
        return EisenInt(x, 0)
    raise TypeError(f"cannot coerce {x!r} to EisenInt")


class Ring:
    """Operations of one Euclidean domain, uniform across element types."""

    name: str = ""

    def __repr__(self) -> str:
        return f"<ring {self.name}>"

    # -- basic structure -------------------------------------------------
    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def from_int(self, v: int):
        raise NotImplementedError

    def units(self) -> tuple:
        raise NotImplementedError

    def coerce(self, x):
        raise NotImplementedError

    def is_zero(self, x) -> bool:
        raise NotImplementedError

    def norm(self, x) -> int:
        raise NotImplementedError

    def to_complex(self, x) -> complex:
        raise NotImplementedError

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def mul(self, x, y):
        return x * y

    def neg(self, x):
        return -x

    def eq(self, x, y) -> bool:
        return x == y

    # -- Euclidean structure ---------------------------------------------
    def divmod(self, a, b):
        """Quotient/remainder with norm(r) < norm(b); halves round down."""
        raise NotImplementedError

    def is_unit(self, x) -> bool:
        return not self.is_zero(x) and self.norm(x) == 1

    def unit_inverse(self, u):
        for v in self.units():
            if self.eq(self.mul(u, v), self.one()):
                return v
        raise ValueError(f"{u!r} is not a unit of {self.name}")

    def canonical_unit(self, x):
        """The unit u such that u*x is the canonical associate of x."""
        raise NotImplementedError

    def canon(self, x):
        if self.is_zero(x):
            return x
        return self.mul(self.canonical_unit(x), x)

    def divides(self, a, b) -> bool:
        """a | b."""
        if self.is_zero(a):
            return self.is_zero(b)
        _, r = self.divmod(b, a)
        return self.is_zero(r)

    def exact_div(self, a, b):
        q, r = self.divmod(a, b)
        if not self.is_zero(r):
            raise ValueError(f"{a!r} is not divisible by {b!r} in {self.name}")
        return q


class _ZRing(Ring):
    name = "Z"

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, v: int):
        return v

    def units(self):
        return (1, -1)

    def coerce(self, x):
        if isinstance(x, bool) or not isinstance(x, int):
            raise TypeError(f"{x!r} is not an element of Z")
        return x

    def is_zero(self, x) -> bool:
        return x == 0

    def norm(self, x) -> int:
        return x * x

    def to_complex(self, x) -> complex:
        return complex(x)

    def divmod(self, a, b):
        q = _rhd_ratio(a, b)
        return q, a - q * b

    def is_unit(self, x) -> bool:
        return x in (1, -1)

    def canonical_unit(self, x):
        return 1 if x >= 0 else -1


class _GaussRing(Ring):
    name = "Zi"

    def zero(self):
        return GaussInt(0, 0)

    def one(self):
        return GaussInt(1, 0)

    def from_int(self, v: int):
        return GaussInt(v, 0)

    def units(self):
        return (GaussInt(1, 0), GaussInt(-1, 0), GaussInt(0, 1), GaussInt(0, -1))

    def coerce(self, x):
        return _as_gauss(x)

    def is_zero(self, x) -> bool:
        return x.re == 0 and x.im == 0

    def norm(self, x) -> int:
        return x.norm()

    def to_complex(self, x) -> complex:
        return x.to_complex()

    def divmod(self, a, b):
        n = b.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Zi")
        num = a * b.conj()
        q = GaussInt(_rhd_ratio(num.re, n), _rhd_ratio(num.im, n))
        return q, a - q * b

    def canonical_unit(self, x):
        # rotate into the quadrant re > 0, im >= 0
        for u in self.units():
            y = u * x
            if y.re > 0 and y.im >= 0:
                return u
        raise ValueError("zero has no canonical unit")


class _EisenRing(Ring):
    name = "Zw"

    def zero(self):
        return EisenInt(0, 0)

    def one(self):
        return EisenInt(1, 0)

    def from_int(self, v: int):
        return EisenInt(v, 0)

    def units(self):
        # +-1, +-w, +-w^2 with w^2 = -1 - w
        return (
            EisenInt(1, 0),
            EisenInt(-1, 0),
            EisenInt(0, 1),
            EisenInt(0, -1),
            EisenInt(-1, -1),
            EisenInt(1, 1),
        )

    def coerce(self, x):
        return _as_eisen(x)

    def is_zero(self, x) -> bool:
        return x.a == 0 and x.b == 0

    def norm(self, x) -> int:
        return x.norm()

    def to_complex(self, x) -> complex:
        return x.to_complex()

    def divmod(self, a, b):
        n = b.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Zw")
        num = a * b.conj()
        q0 = EisenInt(_rhd_ratio(num.a, n), _rhd_ratio(num.b, n))
        # coordinate rounding lands in a rhombus, not the hexagonal Voronoi
        # cell; probe the unit neighbours for a strictly shorter remainder.
        best_q, best_r = q0, a - q0 * b
        best_n = best_r.norm()
        for u in self.units():
            q = q0 + u
            r = a - q * b
            rn = r.norm()
            if rn < best_n or (rn == best_n and (q.a, q.b) < (best_q.a, best_q.b)):
                best_q, best_r, best_n = q, r, rn
        return best_q, best_r

    def canonical_unit(self, x):
        # rotate into the 60-degree sector: b >= 0 and a > b
        for u in self.units():
            y = u * x
            if y.b >= 0 and y.a > y.b:
                return u
        raise ValueError("zero has no canonical unit")


Z = _ZRing()
ZI = _GaussRing()
ZW = _EisenRing()

_RINGS = {"Z": Z, "Zi": ZI, "Zw": ZW}


def get_ring(name: str) -> Ring:
    try:
        return _RINGS[name]
    except KeyError:
        raise ValueError(f"unknown ring {name!r}; expected one of {sorted(_RINGS)}")


def ring_of(x) -> Ring:
    if isinstance(x, GaussInt):
        return ZI
    if isinstance(x, EisenInt):
        return ZW
    if isinstance(x, int) and not isinstance(x, bool):
        return Z
    raise TypeError(f"{x!r} belongs to no supported ring")


def gaussian_is_prime(z: GaussInt) -> bool:
    """Primality of a Gaussian integer via the norm/4j+3 criterion."""
    z = _as_gauss(z)
    if z.is_zero():
        raise ValueError("zero is neither prime nor composite")
    a, b = abs(z.re), abs(z.im)
    if a == 1 and b == 1:
        return True
    if (a == 0) != (b == 0):
        p = a + b
        return p % 4 == 3 and is_prime_int(p)
    if a != 0 and b != 0:
        n = a * a + b * b
        return n % 4 == 1 and is_prime_int(n)
    return False


def eisenstein_is_prime(z: EisenInt) -> bool:
    """Primality of an Eisenstein integer."""
    z = _as_eisen(z)
    if z.is_zero():
        raise ValueError("zero is neither prime nor composite")
    n = z.norm()
    if is_prime_int(n):
        return True
    # unit * rational prime q with q = 3j + 2
    q = math.isqrt(n)
    if q * q == n and q % 3 == 2 and is_prime_int(q):
        return ZW.canon(z) == EisenInt(q, 0)
    return False


def ext_gcd(a, b, ring: Ring | None = None):
    """Extended Euclid: returns (g, s, t) with s*a + t*b = g, g canonical."""
    if ring is None:
        ring = ring_of(a if not isinstance(a, int) else b)
    a, b = ring.coerce(a), ring.coerce(b)
    if ring.is_zero(a) and ring.is_zero(b):
        raise ValueError("gcd(0, 0) is undefined")
    r0, r1 = a, b
    s0, s1 = ring.one(), ring.zero()
    t0, t1 = ring.zero(), ring.one()
    while not ring.is_zero(r1):
        q, r = ring.divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, ring.sub(s0, ring.mul(q, s1))
        t0, t1 = t1, ring.sub(t0, ring.mul(q, t1))
    u = ring.canonical_unit(r0)
    return ring.mul(u, r0), ring.mul(u, s0), ring.mul(u, t0)


def round_to_ring(x: complex) -> GaussInt:
    """Closest Gaussian integer; exact halves round toward -infinity."""
    x = complex(x)
    if not (math.isfinite(x.real) and math.isfinite(x.imag)):
        raise ValueError("cannot round a non-finite value")
    return GaussInt(math.ceil(x.real - 0.5), math.ceil(x.imag - 0.5))


class Residue:
    """Element of T/<pi>, stored as its minimal-norm coset representative."""

    __slots__ = ("value", "modulus", "ring")

    def __init__(self, value, modulus, ring: Ring | None = None):
        if ring is None:
            if not isinstance(modulus, int):
                ring = ring_of(modulus)
            elif not isinstance(value, int):
                ring = ring_of(value)
            else:
                ring = Z
        value = ring.coerce(value)
        modulus = ring.coerce(modulus)
        if ring.is_zero(modulus):
            raise ValueError("modulus must be nonzero")
        q, r = ring.divmod(value, modulus)
        self.value = r
        self.modulus = modulus
        self.ring = ring

    def _check(self, other: Residue) -> None:
        if self.ring is not other.ring or not self.ring.eq(self.modulus, other.modulus):
            raise ValueError("residues live in different quotients")

    def __add__(self, other: Residue) -> Residue:
        self._check(other)
        return Residue(self.ring.add(self.value, other.value), self.modulus, self.ring)

    def __sub__(self, other: Residue) -> Residue:
        self._check(other)
        return Residue(self.ring.sub(self.value, other.value), self.modulus, self.ring)

    def __mul__(self, other) -> Residue:
        if isinstance(other, Residue):
            self._check(other)
            other = other.value
        return Residue(self.ring.mul(self.value, self.ring.coerce(other)), self.modulus, self.ring)

    __rmul__ = __mul__

    def __neg__(self) -> Residue:
        return Residue(self.ring.neg(self.value), self.modulus, self.ring)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Residue):
            return NotImplemented
        return (
            self.ring is other.ring
            and self.ring.eq(self.modulus, other.modulus)
            and self.ring.eq(self.value, other.value)
        )

    def __hash__(self):
        return hash((self.ring.name, repr(self.modulus), repr(self.value)))

    def is_zero(self) -> bool:
        return self.ring.is_zero(self.value)

    def is_invertible(self) -> bool:
        if self.is_zero():
            return False
        g, _, _ = ext_gcd(self.value, self.modulus, self.ring)
        return self.ring.is_unit(g)

    def inverse(self) -> Residue:
        if self.is_zero():
            raise ZeroDivisionError("zero residue has no inverse")
        g, s, _ = ext_gcd(self.value, self.modulus, self.ring)
        if not self.ring.is_unit(g):
            raise ZeroDivisionError(f"{self} is a zero divisor mod {self.modulus}")
        return Residue(self.ring.mul(self.ring.unit_inverse(g), s), self.modulus, self.ring)

    def __repr__(self) -> str:
        return f"Residue({self.value!r} mod {self.modulus!r})"


def project_sigma(z, pi, ring: Ring | None = None) -> Residue:
    """Natural projection T -> T/<pi>."""
    return Residue(z, pi, ring)


def lift_sigma(r: Residue):
    """Minimal-norm coset representative; project_sigma(lift_sigma(r)) == r."""
    return r.value


def residues_mod(pi, ring: Ring | None = None) -> list:
    """All canonical representatives of T/<pi>, sorted by (norm, coords)."""
    if ring is None:
        ring = ring_of(pi)
    pi = ring.coerce(pi)
    n = abs(pi) if ring is Z else ring.norm(pi)
    if n == 0:
        raise ValueError("modulus must be nonzero")
    if ring is Z:
        reps = {Residue(v, pi, ring).value for v in range(abs(pi))}
        out = sorted(reps, key=lambda v: (v * v, v))
    else:
        bound = math.isqrt(n) + 1
        seen = {}
        if ring is ZI:
            make = GaussInt
            key = lambda v: (v.norm(), v.re, v.im)
        else:
            make = EisenInt
            key = lambda v: (v.norm(), v.a, v.b)
        for x in range(-bound, bound + 1):
            for y in range(-bound, bound + 1):
                rep = Residue(make(x, y), pi, ring).value
                seen[key(rep)] = rep
        out = [seen[k] for k in sorted(seen)]
    if len(out) != n:
        raise AssertionError(f"expected {n} residues mod {pi!r}, found {len(out)}")
    return out


def gauss_from_complex(z: complex) -> GaussInt:
    """Exact conversion of an integer-valued complex number."""
    g = GaussInt(int(round(z.real)), int(round(z.imag)))
    if g.re != z.real or g.im != z.imag:
        raise ValueError(f"{z!r} is not an exact Gaussian integer")
    return g
