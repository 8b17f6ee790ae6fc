"""Finite fields GF(p^m) with elements stored as integer codes.

An element code is read base p: digit i is the coefficient of x^i in the
residue polynomial.  Code 0 is zero and code 1 is one.

Scalar operations (``field_add``, ``field_mul``, ...) work straight from
the polynomial definition and are the reference path.  The ``v*`` methods
on :class:`FieldSpec` are numpy kernels used for bulk enumeration; they
go through lookup tables and are checked against the scalar path in tests.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .errors import InternalConsistencyError, InvalidParameterError, ResourceLimitError

MAX_FIELD_ORDER = 1 << 20
TABLE_LIMIT = 256

__all__ = [
    "FieldSpec",
    "field_build",
    "field_add",
    "field_neg",
    "field_sub",
    "field_mul",
    "field_inv",
    "field_pow",
    "is_prime",
    "prime_power",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, m) with q == p**m, or None if q is not a prime power."""
    if q < 2:
        return None
    p = next(d for d in itertools.count(2) if q % d == 0)
    m = 0
    while q % p == 0:
        q //= p
        m += 1
    return (p, m) if q == 1 else None


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over GF(p), coefficient lists low degree first -------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], f: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _trim(a)
    return a


def _poly_mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _poly_powmod(base: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(base, f, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), f, p)
        base = _poly_mod(_poly_mul(base, base, p), f, p)
        e >>= 1
    return result


def _is_irreducible(f: list[int], p: int) -> bool:
    """Ben-Or test: gcd(x^(p^i) - x, f) == 1 for i = 1..deg(f)//2."""
    m = len(f) - 1
    xp = [0, 1]
    for _ in range(m // 2):
        xp = _poly_powmod(xp, p, f, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        if len(_poly_gcd(f, diff, p)) > 1:
            return False
    return True


def _smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    # itertools.product is lexicographic with c_0 most significant
    for low in itertools.product(range(p), repeat=m):
        if low[0] == 0:
            continue  # divisible by x
        f = list(low) + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise InternalConsistencyError(f"no irreducible polynomial of degree {m} over GF({p})")


# -- field spec ---------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    p: int
    m: int
    modulus: tuple[int, ...] | None = None

    @cached_property
    def q(self) -> int:
        return self.p**self.m

    def __str__(self) -> str:
        return f"GF({self.q})"

    def digits(self, code: int) -> list[int]:
        out = []
        for _ in range(self.m):
            code, d = divmod(code, self.p)
            out.append(d)
        return out

    def from_digits(self, digits) -> int:
        code = 0
        for d in reversed(list(digits)):
            code = code * self.p + d
        return code

    # numpy kernels --------------------------------------------------------

    @cached_property
    def _tables(self) -> dict[str, np.ndarray]:
        q = self.q
        codes = range(q)
        t: dict[str, np.ndarray] = {}
        inv = np.zeros(q, dtype=np.int64)
        if self.m == 1:
            inv[1:] = [pow(a, -1, self.p) for a in range(1, q)]
            t["inv"] = inv
            return t
        t["neg"] = np.array([field_neg(a, self) for a in codes], dtype=np.int64)
        if q <= TABLE_LIMIT:
            t["add"] = np.array([[field_add(a, b, self) for b in codes] for a in codes], dtype=np.int64)
            t["mul"] = np.array([[field_mul(a, b, self) for b in codes] for a in codes], dtype=np.int64)
            inv[1:] = [field_inv(a, self) for a in range(1, q)]
            t["inv"] = inv
            return t
        # log / antilog tables from a primitive element
        order = q - 1
        primes = _prime_factors(order)
        g = next(
            a for a in range(2, q)
            if all(field_pow(a, order // r, self) != 1 for r in primes)
        )
        exp = np.zeros(2 * order, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = field_mul(x, g, self)
        exp[order:] = exp[:order]
        t["exp"], t["log"] = exp, log
        inv[1:] = exp[(order - log[1:]) % order]
        t["inv"] = inv
        return t

    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.m == 1:
            return (a + b) % self.p
        t = self._tables
        if "add" in t:
            return t["add"][a, b]
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        scale = 1
        for _ in range(self.m):
            out += ((a // scale % self.p + b // scale % self.p) % self.p) * scale
            scale *= self.p
        return out

    def vneg(self, a: np.ndarray) -> np.ndarray:
        if self.m == 1:
            return (-a) % self.p
        return self._tables["neg"][a]

    def vsub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    def vmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.m == 1:
            return (a * b) % self.p
        t = self._tables
        if "mul" in t:
            return t["mul"][a, b]
        a, b = np.broadcast_arrays(np.asarray(a), np.asarray(b))
        prod_ = t["exp"][t["log"][a] + t["log"][b]]
        return np.where((a == 0) | (b == 0), 0, prod_)

    def vinv(self, a: np.ndarray) -> np.ndarray:
        """Elementwise inverse; maps 0 to 0 (callers mask zeros themselves)."""
        return self._tables["inv"][a]


@lru_cache(maxsize=None)
def field_build(p: int, m: int = 1, max_order: int = MAX_FIELD_ORDER) -> FieldSpec:
    if not is_prime(p):
        raise InvalidParameterError(f"{p} is not prime")
    if m < 1:
        raise InvalidParameterError(f"extension degree must be >= 1, got {m}")
    if p**m > max_order:
        raise ResourceLimitError(f"GF({p}^{m}) exceeds field budget {max_order}", p**m)
    if m == 1:
        return FieldSpec(p, 1)
    return FieldSpec(p, m, _smallest_irreducible(p, m))


def _check_code(a: int, f: FieldSpec) -> None:
    if not 0 <= a < f.q:
        raise InvalidParameterError(f"code {a} out of range for {f}")


def field_add(a: int, b: int, f: FieldSpec) -> int:
    _check_code(a, f)
    _check_code(b, f)
    if f.m == 1:
        return (a + b) % f.p
    return f.from_digits((x + y) % f.p for x, y in zip(f.digits(a), f.digits(b)))


def field_neg(a: int, f: FieldSpec) -> int:
    _check_code(a, f)
    if f.m == 1:
        return -a % f.p
    return f.from_digits(-x % f.p for x in f.digits(a))


def field_sub(a: int, b: int, f: FieldSpec) -> int:
    return field_add(a, field_neg(b, f), f)


def field_mul(a: int, b: int, f: FieldSpec) -> int:
    _check_code(a, f)
    _check_code(b, f)
    if f.m == 1:
        return a * b % f.p
    prod_ = _poly_mul(_trim(f.digits(a)), _trim(f.digits(b)), f.p)
    red = _poly_mod(prod_, list(f.modulus), f.p)
    return f.from_digits(red + [0] * (f.m - len(red)))


def field_pow(a: int, e: int, f: FieldSpec) -> int:
    result = 1
    while e:
        if e & 1:
            result = field_mul(result, a, f)
        a = field_mul(a, a, f)
        e >>= 1
    return result


def field_inv(a: int, f: FieldSpec) -> int:
    _check_code(a, f)
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse in {f}")
    return field_pow(a, f.q - 2, f)
