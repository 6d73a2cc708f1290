"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored in conductor N's power basis {1, z, ..., z^(phi(N)-1)}
after reduction mod the N-th cyclotomic polynomial, with rational
coefficients. Internally a Cyclo keeps an integer numerator vector plus one
common positive denominator; `coeffs()` exposes the coefficients as Fractions
in lowest terms.

Mixing conductors is allowed everywhere: operands are embedded into
Q(zeta_lcm) first. The lcm is capped so a buggy caller cannot request a
gigantic field by accident.
"""

from __future__ import annotations

import cmath
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .errors import SpecError

__all__ = [
    "Cyclo",
    "CONDUCTOR_CAP",
    "cyclotomic_polynomial",
    "zeta",
    "parse_cyclo",
]

CONDUCTOR_CAP = 10**6


@lru_cache(maxsize=None)
def _phi(n: int) -> int:
    count = 0
    for k in range(1, n + 1):
        if gcd(k, n) == 1:
            count += 1
    return count


def _poly_mul(a: tuple[int, ...], b: tuple[int, ...]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divmod_monic(num: list[int], den: tuple[int, ...]) -> tuple[list[int], list[int]]:
    # den is monic with integer coefficients, so quotient and remainder stay integral
    num = list(num)
    d = len(den) - 1
    q = [0] * max(len(num) - d, 0)
    for i in range(len(num) - 1, d - 1, -1):
        c = num[i]
        if c:
            q[i - d] = c
            for j in range(d + 1):
                num[i - d + j] -= c * den[j]
    return q, num[:d]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, constant term first, monic."""
    if n < 1:
        raise SpecError(f"conductor must be positive, got {n}")
    if n == 1:
        return (-1, 1)
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            q, r = _poly_divmod_monic(num, cyclotomic_polynomial(d))
            assert not any(r), f"Phi_{d} does not divide x^{n}-1"
            num = q
    return tuple(num)


def _reduce_mod_phi(coeffs: list[int], n: int) -> tuple[int, ...]:
    phi = _phi(n)
    if len(coeffs) > phi:
        _, coeffs = _poly_divmod_monic(coeffs, cyclotomic_polynomial(n))
    coeffs = list(coeffs) + [0] * (phi - len(coeffs))
    return tuple(coeffs[:phi])


@dataclass(frozen=True)
class Cyclo:
    """One element of Q(zeta_conductor), normalized."""

    conductor: int
    nums: tuple[int, ...]
    den: int

    @staticmethod
    def _make(conductor: int, nums: list[int] | tuple[int, ...], den: int) -> "Cyclo":
        if den == 0:
            raise ZeroDivisionError("cyclotomic element with zero denominator")
        if den < 0:
            den = -den
            nums = [-x for x in nums]
        g = gcd(den, *nums) if any(nums) else den
        if g > 1:
            den //= g
            nums = [x // g for x in nums]
        return Cyclo(conductor, tuple(nums), den)

    @staticmethod
    def from_rational(value: Fraction | int, conductor: int = 1) -> "Cyclo":
        value = Fraction(value)
        nums = [0] * _phi(conductor)
        nums[0] = value.numerator
        return Cyclo._make(conductor, nums, value.denominator)

    @staticmethod
    def from_coeffs(conductor: int, coeffs: list[Fraction | int]) -> "Cyclo":
        den = 1
        for c in coeffs:
            den = lcm(den, Fraction(c).denominator)
        nums = [int(Fraction(c) * den) for c in coeffs]
        return Cyclo._make(conductor, _reduce_mod_phi(nums, conductor), den)

    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.den) for x in self.nums)

    def to_conductor(self, n: int) -> "Cyclo":
        """Embed into Q(zeta_n); n must be a multiple of the conductor."""
        if n == self.conductor:
            return self
        if n % self.conductor != 0:
            raise SpecError(
                f"cannot embed conductor {self.conductor} element into Q(zeta_{n})"
            )
        if n > CONDUCTOR_CAP:
            raise SpecError(f"conductor {n} exceeds cap {CONDUCTOR_CAP}")
        step = n // self.conductor
        out = [0] * (len(self.nums) * step - step + 1 if self.nums else 1)
        for k, c in enumerate(self.nums):
            if c:
                out[k * step] += c
        return Cyclo._make(n, _reduce_mod_phi(out, n), self.den)

    def _pair(self, other: "Cyclo") -> tuple["Cyclo", "Cyclo"]:
        n = lcm(self.conductor, other.conductor)
        if n > CONDUCTOR_CAP:
            raise SpecError(f"conductor {n} exceeds cap {CONDUCTOR_CAP}")
        return self.to_conductor(n), other.to_conductor(n)

    @staticmethod
    def _coerce(value) -> "Cyclo | None":
        if isinstance(value, Cyclo):
            return value
        if isinstance(value, (int, Fraction)):
            return Cyclo.from_rational(value)
        return None

    def __add__(self, other) -> "Cyclo":
        other = Cyclo._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._pair(other)
        den = lcm(a.den, b.den)
        fa, fb = den // a.den, den // b.den
        nums = [fa * x + fb * y for x, y in zip(a.nums, b.nums)]
        return Cyclo._make(a.conductor, nums, den)

    __radd__ = __add__

    def __neg__(self) -> "Cyclo":
        return Cyclo(self.conductor, tuple(-x for x in self.nums), self.den)

    def __sub__(self, other) -> "Cyclo":
        other = Cyclo._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Cyclo":
        other = Cyclo._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Cyclo":
        other = Cyclo._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._pair(other)
        nums = _poly_mul(a.nums, b.nums) if a.nums and b.nums else [0]
        return Cyclo._make(a.conductor, _reduce_mod_phi(nums, a.conductor), a.den * b.den)

    __rmul__ = __mul__

    def scale(self, value: Fraction | int) -> "Cyclo":
        value = Fraction(value)
        nums = [value.numerator * x for x in self.nums]
        return Cyclo._make(self.conductor, nums, self.den * value.denominator)

    def __pow__(self, k: int) -> "Cyclo":
        if k < 0:
            raise SpecError("negative cyclotomic powers are not supported")
        out = Cyclo.from_rational(1, self.conductor)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        other = Cyclo._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._pair(other)
        return a.nums == b.nums and a.den == b.den

    def __hash__(self) -> int:
        # Hash on the complex embedding rounded hard; exact eq still rules.
        z = self.embed()
        return hash((round(z.real, 6), round(z.imag, 6)))

    def conj(self) -> "Cyclo":
        """Complex conjugate, i.e. zeta -> zeta^(N-1)."""
        n = self.conductor
        out = [0] * n
        for k, c in enumerate(self.nums):
            if c:
                out[(n - k) % n] += c
        return Cyclo._make(n, _reduce_mod_phi(out, n), self.den)

    def is_zero(self) -> bool:
        return not any(self.nums)

    def as_rational(self) -> Fraction | None:
        if any(self.nums[1:]):
            return None
        return Fraction(self.nums[0] if self.nums else 0, self.den)

    def as_integer(self) -> int | None:
        q = self.as_rational()
        if q is None or q.denominator != 1:
            return None
        return q.numerator

    def embed(self) -> complex:
        """Numerical value under zeta_N -> exp(2*pi*i/N)."""
        z = cmath.exp(2j * cmath.pi / self.conductor)
        total = 0j
        p = 1 + 0j
        for c in self.nums:
            total += c * p
            p *= z
        return total / self.den

    def __repr__(self) -> str:
        return f"Cyclo({self.conductor}, {self.text()!r})"

    def text(self) -> str:
        """Render as `c0 + c1*z + c2*z^2 + ...`, omitting zero terms."""
        parts: list[str] = []
        for k, c in enumerate(self.coeffs()):
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                zpow = "z" if k == 1 else f"z^{k}"
                body = zpow if mag == 1 else f"{mag}*{zpow}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts) if parts else "0"


def zeta(n: int, k: int = 1) -> Cyclo:
    """zeta_n^k as an exact element of Q(zeta_n)."""
    if n < 1:
        raise SpecError(f"conductor must be positive, got {n}")
    if n > CONDUCTOR_CAP:
        raise SpecError(f"conductor {n} exceeds cap {CONDUCTOR_CAP}")
    k %= n
    nums = [0] * (k + 1)
    nums[k] = 1
    return Cyclo._make(n, _reduce_mod_phi(nums, n), 1)


_TERM_RE = re.compile(
    r"""^(?:
        (?P<coef>-?\d+(?:/\d+)?)(?:\*(?P<zc>z(?:\^(?P<kc>\d+))?))?
        |
        (?P<z>z(?:\^(?P<k>\d+))?)
    )$""",
    re.VERBOSE,
)


def parse_cyclo(text: str, conductor: int) -> Cyclo:
    """Parse `c0 + c1*z + ...` where z stands for zeta_conductor.

    Coefficients are integers or fractions p/q; terms may appear in any order
    and powers may repeat (they are summed).
    """
    s = text.strip()
    if not s:
        raise SpecError("empty cyclotomic value")
    s = s.replace("-", "+-")
    total = Cyclo.from_rational(0, conductor)
    for raw in s.split("+"):
        term = raw.strip().replace(" ", "")
        if not term:
            continue
        neg = term.startswith("-")
        if neg:
            term = term[1:]
        m = _TERM_RE.match(term)
        if not m:
            raise SpecError(f"bad cyclotomic term {raw.strip()!r} in {text!r}")
        if m.group("z"):
            coef = Fraction(1)
            k = int(m.group("k") or 1)
        else:
            coef = Fraction(m.group("coef"))
            if m.group("zc"):
                k = int(m.group("kc") or 1)
            else:
                k = 0
        if neg:
            coef = -coef
        total = total + zeta(conductor, k).scale(coef)
    return total
