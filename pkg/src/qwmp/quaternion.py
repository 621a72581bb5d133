"""Quaternion scalars over an exact (``Fraction``) or binary-float backend.

A quaternion ``a0 + a1 i + a2 j + a3 k`` is stored as a 4-tuple of real
scalars.  Integers, strings and ``Fraction`` inputs land on the exact
backend; any ``float`` component moves the whole value to the float backend.
"""
from __future__ import annotations

import math
import numbers
import re
from fractions import Fraction

import numpy as np

DEFAULT_TOL = 1e-10

_TERM = re.compile(
    r"\s*([+-]?)\s*((?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?(?:/\d+)?)?\s*\*?\s*([ijk]?)\s*"
)


def to_real(x, exact=None):
    """Coerce ``x`` onto a backend.

    ``exact=None`` infers the backend from the type of ``x``; floats stay
    floats, everything rational becomes a reduced ``Fraction``.
    """
    if isinstance(x, str):
        x = x.strip()
        if exact is False:
            return float(Fraction(x))
        return Fraction(x)
    if isinstance(x, (float, np.floating)):
        if exact:
            return Fraction(float(x))
        return float(x)
    if isinstance(x, (numbers.Rational, np.integer)):
        if exact is False:
            return float(x)
        return Fraction(int(x)) if isinstance(x, np.integer) else Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as a real scalar")


class Quaternion:
    """Immutable quaternion with Hamilton product ``i^2 = j^2 = k^2 = ijk = -1``."""

    __slots__ = ("_c",)

    def __init__(self, a0=0, a1=0, a2=0, a3=0):
        comps = (a0, a1, a2, a3)
        exact = not any(isinstance(c, (float, np.floating)) for c in comps)
        self._c = tuple(to_real(c, exact) for c in comps)

    @classmethod
    def _raw(cls, comps):
        q = object.__new__(cls)
        q._c = tuple(comps)
        return q

    @classmethod
    def parse(cls, text):
        """Parse strings such as ``"8-2i+4j-4k"``, ``"-i"`` or ``"3/2+0.5k"``."""
        text = text.replace(" ", "")
        if not text:
            raise ValueError("empty quaternion literal")
        comps = [Fraction(0)] * 4
        floaty = False
        pos = 0
        while pos < len(text):
            m = _TERM.match(text, pos)
            if m is None or m.end() == pos or (not m.group(2) and not m.group(3)):
                raise ValueError(f"bad quaternion literal {text!r}")
            sign, num, unit = m.groups()
            if pos and not sign:
                raise ValueError(f"missing sign between terms in {text!r}")
            if num and ("." in num or "e" in num.lower()):
                floaty = True
            value = Fraction(num) if num else Fraction(1)
            if sign == "-":
                value = -value
            comps["_ijk".index(unit or "_")] += value
            pos = m.end()
        if floaty:
            return cls(*(float(c) for c in comps))
        return cls._raw(comps)

    # -- components -------------------------------------------------------
    @property
    def components(self):
        return self._c

    a0 = property(lambda self: self._c[0])
    a1 = property(lambda self: self._c[1])
    a2 = property(lambda self: self._c[2])
    a3 = property(lambda self: self._c[3])
    real = a0

    @property
    def is_exact(self):
        return isinstance(self._c[0], Fraction)

    def is_real(self, tol=None):
        if tol is None and self.is_exact:
            return self._c[1] == 0 and self._c[2] == 0 and self._c[3] == 0
        tol = DEFAULT_TOL if tol is None else tol
        return math.sqrt(float(self._c[1] ** 2 + self._c[2] ** 2 + self._c[3] ** 2)) <= tol * (
            1 + abs(float(self._c[0]))
        )

    def to_float(self):
        return Quaternion._raw(float(c) for c in self._c)

    def to_exact(self):
        return Quaternion._raw(to_real(c, True) for c in self._c)

    # -- arithmetic -------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, Quaternion):
            return other
        if isinstance(other, (numbers.Real, np.floating, np.integer)):
            return Quaternion(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return Quaternion._raw(x + y for x, y in zip(self._c, other._c))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return Quaternion._raw(x - y for x, y in zip(self._c, other._c))

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return Quaternion._raw(-x for x in self._c)

    def __pos__(self):
        return self

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return quat_mul(self, other)

    def __rmul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return quat_mul(other, self)

    def __truediv__(self, other):
        # right division: self * other^{-1}
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return quat_mul(self, quat_inv(other))

    def conj(self):
        return quat_conj(self)

    def inv(self):
        return quat_inv(self)

    def norm2(self):
        a, b, c, d = self._c
        return a * a + b * b + c * c + d * d

    def norm(self):
        return math.sqrt(self.norm2())

    def __abs__(self):
        return self.norm()

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self._c == other._c

    def __hash__(self):
        return hash(self._c)

    def __bool__(self):
        return any(self._c)

    def isclose(self, other, tol=DEFAULT_TOL):
        """Relative closeness: ``|p - q| <= tol * (1 + max(|p|, |q|))``."""
        other = self._lift(other)
        diff = (self - other).norm()
        return diff <= tol * (1 + max(self.norm(), other.norm()))

    # -- display ----------------------------------------------------------
    def __repr__(self):
        return f"Quaternion({', '.join(map(repr, self._c))})"

    def __str__(self):
        return format_quaternion(self._c)


def _fmt_real(x):
    if isinstance(x, Fraction):
        return str(x)
    return repr(float(x)) if x != int(x) else str(int(x))


def format_quaternion(comps):
    """Render components as ``a0+a1i+a2j+a3k`` dropping zero terms."""
    parts = []
    for value, unit in zip(comps, ("", "i", "j", "k")):
        if value == 0:
            continue
        mag = _fmt_real(abs(value))
        if unit and mag == "1":
            mag = ""
        sign = "-" if value < 0 else "+"
        parts.append(f"{sign}{mag}{unit}")
    if not parts:
        return "0"
    text = "".join(parts)
    return text[1:] if text[0] == "+" else text


def quat_mul(p, q):
    """Hamilton product ``p * q`` (order matters)."""
    a0, a1, a2, a3 = p._c
    b0, b1, b2, b3 = q._c
    return Quaternion._raw(
        (
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )
    )


def quat_conj(q):
    a0, a1, a2, a3 = q._c
    return Quaternion._raw((a0, -a1, -a2, -a3))


def quat_inv(q):
    """Two-sided inverse ``conj(q) / |q|^2``.

    Raises ``ZeroDivisionError`` for the zero quaternion.
    """
    n2 = q.norm2()
    if n2 == 0:
        raise ZeroDivisionError("quaternion inverse of zero")
    a0, a1, a2, a3 = q._c
    return Quaternion._raw((a0 / n2, -a1 / n2, -a2 / n2, -a3 / n2))


ONE = Quaternion(1)
ZERO = Quaternion(0)
I = Quaternion(0, 1)
J = Quaternion(0, 0, 1)
K = Quaternion(0, 0, 0, 1)
