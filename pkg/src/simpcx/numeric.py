"""High-precision reals and certified intervals for the transcendental constants."""
from __future__ import annotations

import threading
from contextlib import contextmanager
from dataclasses import dataclass

import mpmath
from mpmath import iv

DIGITS = 60
_lock = threading.Lock()


@contextmanager
def interval_context(digits: int = DIGITS):
    """mpmath's interval context at ``digits`` decimal digits (restored afterwards)."""
    with _lock:
        old = iv.prec
        iv.dps = digits
        try:
            yield iv
        finally:
            iv.prec = old


@dataclass(frozen=True)
class Interval:
    lo: mpmath.mpf
    hi: mpmath.mpf

    @classmethod
    def of(cls, x) -> "Interval":
        with mpmath.workdps(DIGITS + 10):
            return cls(mpmath.mpf(x.a), mpmath.mpf(x.b))

    @classmethod
    def exact(cls, x) -> "Interval":
        with mpmath.workdps(DIGITS + 10):
            v = mpmath.mpf(x)
        return cls(v, v)

    @property
    def mid(self) -> mpmath.mpf:
        with mpmath.workdps(DIGITS):
            return (self.lo + self.hi) / 2

    @property
    def width(self) -> mpmath.mpf:
        with mpmath.workdps(DIGITS):
            return self.hi - self.lo

    def __le__(self, other: "Interval") -> bool:
        """Certainly less or equal: every point of self is <= every point of other."""
        return self.hi <= other.lo

    def __lt__(self, other: "Interval") -> bool:
        return self.hi < other.lo

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def __float__(self) -> float:
        return float(self.mid)

    def to_dict(self) -> dict:
        return {"value": float(self.mid), "lo": mpmath.nstr(self.lo, 30),
                "hi": mpmath.nstr(self.hi, 30)}


def certified(fn, digits: int = DIGITS) -> Interval:
    """Evaluate ``fn(iv)`` in interval arithmetic and return the enclosure."""
    with interval_context(digits) as ctx:
        return Interval.of(fn(ctx))


def iv_max(a: Interval, b: Interval) -> Interval:
    return Interval(max(a.lo, b.lo), max(a.hi, b.hi))


def iv_min(a: Interval, b: Interval) -> Interval:
    return Interval(min(a.lo, b.lo), min(a.hi, b.hi))
