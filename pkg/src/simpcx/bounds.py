"""Certified intervals for simplicial complexity (kappa) and systolic area (sigma).

Every bound records where it came from: a lower-bound rule, a built witness
complex, a cited formula or a metric construction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

import mpmath

from .census import count_bounds
from .constructions import surface_bounds, witness_for_group
from .errors import DomainError, UnsupportedSpec
from .groups import GroupSpec
from .homology import kappa_lower_torsion
from .metric import telescope_sigma_upper
from .numeric import DIGITS, Interval, certified


@dataclass(frozen=True)
class Constants:
    C: Fraction = Fraction(1562500, 3)  # 2^2 * 5^8 / 3
    B_log2: int = 3125000              # log2 B = 6C
    Bp: int = 9

    @property
    def Cp(self) -> Interval:
        """1 + ln 25."""
        return certified(lambda c: 1 + c.log(25))


CONSTANTS = Constants()

# exact values from the small-complexity table; (*) marks a unique minimal complex
TABLE = {
    "cyclic:2": (10, "unique minimal complex: the six-vertex projective plane"),
    "abelian:2": (14, "unique minimal complex: the seven-vertex torus"),
    "surface:1": (14, "unique minimal complex: the seven-vertex torus"),
    "cyclic:3": (17, "other groups may share this value"),
}
TABLE_NOTES = {
    "freeprod:(cyclic:2,cyclic:2)": "known bracket 17 <= kappa <= 18",
}
KLEIN_BOTTLE_KAPPA = 16


@dataclass(frozen=True)
class Bound:
    value: object
    reason: str

    def to_json_value(self):
        v = self.value
        if isinstance(v, Interval):
            return v.to_dict()
        if isinstance(v, Fraction):
            return str(v)
        return v


@dataclass(frozen=True)
class BoundCertificate:
    spec: GroupSpec
    kappa_lo: Bound
    kappa_hi: Bound
    sigma_lo: Bound
    sigma_hi: Bound
    exact: int | None = None
    notes: tuple[str, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        kappa = {"lo": self.kappa_lo.value, "lo_reason": self.kappa_lo.reason,
                 "hi": self.kappa_hi.value, "hi_witness": self.kappa_hi.reason}
        if self.exact is not None:
            kappa["exact"] = self.exact
        return {
            "spec": self.spec.to_text(),
            "kappa": kappa,
            "sigma": {"lo": self.sigma_lo.to_json_value(), "lo_reason": self.sigma_lo.reason,
                      "hi": self.sigma_hi.to_json_value(), "hi_reason": self.sigma_hi.reason},
            "notes": list(self.notes),
        }


# ------------------------------------------------------------------ kappa


def _even_factors(spec: GroupSpec) -> int:
    return sum(1 for n in spec.torsion if n % 2 == 0)


def _z2_cohomology_dim(spec: GroupSpec) -> int:
    """dim H^2(G; Z_2), which injects into H^2 of any complex with fundamental group G."""
    v = spec.variant
    if v == "free_product":
        return sum(_z2_cohomology_dim(p) for p in spec.parts)
    if v == "surface_orientable":
        return 1
    if v in ("cyclic", "finite_abelian", "fg_abelian"):
        d = spec.rank + _even_factors(spec)
        return comb(d, 2) + _even_factors(spec)
    return 0


def kappa_lower(spec: GroupSpec) -> Bound:
    if spec.is_free:
        return Bound(0, "free_zero")
    rules = [(kappa_lower_torsion(spec.torsion_order), "torsion"),
             (_z2_cohomology_dim(spec), "z2_rank")]
    if spec.variant == "surface_orientable":
        rules.append((surface_bounds(spec.genus).kappa_lo, "betti2_surface"))
    best = max(rules, key=lambda r: r[0])
    return Bound(best[0], best[1])


def kappa_upper(spec: GroupSpec) -> Bound:
    if spec.is_free:
        return Bound(0, "free_zero")
    W = witness_for_group(spec)
    hi = Bound(W.s2, f"witness:{spec.to_text()}:s2={W.s2}")
    if spec.variant == "surface_orientable":
        f = surface_bounds(spec.genus).kappa_hi
        if f < W.s2:
            hi = Bound(f, "formula:minimal_surface_triangulation")
    return hi


def kappa_bounds(spec: GroupSpec) -> tuple[Bound, Bound, int | None, tuple[str, ...]]:
    lo, hi = kappa_lower(spec), kappa_upper(spec)
    key = spec.to_text()
    exact, notes = None, []
    if key in TABLE:
        exact, note = TABLE[key]
        notes.append(f"table value kappa={exact}: {note}")
    if key in TABLE_NOTES:
        notes.append(TABLE_NOTES[key])
    if spec.is_free:
        exact = 0
    if exact is not None and not lo.value <= exact <= hi.value:
        raise AssertionError(f"table value {exact} outside [{lo.value}, {hi.value}]")
    return lo, hi, exact, tuple(notes)


# ------------------------------------------------------------------ sigma


def phi(x) -> Interval:
    """2 / (1 + sqrt(1 + 4 log2(x) / Cp^2)) for x >= 1; decreasing with phi(1) = 1."""
    if x < 1:
        raise DomainError("phi is defined for x >= 1")
    xv = mpmath.mpf(x) if not isinstance(x, Fraction) else None

    def f(c):
        X = c.mpf(x.numerator) / x.denominator if xv is None else c.mpf(xv)
        cp = 1 + c.log(25)
        return 2 / (1 + c.sqrt(1 + 4 * (c.log(X) / c.log(2)) / cp ** 2))
    return certified(f)


def abelian_phi_bound(order: int) -> Interval | None:
    """(x)^(1 - phi(x)) with x = 2 log3|G| / C, or None when x < 1 (outside phi's domain)."""
    C = CONSTANTS.C
    # x >= 1  <=>  |G|^2 >= 3^C; compare exactly on integers via logs at high precision
    with mpmath.workdps(DIGITS):
        lx = 2 * mpmath.log(order, 3) * C.denominator / C.numerator
    if lx < 1 - mpmath.mpf(10) ** (-DIGITS + 5):
        return None

    def f(c):
        x = 2 * (c.log(order) / c.log(3)) * C.denominator / C.numerator
        cp = 1 + c.log(25)
        p = 2 / (1 + c.sqrt(1 + 4 * (c.log(x) / c.log(2)) / cp ** 2))
        return c.exp((1 - p) * c.log(x))
    return certified(f)


def sigma_bounds(spec: GroupSpec, kappa_hi: Bound | None = None) -> tuple[Bound, Bound]:
    if spec.is_free:
        return Bound(0, "free_zero"), Bound(0, "free_zero")
    kappa_hi = kappa_hi or kappa_upper(spec)
    k = kappa_hi.value
    hi = Bound(certified(lambda c: c.mpf(k) / (2 * c.pi)), "kappa_over_2pi")
    if spec.variant == "cyclic":
        tb = telescope_sigma_upper(spec.chain[0]).bound
        if tb.hi < hi.value.lo:
            hi = Bound(tb, "telescope_metric")
    lo = Bound(certified(lambda c: c.pi / 16), "universal_pi_16")
    if spec.variant in ("cyclic", "finite_abelian"):
        ab = abelian_phi_bound(spec.torsion_order)
        if ab is not None and lo.value.hi < ab.lo:
            lo = Bound(ab, "abelian_phi")
    if not lo.value.lo <= hi.value.hi:
        raise AssertionError("sigma interval is empty")
    return lo, hi


def certificate(spec: GroupSpec) -> BoundCertificate:
    klo, khi, exact, notes = kappa_bounds(spec)
    slo, shi = sigma_bounds(spec, khi)
    notes = list(notes)
    if shi.reason == "kappa_over_2pi":
        notes.append("sigma upper bound via unit-hemisphere metric; systole checked on the 1-skeleton")
    if spec.variant in ("finite_abelian", "cyclic") and slo.reason == "universal_pi_16":
        notes.append("abelian phi bound needs 2 log3|G| >= C and is not reported below it")
    return BoundCertificate(spec, klo, khi, slo, shi, exact, tuple(notes))


def kappa_sigma_conversions(value, direction: str) -> Interval:
    """``sigma_to_kappa``: C sigma^(1 + Cp/sqrt(log2 sigma)); ``kappa_to_sigma``: kappa/(2 pi).

    Both are upper bounds (kappa <= ..., sigma <= ...).
    """
    if direction == "kappa_to_sigma":
        if value < 0:
            raise DomainError("kappa must be >= 0")
        return certified(lambda c: c.mpf(value) / (2 * c.pi))
    if direction == "sigma_to_kappa":
        if value <= 1:
            raise DomainError("the exponent form needs sigma > 1")
        C = CONSTANTS.C

        def f(c):
            s = c.mpf(value)
            l2 = c.log(s) / c.log(2)
            return c.mpf(C.numerator) / C.denominator * c.exp((1 + (1 + c.log(25)) / c.sqrt(l2)) * c.log(s))
        return certified(f)
    raise ValueError("direction must be kappa_to_sigma or sigma_to_kappa")


# ------------------------------------------------------------ stable kappa


def has_z2_free_factor(spec: GroupSpec) -> bool:
    if spec.variant == "free_product":
        return any(has_z2_free_factor(p) for p in spec.parts)
    return spec.torsion == (2,) and spec.abelian_rank == 0 and spec.variant != "surface_orientable"


@dataclass(frozen=True)
class StableBounds:
    upper: int
    lower: Interval | None
    lower_reason: str
    symbolic: str = ""

    def to_dict(self) -> dict:
        return {"upper": self.upper, "lower": self.lower.to_dict() if self.lower else None,
                "lower_reason": self.lower_reason, "symbolic": self.symbolic}


def stable_bounds(spec: GroupSpec, t_upper: int | None = None,
                  t_lower: int | None = None) -> StableBounds:
    """Interval for the stable complexity lim kappa(G * ... * G)/n of an unfree group.

    ``t_upper`` (from a presentation) only bounds T(G) from above, so it never
    feeds the T(G)/3 branch; pass a certified ``t_lower`` for that.
    """
    if spec.is_free:
        raise UnsupportedSpec("stable complexity bounds need an unfree group")
    upper = kappa_upper(spec).value - 1
    if has_z2_free_factor(spec):
        return StableBounds(upper, certified(lambda c: 2 * c.log(2) / c.log(3)), "z2_free_factor")
    if t_lower is not None:
        return StableBounds(upper, certified(lambda c: c.mpf(t_lower) / 3), "t_lower_over_3")
    sym = "T(G)/3"
    if t_upper is not None:
        sym += f" (presentation gives T(G) <= {t_upper}; an upper bound cannot feed this branch)"
    return StableBounds(upper, None, "symbolic", sym)


# ---------------------------------------------------------------- counting


@dataclass(frozen=True)
class SigmaCounting:
    T: int
    lower_log2: Interval
    upper_log2: Interval

    def to_dict(self) -> dict:
        return {"T": self.T, "lower_log2": self.lower_log2.to_dict(),
                "upper_log2": self.upper_log2.to_dict()}


def counting_bounds(T: int, which: str = "kappa"):
    if T < 2:
        raise ValueError("T must be >= 2")
    if which == "kappa":
        return count_bounds(T)
    if which == "sigma":
        lo = certified(lambda c: c.pi * T / (1 + 2 * c.sqrt(3)))
        B = CONSTANTS.B_log2
        hi = certified(lambda c: B * c.exp((1 + CONSTANTS.Bp / c.sqrt(c.log(T) / c.log(2))) * c.log(T)))
        return SigmaCounting(T, lo, hi)
    raise ValueError("which must be kappa or sigma")


def sigma_counting_coefficient() -> Interval:
    """pi / (1 + 2 sqrt 3), the growth rate of log2 of the abelian count."""
    return certified(lambda c: c.pi / (1 + 2 * c.sqrt(3)))


# -------------------------------------------------------------------- lens


@dataclass(frozen=True)
class LensBounds:
    n: int
    m: int
    cube_count: int
    D_n: Fraction
    sysvol_upper: Fraction
    t1_lower: int
    lower_formula: str = "C_n (ln t1)^(1 - C'_n / sqrt(ln ln t1)), constants unspecified"

    def to_dict(self) -> dict:
        return {"n": self.n, "m": self.m, "cube_count": self.cube_count, "D_n": str(self.D_n),
                "sysvol_upper": str(self.sysvol_upper), "t1_lower": self.t1_lower,
                "lower_formula": self.lower_formula}


def lens_bounds(n: int, m: int) -> LensBounds:
    """Cube count of the lens-space decomposition and the resulting systolic volume bound."""
    if n < 1 or m < 2:
        raise ValueError("need n >= 1 and m >= 2")
    k = 2 * (n + 1)
    cubes = 2 ** (n + 1) * factorial(k) * k * m ** n
    D = Fraction(factorial(k) * (n + 1), 2 ** (n - 1))
    sysvol = D * m ** n
    if Fraction(cubes, 2 ** (2 * n + 1)) != sysvol:
        raise AssertionError("cube count and D_n m^n disagree")
    return LensBounds(n, m, cubes, D, sysvol, m)


__all__ = ["CONSTANTS", "Constants", "Bound", "BoundCertificate", "certificate", "kappa_bounds",
           "kappa_lower", "kappa_upper", "sigma_bounds", "phi", "abelian_phi_bound",
           "kappa_sigma_conversions", "stable_bounds", "StableBounds", "counting_bounds",
           "sigma_counting_coefficient", "lens_bounds", "LensBounds", "has_z2_free_factor",
           "KLEIN_BOTTLE_KAPPA", "TABLE"]
