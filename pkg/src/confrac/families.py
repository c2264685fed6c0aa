"""Generators for the eight continued-fraction families.

Binomial powers (exponent n, argument x or z):

* ``lagrange_binomial`` -- the alternating-law fraction for (1+x)^n:

      1 + nx/(1 + (1-n)x/(2 + (1+n)x/(3 + (2-n)x/(2 + (2+n)x/(5 + ...)))))

  even levels carry (k-n)x over 2, odd levels (k+n)x over 2k+1.
* ``uniform_binomial`` -- the same value rearranged onto a uniform law:

      1 + nx/(1 + (1-n)x/2 + ((n²-1)x²/4)/(3(1+x/2) + ((n²-4)x²/4)/(5(1+x/2) + ...)))

* ``symmetric_binomial`` -- the form in which only n² appears:

      1 + (n²-1)z²/(3 + (n²-4)z²/(5 + (n²-9)z²/(7 + ...)))
        = nz[(1+z)^n + (1-z)^n] / [(1+z)^n - (1-z)^n]

  so n and -n generate identical streams, level by level.

Limiting forms (no exponent parameter except ``tan_multiple``):

* ``tan_multiple``:   tan(nφ) = nt/(1 - (n²-1)t²/(3 - (n²-4)t²/(5 - ...))), t = tan φ
* ``arctan_cf``:      arctan t = t/(1 + t²/(3 + 4t²/(5 + 9t²/(7 + ...))))
* ``tan_cf``:         tan θ = θ/(1 - θ²/(3 - θ²/(5 - θ²/(7 - ...))))
* ``log_ratio_cf``:   log((1+z)/(1-z)) = 2z/(1 - z²/(3 - 4z²/(5 - 9z²/(7 - ...)))), |z| < 1
* ``coth_scaled_cf``: v coth v = v(e^{2v}+1)/(e^{2v}-1) = 1 + v²/(3 + v²/(5 + ...))

The "minus" fractions are simply streams with negative partial numerators;
there is no separate sign convention.  The four full-fraction families
(tan_multiple, arctan_cf, tan_cf, log_ratio_cf) are streams with ``b0 = 0``
whose first level holds the top numerator over the inner fraction's
leading term.

Exponents are carried as exact rationals regardless of evaluation mode:
the level coefficients (k ± n) and (n² - k²) are computed exactly and only
then converted into the argument's mode, so for integer n the vanishing
partial numerator is an exact zero even in floating point and termination
is never lost to rounding.  Termination levels: ``symmetric_binomial`` at
|n|, ``uniform_binomial`` at |n|+1, ``lagrange_binomial`` at 2n (n > 0) or
2|n|+1 (n < 0), ``tan_multiple`` at |n|+1.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .engine import CFStream, CFTerm
from .errors import DomainError
from .scalars import Mode, Scalar, as_fraction, coerce, mode_of, one, zero

#: Reject tan_cf arguments closer than this to an odd multiple of pi/2.
TAN_POLE_GUARD = 1e-8


def _require_finite(value: Scalar, name: str) -> None:
    if isinstance(value, complex):
        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            raise DomainError(f"{name} must be finite, got {value!r}")
    elif isinstance(value, float) and not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")


def _require_real(value: Scalar, name: str) -> None:
    if isinstance(value, complex) and value.imag != 0:
        raise DomainError(f"{name} must be real, got {value!r}")


def _coef(value: Union[int, Fraction], mode: Mode) -> Scalar:
    # Exact coefficient converted into the target mode; an exact rational
    # zero stays an exact zero in every mode.
    return coerce(Fraction(value), mode)


def lagrange_binomial(n: Union[int, float, Fraction], x: Scalar) -> CFStream:
    """Alternating-law stream for (1+x)^n.

    Terminates at level 2n for positive integer n, 2|n|+1 for negative
    integer n, with the exact rational value.  For real evaluation against
    the binomial oracle keep x > -1; the stream itself exists for any
    finite x.
    """
    n = as_fraction(n)
    _require_finite(x, "x")
    mode = mode_of(x)
    one_ = one(mode)

    def term(k: int) -> CFTerm:
        if k == 1:
            return CFTerm(_coef(n, mode) * x, one_)
        m = k // 2
        if k % 2 == 0:
            return CFTerm(_coef(m - n, mode) * x, _coef(2, mode))
        return CFTerm(_coef(m + n, mode) * x, _coef(2 * m + 1, mode))

    return CFStream(one_, term, description=f"lagrange-binomial(n={n}, x={x!r})")


def uniform_binomial(n: Union[int, float, Fraction], x: Scalar) -> CFStream:
    """Uniform-law stream for (1+x)^n; terminates at level |n|+1 for integer n."""
    n = as_fraction(n)
    _require_finite(x, "x")
    mode = mode_of(x)
    half = _coef(Fraction(1, 2), mode)

    def term(k: int) -> CFTerm:
        if k == 1:
            return CFTerm(_coef(n, mode) * x, one(mode) + _coef((1 - n) / 2, mode) * x)
        num = _coef((n * n - (k - 1) ** 2) / 4, mode)
        return CFTerm(num * x * x, _coef(2 * k - 1, mode) * (one(mode) + half * x))

    return CFStream(one(mode), term, description=f"uniform-binomial(n={n}, x={x!r})")


def symmetric_binomial(n: Union[int, float, Fraction], z: Scalar) -> CFStream:
    """Stream 1 + (n²-1)z²/(3 + (n²-4)z²/(5 + ...)).

    Only n² enters the terms, so n and -n give identical streams; integer n
    terminates at level |n|.  Complex z is allowed (the terms stay real for
    purely imaginary z since z only appears squared).
    """
    n = as_fraction(n)
    _require_finite(z, "z")
    mode = mode_of(z)

    def term(k: int) -> CFTerm:
        return CFTerm(_coef(n * n - k * k, mode) * z * z, _coef(2 * k + 1, mode))

    return CFStream(one(mode), term, description=f"symmetric-binomial(n={n}, z={z!r})")


def tan_multiple(n: Union[int, float, Fraction], t: Scalar) -> CFStream:
    """Full fraction nt/(1 - (n²-1)t²/(3 - (n²-4)t²/(5 - ...))) = tan(nφ), t = tan φ.

    Terminates at level |n|+1 for integer n (tan 2φ = 2t/(1-t²) and so on).
    A pole of tan(nφ) shows up at evaluation time as a vanishing
    denominator, not here.
    """
    n = as_fraction(n)
    _require_finite(t, "t")
    _require_real(t, "t")
    mode = mode_of(t)

    def term(k: int) -> CFTerm:
        if k == 1:
            return CFTerm(_coef(n, mode) * t, one(mode))
        j = k - 1
        return CFTerm(_coef(j * j - n * n, mode) * t * t, _coef(2 * j + 1, mode))

    return CFStream(zero(mode), term, description=f"tan-multiple(n={n}, t={t!r})")


def arctan_cf(t: Scalar) -> CFStream:
    """Full fraction t/(1 + t²/(3 + 4t²/(5 + 9t²/(7 + ...)))) = arctan t."""
    _require_finite(t, "t")
    _require_real(t, "t")
    mode = mode_of(t)

    def term(k: int) -> CFTerm:
        if k == 1:
            return CFTerm(t, one(mode))
        return CFTerm(_coef((k - 1) ** 2, mode) * t * t, _coef(2 * k - 1, mode))

    return CFStream(zero(mode), term, description=f"arctan({t!r})")


def tan_cf(theta: Scalar) -> CFStream:
    """Full fraction θ/(1 - θ²/(3 - θ²/(5 - ...))) = tan θ.

    Arguments within ``TAN_POLE_GUARD`` of an odd multiple of pi/2 are
    rejected: the true function has a pole there and truncations are
    meaningless.
    """
    _require_finite(theta, "theta")
    _require_real(theta, "theta")
    mode = mode_of(theta)
    residue = math.fmod(abs(float(theta.real if isinstance(theta, complex) else theta)), math.pi)
    if abs(residue - math.pi / 2) < TAN_POLE_GUARD:
        raise DomainError(
            f"theta={theta!r} is within {TAN_POLE_GUARD} of an odd multiple of pi/2 (tangent pole)"
        )

    def term(k: int) -> CFTerm:
        if k == 1:
            return CFTerm(theta, one(mode))
        return CFTerm(-(theta * theta), _coef(2 * k - 1, mode))

    return CFStream(zero(mode), term, description=f"tan({theta!r})")


def log_ratio_cf(z: Scalar) -> CFStream:
    """Full fraction 2z/(1 - z²/(3 - 4z²/(5 - 9z²/(7 - ...)))) = log((1+z)/(1-z)).

    Requires real |z| < 1, mirroring the left-hand side's domain.
    """
    _require_finite(z, "z")
    _require_real(z, "z")
    if abs(z) >= 1:
        raise DomainError(f"log_ratio_cf requires |z| < 1, got {z!r}")
    mode = mode_of(z)

    def term(k: int) -> CFTerm:
        if k == 1:
            return CFTerm(_coef(2, mode) * z, one(mode))
        return CFTerm(_coef(-((k - 1) ** 2), mode) * z * z, _coef(2 * k - 1, mode))

    return CFStream(zero(mode), term, description=f"log-ratio({z!r})")


def coth_scaled_cf(v: Scalar) -> CFStream:
    """Stream 1 + v²/(3 + v²/(5 + v²/(7 + ...))) = v coth v  (value 1 at v = 0)."""
    _require_finite(v, "v")
    mode = mode_of(v)

    def term(k: int) -> CFTerm:
        return CFTerm(v * v, _coef(2 * k + 1, mode))

    return CFStream(one(mode), term, description=f"coth-scaled({v!r})")


class Family(enum.Enum):
    """The eight families, named as on the command line."""

    LAGRANGE_BINOMIAL = "lagrange-binomial"
    UNIFORM_BINOMIAL = "uniform-binomial"
    SYMMETRIC_BINOMIAL = "symmetric-binomial"
    TAN_MULTIPLE = "tan-multiple"
    ARCTAN = "arctan"
    TAN = "tan"
    LOG_RATIO = "log-ratio"
    COTH_SCALED = "coth-scaled"

    @property
    def takes_n(self) -> bool:
        return self in _FAMILIES_WITH_N

    @classmethod
    def from_name(cls, name: str) -> "Family":
        try:
            return cls(name)
        except ValueError:
            known = ", ".join(f.value for f in cls)
            raise DomainError(f"unknown family {name!r}; known families: {known}") from None


_FAMILIES_WITH_N = {
    Family.LAGRANGE_BINOMIAL,
    Family.UNIFORM_BINOMIAL,
    Family.SYMMETRIC_BINOMIAL,
    Family.TAN_MULTIPLE,
}

_GENERATORS_WITH_N = {
    Family.LAGRANGE_BINOMIAL: lagrange_binomial,
    Family.UNIFORM_BINOMIAL: uniform_binomial,
    Family.SYMMETRIC_BINOMIAL: symmetric_binomial,
    Family.TAN_MULTIPLE: tan_multiple,
}

_GENERATORS_PLAIN = {
    Family.ARCTAN: arctan_cf,
    Family.TAN: tan_cf,
    Family.LOG_RATIO: log_ratio_cf,
    Family.COTH_SCALED: coth_scaled_cf,
}


@dataclass(frozen=True)
class FamilySpec:
    """A family plus its parameters: the exponent n (where applicable) and
    the argument (x, y/z, t, θ or v depending on the family).

    The exponent is normalized to an exact :class:`fractions.Fraction` at
    construction so termination decisions never depend on the evaluation
    mode of the argument.
    """

    family: Family
    arg: Scalar
    n: Optional[Union[int, float, Fraction]] = None

    def __post_init__(self) -> None:
        if self.family.takes_n:
            if self.n is None:
                raise DomainError(f"family {self.family.value} requires an exponent n")
            object.__setattr__(self, "n", as_fraction(self.n))
        elif self.n is not None:
            raise DomainError(f"family {self.family.value} takes no exponent parameter")
        _require_finite(self.arg, "arg")

    @property
    def mode(self) -> Mode:
        return mode_of(self.arg)

    def stream(self) -> CFStream:
        if self.family.takes_n:
            return _GENERATORS_WITH_N[self.family](self.n, self.arg)
        return _GENERATORS_PLAIN[self.family](self.arg)
