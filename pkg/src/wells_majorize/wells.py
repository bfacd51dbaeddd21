"""Moment criterion for Ising domination of symmetric two-point measures.

An even, compactly supported, atomic probability measure dominates the
symmetric two-point measure at +-S exactly when every centered even-power
moment integral of (x^2 - S^2)**n is non-negative. The threshold value
T_- is the largest such S; this module computes certified rational
brackets for it, classifies canonical measures (T_- equal to the RMS
spin), and evaluates the closed-form transition-temperature bound ratios.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable

from .errors import DomainError, InvariantError, PreconditionError, ValidationError
from .rationals import format_rational, parse_rational
from .spin_sums import SpinValue

CLOSED_FORM = "closed_form"
CERTIFIED_UP_TO_N_MAX = "certified_up_to_n_max"

DEFAULT_N_MAX = 50
DEFAULT_TOL = Fraction(1, 10**6)


@dataclass(frozen=True)
class DiscreteMeasure:
    """Even probability measure with finitely many rational atoms."""

    atoms: tuple[tuple[Fraction, Fraction], ...]  # (value, weight)

    def __post_init__(self) -> None:
        if not self.atoms:
            raise ValidationError("measure needs at least one atom")
        values = [v for v, _ in self.atoms]
        if len(set(values)) != len(values):
            raise ValidationError("duplicate atom values")
        total = Fraction(0)
        table = dict(self.atoms)
        for v, w in self.atoms:
            if w <= 0:
                raise ValidationError(f"non-positive weight at {v}")
            if table.get(-v) != w:
                raise ValidationError(f"measure is not even at value {v}")
            total += w
        if total != 1:
            raise ValidationError(f"weights sum to {total}, not 1")
        if len(self.atoms) == 1 and self.atoms[0][0] == 0:
            raise ValidationError("point mass at 0 is excluded")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[object, object]]) -> "DiscreteMeasure":
        atoms = tuple(
            sorted((parse_rational(v), parse_rational(w)) for v, w in pairs)
        )
        return cls(atoms)

    @classmethod
    def from_json(cls, text: str) -> "DiscreteMeasure":
        """Parse {"atoms": [["value", "weight"], ...]} with rational strings."""
        try:
            data = json.loads(text)
            pairs = data["atoms"]
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise ValidationError(f"bad measure JSON: {exc}") from exc
        return cls.from_pairs(pairs)

    def to_json(self) -> str:
        return json.dumps(
            {"atoms": [[format_rational(v), format_rational(w)] for v, w in self.atoms]}
        )

    def second_moment(self) -> Fraction:
        return sum((w * v * v for v, w in self.atoms), Fraction(0))

    def max_abs_value(self) -> Fraction:
        return max(abs(v) for v, _ in self.atoms)


def bernoulli_measure(T: Fraction | int | str) -> DiscreteMeasure:
    """Symmetric two-point measure with atoms +-T, weight 1/2 each."""
    T = parse_rational(T)
    if T <= 0:
        raise DomainError("T must be > 0")
    return DiscreteMeasure.from_pairs([(T, Fraction(1, 2)), (-T, Fraction(1, 2))])


def spin_measure(S: SpinValue) -> DiscreteMeasure:
    """2S+1 equally weighted atoms equally spaced between -1 and 1."""
    s2 = S.twice
    weight = Fraction(1, s2 + 1)
    return DiscreteMeasure.from_pairs(
        (Fraction(2 * k - s2, s2), weight) for k in range(s2 + 1)
    )


def mu_lambda_measure(lam: Fraction | int | str) -> DiscreteMeasure:
    """Three-point family: weight lam/2 at each of +-1 and 1-lam at 0."""
    lam = parse_rational(lam)
    if not 0 < lam <= 1:
        raise DomainError("lambda must lie in (0, 1]")
    pairs = [(Fraction(1), lam / 2), (Fraction(-1), lam / 2)]
    if lam < 1:
        pairs.append((Fraction(0), 1 - lam))
    return DiscreteMeasure.from_pairs(pairs)


def spin_second_moment(S: SpinValue) -> Fraction:
    """Second moment of the spin-S measure; equals 1/3 + 1/(3S) exactly."""
    value = spin_measure(S).second_moment()
    closed = Fraction(1, 3) + Fraction(1, 3) / S.as_fraction
    if value != closed:
        raise InvariantError("spin second moment disagrees with closed form")
    return value


def wells_term(mu: DiscreteMeasure, s_squared: Fraction | int | str, n: int) -> Fraction:
    """Exact centered moment integral of (x^2 - s_squared)**n against mu.

    The threshold parameter enters squared to keep everything rational
    (the threshold itself is typically irrational).
    """
    if n < 1:
        raise PreconditionError("n must be >= 1")
    s = parse_rational(s_squared)
    return sum((w * (v * v - s) ** n for v, w in mu.atoms), Fraction(0))


def passes_up_to(mu: DiscreteMeasure, s_squared: Fraction | int | str, n_max: int) -> bool:
    """True iff every centered moment of order n = 1..n_max is >= 0.

    A truncation of the all-n criterion: a True result certifies the
    necessary conditions only up to n_max.
    """
    if n_max < 1:
        raise PreconditionError("n_max must be >= 1")
    s = parse_rational(s_squared)
    return all(wells_term(mu, s, n) >= 0 for n in range(1, n_max + 1))


def tail_sign_ok(mu: DiscreteMeasure, s_squared: Fraction | int | str) -> bool:
    """Exact large-n necessary condition for the all-n criterion.

    For odd n -> infinity the atoms with the largest |x^2 - s| dominate
    the integral. If the negative side strictly wins in magnitude, or
    ties in magnitude with strictly more weight, some large odd moment is
    negative and the criterion fails; that is decidable exactly, with no
    truncation.
    """
    s = parse_rational(s_squared)
    diffs = [(v * v - s, w) for v, w in mu.atoms]
    pos = max((d for d, _ in diffs if d > 0), default=Fraction(0))
    neg = max((-d for d, _ in diffs if d < 0), default=Fraction(0))
    if neg > pos:
        return False
    if neg == pos and neg > 0:
        w_pos = sum(w for d, w in diffs if d == pos)
        w_neg = sum(w for d, w in diffs if d == -neg)
        return w_pos >= w_neg
    return True


@dataclass(frozen=True)
class TMinusResult:
    """Certified rational bracket for the domination threshold."""

    lo: Fraction
    hi: Fraction
    n_max_checked: int
    status: str

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise InvariantError("empty bracket")
        if self.status == CLOSED_FORM and self.lo != self.hi:
            raise InvariantError("closed form must be a point bracket")


def _threshold_predicate(mu: DiscreteMeasure, s_squared: Fraction, n_max: int) -> bool:
    return tail_sign_ok(mu, s_squared) and passes_up_to(mu, s_squared, n_max)


def t_minus_upper(
    mu: DiscreteMeasure,
    n_max: int = DEFAULT_N_MAX,
    tol: Fraction | int | str = DEFAULT_TOL,
) -> TMinusResult:
    """Bracket the domination threshold by bisection on S in [0, max|atom|].

    The predicate combines the truncated moment checks (n <= n_max) with
    the exact large-n sign condition, so the bracket is tight for the
    atomic families with known closed forms. The true threshold never
    exceeds hi; equality with the bracketed value holds only in the
    all-n limit.
    """
    tol = parse_rational(tol)
    if tol <= 0:
        raise PreconditionError("tol must be positive")
    top = mu.max_abs_value()
    if len(mu.atoms) == 2:
        # Two-point measure: the threshold is the atom magnitude itself.
        return TMinusResult(lo=top, hi=top, n_max_checked=n_max, status=CLOSED_FORM)
    if _threshold_predicate(mu, top * top, n_max):
        return TMinusResult(lo=top, hi=top, n_max_checked=n_max, status=CERTIFIED_UP_TO_N_MAX)

    # The bisection relies on the predicate being a down-set in S; spot
    # check that on a coarse grid before trusting it.
    samples = [_threshold_predicate(mu, (top * Fraction(k, 8)) ** 2, n_max) for k in range(9)]
    if any(b and not a for a, b in zip(samples, samples[1:])):
        raise InvariantError("threshold predicate is not monotone on the sample grid")

    lo, hi = Fraction(0), top
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if _threshold_predicate(mu, mid * mid, n_max):
            lo = mid
        else:
            hi = mid
    return TMinusResult(lo=lo, hi=hi, n_max_checked=n_max, status=CERTIFIED_UP_TO_N_MAX)


def t_minus_squared_mu_lambda(lam: Fraction | int | str) -> Fraction:
    """Closed-form squared threshold for the three-point family:
    lam when lam <= 1/2, else 1/2."""
    lam = parse_rational(lam)
    if not 0 < lam <= 1:
        raise DomainError("lambda must lie in (0, 1]")
    return lam if lam <= Fraction(1, 2) else Fraction(1, 2)


@dataclass(frozen=True)
class CanonicalGap:
    second_moment: Fraction
    t_minus_sq_lo: Fraction
    t_minus_sq_hi: Fraction
    canonical_up_to_n_max: bool


def canonical_gap(
    mu: DiscreteMeasure,
    n_max: int = DEFAULT_N_MAX,
    tol: Fraction | int | str = DEFAULT_TOL,
) -> CanonicalGap:
    """Compare the threshold bracket against the RMS spin.

    The measure is canonical when the threshold equals the RMS value; the
    truncated certificate here is the moment check at S^2 = second moment.
    """
    second = mu.second_moment()
    bracket = t_minus_upper(mu, n_max=n_max, tol=tol)
    return CanonicalGap(
        second_moment=second,
        t_minus_sq_lo=bracket.lo * bracket.lo,
        t_minus_sq_hi=bracket.hi * bracket.hi,
        canonical_up_to_n_max=passes_up_to(mu, second, n_max),
    )


def sphere_moment(D: int, k: int) -> Fraction:
    """E[x^(2k)] for the first coordinate of a uniform point on the unit
    sphere in R^D: product of (2i+1)/(D+2i) for i = 0..k-1. Odd moments
    vanish by symmetry."""
    if D < 2:
        raise PreconditionError("D must be >= 2")
    if k < 0:
        raise PreconditionError("k must be >= 0")
    value = Fraction(1)
    for i in range(k):
        value *= Fraction(2 * i + 1, D + 2 * i)
    return value


def sphere_centered_term(D: int, n: int) -> Fraction:
    """Exact integral of (x^2 - 1/D)**n for the sphere coordinate measure,
    via binomial expansion over the even moments."""
    if n < 1:
        raise PreconditionError("n must be >= 1")
    shift = Fraction(-1, D)
    return sum(
        (comb(n, i) * sphere_moment(D, i) * shift ** (n - i) for i in range(n + 1)),
        Fraction(0),
    )


def sphere_canonical_check(D: int, n_max: int) -> bool:
    """True iff every centered term at S^2 = 1/D is >= 0 for n = 1..n_max,
    i.e. the sphere coordinate measure looks canonical to this order."""
    if n_max < 1:
        raise PreconditionError("n_max must be >= 1")
    return all(sphere_centered_term(D, n) >= 0 for n in range(1, n_max + 1))


@dataclass(frozen=True)
class TcBounds:
    """Dimensionless lower-bound ratios T_c(S) / T_c(1/2)."""

    griffiths: Fraction
    msw: Fraction
    improvement: Fraction


def tc_bounds(S: SpinValue) -> TcBounds:
    """Classical ratio 1/4 versus the moment-criterion ratio: 1/2 at S = 1,
    otherwise 1/3 + 1/(3S). The improvement factor always exceeds 4/3."""
    if S.as_fraction < 1:
        raise PreconditionError("requires S >= 1")
    griffiths = Fraction(1, 4)
    if S.as_fraction == 1:
        msw = Fraction(1, 2)
    else:
        msw = Fraction(1, 3) + Fraction(1, 3) / S.as_fraction
    return TcBounds(griffiths=griffiths, msw=msw, improvement=msw / griffiths)
