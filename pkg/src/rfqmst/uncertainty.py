"""Fuzzy, rough and rough-fuzzy calculus used to crisp-ify the QMST objectives.

Every weight of a rough-fuzzy QMST instance is a rough interval whose four
endpoints are crisp shifts of one shared triangular fuzzy variable::

    [xi + a1, xi + a2][xi + a3, xi + a4],   a3 <= a1 <= a2 <= a4

Summing such weights over a tree keeps that shape, so the chance constraint
``Cr{theta | Tr{sum <= f} >= alpha} >= beta`` reduces to a closed form in the
summed fuzzy lower bound ``p`` and the crisp width ``q1 = sum(a4 - a3)``
(see :func:`chance_reduce`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

__all__ = [
    "TriangularFuzzy",
    "RoughInterval",
    "RoughFuzzyWeight",
    "ConfidenceLevels",
    "AggregatedChance",
    "tfv_membership",
    "possibility_necessity_leq",
    "credibility",
    "cr_quantile_leq",
    "trust",
    "tr_quantile_leq",
    "tfv_affine_sum",
    "chance_reduce",
    "chance_reduce_bisect_oracle",
]


def _check_unit(name: str, value: float) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {value!r}")
    return value


@dataclass(frozen=True)
class TriangularFuzzy:
    """Triangular fuzzy variable ``(u, v, w)`` with mode ``v``.

    ``u == v == w`` is allowed and behaves as the crisp number ``v``.
    """

    u: float
    v: float
    w: float

    def __post_init__(self):
        if not self.u <= self.v <= self.w:
            raise ValueError(
                f"triangular fuzzy variable needs u <= v <= w, got ({self.u}, {self.v}, {self.w})"
            )

    @classmethod
    def crisp(cls, value: float) -> "TriangularFuzzy":
        return cls(value, value, value)

    @property
    def is_degenerate(self) -> bool:
        return not self.u < self.v < self.w

    def shift(self, delta: float) -> "TriangularFuzzy":
        return TriangularFuzzy(self.u + delta, self.v + delta, self.w + delta)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.u, self.v, self.w)


@dataclass(frozen=True)
class RoughInterval:
    """Rough variable ``[lo1, lo2][up1, up2]``.

    ``[lo1, lo2]`` is the lower approximation (certain members) and
    ``[up1, up2]`` the upper approximation (possible members).
    """

    lo1: float
    lo2: float
    up1: float
    up2: float

    def __post_init__(self):
        if not self.up1 <= self.lo1 <= self.lo2 <= self.up2:
            raise ValueError(
                "rough interval needs up1 <= lo1 <= lo2 <= up2, got "
                f"[{self.lo1}, {self.lo2}][{self.up1}, {self.up2}]"
            )


@dataclass(frozen=True)
class RoughFuzzyWeight:
    """Rough-fuzzy weight ``[xi+a1, xi+a2][xi+a3, xi+a4]`` over one fuzzy base ``xi``."""

    base: TriangularFuzzy
    a1: float
    a2: float
    a3: float
    a4: float

    def __post_init__(self):
        if not self.a3 <= self.a1 <= self.a2 <= self.a4:
            raise ValueError(
                "offsets need a3 <= a1 <= a2 <= a4, got "
                f"({self.a1}, {self.a2}, {self.a3}, {self.a4})"
            )

    @property
    def offsets(self) -> tuple[float, float, float, float]:
        return (self.a1, self.a2, self.a3, self.a4)

    @property
    def width(self) -> float:
        """Crisp width ``q - p`` of every realization's upper approximation."""
        return self.a4 - self.a3

    def realize(self, x: float) -> RoughInterval:
        """The rough interval obtained when the fuzzy base takes the value ``x``."""
        return RoughInterval(x + self.a1, x + self.a2, x + self.a3, x + self.a4)

    def scaled(self, k: float) -> "RoughFuzzyWeight":
        b = self.base
        return RoughFuzzyWeight(
            TriangularFuzzy(k * b.u, k * b.v, k * b.w),
            k * self.a1, k * self.a2, k * self.a3, k * self.a4,
        )


@dataclass(frozen=True)
class ConfidenceLevels:
    """Trust levels ``alpha1, alpha2`` and credibility levels ``beta1, beta2``."""

    alpha1: float
    alpha2: float
    beta1: float
    beta2: float

    def __post_init__(self):
        for name in ("alpha1", "alpha2", "beta1", "beta2"):
            object.__setattr__(self, name, _check_unit(name, getattr(self, name)))

    @classmethod
    def uniform(cls, alpha: float, beta: float) -> "ConfidenceLevels":
        """Same ``(alpha, beta)`` for both objectives."""
        return cls(alpha, alpha, beta, beta)


class AggregatedChance(NamedTuple):
    """Summed weight of a tree: fuzzy lower bound ``p`` and crisp width ``q1``."""

    p: TriangularFuzzy
    q1: float


# --------------------------------------------------------------------------
# fuzzy measures


def tfv_membership(xi: TriangularFuzzy, x: float) -> float:
    u, v, w = xi.u, xi.v, xi.w
    if x == v:
        return 1.0
    if u <= x < v:
        return (x - u) / (v - u)
    if v < x <= w:
        return (w - x) / (w - v)
    return 0.0


def _sup_membership_above(xi: TriangularFuzzy, x: float) -> float:
    # sup of the membership over the open ray (x, inf)
    if x < xi.v:
        return 1.0
    if x < xi.w:
        return (xi.w - x) / (xi.w - xi.v)
    return 0.0


def _sup_membership_below(xi: TriangularFuzzy, x: float) -> float:
    # sup of the membership over the open ray (-inf, x)
    if x > xi.v:
        return 1.0
    if x > xi.u:
        return (x - xi.u) / (xi.v - xi.u)
    return 0.0


def possibility_necessity_leq(xi: TriangularFuzzy, x: float) -> tuple[float, float]:
    """Possibility and necessity of the event ``xi <= x``.

    Possibility is the supremum of the membership over ``(-inf, x]``;
    necessity is one minus the possibility of the complement ``xi > x``.
    """
    pos = 1.0 if x >= xi.v else tfv_membership(xi, x)
    nec = 1.0 - _sup_membership_above(xi, x)
    return pos, nec


def _credibility_by_measures(xi: TriangularFuzzy, x: float) -> tuple[float, float]:
    pos_leq, nec_leq = possibility_necessity_leq(xi, x)
    pos_geq = 1.0 if x <= xi.v else tfv_membership(xi, x)
    nec_geq = 1.0 - _sup_membership_below(xi, x)
    return 0.5 * (pos_leq + nec_leq), 0.5 * (pos_geq + nec_geq)


def credibility(xi: TriangularFuzzy, x: float) -> tuple[float, float]:
    """Return ``(Cr{xi <= x}, Cr{xi >= x})``.

    Closed-form piecewise-linear distributions for a proper triangle. When a
    leg has zero width the distribution has a jump there; those cases are
    resolved from the possibility/necessity definition, which gives the
    one-sided limit of the closed form.
    """
    u, v, w = xi.u, xi.v, xi.w
    if xi.is_degenerate:
        return _credibility_by_measures(xi, x)
    if x < u:
        return 0.0, 1.0
    if x <= v:
        return (x - u) / (2.0 * (v - u)), (2.0 * v - u - x) / (2.0 * (v - u))
    if x <= w:
        return (x + w - 2.0 * v) / (2.0 * (w - v)), (w - x) / (2.0 * (w - v))
    return 1.0, 0.0


def cr_quantile_leq(xi: TriangularFuzzy, beta: float) -> float:
    """Smallest ``x`` with ``Cr{xi <= x} >= beta``.

    For ``beta == 0`` the left support ``u`` is returned rather than ``-inf``.
    """
    beta = _check_unit("beta", beta)
    if beta <= 0.5:
        return (1.0 - 2.0 * beta) * xi.u + 2.0 * beta * xi.v
    return (2.0 - 2.0 * beta) * xi.v + (2.0 * beta - 1.0) * xi.w


# --------------------------------------------------------------------------
# rough measures


def _uniform_cdf(a: float, b: float, x: float) -> float:
    if x < a:
        return 0.0
    if x >= b:
        return 1.0
    return (x - a) / (b - a)


def _uniform_sf(a: float, b: float, x: float) -> float:
    if x <= a:
        return 1.0
    if x > b:
        return 0.0
    return (b - x) / (b - a)


def trust(rho: RoughInterval, x: float) -> tuple[float, float]:
    """Return ``(Tr{rho <= x}, Tr{rho >= x})``.

    Trust averages the Lebesgue share of the lower and of the upper
    approximation satisfying the event. A zero-width approximation
    contributes a unit step at its point.
    """
    leq = 0.5 * (_uniform_cdf(rho.lo1, rho.lo2, x) + _uniform_cdf(rho.up1, rho.up2, x))
    geq = 0.5 * (_uniform_sf(rho.lo1, rho.lo2, x) + _uniform_sf(rho.up1, rho.up2, x))
    return leq, geq


def tr_quantile_leq(rho: RoughInterval, alpha: float) -> float:
    """Inverse of ``x -> Tr{rho <= x}``.

    The three linear branches cover ``[up1, lo1]``, ``[lo1, lo2]`` and
    ``[lo2, up2]``. With ``lo1 == lo2`` the middle branch collapses to the
    point ``lo1``, which absorbs every level inside the jump.
    """
    alpha = _check_unit("alpha", alpha)
    m, n, p, q = rho.lo1, rho.lo2, rho.up1, rho.up2
    if not p < q:
        raise ValueError("tr_quantile_leq needs a non-degenerate upper approximation")
    width = q - p
    if alpha <= 0.5 * (m - p) / width:
        return p + 2.0 * alpha * width
    if alpha <= 0.5 * ((n - p) / width + 1.0):
        return (m * q + p * n + 2.0 * alpha * (n - m) * width - 2.0 * p * m) / (n + q - (p + m))
    return 2.0 * p - q + 2.0 * alpha * width


# --------------------------------------------------------------------------
# aggregation and chance constraints


def tfv_affine_sum(terms: Iterable[tuple[TriangularFuzzy, float, float]]) -> TriangularFuzzy:
    """Sum of ``coeff * xi + shift`` over the terms, by the extension principle.

    Coefficients must be nonnegative so that the ``u <= v <= w`` ordering of
    each term is preserved.
    """
    u = v = w = 0.0
    for xi, coeff, shift in terms:
        if coeff < 0:
            raise ValueError(f"negative coefficient {coeff!r} would reverse the fuzzy ordering")
        u += coeff * xi.u + shift
        v += coeff * xi.v + shift
        w += coeff * xi.w + shift
    return TriangularFuzzy(u, v, w)


def chance_reduce(
    agg: AggregatedChance, alpha: float, beta: float, regime: str | None = None
) -> float:
    """Crisp bound ``f`` of ``Cr{theta | Tr{sum <= f} >= alpha} >= beta``.

    Uses the branch where ``f`` falls between the lower end of the upper
    approximation and the lower end of the lower approximation::

        beta <= 0.5:  f = u + 2*alpha*q1 + 2*beta*(v - u)
        beta >  0.5:  f = 2*v - w + 2*alpha*q1 + 2*beta*(w - v)

    where ``(u, v, w) = agg.p``. Both branches give ``v + 2*alpha*q1`` at
    ``beta = 0.5``. ``regime="low"`` or ``"high"`` forces a branch
    regardless of ``beta``.
    """
    alpha = _check_unit("alpha", alpha)
    beta = _check_unit("beta", beta)
    if regime is None:
        regime = "low" if beta <= 0.5 else "high"
    elif regime not in ("low", "high"):
        raise ValueError(f"regime must be 'low' or 'high', got {regime!r}")
    u, v, w = agg.p.u, agg.p.v, agg.p.w
    if regime == "low":
        return u + 2.0 * alpha * agg.q1 + 2.0 * beta * (v - u)
    return 2.0 * v - w + 2.0 * alpha * agg.q1 + 2.0 * beta * (w - v)


def chance_reduce_bisect_oracle(
    agg: AggregatedChance, alpha: float, beta: float, tol: float = 1e-12
) -> float:
    """Numerical counterpart of :func:`chance_reduce`.

    Bisects the monotone map ``f -> Cr{p <= f - 2*alpha*q1}`` for the smallest
    ``f`` reaching ``beta``, bracketed by the fuzzy support shifted by the
    trust term. Shares no algebra with the closed form.
    """
    alpha = _check_unit("alpha", alpha)
    beta = _check_unit("beta", beta)
    shift = 2.0 * alpha * agg.q1
    lo, hi = agg.p.u + shift, agg.p.w + shift

    def reaches(f: float) -> bool:
        return credibility(agg.p, f - shift)[0] >= beta

    if reaches(lo):
        return lo
    # invariant: not reaches(lo), reaches(hi)
    for _ in range(200):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if reaches(mid):
            hi = mid
        else:
            lo = mid
    return hi
