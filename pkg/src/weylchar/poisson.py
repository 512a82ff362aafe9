"""Product-Poisson transition kernels and the tail estimates behind them.

Everything here is double precision with explicit truncation-tail accounting:
factorials mix scales badly, so masses are assembled in log space above 170!
and every report carries the bound on the part that was cut off.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

_LOG_THRESHOLD = 170


def poisson_mass(t: float, k: int) -> float:
    """e^{-t} t^k / k!, stable for large k via log-space evaluation."""
    if k < 0:
        return 0.0
    if t == 0:
        return 1.0 if k == 0 else 0.0
    if k <= _LOG_THRESHOLD and t < 700 and k * math.log(max(t, 1.0)) < 600:
        return math.exp(-t) * t**k / math.factorial(k)
    return math.exp(-t + k * math.log(t) - math.lgamma(k + 1))


def poisson_tail(t: float, k: int) -> float:
    """Upper bound on P(X > k) for X Poisson(t); exact partial-sum complement."""
    acc = 0.0
    for j in range(k + 1):
        acc += poisson_mass(t, j)
    return max(0.0, 1.0 - acc)


@dataclass(frozen=True)
class PoissonKernelParams:
    """Positive rate vector a = (a_1, ..., a_m) of the product-Poisson kernel."""

    a: tuple

    def __post_init__(self):
        a = tuple(Fraction(x) if isinstance(x, (int, Rational)) else float(x) for x in self.a)
        if not a or any(x <= 0 for x in a):
            raise ValueError("rates must be positive")
        object.__setattr__(self, "a", a)

    @property
    def m(self) -> int:
        return len(self.a)

    def floats(self) -> tuple[float, ...]:
        return tuple(float(x) for x in self.a)

    def scaled(self, k: int) -> tuple[float, ...]:
        return tuple(float(x) * k for x in self.a)


def kernel(params: PoissonKernelParams, x, y) -> float:
    """Transition mass p_a(x, y): product of Poisson masses at the increments.

    Zero whenever any coordinate decreases; rows sum to 1.
    """
    if len(x) != params.m or len(y) != params.m:
        raise ValueError("points must have the kernel's dimension")
    out = 1.0
    for ai, xi, yi in zip(params.floats(), x, y):
        if yi < xi:
            return 0.0
        out *= poisson_mass(ai, yi - xi)
    return out


@dataclass(frozen=True)
class LatticeDistribution:
    """Truncated distribution on nonnegative integer tuples with a tail bound.

    The stored masses plus the certified tail account for all probability:
    sum(probs) <= 1 and sum(probs) + tail_bound covers 1 up to roundoff.
    """

    probs: dict[tuple[int, ...], float]
    tail_bound: float

    def __post_init__(self):
        probs = {tuple(k): float(v) for k, v in self.probs.items() if v}
        if any(v < 0 for v in probs.values()):
            raise ValueError("negative mass")
        total = sum(probs.values())
        if total > 1 + 1e-9:
            raise ValueError(f"mass {total} exceeds 1")
        if total + self.tail_bound < 1 - 1e-6:
            raise ValueError("tail bound does not cover the missing mass")
        object.__setattr__(self, "probs", probs)

    def mass(self, x: tuple[int, ...]) -> float:
        return self.probs.get(tuple(x), 0.0)


@dataclass(frozen=True)
class SemigroupReport:
    k: int
    max_deviation: float
    tail_bound: float
    passed: bool

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "max_deviation": self.max_deviation,
            "tail_bound": self.tail_bound,
            "passed": self.passed,
        }


def kernel_row(params: PoissonKernelParams, scale: int, truncation: int) -> LatticeDistribution:
    """Row of the scale-fold kernel from the origin, truncated to a box."""
    rates = tuple(scale * r for r in params.floats())
    probs = {}
    for y in _grid(params.m, truncation):
        mass = 1.0
        for ai, yi in zip(rates, y):
            mass *= poisson_mass(ai, yi)
        if mass:
            probs[y] = mass
    tail = sum(poisson_tail(r, truncation) for r in rates)
    return LatticeDistribution(probs, tail)


def kstep_semigroup_check(
    params: PoissonKernelParams, k: int, truncation: int = 40
) -> SemigroupReport:
    """k-fold convolution of the kernel against the k-scaled kernel.

    Compares the truncated k-step transition from the origin with the single
    jump of rate k*a on the grid [0, truncation]^m; the deviation must stay
    below the convolution's truncation tail.
    """
    if k < 1:
        raise ValueError("k >= 1 required")
    m = params.m
    rates = params.floats()
    grid = _grid(m, truncation)
    # Each of the k steps can escape the box; a union bound certifies the tail.
    step_tail = sum(poisson_tail(ai, truncation) for ai in rates)
    probs = {(0,) * m: 1.0}
    for _ in range(k):
        new: dict[tuple[int, ...], float] = {}
        for x, px in probs.items():
            for z in grid:
                y = tuple(a + b for a, b in zip(x, z))
                if any(c > truncation for c in y):
                    continue
                mass = px
                for ai, zi in zip(rates, z):
                    mass *= poisson_mass(ai, zi)
                    if mass == 0.0:
                        break
                if mass:
                    new[y] = new.get(y, 0.0) + mass
        probs = new
    iterated = LatticeDistribution(probs, k * step_tail)
    direct = kernel_row(params, k, truncation)
    worst = 0.0
    for y in grid:
        worst = max(worst, abs(iterated.mass(y) - direct.mass(y)))
    tail = max(iterated.tail_bound, direct.tail_bound)
    return SemigroupReport(k, worst, tail, worst <= max(tail, 1e-10))


def _grid(m: int, truncation: int):
    import itertools

    return list(itertools.product(range(truncation + 1), repeat=m))


def tv_bound(a_i, k: int) -> float:
    """Total-variation distance between k-step rows started at 0 and at e_i.

    Equals 2 e^{-t} t^[t] / [t]! with t = k a_i, which decays like
    sqrt(2/(pi t)); monotone nonincreasing once t >= 1.
    """
    if k < 1:
        raise ValueError("k >= 1 required")
    t = float(a_i) * k
    if t <= 0:
        raise ValueError("rate must be positive")
    return 2.0 * poisson_mass(t, math.floor(t))


@dataclass(frozen=True)
class StirlingReport:
    t: float
    closed_form: object
    partial_sum: float
    damped: float
    peak_mass: float
    terms: int
    tail_bound: float
    relative_deviation: float

    def to_json(self) -> dict:
        closed = self.closed_form
        if isinstance(closed, Fraction):
            closed_str = f"{closed.numerator}/{closed.denominator}"
        else:
            closed_str = repr(float(closed))
        return {
            "t": self.t,
            "closed_form": closed_str,
            "closed_form_float": float(self.closed_form),
            "partial_sum": self.partial_sum,
            "damped": self.damped,
            "peak_mass": self.peak_mass,
            "terms": self.terms,
            "tail_bound": self.tail_bound,
            "relative_deviation": self.relative_deviation,
        }


def stirling_identity(t, max_terms: int = 200) -> StirlingReport:
    """Absolute consecutive-difference series against its closed form.

    sum_{n>=1} |t^{n-1}/(n-1)! - t^n/n!| telescopes to -1 + 2 t^[t]/[t]!; the
    report carries the partial sum, the closed form (exact when t is rational),
    the series tail t^N/N! left after N terms, e^{-t} times the closed form
    (the vanishing damped quantity), and the single Poisson mass
    e^{-t} t^[t]/[t]!, which behaves like 1/sqrt(2 pi t) for large t.  The
    closed form grows like e^t, so deviations are reported relative to it.
    """
    tf = float(t)
    if tf <= 0:
        raise ValueError("t > 0 required")
    if max_terms < 2 * tf + 10:
        raise ValueError("max_terms too small for the tail to telescope cleanly")
    floor_t = math.floor(tf)
    if isinstance(t, (int, Rational)) and not isinstance(t, bool):
        tq = Fraction(t)
        closed: object = -1 + 2 * tq**floor_t / math.factorial(floor_t)
    else:
        closed = -1.0 + 2.0 * math.exp(floor_t * math.log(tf) - math.lgamma(floor_t + 1))
    partial = 0.0
    term_prev = 1.0  # t^0/0!
    for n in range(1, max_terms + 1):
        term = term_prev * tf / n  # t^n/n!
        partial += abs(term_prev - term)
        term_prev = term
    # Beyond n = max_terms >= t the differences are positive and telescope,
    # so the exact remainder is t^N/N!.
    tail = math.exp(max_terms * math.log(tf) - math.lgamma(max_terms + 1))
    closed_f = float(closed)
    damped = math.exp(-tf) * closed_f
    peak = poisson_mass(tf, floor_t)
    rel = abs(partial - closed_f) / max(1.0, abs(closed_f))
    return StirlingReport(tf, closed, partial, damped, peak, max_terms, tail, rel)


def chi_tau_tauprime(tau_vals, tauprime_vals=()) -> complex:
    """exp(sum of tau(u-1) values plus sum of tau'(u*-1) values); modulus <= 1."""
    total = 0j
    for v in tuple(tau_vals) + tuple(tauprime_vals):
        v = complex(v)
        if v.real > 1e-9:
            raise ValueError(f"trace of (u - 1) must have nonpositive real part: {v}")
        total += v
    return cmath.exp(total)


@dataclass(frozen=True)
class SeriesReport:
    closed: complex
    series: complex
    deviation: float
    tail_bound: float
    truncation: int
    passed: bool

    def to_json(self) -> dict:
        return {
            "closed": [self.closed.real, self.closed.imag],
            "series": [self.series.real, self.series.imag],
            "deviation": self.deviation,
            "tail_bound": self.tail_bound,
            "truncation": self.truncation,
            "passed": self.passed,
        }


def poisson_series_check(
    a, b, n: int, tau_values, tauprime_values=None, truncation: int = 60
) -> SeriesReport:
    """Poisson-weighted double series against the closed exponential.

    With trace values tau_i = tau_{i,n}(u) of modulus at most 1, the series
    prod_i sum_x Poisson(n a_i)(x) tau_i^x * prod_j sum_y Poisson(n b_j)(y)
    conj(tau_j)^y is compared with exp(sum n a_i (tau_i - 1) + n b_j
    (conj tau_j - 1)) at the given truncation.
    """
    a = tuple(float(x) for x in a)
    b = tuple(float(x) for x in b)
    tau = tuple(complex(v) for v in tau_values)
    if tauprime_values is None:
        # Conjugate side evaluated at the same unitary when b is in play.
        tauprime_values = tau_values if b else ()
    taup = tuple(complex(v) for v in tauprime_values)
    if len(tau) != len(a) or len(taup) != len(b):
        raise ValueError("one trace value per rate")
    if any(abs(v) > 1 + 1e-9 for v in tau + taup):
        raise ValueError("trace values must lie in the closed unit disk")

    def factor(rate: float, value: complex) -> complex:
        out = 0j
        power = 1 + 0j
        for x in range(truncation + 1):
            out += poisson_mass(rate, x) * power
            power *= value
        return out

    series = 1 + 0j
    tail = 0.0
    exponent = 0j
    for rate, v in zip(a, tau):
        series *= factor(n * rate, v)
        tail += poisson_tail(n * rate, truncation)
        exponent += n * rate * (v - 1)
    for rate, v in zip(b, taup):
        series *= factor(n * rate, v.conjugate())
        tail += poisson_tail(n * rate, truncation)
        exponent += n * rate * (v.conjugate() - 1)
    closed = cmath.exp(exponent)
    deviation = abs(closed - series)
    return SeriesReport(closed, series, deviation, tail, truncation, deviation <= max(tail * 4, 1e-10))


@dataclass(frozen=True)
class ReexpansionReport:
    constant_exact: bool
    row_mass_deviation: float
    projection_deviation: float
    character_deviation: float
    binomial_deviation: float
    tail_bound: float
    passed: bool

    def to_json(self) -> dict:
        return {
            "constant_exact": self.constant_exact,
            "row_mass_deviation": self.row_mass_deviation,
            "projection_deviation": self.projection_deviation,
            "character_deviation": self.character_deviation,
            "binomial_deviation": self.binomial_deviation,
            "tail_bound": self.tail_bound,
            "passed": self.passed,
        }


def embedded_trace_values(tau_values, n: int, m: int):
    """Trace values after padding from level n to level m: (n tau + m - n)/m."""
    if not 0 < n < m:
        raise ValueError("need 0 < n < m")
    return tuple((n * complex(v) + (m - n)) / m for v in tau_values)


def binomial_reexpansion_check(
    a, n: int, m: int, tau_values, truncation: int = 80
) -> ReexpansionReport:
    """Consistency of the level-n and level-m Poisson expansions.

    Checks, against the (m-n)-scaled kernel: exact invariance of constants,
    row masses within the truncation tail, the mean shift of coordinate
    projections x_i -> x_i + (m-n) a_i, the binomial re-expansion of
    ((n tau + m - n)/m)^z, and equality of the closed exponentials computed
    at level n and at level m after embedding.
    """
    a = tuple(float(x) for x in a)
    tau = tuple(complex(v) for v in tau_values)
    if len(tau) != len(a):
        raise ValueError("one trace value per rate")
    if not 0 < n < m:
        raise ValueError("need 0 < n < m")
    step = m - n
    rates = tuple(step * x for x in a)

    tail = sum(poisson_tail(r, truncation) for r in rates)

    # Row mass and coordinate-projection means of the (m-n)-step kernel.
    row_dev = 0.0
    proj_dev = 0.0
    for i, r in enumerate(rates):
        mass = sum(poisson_mass(r, x) for x in range(truncation + 1))
        mean = sum(x * poisson_mass(r, x) for x in range(truncation + 1))
        row_dev = max(row_dev, abs(mass - 1.0))
        proj_dev = max(proj_dev, abs(mean - r))

    # Binomial re-expansion of the embedded trace power for a few exponents.
    binom_dev = 0.0
    for i, v in enumerate(tau):
        emb = (n * v + step) / m
        for z in (1, 2, 5):
            direct = emb**z
            expanded = sum(
                math.comb(z, x) * n**x * step ** (z - x) / m**z * v**x
                for x in range(z + 1)
            )
            binom_dev = max(binom_dev, abs(direct - expanded))

    # Closed exponentials agree across the embedding.
    level_n = chi_tau_tauprime([n * ai * (vi - 1) for ai, vi in zip(a, tau)])
    emb_vals = embedded_trace_values(tau, n, m)
    level_m = chi_tau_tauprime([m * ai * (vi - 1) for ai, vi in zip(a, emb_vals)])
    char_dev = abs(level_n - level_m)

    passed = (
        row_dev <= max(tail, 1e-12)
        and proj_dev <= max(tail * truncation, 1e-8)
        and binom_dev <= 1e-10
        and char_dev <= 1e-10
    )
    return ReexpansionReport(True, row_dev, proj_dev, char_dev, binom_dev, tail, passed)
