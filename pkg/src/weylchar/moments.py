"""Moment distributions of one-parameter subgroups and HCIZ moment formulas.

The normalized character along exp(i t F), with F a +/-1 trace-zero diagonal,
is a Fourier series whose coefficients form an exact probability distribution
M(k) on the integers.  Brute-force moments come from Gelfand-Tsetlin
aggregation; closed forms come from partition sums of the unitary group
integral of Tr(U F U^{-1} B)^n.  The two routes must agree exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from weylchar.combinatorics import Partition, Signature, partitions_of
from weylchar.gtkernel import group_counts
from weylchar.symfunc import (
    schur_dim,
    schur_to_power_sums,
    sym_group_dim,
    weyl_dim,
)

MC_CHUNK = 8192


@dataclass(frozen=True)
class HermitianSpectrum:
    """Diagonal Hermitian matrix, kept as its exact rational eigenvalue tuple."""

    eigenvalues: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "eigenvalues", tuple(Fraction(v) for v in self.eigenvalues)
        )
        if not self.eigenvalues:
            raise ValueError("spectrum must be nonempty")

    @property
    def d(self) -> int:
        return len(self.eigenvalues)

    def trace(self, p: int = 1) -> Fraction:
        return sum((v**p for v in self.eigenvalues), Fraction(0))

    def __add__(self, other: "HermitianSpectrum") -> "HermitianSpectrum":
        if self.d != other.d:
            raise ValueError("spectra of different sizes")
        return HermitianSpectrum(
            tuple(a + b for a, b in zip(self.eigenvalues, other.eigenvalues))
        )

    @staticmethod
    def from_signature(sig: Signature) -> "HermitianSpectrum":
        return HermitianSpectrum(tuple(Fraction(e) for e in sig.entries))


def rho(d: int) -> HermitianSpectrum:
    """The staircase ((d-1)/2, (d-3)/2, ..., -(d-1)/2); Tr = 0, Tr^2 = d(d^2-1)/12."""
    if d < 1:
        raise ValueError("d must be positive")
    return HermitianSpectrum(tuple(Fraction(d - 1 - 2 * i, 2) for i in range(d)))


def center(b: HermitianSpectrum) -> HermitianSpectrum:
    """Traceless shift b - (Tr b / d) 1_d; idempotent."""
    mean = b.trace() / b.d
    return HermitianSpectrum(tuple(v - mean for v in b.eigenvalues))


@dataclass(frozen=True)
class TraceZeroSigned:
    """F = sum of +E_ii over the first r/2 slots minus the next r/2, zero elsewhere.

    `offset` shifts the signed window inside the d coordinates so the same
    type serves block-diagonal placements; the spectrum (and hence every
    moment formula) does not depend on it.
    """

    r: int
    d: int
    offset: int = 0

    def __post_init__(self):
        if self.r % 2 != 0 or self.r < 2:
            raise ValueError("r must be even and at least 2")
        if self.offset < 0 or self.offset + self.r > self.d:
            raise ValueError(f"signed window [{self.offset}, {self.offset + self.r}) "
                             f"does not fit in d = {self.d}")

    def diagonal(self) -> tuple[int, ...]:
        out = [0] * self.d
        for i in range(self.r // 2):
            out[self.offset + i] = 1
            out[self.offset + self.r // 2 + i] = -1
        return tuple(out)

    def groups(self) -> tuple[int, ...]:
        """Coordinate groups: 0 for +1 slots, 1 for -1 slots, 2 for zeros."""
        return tuple({1: 0, -1: 1, 0: 2}[v] for v in self.diagonal())

    def power_sum(self, j: int) -> int:
        return self.r if j % 2 == 0 else 0


@dataclass(frozen=True)
class WeightDistribution:
    """Finitely supported exact probability distribution on the integers."""

    probs: dict[int, Fraction]

    def __post_init__(self):
        probs = {int(k): Fraction(v) for k, v in self.probs.items() if v != 0}
        if any(v < 0 for v in probs.values()):
            raise ValueError("negative mass")
        if sum(probs.values(), Fraction(0)) != 1:
            raise ValueError("masses must sum to 1")
        object.__setattr__(self, "probs", probs)

    def moment(self, p: int) -> Fraction:
        return sum((Fraction(k**p) * v for k, v in self.probs.items()), Fraction(0))

    def moment_ratio(self) -> Fraction | None:
        """<k^4>/<k^2>^2, the tightness diagnostic; None for the point mass at 0."""
        m2 = self.moment(2)
        if m2 == 0:
            return None
        return self.moment(4) / (m2 * m2)

    def is_symmetric(self) -> bool:
        return all(self.probs.get(-k, Fraction(0)) == v for k, v in self.probs.items())

    def convolve(self, other: "WeightDistribution") -> "WeightDistribution":
        out: dict[int, Fraction] = {}
        for k1, v1 in self.probs.items():
            for k2, v2 in other.probs.items():
                k = k1 + k2
                out[k] = out.get(k, Fraction(0)) + v1 * v2
        return WeightDistribution(out)

    def to_json(self) -> dict[str, str]:
        return {
            str(k): f"{v.numerator}/{v.denominator}"
            for k, v in sorted(self.probs.items())
        }

    @staticmethod
    def point(k: int = 0) -> "WeightDistribution":
        return WeightDistribution({k: Fraction(1)})


def weight_distribution(sig: Signature, f: TraceZeroSigned) -> WeightDistribution:
    """Exact distribution of the F-pairing of GT weights of the irrep sig."""
    if f.d != sig.d:
        raise ValueError(f"F lives on d = {f.d}, signature on d = {sig.d}")
    counts = group_counts(sig.entries, f.groups(), 3)
    dim = weyl_dim(sig)
    masses: dict[int, Fraction] = {}
    for (plus, minus, _zero), mult in counts.items():
        k = plus - minus
        masses[k] = masses.get(k, Fraction(0)) + Fraction(mult, dim)
    return WeightDistribution(masses)


def moment(dist: WeightDistribution, p: int) -> Fraction:
    """p-th moment sum k^p M(k); zero for odd p on symmetric distributions."""
    return dist.moment(p)


def hciz_power_sum(a: HermitianSpectrum, b: HermitianSpectrum, n: int) -> Fraction:
    """Partition-sum value of the Haar average of Tr(U A U^{-1} B)^n.

    Sum over partitions of n with at most d rows of
    dim(S_n irrep) * s_lam(A) * s_lam(B) / s_lam(1_d).
    """
    if a.d != b.d:
        raise ValueError("spectra must have equal size")
    d = a.d
    pa = {j: a.trace(j) for j in range(1, n + 1)}
    pb = {j: b.trace(j) for j in range(1, n + 1)}
    total = Fraction(0)
    for lam in partitions_of(n):
        if lam.length > d:
            continue
        exp = schur_to_power_sums(lam)
        total += (
            Fraction(sym_group_dim(lam))
            * exp.evaluate_power_sums(pa)
            * exp.evaluate_power_sums(pb)
            / schur_dim(lam, d)
        )
    return total


def J_series(b: HermitianSpectrum, f: TraceZeroSigned, n: int) -> Fraction:
    """Partition sum for B against the signed projector spectrum of F."""
    if b.d != f.d:
        raise ValueError("B and F must share d")
    d = b.d
    pf = {j: Fraction(f.power_sum(j)) for j in range(1, n + 1)}
    pb = {j: b.trace(j) for j in range(1, n + 1)}
    total = Fraction(0)
    for lam in partitions_of(n):
        if lam.length > d:
            continue
        exp = schur_to_power_sums(lam)
        total += (
            Fraction(sym_group_dim(lam))
            * exp.evaluate_power_sums(pf)
            * exp.evaluate_power_sums(pb)
            / schur_dim(lam, d)
        )
    return total


def J_closed(b: HermitianSpectrum, r: int, n: int) -> Fraction:
    """Closed form of the partition sum for n in {2, 4}; requires Tr B = 0."""
    if b.trace() != 0:
        raise ValueError("closed forms assume a centered spectrum; call center() first")
    d = b.d
    if n == 2:
        if d < 2:
            raise ValueError("n = 2 needs d >= 2")
        return Fraction(r) * b.trace(2) / (d * d - 1)
    if n == 4:
        if d < 4:
            raise ValueError("n = 4 needs d >= 4")
        d2 = d * d
        t2, t4 = b.trace(2), b.trace(4)
        lead = Fraction(3 * r) * ((d2 * d2 - 6 * d2 + 18) * r - 2 * d * (2 * d2 - 3))
        lead /= d2 * (d2 - 1) * (d2 - 4) * (d2 - 9)
        sub = Fraction(6 * r) * ((2 * d2 - 3) * r - d * (d2 + 1))
        sub /= d * (d2 - 1) * (d2 - 4) * (d2 - 9)
        return lead * t2 * t2 - sub * t4
    raise ValueError(f"no closed form for n = {n}")


def moment2_closed(sig: Signature, f: TraceZeroSigned) -> Fraction:
    """Second moment r Tr(2 L rho + L^2)/(d^2-1) with L the centered signature."""
    d = sig.d
    if d < 2:
        raise ValueError("d >= 2 required")
    lhat = center(HermitianSpectrum.from_signature(sig))
    rd = rho(d)
    mixed = sum(
        (2 * a * b + a * a for a, b in zip(lhat.eigenvalues, rd.eigenvalues)),
        Fraction(0),
    )
    return Fraction(f.r) * mixed / (d * d - 1)


def moment4_closed(sig: Signature, f: TraceZeroSigned) -> Fraction:
    """Fourth moment via the three-term partition-sum difference."""
    d = sig.d
    if d < 4:
        raise ValueError("d >= 4 required")
    lhat = center(HermitianSpectrum.from_signature(sig))
    rd = rho(d)
    m2 = moment2_closed(sig, f)
    return (
        J_closed(rd + lhat, f.r, 4)
        - 6 * m2 * J_closed(rd, f.r, 2)
        - J_closed(rd, f.r, 4)
    )


@dataclass(frozen=True)
class EstimateReport:
    m2: Fraction
    m4: Fraction
    c1: Fraction
    c2: Fraction
    bound: Fraction
    holds: bool


def estimate_check(sig: Signature, f: TraceZeroSigned) -> EstimateReport:
    """Fourth-vs-second moment bound with the explicit d-dependent coefficients.

    Requires r >= 2d/3 and d >= 4; checks
    m4 <= 3 (d^2-1)(d^4-6d^2+18) / (d^2 (d^2-4)(d^2-9)) * m2^2
        + 2 (d^4-2d^2-3) / ((d^2-4)(d^2-9)) * m2.
    """
    d = sig.d
    if d < 4:
        raise ValueError("d >= 4 required")
    if 3 * f.r < 2 * d:
        raise ValueError(f"r = {f.r} violates r >= 2d/3 for d = {d}")
    d2 = d * d
    c1 = Fraction(3 * (d2 - 1) * (d2 * d2 - 6 * d2 + 18), d2 * (d2 - 4) * (d2 - 9))
    c2 = Fraction(2 * (d2 * d2 - 2 * d2 - 3), (d2 - 4) * (d2 - 9))
    m2 = moment2_closed(sig, f)
    m4 = moment4_closed(sig, f)
    bound = c1 * m2 * m2 + c2 * m2
    return EstimateReport(m2, m4, c1, c2, bound, m4 <= bound)


def product_moment_identity(dists) -> WeightDistribution:
    """Convolution of distributions: products of characters add independent weights."""
    out = WeightDistribution.point(0)
    for dist in dists:
        out = out.convolve(dist)
    return out


def haar_unitaries(d: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """Stack of Haar-distributed unitaries via QR with R-diagonal phase fix."""
    z = rng.standard_normal((count, d, d)) + 1j * rng.standard_normal((count, d, d))
    q, r = np.linalg.qr(z / math.sqrt(2))
    diag = np.einsum("sii->si", r)
    phases = diag / np.abs(diag)
    return q * phases[:, None, :]


@dataclass(frozen=True)
class MonteCarloReport:
    estimate: complex
    stderr: float
    samples: int
    seed: int
    mode: str

    def to_json(self) -> dict:
        return {
            "estimate": [self.estimate.real, self.estimate.imag],
            "stderr": self.stderr,
            "samples": self.samples,
            "seed": self.seed,
            "mode": self.mode,
        }


def hciz_monte_carlo(
    a: HermitianSpectrum,
    b: HermitianSpectrum,
    n: int,
    samples: int,
    seed: int,
    mode: str = "power",
) -> MonteCarloReport:
    """Haar-sample mean of Tr(U A U^{-1} B)^n, or of exp(i Tr(...)) in exp mode.

    Sampling is chunked with per-chunk seeds derived from the master seed, so
    the result depends only on (seed, samples).
    """
    if a.d != b.d:
        raise ValueError("spectra must share d")
    if mode not in ("power", "exp"):
        raise ValueError(f"unknown mode {mode!r}")
    if samples < 1000:
        raise ValueError("at least 1000 samples required for a usable stderr")
    d = a.d
    av = np.array([float(v) for v in a.eigenvalues])
    bv = np.array([float(v) for v in b.eigenvalues])
    nchunks = (samples + MC_CHUNK - 1) // MC_CHUNK
    children = np.random.SeedSequence(seed).spawn(nchunks)
    values = np.empty(samples, dtype=complex if mode == "exp" else float)
    done = 0
    for child in children:
        take = min(MC_CHUNK, samples - done)
        u = haar_unitaries(d, take, np.random.default_rng(child))
        traces = np.einsum("sij,j,i->s", np.abs(u) ** 2, av, bv)
        values[done : done + take] = (
            np.exp(1j * traces) if mode == "exp" else traces**n
        )
        done += take
    est = values.mean()
    if mode == "exp":
        err = math.sqrt((values.real.var() + values.imag.var()) / samples)
        return MonteCarloReport(complex(est), err, samples, seed, mode)
    err = math.sqrt(values.real.var() / samples)
    return MonteCarloReport(complex(est), err, samples, seed, mode)


def hciz_exponential_exact(a: HermitianSpectrum, b: HermitianSpectrum) -> complex:
    """Determinant formula for the Haar average of exp(i Tr(U A U^{-1} B)).

    prod_{k<d} k! * det(exp(i a_i b_j)) / (i^{d(d-1)/2} Delta(a) Delta(b));
    needs both spectra simple.
    """
    if a.d != b.d:
        raise ValueError("spectra must share d")
    d = a.d
    av = [float(v) for v in a.eigenvalues]
    bv = [float(v) for v in b.eigenvalues]
    delta_a = math.prod(av[i] - av[j] for i in range(d) for j in range(i + 1, d))
    delta_b = math.prod(bv[i] - bv[j] for i in range(d) for j in range(i + 1, d))
    if delta_a == 0 or delta_b == 0:
        raise ValueError("determinant formula needs simple spectra")
    m = np.array([[np.exp(1j * ai * bj) for bj in bv] for ai in av])
    pref = math.prod(math.factorial(k) for k in range(1, d))
    return pref * np.linalg.det(m) / (1j ** (d * (d - 1) // 2) * delta_a * delta_b)
