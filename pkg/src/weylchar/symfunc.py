"""Symmetric-function kernel, all in exact arithmetic.

Schur evaluation goes through the bialternant when the points are distinct and
through Gelfand-Tsetlin aggregation when they are not; the two agree wherever
both apply.  Power-sum expansions come from symmetric-group characters
(Murnaghan-Nakayama divided by centralizer orders).  Floating point never
enters this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache

from weylchar.combinatorics import EMPTY, Partition, Signature, partitions_of
from weylchar.errors import BudgetExceeded
from weylchar.exact import QQi
from weylchar.gtkernel import group_counts

POWER_SUM_MAX_N = 12


def weyl_dim(sig: Signature) -> int:
    """dim of the U(d) irrep with highest weight sig: prod (e_i - e_j + j - i)/(j - i)."""
    e = sig.entries
    d = len(e)
    num = 1
    den = 1
    for i in range(d):
        for j in range(i + 1, d):
            num *= e[i] - e[j] + j - i
            den *= j - i
    dim, rem = divmod(num, den)
    if rem:
        raise ArithmeticError("Weyl product did not divide evenly")
    return dim


def schur_dim(lam: Partition, d: int) -> int:
    """s_lam(1_d), the dimension of the polynomial irrep lam of U(d)."""
    lam = Partition(tuple(lam))
    if lam.length > d:
        raise ValueError(f"l(lam) = {lam.length} exceeds d = {d}")
    padded = lam.parts + (0,) * (d - lam.length)
    return weyl_dim(Signature(padded))


@cache
def sym_group_dim(lam: Partition) -> int:
    """Hook length formula for the symmetric-group irrep indexed by lam."""
    lam = Partition(tuple(lam))
    n = lam.size
    if n == 0:
        return 1
    conj = lam.conjugate()
    dim = math.factorial(n)
    for i, row in enumerate(lam.parts):
        for j in range(row):
            dim //= row - j + conj.parts[j] - i - 1
    return dim


@cache
def sym_group_character(shape: tuple[int, ...], cycle_type: tuple[int, ...]) -> int:
    """Murnaghan-Nakayama recursion on first-column hook (beta) numbers."""
    if not shape:
        return 1 if not cycle_type else 0
    if not cycle_type:
        return 1 if sum(shape) == 0 else 0
    r = cycle_type[0]
    rest = cycle_type[1:]
    l = len(shape)
    beta = [shape[i] + l - 1 - i for i in range(l)]
    beta_set = set(beta)
    total = 0
    for b in beta:
        c = b - r
        if c < 0 or c in beta_set:
            continue
        height = sum(1 for x in beta if c < x < b)
        new_beta = sorted((beta_set - {b}) | {c}, reverse=True)
        m = len(new_beta)
        new_shape = tuple(new_beta[i] - (m - 1 - i) for i in range(m))
        while new_shape and new_shape[-1] == 0:
            new_shape = new_shape[:-1]
        total += (-1) ** height * sym_group_character(new_shape, rest)
    return total


def _centralizer_order(rho: Partition) -> int:
    order = 1
    mult: dict[int, int] = {}
    for r in rho.parts:
        mult[r] = mult.get(r, 0) + 1
    for r, m in mult.items():
        order *= r**m * math.factorial(m)
    return order


@dataclass(frozen=True)
class PowerSumExpansion:
    """s_lam = sum over cycle types rho of coeffs[rho] * p_rho."""

    lam: Partition
    coeffs: dict[Partition, Fraction] = field(compare=False)

    @property
    def n(self) -> int:
        return self.lam.size

    def coefficient(self, rho: Partition) -> Fraction:
        return self.coeffs.get(Partition(tuple(rho)), Fraction(0))

    def evaluate_power_sums(self, p):
        """Value given p[r] for r = 1..n; works for Fraction, QQi or complex."""
        total = None
        for rho, c in self.coeffs.items():
            term = c
            for r in rho.parts:
                term = term * p[r]
            total = term if total is None else total + term
        return Fraction(0) if total is None else total

    def evaluate(self, values):
        values = tuple(values)
        p = {r: sum_powers(values, r) for r in range(1, self.n + 1)}
        if self.n == 0:
            return Fraction(1)
        return self.evaluate_power_sums(p)

    def to_json(self) -> dict[str, str]:
        return {
            ",".join(map(str, rho.parts)): f"{c.numerator}/{c.denominator}"
            for rho, c in sorted(self.coeffs.items(), key=lambda kv: kv[0].parts)
        }


def sum_powers(values, r: int):
    total = None
    for v in values:
        term = v**r
        total = term if total is None else total + term
    return 0 if total is None else total


@cache
def schur_to_power_sums(lam: Partition, max_n: int = POWER_SUM_MAX_N) -> PowerSumExpansion:
    """Expansion coefficients chi^lam(rho)/z_rho over all cycle types rho of |lam|."""
    lam = Partition(tuple(lam))
    n = lam.size
    if n > max_n:
        raise BudgetExceeded(f"power-sum expansion bound exceeded: |lam| = {n} > {max_n}")
    if n == 0:
        return PowerSumExpansion(lam, {EMPTY: Fraction(1)})
    coeffs: dict[Partition, Fraction] = {}
    for rho in partitions_of(n):
        chi = sym_group_character(lam.parts, rho.parts)
        if chi:
            coeffs[rho] = Fraction(chi, _centralizer_order(rho))
    return PowerSumExpansion(lam, coeffs)


def leading_coeff(lam: Partition) -> Fraction:
    """Coefficient of p_1^n in s_lam, in closed form.

    Equals sym_group_dim(lam)/n!; the product form mirrors the Weyl dimension
    numerator over the first l(lam) rows.
    """
    lam = Partition(tuple(lam))
    l = lam.length
    c = Fraction(1)
    for i in range(1, l + 1):
        for j in range(i + 1, l + 1):
            c *= Fraction(lam.parts[i - 1] - lam.parts[j - 1] + j - i, j - i)
        c *= Fraction(math.factorial(l - i), math.factorial(l + lam.parts[i - 1] - i))
    return c


def exact_det(rows):
    """Determinant over an exact field (Fraction or QQi) by Gaussian elimination."""
    n = len(rows)
    m = [list(r) for r in rows]
    sign = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            sign = -sign
        inv_lead = m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                factor = m[r][col] / inv_lead
                m[r] = [a - factor * b for a, b in zip(m[r], m[col])]
    det = Fraction(sign)
    for i in range(n):
        det = det * m[i][i]
    return det


def _coerce_exact(values):
    values = tuple(values)
    if any(isinstance(v, QQi) for v in values):
        return tuple(QQi.of(v) for v in values)
    return tuple(Fraction(v) for v in values)


def bialternant(sig_entries: tuple[int, ...], values) -> object:
    """det(x_i^(e_j + d - j)) / det(x_i^(d - j)); requires distinct nonzero-safe values."""
    d = len(values)
    exps = [sig_entries[j] + d - 1 - j for j in range(d)]
    num = exact_det([[x**e for e in exps] for x in values])
    den = Fraction(1)
    for i in range(d):
        for j in range(i + 1, d):
            den = den * (values[i] - values[j])
    return num / den


def eval_by_gt(sig_entries: tuple[int, ...], values) -> object:
    """Character value at a (possibly confluent) exact spectrum via GT aggregation."""
    distinct: list = []
    groups: list[int] = []
    for v in values:
        for g, w in enumerate(distinct):
            if w == v:
                groups.append(g)
                break
        else:
            groups.append(len(distinct))
            distinct.append(v)
    counts = group_counts(tuple(sig_entries), tuple(groups), len(distinct))
    total = None
    for exps, mult in counts.items():
        term = Fraction(mult)
        for v, e in zip(distinct, exps):
            if e:
                term = term * v**e
        total = term if total is None else total + term
    return Fraction(0) if total is None else total


def schur_eval_exact(lam: Partition, values):
    """s_lam at a tuple of exact rationals or Gaussian rationals."""
    lam = Partition(tuple(lam))
    values = _coerce_exact(values)
    d = len(values)
    if lam.length > d:
        raise ValueError(f"l(lam) = {lam.length} exceeds number of variables {d}")
    if d == 0:
        return Fraction(1)
    padded = lam.parts + (0,) * (d - lam.length)
    if len(set(values)) == d and all(v != 0 for v in values):
        return bialternant(padded, values)
    return eval_by_gt(padded, values)


def lr_coefficient(nu: Partition, alpha: Partition, beta: Partition) -> int:
    """Littlewood-Richardson coefficient c^nu_{alpha,beta} by tableau enumeration.

    Counts semistandard fillings of nu/alpha with content beta whose reverse
    reading word is a ballot sequence.  Returns 0 on any size or containment
    mismatch.
    """
    nu, alpha, beta = (Partition(tuple(p)) for p in (nu, alpha, beta))
    if alpha.size + beta.size != nu.size:
        return 0
    if not nu.contains(alpha):
        return 0
    if beta.size == 0:
        return 1
    if beta.length > nu.length:
        return 0

    nrows = nu.length
    cells = []
    for r in range(nrows):
        for c in range(nu.parts[r] - 1, alpha.part(r) - 1, -1):
            cells.append((r, c))
    nvals = beta.length
    grid = [[0] * nu.parts[r] for r in range(nrows)]
    counts = [0] * (nvals + 1)
    found = 0

    def in_skew(r: int, c: int) -> bool:
        return 0 <= r < nrows and alpha.part(r) <= c < nu.parts[r]

    def rec(idx: int):
        nonlocal found
        if idx == len(cells):
            found += 1
            return
        r, c = cells[idx]
        hi = nvals
        if in_skew(r, c + 1):
            hi = min(hi, grid[r][c + 1])
        for v in range(1, hi + 1):
            if counts[v] >= beta.parts[v - 1]:
                continue
            if v > 1 and counts[v - 1] <= counts[v]:
                continue
            if in_skew(r - 1, c) and grid[r - 1][c] >= v:
                continue
            grid[r][c] = v
            counts[v] += 1
            rec(idx + 1)
            counts[v] -= 1
            grid[r][c] = 0

    rec(0)
    return found


def skew_expand(nu: Partition, alpha: Partition) -> dict[Partition, int]:
    """Expansion of the skew Schur function s_{nu/alpha} into {beta: c^nu_{alpha,beta}}.

    Single tableau walk over all ballot contents at once; ballot words force
    the content to be a partition.
    """
    nu, alpha = Partition(tuple(nu)), Partition(tuple(alpha))
    if not nu.contains(alpha):
        return {}
    size = nu.size - alpha.size
    if size == 0:
        return {EMPTY: 1}

    nrows = nu.length
    cells = []
    for r in range(nrows):
        for c in range(nu.parts[r] - 1, alpha.part(r) - 1, -1):
            cells.append((r, c))
    grid = [[0] * nu.parts[r] for r in range(nrows)]
    counts = [0] * (size + 1)
    out: dict[Partition, int] = {}

    def in_skew(r: int, c: int) -> bool:
        return 0 <= r < nrows and alpha.part(r) <= c < nu.parts[r]

    def rec(idx: int):
        if idx == len(cells):
            content = tuple(c for c in counts[1:] if c > 0)
            key = Partition(content)
            out[key] = out.get(key, 0) + 1
            return
        r, c = cells[idx]
        hi = size
        if in_skew(r, c + 1):
            hi = min(hi, grid[r][c + 1])
        for v in range(1, hi + 1):
            if v > 1 and counts[v - 1] <= counts[v]:
                continue
            if in_skew(r - 1, c) and grid[r - 1][c] >= v:
                continue
            grid[r][c] = v
            counts[v] += 1
            rec(idx + 1)
            counts[v] -= 1
            grid[r][c] = 0

    rec(0)
    return out


def lr_product(alpha: Partition, beta: Partition, max_length: int) -> dict[Partition, int]:
    """s_alpha * s_beta = sum c^gamma_{alpha,beta} s_gamma over l(gamma) <= max_length."""
    alpha, beta = Partition(tuple(alpha)), Partition(tuple(beta))
    n = alpha.size + beta.size
    out: dict[Partition, int] = {}
    max_part = alpha.part(0) + beta.part(0)
    for gamma in partitions_of(n, max_length=max_length, max_part=max_part):
        if not gamma.contains(alpha):
            continue
        c = lr_coefficient(gamma, alpha, beta)
        if c:
            out[gamma] = c
    return out
