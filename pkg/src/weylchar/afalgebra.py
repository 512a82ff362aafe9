"""Bratteli-diagram models of matrix-block inductive limits.

A diagram stores finitely many levels of block dimensions and the embedding
multiplicity matrices between them.  Traces live as per-level weight vectors
(value on a minimal projection of each block), K0 homomorphisms as per-level
integer vectors; both must intertwine the transposed multiplicity matrices.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from weylchar.combinatorics import Partition, partitions_of, signature_from_pair
from weylchar.errors import BudgetExceeded
from weylchar.exact import QQi
from weylchar.symfunc import schur_dim, sym_group_dim, weyl_dim
from weylchar.ucharacters import DiagonalUnitary, normalized_char

Matrix = tuple[tuple[int, ...], ...]


def _as_matrix(rows) -> Matrix:
    return tuple(tuple(int(v) for v in row) for row in rows)


def _mat_vec(m: Matrix, v):
    return tuple(sum(m[i][j] * v[j] for j in range(len(v))) for i in range(len(m)))


def _mat_t_vec(m: Matrix, v):
    ncols = len(m[0])
    return tuple(sum(m[i][j] * v[i] for i in range(len(m))) for j in range(ncols))


@dataclass(frozen=True)
class BratteliDiagram:
    """Levels of block dimensions with multiplicity matrices between them.

    ``mults[n]`` has shape (len(levels[n+1]), len(levels[n])).  ``continuation``
    optionally gives a periodic tail of matrices used when reasoning about the
    diagram beyond the stored depth (K0 extendability).
    """

    levels: tuple[tuple[int, ...], ...]
    mults: tuple[Matrix, ...]
    name: str = ""
    continuation: tuple[Matrix, ...] | None = None
    simple_known: bool | None = None

    def __post_init__(self):
        levels = tuple(tuple(int(d) for d in lv) for lv in self.levels)
        mults = tuple(_as_matrix(m) for m in self.mults)
        if len(mults) != len(levels) - 1:
            raise ValueError("need exactly one multiplicity matrix per level step")
        for n, m in enumerate(mults):
            if len(m) != len(levels[n + 1]) or any(len(r) != len(levels[n]) for r in m):
                raise ValueError(f"matrix {n} has the wrong shape")
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "mults", mults)

    @property
    def depth(self) -> int:
        """Index of the deepest stored level."""
        return len(self.levels) - 1

    def nblocks(self, n: int) -> int:
        return len(self.levels[n])

    def dims(self, n: int) -> tuple[int, ...]:
        return self.levels[n]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "levels": [list(lv) for lv in self.levels],
            "multiplicities": [[list(r) for r in m] for m in self.mults],
        }

    @staticmethod
    def from_json(data: dict) -> "BratteliDiagram":
        return BratteliDiagram(
            tuple(tuple(lv) for lv in data["levels"]),
            tuple(_as_matrix(m) for m in data["multiplicities"]),
            name=data.get("name", ""),
        )


@dataclass(frozen=True)
class DiagramReport:
    valid: bool
    errors: tuple[str, ...]
    min_dims: tuple[int, ...]
    primitive_within_depth: bool | None
    simple_known: bool | None

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "errors": list(self.errors),
            "min_dims": list(self.min_dims),
            "primitive_within_depth": self.primitive_within_depth,
            "simple_known": self.simple_known,
        }


def validate_diagram(diagram: BratteliDiagram) -> DiagramReport:
    """Dimension compatibility, zero rows, and a positivity probe of products."""
    errors = []
    for n, m in enumerate(diagram.mults):
        expected = _mat_vec(m, diagram.levels[n])
        if expected != diagram.levels[n + 1]:
            errors.append(
                f"level {n + 1} dims {diagram.levels[n + 1]} != M_{n} d_{n} = {expected}"
            )
        for i, row in enumerate(m):
            if all(v == 0 for v in row):
                errors.append(f"matrix {n} row {i} is zero")
        if any(v < 0 for row in m for v in row):
            errors.append(f"matrix {n} has negative entries")
    min_dims = tuple(min(lv) for lv in diagram.levels)
    primitive = None
    if not errors and diagram.mults:
        # Smallest window of matrix products that becomes strictly positive,
        # per start level; a level near the top is excused only when no full
        # window fits below the stored depth.
        depth = diagram.depth
        first_window: dict[int, int] = {}
        for n in range(depth):
            prod = np.array(diagram.mults[n], dtype=object)
            for m in range(n + 1, depth + 1):
                if (prod > 0).all():
                    first_window[n] = m - n
                    break
                if m < depth:
                    prod = np.array(diagram.mults[m], dtype=object) @ prod
        if not first_window:
            primitive = False
        else:
            window = max(first_window.values())
            primitive = all(
                n in first_window for n in range(depth) if n + window <= depth
            )
    return DiagramReport(not errors, tuple(errors), min_dims, primitive, diagram.simple_known)


# ---------------------------------------------------------------------------
# presets


def _uhf_diagram(factors: tuple[int, ...], depth: int, name: str) -> BratteliDiagram:
    levels = [(1,)]
    mults = []
    for n in range(depth):
        k = factors[n % len(factors)]
        mults.append(((k,),))
        levels.append((levels[-1][0] * k,))
    tail = tuple(((k,),) for k in factors)
    return BratteliDiagram(tuple(levels), tuple(mults), name, tail, simple_known=True)


def _effros_shen_diagram(cf_terms: tuple[int, ...], name: str) -> BratteliDiagram:
    if not cf_terms or any(a < 1 for a in cf_terms):
        raise ValueError("continued-fraction terms must be positive integers")
    # Convergent denominators of [0; a_1, a_2, ...]; level n holds (q_n, q_{n-1}).
    q_prev, q = 1, cf_terms[0]
    levels = [(1,), (q, 1)]
    mults: list[Matrix] = [((cf_terms[0],), (1,))]
    for a in cf_terms[1:]:
        mults.append(((a, 1), (1, 0)))
        q_prev, q = q, a * q + q_prev
        levels.append((q, q_prev))
    tail = (((cf_terms[-1], 1), (1, 0)),)
    return BratteliDiagram(tuple(levels), tuple(mults), name, tail, simple_known=True)


def _gicar_diagram(depth: int) -> BratteliDiagram:
    levels = [tuple(math.comb(n, k) for k in range(n + 1)) for n in range(depth + 1)]
    mults = []
    for n in range(depth):
        m = tuple(
            tuple(1 if j in (i, i + 1) else 0 for i in range(n + 1)) for j in range(n + 2)
        )
        mults.append(m)
    return BratteliDiagram(
        tuple(levels), tuple(mults), "gicar-excluded", None, simple_known=False
    )


def preset_diagram(name: str, depth: int | None = None) -> BratteliDiagram:
    """Load a named diagram.

    Names: "car", "uhf:<k1,k2,...>" (factors cycled), "effros-shen[:<cf terms>]"
    (golden mean by default), "gicar-excluded" (the Pascal diagram; valid but
    not simple, excluded from the simplicity-dependent guarantees).
    """
    key = name.strip().lower()
    if key == "car":
        return _uhf_diagram((2,), depth or 8, "car")
    if key.startswith("uhf:"):
        factors = tuple(int(t) for t in key[4:].split(",") if t)
        if not factors or any(k < 2 for k in factors):
            raise ValueError("uhf factors must be integers >= 2")
        return _uhf_diagram(factors, depth or 8, key)
    if key == "effros-shen":
        return _effros_shen_diagram((1,) * (depth or 10), key)
    if key.startswith("effros-shen:"):
        terms = tuple(int(t) for t in key[len("effros-shen:") :].split(",") if t)
        return _effros_shen_diagram(terms, key)
    if key in ("gicar-excluded", "gicar"):
        return _gicar_diagram(depth or 8)
    raise ValueError(f"unknown diagram preset: {name!r}")


def uhf_product_diagram(factors: tuple[int, ...], depth: int) -> BratteliDiagram:
    """Direct sum of UHF towers (diagonal multiplicities); one extreme trace per block."""
    nb = len(factors)
    levels = [(1,) * nb]
    mults = []
    for _ in range(depth):
        m = tuple(
            tuple(factors[j] if i == j else 0 for i in range(nb)) for j in range(nb)
        )
        mults.append(m)
        levels.append(tuple(levels[-1][j] * factors[j] for j in range(nb)))
    return BratteliDiagram(
        tuple(levels), tuple(mults), f"product:{','.join(map(str, factors))}",
        None, simple_known=False,
    )


# ---------------------------------------------------------------------------
# traces


@dataclass(frozen=True)
class TraceWeights:
    """Per level, the trace of a minimal projection in each block.

    Normalized (sum of weight * dim = 1 per level) and exactly compatible with
    the diagram: t_n = M_n^T t_{n+1}.
    """

    diagram: BratteliDiagram
    weights: tuple[tuple[Fraction, ...], ...]
    method: str = field(default="", compare=False)

    def __post_init__(self):
        w = tuple(tuple(Fraction(x) for x in lv) for lv in self.weights)
        if len(w) != len(self.diagram.levels):
            raise ValueError("need one weight vector per level")
        for n, (tw, dims) in enumerate(zip(w, self.diagram.levels)):
            if len(tw) != len(dims):
                raise ValueError(f"level {n}: weight length mismatch")
            if any(x < 0 for x in tw):
                raise ValueError(f"level {n}: negative weight")
            if sum(x * d for x, d in zip(tw, dims)) != 1:
                raise ValueError(f"level {n}: weights not normalized")
        for n, m in enumerate(self.diagram.mults):
            if _mat_t_vec(m, w[n + 1]) != w[n]:
                raise ValueError(f"compatibility fails between levels {n} and {n + 1}")
        object.__setattr__(self, "weights", w)

    def level(self, n: int) -> tuple[Fraction, ...]:
        return self.weights[n]

    def residual(self) -> Fraction:
        """Max L1 compatibility defect; zero by construction."""
        worst = Fraction(0)
        for n, m in enumerate(self.diagram.mults):
            diff = sum(
                abs(a - b)
                for a, b in zip(_mat_t_vec(m, self.weights[n + 1]), self.weights[n])
            )
            worst = max(worst, diff)
        return worst


def _backward_weights(diagram: BratteliDiagram, boundary: tuple[Fraction, ...]):
    out = [tuple(boundary)]
    for m in reversed(diagram.mults):
        out.append(_mat_t_vec(m, out[-1]))
    out.reverse()
    return tuple(out)


def trace_weights(
    diagram: BratteliDiagram,
    method: str = "auto",
    boundary=None,
    depth: int | None = None,
) -> TraceWeights:
    """Compatible normalized weights by exact backward substitution.

    The boundary is the weight vector at level `depth` (default: the deepest
    stored level): "uniform" spreads mass evenly, an integer selects the
    extreme trace concentrated on that block, and a tuple is used as given.
    method="auto" picks the known exact boundary for presets (convergent ratio
    for effros-shen diagrams, uniform elsewhere); deeper boundaries give
    better approximations of the true trace of the infinite limit, and
    compatibility below the boundary is exact regardless.
    """
    if depth is not None:
        if not 0 <= depth <= diagram.depth:
            raise ValueError(f"depth {depth} outside stored range")
        diagram = BratteliDiagram(
            diagram.levels[: depth + 1],
            diagram.mults[:depth],
            diagram.name,
            diagram.continuation,
            diagram.simple_known,
        )
    dims = diagram.levels[-1]
    nb = len(dims)
    if method == "auto" and boundary is None:
        if diagram.name.startswith("effros-shen"):
            boundary = (Fraction(1, dims[0]), Fraction(0))
        else:
            boundary = "uniform"
    if boundary is None or boundary == "uniform":
        total = sum(dims)
        vec = tuple(Fraction(1, total) for _ in range(nb))
    elif isinstance(boundary, int):
        vec = tuple(
            Fraction(1, dims[i]) if i == boundary else Fraction(0) for i in range(nb)
        )
    else:
        vec = tuple(Fraction(x) for x in boundary)
    return TraceWeights(diagram, _backward_weights(diagram, vec), method=method)


def trace_weights_sensitivity(diagram: BratteliDiagram, method: str = "auto") -> Fraction:
    """L1 movement of the level-0..depth-1 weights when the boundary deepens by one.

    An honest convergence indicator for non-preset diagrams: the infinite
    diagram's true trace is out of reach, truncation error is not.
    """
    if diagram.depth < 1:
        return Fraction(0)
    shallow = BratteliDiagram(
        diagram.levels[:-1], diagram.mults[:-1], diagram.name, diagram.continuation,
        diagram.simple_known,
    )
    deep_w = trace_weights(diagram, method=method)
    shallow_w = trace_weights(shallow, method=method)
    worst = Fraction(0)
    for lv_deep, lv_shallow in zip(deep_w.weights, shallow_w.weights):
        worst = max(worst, sum(abs(a - b) for a, b in zip(lv_deep, lv_shallow)))
    return worst


# ---------------------------------------------------------------------------
# K0 homomorphisms and det_phi


@dataclass(frozen=True)
class K0Hom:
    """Integer functional on K0: per level, its value on each block's minimal projection."""

    diagram: BratteliDiagram
    vectors: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        v = tuple(tuple(int(x) for x in lv) for lv in self.vectors)
        if len(v) != len(self.diagram.levels):
            raise ValueError("need one vector per level")
        for n, m in enumerate(self.diagram.mults):
            if _mat_t_vec(m, v[n + 1]) != v[n]:
                raise ValueError(f"K0 compatibility fails between levels {n} and {n + 1}")
        object.__setattr__(self, "vectors", v)

    @staticmethod
    def zero(diagram: BratteliDiagram) -> "K0Hom":
        return K0Hom(diagram, tuple((0,) * len(lv) for lv in diagram.levels))

    @staticmethod
    def from_deepest(diagram: BratteliDiagram, vector) -> "K0Hom":
        vecs = [tuple(int(x) for x in vector)]
        for m in reversed(diagram.mults):
            vecs.append(_mat_t_vec(m, vecs[-1]))
        vecs.reverse()
        return K0Hom(diagram, tuple(vecs))

    def level(self, n: int) -> tuple[int, ...]:
        return self.vectors[n]

    def is_zero(self) -> bool:
        return all(all(x == 0 for x in lv) for lv in self.vectors)


def _integer_preimage(m: Matrix, target: tuple[int, ...], bound: int = 64):
    """Integer x with M^T x = target, or None; exact solve when M is square."""
    nrows, ncols = len(m), len(m[0])
    if nrows == ncols:
        # Solve M^T x = target over the rationals, then check integrality.
        a = [[Fraction(m[i][j]) for i in range(nrows)] for j in range(ncols)]
        b = [Fraction(t) for t in target]
        n = ncols
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col] != 0), None)
            if piv is None:
                return None
            a[col], a[piv] = a[piv], a[col]
            b[col], b[piv] = b[piv], b[col]
            for r in range(n):
                if r != col and a[r][col] != 0:
                    f = a[r][col] / a[col][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                    b[r] -= f * b[col]
        xs = [b[i] / a[i][i] for i in range(n)]
        if all(x.denominator == 1 for x in xs):
            return tuple(int(x) for x in xs)
        return None
    # Bounded exhaustion for non-square steps.
    for cand in itertools.product(range(-bound, bound + 1), repeat=nrows):
        if _mat_t_vec(m, cand) == target:
            return cand
    return None


def k0_extension_obstruction(hom: K0Hom, extra_levels: int = 12) -> int | None:
    """First continuation step where the deepest vector fails to lift, or None.

    Uses the diagram's periodic continuation; a bounded proof-by-exhaustion
    surrogate for membership in Hom(K0, Z) of the infinite limit.  The CAR
    tower obstructs every nonzero vector (repeated halving), while unimodular
    steps (effros-shen) obstruct nothing.
    """
    tail = hom.diagram.continuation
    if tail is None:
        raise ValueError("diagram has no continuation data")
    current = hom.vectors[-1]
    for k in range(extra_levels):
        m = tail[k % len(tail)]
        lifted = _integer_preimage(m, current)
        if lifted is None:
            return k + 1
        current = lifted
    return None


@dataclass(frozen=True)
class BlockUnitary:
    """Element of the level-n unitary group: one diagonal unitary per block."""

    level: int
    blocks: tuple[DiagonalUnitary, ...]

    def sizes(self) -> tuple[int, ...]:
        return tuple(b.d for b in self.blocks)


def _check_on_diagram(u: BlockUnitary, diagram: BratteliDiagram):
    if not 0 <= u.level <= diagram.depth:
        raise ValueError(f"level {u.level} outside diagram depth {diagram.depth}")
    if u.sizes() != diagram.levels[u.level]:
        raise ValueError(
            f"block sizes {u.sizes()} != level dims {diagram.levels[u.level]}"
        )


def identity_unitary(diagram: BratteliDiagram, level: int) -> BlockUnitary:
    return BlockUnitary(
        level, tuple(DiagonalUnitary.identity(d) for d in diagram.levels[level])
    )


def embed(u: BlockUnitary, diagram: BratteliDiagram, m: int) -> BlockUnitary:
    """Image of u at level m: block j repeats each source block per multiplicity."""
    _check_on_diagram(u, diagram)
    if not u.level <= m <= diagram.depth:
        raise ValueError(f"target level {m} out of range [{u.level}, {diagram.depth}]")
    current = u
    for n in range(u.level, m):
        mat = diagram.mults[n]
        new_blocks = []
        for j in range(len(diagram.levels[n + 1])):
            angles: tuple = ()
            for i, block in enumerate(current.blocks):
                angles = angles + block.angles * mat[j][i]
            new_blocks.append(DiagonalUnitary(angles))
        current = BlockUnitary(n + 1, tuple(new_blocks))
    return current


def det_phi_turn(u: BlockUnitary, hom: K0Hom):
    """Total determinant angle in turns: sum of phi-weighted eigenvalue angles."""
    _check_on_diagram(u, hom.diagram)
    phi = hom.vectors[u.level]
    total = Fraction(0)
    exact = True
    acc = 0.0
    for w, block in zip(phi, u.blocks):
        for a in block.angles:
            if isinstance(a, Fraction) and exact:
                total += w * a
            else:
                exact = False
            acc += w * float(a)
    return total % 1 if exact else acc % 1.0


def det_phi(u: BlockUnitary, hom: K0Hom):
    """Product over blocks and eigenvalues z of z^phi; multiplicative in u."""
    from weylchar.exact import exact_unit, unit_complex

    turn = det_phi_turn(u, hom)
    if isinstance(turn, Fraction):
        ev = exact_unit(turn)
        if ev is not None:
            return ev
        return unit_complex(turn)
    return unit_complex(turn)


@dataclass(frozen=True)
class LimitCharacterSpec:
    """Parameters of a limit character: det twist and powers of extreme traces."""

    phi: K0Hom | None
    pos_traces: tuple[tuple[TraceWeights, int], ...] = ()
    neg_traces: tuple[tuple[TraceWeights, int], ...] = ()

    def __post_init__(self):
        if any(p < 0 for _, p in self.pos_traces + self.neg_traces):
            raise ValueError("trace powers must be nonnegative")


def trace_value(u: BlockUnitary, tw: TraceWeights):
    """Normalized trace of u: sum over blocks of weight * (sum of eigenvalues).

    Exact Gaussian rational at quarter-turn angles, complex otherwise.
    """
    _check_on_diagram(u, tw.diagram)
    weights = tw.weights[u.level]
    exact_blocks = [b.exact_values() for b in u.blocks]
    if all(ev is not None for ev in exact_blocks):
        total = QQi.of(0)
        for w, ev in zip(weights, exact_blocks):
            s = QQi.of(0)
            for z in ev:
                s = s + z
            total = total + QQi.of(w) * s
        return total
    total_c = 0j
    for w, block in zip(weights, u.blocks):
        total_c += float(w) * sum(block.complex_values())
    return total_c


def eval_limit_character(spec: LimitCharacterSpec, u: BlockUnitary):
    """det_phi(u) times products of trace values and conjugate trace values."""
    factors = []
    if spec.phi is not None and not spec.phi.is_zero():
        factors.append(det_phi(u, spec.phi))
    for tw, p in spec.pos_traces:
        t = trace_value(u, tw)
        factors.extend([t] * p)
    for tw, q in spec.neg_traces:
        t = trace_value(u, tw)
        conj = t.conjugate() if isinstance(t, QQi) else complex(t).conjugate()
        factors.extend([conj] * q)
    if all(isinstance(x, QQi) for x in factors):
        out = QQi.of(1)
        for x in factors:
            out = out * x
        return out
    out = 1 + 0j
    for x in factors:
        out *= complex(x)
    return out


@dataclass(frozen=True)
class ErgodicReport:
    levels: tuple[int, ...]
    dims: tuple[int, ...]
    values: tuple
    limit: object
    errors: tuple[float, ...]
    rate: float | None

    def to_json(self) -> dict:
        vals = [[complex(v).real, complex(v).imag] for v in self.values]
        lim = complex(self.limit)
        return {
            "levels": list(self.levels),
            "dims": list(self.dims),
            "values": vals,
            "limit": [lim.real, lim.imag],
            "errors": list(self.errors),
            "rate": self.rate,
        }


def ergodic_sequence(
    diagram: BratteliDiagram,
    lam: Partition,
    mu: Partition,
    u: BlockUnitary,
    n_max: int,
    weights: TraceWeights | None = None,
    block: int = 0,
    dim_budget: int = 10**9,
) -> ErgodicReport:
    """Values of the level-n extreme characters {mu; lam} along the tower.

    At each level the designated block carries the signature with positive
    part lam and negative part mu; the sequence is evaluated at the embedded
    unitary, together with its limit (trace powers p = |lam|, q = |mu|) and
    a fitted decay exponent of the error against the block dimension.
    """
    lam, mu = Partition(tuple(lam)), Partition(tuple(mu))
    _check_on_diagram(u, diagram)
    if weights is None:
        weights = trace_weights(diagram)
    if n_max > diagram.depth:
        raise ValueError(f"n_max {n_max} beyond diagram depth {diagram.depth}")
    levels, dims, values = [], [], []
    for n in range(u.level, n_max + 1):
        v = embed(u, diagram, n)
        d = diagram.levels[n][block]
        if lam.length + mu.length > d:
            raise ValueError(f"pair does not fit at level {n}: d = {d}")
        if weyl_dim(signature_from_pair(lam, mu, d)) > dim_budget:
            raise BudgetExceeded("character dimension exceeds budget")
        sig = signature_from_pair(lam, mu, d)
        ub = v.blocks[block]
        if ub.exact_values() is not None:
            val = normalized_char(sig, ub, exact=True)
        else:
            val = normalized_char(sig, ub)
        levels.append(n)
        dims.append(d)
        values.append(val)
    tau = trace_value(u, weights)
    if isinstance(tau, QQi):
        limit = QQi.of(1)
        for _ in range(lam.size):
            limit = limit * tau
        for _ in range(mu.size):
            limit = limit * tau.conjugate()
    else:
        limit = tau**lam.size * tau.conjugate() ** mu.size
    errors = tuple(abs(complex(v) - complex(limit)) for v in values)
    rate = None
    pts = [(math.log(d), math.log(e)) for d, e in zip(dims, errors) if e > 0]
    if len(pts) >= 2:
        xs, ys = zip(*pts)
        slope = np.polyfit(xs, ys, 1)[0]
        rate = -slope
    return ErgodicReport(tuple(levels), tuple(dims), tuple(values), limit, errors, rate)


def schur_weyl_defect(n: int, p: int, q: int) -> Fraction:
    """Squared trace-norm defect of the isotypic compression at tower level n.

    (1/2^{n(p+q)}) * sum over lam of p, mu of q of
    (s_lam(1_d) s_mu(1_d) - dim pi_{mu;lam}) * dim K_lam * dim K_mu, d = 2^n.
    """
    if (p, q) == (0, 0):
        raise ValueError("(p, q) = (0, 0) has no defect")
    d = 2**n
    if p + q > d:
        raise ValueError(f"pairs of lengths up to {p + q} do not fit in d = {d}")
    total = 0
    for lam in partitions_of(p):
        for mu in partitions_of(q):
            dim_pair = weyl_dim(signature_from_pair(lam, mu, d))
            gap = schur_dim(lam, d) * schur_dim(mu, d) - dim_pair
            total += gap * sym_group_dim(lam) * sym_group_dim(mu)
    return Fraction(total, 2 ** (n * (p + q)))
