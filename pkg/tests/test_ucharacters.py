import cmath
import random
from fractions import Fraction

import pytest

from weylchar.combinatorics import (
    Partition,
    Signature,
    enumerate_gt_patterns,
    gt_weight,
)
from weylchar.errors import BudgetExceeded
from weylchar.exact import QQi
from weylchar.symfunc import weyl_dim
from weylchar.ucharacters import (
    DiagonalUnitary,
    all_signature_pairs,
    char_eval,
    check_branching_inequalities,
    normalized_char,
    rational_approx_defect,
    restrict_to_blocks,
    tensor_decompose,
)

P = Partition
S = Signature


def test_char_eval_trivial_cases():
    u = DiagonalUnitary((Fraction(0), Fraction(1, 2)))  # diag(1, -1)
    assert abs(char_eval(S((1, 0)), u)) < 1e-12
    anything = DiagonalUnitary((0.13, 0.02, 0.9))
    assert abs(char_eval(S((0, 0, 0)), anything) - 1) < 1e-12


def test_char_eval_adjoint_exact():
    u = DiagonalUnitary((Fraction(1, 4), Fraction(3, 4)))  # diag(i, -i)
    val = char_eval(S((1, -1)), u, exact=True)
    assert val == QQi.of(-1)
    # Oracle: explicit 3-dim expansion x1/x2 + 1 + x2/x1 = -1 - ... at (i, -i)
    x1, x2 = 1j, -1j
    assert abs(char_eval(S((1, -1)), u) - (x1 / x2 + 1 + x2 / x1)) < 1e-12


def test_normalized_char_examples():
    u = DiagonalUnitary((Fraction(1, 4), Fraction(3, 4)))
    assert normalized_char(S((1, -1)), u, exact=True) == QQi.of(Fraction(-1, 3))
    ident = DiagonalUnitary.identity(4)
    assert normalized_char(S((3, 1, 0, -2)), ident, exact=True) == QQi.of(1)
    z = cmath.exp(2j * cmath.pi * 0.37)
    u2 = DiagonalUnitary((0.37, 0.0, 0.0, 0.0))
    assert abs(normalized_char(S((1, 0, 0, 0)), u2) - (z + 3) / 4) < 1e-12


def test_char_dimension_mismatch():
    with pytest.raises(ValueError):
        char_eval(S((1, 0)), DiagonalUnitary.identity(3))


def test_char_routes_agree():
    # Alternant quotient against GT aggregation on random spectra.
    rng = random.Random(17)
    for _ in range(200):
        d = rng.randint(2, 5)
        entries = tuple(sorted((rng.randint(-3, 3) for _ in range(d)), reverse=True))
        sig = S(entries)
        angles = tuple(Fraction(rng.randint(0, 7), 8) for _ in range(d))
        u = DiagonalUnitary(angles)
        numeric = char_eval(sig, u)  # GT route iff angles collide
        exact = char_eval(sig, DiagonalUnitary(angles), exact=True) if all(
            a.denominator in (1, 2, 4) for a in angles
        ) else None
        distinct = len(set(angles)) == d
        if distinct:
            # force the GT route through clustering with equal tolerance
            from weylchar.ucharacters import _char_by_gt

            gt = _char_by_gt(sig.entries, u.complex_values())
            assert abs(numeric - gt) < 1e-9 * max(1.0, abs(gt))
        if exact is not None:
            assert abs(numeric - complex(exact)) < 1e-9 * max(1.0, abs(complex(exact)))


def test_normalized_char_bounded_and_central():
    rng = random.Random(23)
    for _ in range(50):
        d = rng.randint(2, 4)
        entries = tuple(sorted((rng.randint(-2, 2) for _ in range(d)), reverse=True))
        sig = S(entries)
        u = DiagonalUnitary(tuple(rng.random() for _ in range(d)))
        assert abs(normalized_char(sig, u)) <= 1 + 1e-9
        # central element z * 1_d
        turn = Fraction(rng.randint(0, 3), 4)
        central = DiagonalUnitary((turn,) * d)
        val = normalized_char(sig, central, exact=True)
        z = complex(QQi.of(1)) if turn == 0 else cmath.exp(2j * cmath.pi * float(turn))
        assert abs(complex(val) - z ** sum(entries)) < 1e-12


def _weight_multiset(sig):
    out = {}
    for pat in enumerate_gt_patterns(sig):
        w = gt_weight(pat)
        out[w] = out.get(w, 0) + 1
    return out


def test_restrict_defining_rep():
    dec = restrict_to_blocks(S((1, 0)), 1, 1)
    assert {(a.entries, b.entries): m for a, b, m in dec.components} == {
        ((1,), (0,)): 1,
        ((0,), (1,)): 1,
    }


def test_restrict_sym_square():
    dec = restrict_to_blocks(S((2, 0)), 1, 1)
    assert {(a.entries, b.entries): m for a, b, m in dec.components} == {
        ((2,), (0,)): 1,
        ((1,), (1,)): 1,
        ((0,), (2,)): 1,
    }


def test_restrict_adjoint_u3():
    # Exhaustive weight bookkeeping oracle: the union of component weights,
    # with the U(1) weight prepended, must reproduce the parent multiset.
    sig = S((1, 0, -1))
    dec = restrict_to_blocks(sig, 1, 2)
    assert dec.total_dim() == 8
    assert len(dec.components) == 4
    rebuilt = {}
    for s1, s2, mult in dec.components:
        for pat in enumerate_gt_patterns(s2):
            w = (s1.entries[0],) + gt_weight(pat)
            rebuilt[w] = rebuilt.get(w, 0) + mult
    assert rebuilt == _weight_multiset(sig)


def test_restrict_weight_oracle_random():
    rng = random.Random(31)
    for _ in range(15):
        d = rng.randint(2, 4)
        entries = tuple(sorted((rng.randint(-2, 2) for _ in range(d)), reverse=True))
        sig = S(entries)
        d1 = rng.randint(1, d - 1)
        d2 = d - d1
        dec = restrict_to_blocks(sig, d1, d2)
        assert dec.total_dim() == weyl_dim(sig)
        rebuilt = {}
        for s1, s2, mult in dec.components:
            for p1 in enumerate_gt_patterns(s1):
                for p2 in enumerate_gt_patterns(s2):
                    w = gt_weight(p1) + gt_weight(p2)
                    rebuilt[w] = rebuilt.get(w, 0) + mult
        assert rebuilt == _weight_multiset(sig)


def test_tensor_defining_reps():
    comps = tensor_decompose(S((1, 0)), S((1, 0)))
    assert [(s.entries, m) for s, m in comps] == [((1, 1), 1), ((2, 0), 1)]


def test_tensor_with_trivial():
    sig = S((2, 0, -1))
    comps = tensor_decompose(sig, S((0, 0, 0)))
    assert comps == ((sig, 1),)


def test_tensor_adjoint_squared():
    comps = tensor_decompose(S((1, 0, -1)), S((1, 0, -1)))
    assert sum(m * weyl_dim(s) for s, m in comps) == 64
    # Numeric character-product oracle at a random spectrum.
    u = DiagonalUnitary((0.11, 0.43, 0.78))
    lhs = char_eval(S((1, 0, -1)), u) ** 2
    rhs = sum(m * char_eval(s, u) for s, m in comps)
    assert abs(lhs - rhs) < 1e-9


def test_tensor_character_product_oracle_random():
    rng = random.Random(41)
    for _ in range(10):
        d = rng.randint(2, 3)
        e1 = tuple(sorted((rng.randint(-2, 2) for _ in range(d)), reverse=True))
        e2 = tuple(sorted((rng.randint(-2, 2) for _ in range(d)), reverse=True))
        comps = tensor_decompose(S(e1), S(e2))
        u = DiagonalUnitary(tuple(rng.random() for _ in range(d)))
        lhs = char_eval(S(e1), u) * char_eval(S(e2), u)
        rhs = sum(m * char_eval(s, u) for s, m in comps)
        assert abs(lhs - rhs) < 1e-8 * max(1.0, abs(lhs))


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded):
        tensor_decompose(S((6, 0, 0, -6)), S((6, 0, 0, -6)), dim_budget=100)
    with pytest.raises(BudgetExceeded):
        restrict_to_blocks(S((8, 4, 0, -8)), 2, 2, dim_budget=10)


def test_branching_inequalities_tensor():
    sig = S((1, 0, -1))
    comps = tensor_decompose(sig, sig)
    report = check_branching_inequalities(comps, (sig, sig))
    assert report.holds and report.kind == "tensor"
    comps2 = tensor_decompose(S((1, 0)), S((1, 0)))
    assert check_branching_inequalities(comps2, (S((1, 0)), S((1, 0)))).holds


def test_branching_inequalities_restriction_sweep():
    for d in range(2, 7):
        for sig in all_signature_pairs(d, 2):
            if weyl_dim(sig) > 50_000:
                continue
            for d1 in range(1, d):
                dec = restrict_to_blocks(sig, d1, d - d1)
                assert check_branching_inequalities(dec, sig).holds, (sig, d1)


def test_defect_examples():
    u = DiagonalUnitary((0.2, 0.5, 0.7, 0.9))
    assert rational_approx_defect(P((1,)), P(()), u) < 1e-12
    central = DiagonalUnitary((Fraction(1, 4),) * 5)
    assert rational_approx_defect(P((1,)), P((1,)), central) < 1e-12
    for d in (4, 6, 8):
        half = DiagonalUnitary((Fraction(1, 4),) * (d // 2) + (Fraction(0),) * (d // 2))
        expected = 1 / (2 * (d * d - 1))
        assert abs(rational_approx_defect(P((1,)), P((1,)), half) - expected) < 1e-12


def test_defect_rate_bounded():
    for lam, mu in (((2,), (1,)), ((1, 1), (2,))):
        scaled = []
        for d in (4, 8, 16, 32):
            u = DiagonalUnitary((Fraction(1, 8),) * (d // 4) + (Fraction(0),) * (3 * d // 4))
            scaled.append(rational_approx_defect(P(lam), P(mu), u) * d)
        assert max(scaled) / min(scaled) < 3


def test_block_decomposition_json():
    dec = restrict_to_blocks(S((1, 0)), 1, 1)
    data = dec.to_json()
    assert data[0]["multiplicity"] == 1
    assert {"first", "second", "multiplicity"} <= set(data[0])
