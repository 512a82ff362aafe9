import random

from weylchar import _gtpure, gtkernel
from weylchar.combinatorics import signatures_with_entries


def test_implementation_reported():
    assert gtkernel.IMPLEMENTATION in ("pure", "cython")
    assert "pure" in gtkernel.available_implementations()


def test_pure_matches_selected_kernel():
    rng = random.Random(99)
    cases = []
    for _ in range(60):
        d = rng.randint(1, 6)
        entries = tuple(sorted((rng.randint(-3, 3) for _ in range(d)), reverse=True))
        ngroups = rng.randint(1, 3)
        groups = tuple(rng.randrange(ngroups) for _ in range(d))
        cases.append((entries, groups, ngroups))
    for sig in signatures_with_entries(4, -2, 2):
        cases.append((sig.entries, (0, 0, 1, 1), 2))
    for entries, groups, ngroups in cases:
        a = _gtpure.group_counts(entries, groups, ngroups)
        b = gtkernel.group_counts(entries, groups, ngroups)
        assert a == b, (entries, groups)


def test_group_counts_totals_are_dimensions():
    from weylchar.symfunc import weyl_dim
    from weylchar.combinatorics import Signature

    for entries in ((3, 1, 0, -2), (2, 2, -1), (1,) * 5):
        counts = gtkernel.group_counts(entries, tuple(range(len(entries))), len(entries))
        assert sum(counts.values()) == weyl_dim(Signature(entries))


def test_group_counts_exponents_sum_to_signature_weight():
    entries = (2, 0, -1)
    counts = gtkernel.group_counts(entries, (0, 1, 1), 2)
    for exps in counts:
        assert sum(exps) == sum(entries)
