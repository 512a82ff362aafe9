# cython: language_level=3
"""Compiled Gelfand-Tsetlin aggregation kernel.

Same contract as weylchar._gtpure.group_counts.  Exponent vectors are packed
into single integers (offset mixed-radix) so the per-level accumulation runs
over an int-keyed dict; signatures stay as tuples for memoization.
"""

IMPLEMENTATION = "cython"


def group_counts(entries, groups, int ngroups):
    entries = tuple(int(e) for e in entries)
    groups = tuple(int(g) for g in groups)
    cdef int d = len(entries)
    if len(groups) != d:
        raise ValueError("groups must assign every coordinate")
    cdef int g
    for g in groups:
        if g < 0 or g >= ngroups:
            raise ValueError("group index out of range")

    cdef long long span = 0
    for e in entries:
        span += e if e >= 0 else -e
    cdef long long base = 2 * span + 1
    # Packed keys must fit comfortably in an int; fall back for huge spans.
    if ngroups > 1 and base ** ngroups > (<long long> 1) << 62:
        from weylchar import _gtpure
        return _gtpure.group_counts(entries, groups, ngroups)

    cdef long long offset = span
    cdef long long zero_key = 0
    cdef long long power = 1
    powers = []
    for g in range(ngroups):
        powers.append(power)
        zero_key += offset * power
        power *= base
    memo = {}
    counts = _rec(entries, groups, memo, powers, zero_key)

    out = {}
    cdef long long key, rem
    for pk, m in counts.items():
        key = pk
        exps = []
        for g in range(ngroups):
            rem = key % base
            exps.append(int(rem - offset))
            key //= base
        out[tuple(exps)] = m
    return out


cdef dict _rec(tuple sig, tuple groups, dict memo, list powers, long long zero_key):
    cdef int k = len(sig)
    cdef long long bump_unit, w
    if k == 1:
        bump_unit = powers[<int> groups[0]]
        return {zero_key + (<long long> sig[0]) * bump_unit: 1}
    hit = memo.get(sig)
    if hit is not None:
        return hit
    bump_unit = powers[<int> groups[k - 1]]
    cdef long long total = 0
    cdef int i
    for i in range(k):
        total += <long long> sig[i]

    cdef dict out = {}
    # Odometer over the interlacing box [sig[i+1], sig[i]] per coordinate.
    lo = [sig[i + 1] for i in range(k - 1)]
    hi = [sig[i] for i in range(k - 1)]
    cur = list(lo)
    cdef long long lower_sum = 0
    for i in range(k - 1):
        lower_sum += <long long> cur[i]
    cdef bint more = True
    cdef long long nk
    while more:
        child = _rec(tuple(cur), groups, memo, powers, zero_key)
        w = total - lower_sum
        for ck, m in child.items():
            nk = (<long long> ck) + w * bump_unit
            prev = out.get(nk)
            out[nk] = m if prev is None else prev + m
        # advance odometer
        more = False
        for i in range(k - 1):
            if cur[i] < hi[i]:
                cur[i] += 1
                lower_sum += 1
                more = True
                break
            lower_sum -= cur[i] - lo[i]
            cur[i] = lo[i]
    memo[sig] = out
    return out
