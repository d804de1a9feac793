"""Exact check that a sum of two-factor products vanishes, without expanding it.

``sum_i A_i * B_i == 0`` is decided one output class at a time.  A class is
the pair (abelian degree, image in GL(3, 2)) of a product word; both are
multiplicative, so every pair of input classes feeds exactly one output
class and each output class can be summed in its own small hash table.
Words are packed two bits per letter into 128 bits, which caps product
words at 64 letters; larger inputs go through the plain dictionary product.
"""

from __future__ import annotations

from typing import Optional, Sequence, Tuple

import numpy as np
from numba import njit

from nclaurent import freegroup as fg
from nclaurent.freegroup import Word

MAX_LETTERS = 64
_CODE = {("x", 1): 0, ("x", -1): 1, ("y", 1): 2, ("y", -1): 3}
_DECODE = [("x", 1), ("x", -1), ("y", 1), ("y", -1)]


def _group_tables():
    # x, y -> generators of GL(3, 2); the group is perfect (simple of order
    # 168), so the class is independent of the abelian degree
    def mat_mul(a, b):
        return tuple(
            tuple(sum(a[i][k] & b[k][j] for k in range(3)) & 1 for j in range(3))
            for i in range(3)
        )

    gx = ((1, 1, 0), (0, 1, 0), (0, 0, 1))
    gy = ((0, 0, 1), (1, 0, 0), (0, 1, 0))
    ident = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    elems = [ident]
    seen = {ident}
    for g in elems:
        for h in (gx, gy):
            k = mat_mul(g, h)
            if k not in seen:
                seen.add(k)
                elems.append(k)
    index = {g: i for i, g in enumerate(elems)}
    n = len(elems)
    mul = np.empty((n, n), dtype=np.int64)
    for g in elems:
        for h in elems:
            mul[index[g], index[h]] = index[mat_mul(g, h)]
    inv = np.empty(n, dtype=np.int64)
    for i in range(n):
        inv[i] = int(np.nonzero(mul[i] == 0)[0][0])
    gens = {("x", 1): index[gx], ("y", 1): index[gy]}
    gens[("x", -1)] = int(inv[index[gx]])
    gens[("y", -1)] = int(inv[index[gy]])
    return mul, inv, gens, 0


_MUL, _INV, _GEN, _IDENT = _group_tables()
NGROUP = _MUL.shape[0]


def _letters(w: Word) -> list[int]:
    out: list[int] = []
    for g, e in w:
        out.extend([_CODE[(g, 1 if e > 0 else -1)]] * abs(e))
    return out


def _pack(letters) -> tuple[int, int]:
    lo = hi = 0
    for i, c in enumerate(letters):
        if i < 32:
            lo |= c << (2 * i)
        else:
            hi |= c << (2 * (i - 32))
    return lo, hi


def _unpack(lo: int, hi: int, n: int) -> Word:
    raw = []
    for i in range(n):
        c = (lo >> (2 * i)) & 3 if i < 32 else (hi >> (2 * (i - 32))) & 3
        raw.append(_DECODE[c])
    return fg.reduce(raw)


class _Encoded:
    """Columnar view of one polynomial, sorted by (degree, group class)."""

    def __init__(self, terms, sign: int):
        rows = []
        for w, c in terms:
            lets = _letters(w)
            g = _IDENT
            for L in lets:
                g = _MUL[g, _GEN[_DECODE[L]]]
            dx, dy = fg.degree(w)
            lo, hi = _pack(lets)
            ilo, ihi = _pack([L ^ 1 for L in reversed(lets)])
            rows.append((dx, dy, g, lo, hi, ilo, ihi, len(lets), sign * c))
        rows.sort(key=lambda r: (r[0], r[1], r[2]))
        n = len(rows)
        self.n = n
        self.dx = np.array([r[0] for r in rows], dtype=np.int64)
        self.dy = np.array([r[1] for r in rows], dtype=np.int64)
        self.g = np.array([r[2] for r in rows], dtype=np.int64)
        self.lo = np.array([r[3] for r in rows], dtype=np.uint64)
        self.hi = np.array([r[4] for r in rows], dtype=np.uint64)
        self.ilo = np.array([r[5] for r in rows], dtype=np.uint64)
        self.ihi = np.array([r[6] for r in rows], dtype=np.uint64)
        self.ln = np.array([r[7] for r in rows], dtype=np.int64)
        self.co = np.array([r[8] for r in rows], dtype=np.int64)
        self.maxlen = max((r[7] for r in rows), default=0)
        self.abs_sum = sum(abs(r[8]) for r in rows)


@njit(cache=True)
def _prefix(lo, hi, p):
    bits = 2 * p
    one = np.uint64(1)
    if bits >= 128:
        return lo, hi
    if bits >= 64:
        b = bits - 64
        if b == 0:
            return lo, np.uint64(0)
        return lo, hi & ((one << np.uint64(b)) - one)
    if bits == 0:
        return np.uint64(0), np.uint64(0)
    return lo & ((one << np.uint64(bits)) - one), np.uint64(0)


@njit(cache=True)
def _shr(lo, hi, s):
    if s == 0:
        return lo, hi
    if s >= 128:
        return np.uint64(0), np.uint64(0)
    if s >= 64:
        return hi >> np.uint64(s - 64), np.uint64(0)
    return (lo >> np.uint64(s)) | (hi << np.uint64(64 - s)), hi >> np.uint64(s)


@njit(cache=True)
def _shl(lo, hi, s):
    if s == 0:
        return lo, hi
    if s >= 128:
        return np.uint64(0), np.uint64(0)
    if s >= 64:
        return np.uint64(0), lo << np.uint64(s - 64)
    return lo << np.uint64(s), (hi << np.uint64(s)) | (lo >> np.uint64(64 - s))


@njit(cache=True)
def _hash(lo, hi, n):
    h = lo * np.uint64(0x9E3779B97F4A7C15)
    h ^= hi * np.uint64(0xC2B2AE3D27D4EB4F) + np.uint64(n)
    h ^= h >> np.uint64(29)
    h *= np.uint64(0xBF58476D1CE4E5B9)
    h ^= h >> np.uint64(32)
    return h


@njit(cache=True, inline="always")
def _product(alo, ahi, ilo, ihi, la, blo, bhi, lb):
    # a * b for packed words; ilo/ihi is a^-1 packed, so the cancelled
    # junction is the run of zero 2-bit groups in (a^-1 xor b)
    zlo = ilo ^ blo
    zhi = ihi ^ bhi
    lim = la if la < lb else lb
    c = 0
    while c < lim:
        if c < 32:
            lt = (zlo >> np.uint64(2 * c)) & np.uint64(3)
        else:
            lt = (zhi >> np.uint64(2 * (c - 32))) & np.uint64(3)
        if lt != 0:
            break
        c += 1
    plo, phi = _prefix(alo, ahi, la - c)
    slo, shi = _shr(blo, bhi, 2 * c)
    slo, shi = _shl(slo, shi, 2 * (la - c))
    return plo | slo, phi | shi, la + lb - 2 * c


@njit(cache=True, inline="always")
def _insert(t_lo, t_hi, t_ln, t_val, used, nused, mask, rlo, rhi, rn, v, h):
    slot = h & mask
    while True:
        s = np.int64(slot)
        if t_ln[s] == -1:
            t_ln[s] = rn
            t_lo[s] = rlo
            t_hi[s] = rhi
            t_val[s] = v
            used[nused] = s
            return nused + 1
        if t_ln[s] == rn and t_lo[s] == rlo and t_hi[s] == rhi:
            t_val[s] += v
            return nused
        slot = (slot + np.uint64(1)) & mask


@njit(cache=True)
def _drain(t_lo, t_hi, t_ln, t_val, used, nused):
    """Index of a slot with nonzero value (or -1); clears the table."""
    bad = -1
    for u in range(nused):
        s = used[u]
        if bad == -1 and t_val[s] != 0:
            bad = s
    if bad != -1:
        return bad
    for u in range(nused):
        s = used[u]
        t_ln[s] = -1
        t_val[s] = 0
    return -1


@njit(cache=True)
def _class_direct(
    TX, TY, tg, a_degs, n_adeg, acl_lo, acl_hi, acl_g, acl_s, acl_e,
    b_start, b_end, b_any, A_lo, A_hi, A_ilo, A_ihi, A_ln, A_co, B_lo, B_hi, B_ln, B_co,
    mul, inv, x0, y0, W, H, t_lo, t_hi, t_ln, t_val, used, size,
):
    mask = np.uint64(size - 1)
    nused = 0
    for p in range(n_adeg.shape[0]):
        for k in range(n_adeg[p]):
            bx = TX - a_degs[p, k, 0] - x0
            by = TY - a_degs[p, k, 1] - y0
            if bx < 0 or by < 0 or bx >= W or by >= H or not b_any[p, bx, by]:
                continue
            for cl in range(acl_lo[p, k], acl_hi[p, k]):
                bg = mul[inv[acl_g[cl]], tg]
                sb = b_start[p, bx, by, bg]
                eb = b_end[p, bx, by, bg]
                for ia in range(acl_s[cl], acl_e[cl]):
                    la = A_ln[ia]
                    ca = A_co[ia]
                    for ib in range(sb, eb):
                        rlo, rhi, rn = _product(A_lo[ia], A_hi[ia], A_ilo[ia], A_ihi[ia], la, B_lo[ib], B_hi[ib], B_ln[ib])
                        nused = _insert(t_lo, t_hi, t_ln, t_val, used, nused, mask, rlo, rhi, rn,
                                        ca * B_co[ib], _hash(rlo, rhi, rn))
    return _drain(t_lo, t_hi, t_ln, t_val, used, nused)


@njit(cache=True)
def _class_partitioned(
    TX, TY, tg, a_degs, n_adeg, acl_lo, acl_hi, acl_g, acl_s, acl_e,
    b_start, b_end, b_any, A_lo, A_hi, A_ilo, A_ihi, A_ln, A_co, B_lo, B_hi, B_ln, B_co,
    mul, inv, x0, y0, W, H, t_lo, t_hi, t_ln, t_val, used, size,
    q_lo, q_hi, q_ln, q_val, fill, logp, pcap,
):
    """Scatter the products of one class into 2^logp buckets by hash, then
    sum each bucket in a small table.  Returns (slot, bucket_overflowed)."""
    nparts = 1 << logp
    shift = np.uint64(64 - logp)
    for i in range(nparts):
        fill[i] = 0
    for p in range(n_adeg.shape[0]):
        for k in range(n_adeg[p]):
            bx = TX - a_degs[p, k, 0] - x0
            by = TY - a_degs[p, k, 1] - y0
            if bx < 0 or by < 0 or bx >= W or by >= H or not b_any[p, bx, by]:
                continue
            for cl in range(acl_lo[p, k], acl_hi[p, k]):
                bg = mul[inv[acl_g[cl]], tg]
                sb = b_start[p, bx, by, bg]
                eb = b_end[p, bx, by, bg]
                for ia in range(acl_s[cl], acl_e[cl]):
                    la = A_ln[ia]
                    ca = A_co[ia]
                    for ib in range(sb, eb):
                        rlo, rhi, rn = _product(A_lo[ia], A_hi[ia], A_ilo[ia], A_ihi[ia], la, B_lo[ib], B_hi[ib], B_ln[ib])
                        part = np.int64(_hash(rlo, rhi, rn) >> shift)
                        f = fill[part]
                        if f == pcap:
                            return -1, True
                        pos = part * pcap + f
                        q_lo[pos] = rlo
                        q_hi[pos] = rhi
                        q_ln[pos] = rn
                        q_val[pos] = ca * B_co[ib]
                        fill[part] = f + 1
    mask = np.uint64(size - 1)
    for part in range(nparts):
        nused = 0
        base = part * pcap
        for pos in range(base, base + fill[part]):
            rlo = q_lo[pos]
            rhi = q_hi[pos]
            rn = q_ln[pos]
            nused = _insert(t_lo, t_hi, t_ln, t_val, used, nused, mask, rlo, rhi, rn, q_val[pos], _hash(rlo, rhi, rn))
        bad = _drain(t_lo, t_hi, t_ln, t_val, used, nused)
        if bad != -1:
            return bad, False
    return -1, False


# classes with more products than this are aggregated bucket by bucket
PARTITION_FROM = 1 << 15
BUCKET = 1 << 12


@njit(cache=True)
def _run(
    a_degs, n_adeg, acl_lo, acl_hi, acl_g, acl_s, acl_e,
    b_start, b_end, b_any,
    A_lo, A_hi, A_ilo, A_ihi, A_ln, A_co,
    B_lo, B_hi, B_ln, B_co,
    targets, mul, inv, x0, y0, W, H,
):
    """Returns (ok, witness_lo, witness_hi, witness_len, witness_val, products)."""
    ngroup = mul.shape[0]
    npairs = n_adeg.shape[0]
    cap = 1 << 10
    t_lo = np.zeros(cap, dtype=np.uint64)
    t_hi = np.zeros(cap, dtype=np.uint64)
    t_ln = np.full(cap, -1, dtype=np.int64)
    t_val = np.zeros(cap, dtype=np.int64)
    used = np.zeros(cap, dtype=np.int64)
    qcap = 0
    q_lo = np.zeros(0, dtype=np.uint64)
    q_hi = np.zeros(0, dtype=np.uint64)
    q_ln = np.zeros(0, dtype=np.int64)
    q_val = np.zeros(0, dtype=np.int64)
    fill = np.zeros(1 << 16, dtype=np.int64)
    done = 0
    for ti in range(targets.shape[0]):
        TX = targets[ti, 0]
        TY = targets[ti, 1]
        for tg in range(ngroup):
            need = 0
            for p in range(npairs):
                for k in range(n_adeg[p]):
                    bx = TX - a_degs[p, k, 0] - x0
                    by = TY - a_degs[p, k, 1] - y0
                    if bx < 0 or by < 0 or bx >= W or by >= H or not b_any[p, bx, by]:
                        continue
                    for cl in range(acl_lo[p, k], acl_hi[p, k]):
                        bg = mul[inv[acl_g[cl]], tg]
                        need += (acl_e[cl] - acl_s[cl]) * (b_end[p, bx, by, bg] - b_start[p, bx, by, bg])
            if need == 0:
                continue
            done += need
            bad = -1
            overflow = True
            if need > PARTITION_FROM:
                logp = 0
                while (need >> logp) > BUCKET and logp < 16:
                    logp += 1
                mean = need >> logp
                # buckets get need / 2^logp products on average; the slack is
                # many standard deviations, and an overflow just falls back
                pcap = mean + 8 * int(np.sqrt(mean)) + 64
                total = pcap << logp
                if total > qcap:
                    qcap = total
                    q_lo = np.zeros(qcap, dtype=np.uint64)
                    q_hi = np.zeros(qcap, dtype=np.uint64)
                    q_ln = np.zeros(qcap, dtype=np.int64)
                    q_val = np.zeros(qcap, dtype=np.int64)
                size = 1 << 10
                while size <= pcap:
                    size <<= 1
                if size > cap:
                    cap = size
                    t_lo = np.zeros(cap, dtype=np.uint64)
                    t_hi = np.zeros(cap, dtype=np.uint64)
                    t_ln = np.full(cap, -1, dtype=np.int64)
                    t_val = np.zeros(cap, dtype=np.int64)
                    used = np.zeros(cap, dtype=np.int64)
                bad, overflow = _class_partitioned(
                    TX, TY, tg, a_degs, n_adeg, acl_lo, acl_hi, acl_g, acl_s, acl_e,
                    b_start, b_end, b_any, A_lo, A_hi, A_ilo, A_ihi, A_ln, A_co, B_lo, B_hi, B_ln, B_co,
                    mul, inv, x0, y0, W, H, t_lo, t_hi, t_ln, t_val, used, size,
                    q_lo, q_hi, q_ln, q_val, fill, logp, pcap,
                )
            if overflow:
                # a vanishing class holds about need / 2 distinct words and
                # never more than need, so need + 1 slots leave one empty
                size = 1 << 10
                while size <= need:
                    size <<= 1
                if size > cap:
                    cap = size
                    t_lo = np.zeros(cap, dtype=np.uint64)
                    t_hi = np.zeros(cap, dtype=np.uint64)
                    t_ln = np.full(cap, -1, dtype=np.int64)
                    t_val = np.zeros(cap, dtype=np.int64)
                    used = np.zeros(cap, dtype=np.int64)
                bad = _class_direct(
                    TX, TY, tg, a_degs, n_adeg, acl_lo, acl_hi, acl_g, acl_s, acl_e,
                    b_start, b_end, b_any, A_lo, A_hi, A_ilo, A_ihi, A_ln, A_co, B_lo, B_hi, B_ln, B_co,
                    mul, inv, x0, y0, W, H, t_lo, t_hi, t_ln, t_val, used, size,
                )
            if bad != -1:
                return False, t_lo[bad], t_hi[bad], t_ln[bad], t_val[bad], done
    return True, np.uint64(0), np.uint64(0), 0, 0, done


def _runs(e: _Encoded):
    """Maximal runs of equal (dx, dy, g) in an encoded polynomial."""
    i = 0
    while i < e.n:
        j = i
        key = (int(e.dx[i]), int(e.dy[i]), int(e.g[i]))
        while j < e.n and e.dx[j] == key[0] and e.dy[j] == key[1] and e.g[j] == key[2]:
            j += 1
        yield key, i, j
        i = j


def _cat(encs, attr, dtype):
    parts = [getattr(e, attr) for e in encs]
    return np.concatenate(parts) if parts else np.zeros(0, dtype=dtype)


def sum_of_products_vanishes(
    pairs: Sequence[Tuple[object, object, int]],
) -> tuple[bool, Optional[tuple[Word, int]], int]:
    """Decide ``sum sign_i * A_i * B_i == 0`` for NCPoly ``A_i, B_i``.

    Returns ``(ok, witness, products)``: ``witness`` is a word whose
    coefficient in the sum is nonzero, with that coefficient, and
    ``products`` counts the word products formed.
    """
    A = [_Encoded(a.terms.items(), s) for a, _, s in pairs]
    B = [_Encoded(b.terms.items(), 1) for _, b, _ in pairs]
    longest = max((a.maxlen + b.maxlen for a, b in zip(A, B)), default=0)
    bound = sum(a.abs_sum * b.abs_sum for a, b in zip(A, B))
    if longest > MAX_LETTERS or bound >= 2**62:
        return _dense_fallback(pairs)
    npairs = len(pairs)
    xs = [int(v) for e in A + B for v in e.dx] or [0]
    ys = [int(v) for e in A + B for v in e.dy] or [0]
    x0, y0 = min(xs), min(ys)
    W, H = max(xs) - x0 + 1, max(ys) - y0 + 1

    b_start = np.zeros((npairs, W, H, NGROUP), dtype=np.int64)
    b_end = np.zeros((npairs, W, H, NGROUP), dtype=np.int64)
    b_any = np.zeros((npairs, W, H), dtype=np.bool_)
    offset = 0
    for p, e in enumerate(B):
        for (dx, dy, g), i, j in _runs(e):
            b_start[p, dx - x0, dy - y0, g] = offset + i
            b_end[p, dx - x0, dy - y0, g] = offset + j
            b_any[p, dx - x0, dy - y0] = True
        offset += e.n

    # A side: per pair, per degree, the list of nonempty group classes
    degs_per_pair = []
    cl_g, cl_s, cl_e = [], [], []
    offset = 0
    for e in A:
        per_deg: dict = {}
        for (dx, dy, g), i, j in _runs(e):
            per_deg.setdefault((dx, dy), []).append((g, offset + i, offset + j))
        degs_per_pair.append(per_deg)
        offset += e.n
    nmax = max((len(d) for d in degs_per_pair), default=0) or 1
    a_degs = np.zeros((npairs, nmax, 2), dtype=np.int64)
    n_adeg = np.zeros(npairs, dtype=np.int64)
    acl_lo = np.zeros((npairs, nmax), dtype=np.int64)
    acl_hi = np.zeros((npairs, nmax), dtype=np.int64)
    targets = set()
    for p, per_deg in enumerate(degs_per_pair):
        n_adeg[p] = len(per_deg)
        bdeg = {(int(x), int(y)) for x, y in zip(B[p].dx, B[p].dy)}
        for k, (d, classes) in enumerate(sorted(per_deg.items())):
            a_degs[p, k] = d
            acl_lo[p, k] = len(cl_g)
            for g, i, j in classes:
                cl_g.append(g)
                cl_s.append(i)
                cl_e.append(j)
            acl_hi[p, k] = len(cl_g)
            for e2 in bdeg:
                targets.add((d[0] + e2[0], d[1] + e2[1]))
    tarr = np.array(sorted(targets), dtype=np.int64).reshape(-1, 2)
    ok, wlo, whi, wln, wval, done = _run(
        a_degs, n_adeg, acl_lo, acl_hi,
        np.array(cl_g, dtype=np.int64), np.array(cl_s, dtype=np.int64), np.array(cl_e, dtype=np.int64),
        b_start, b_end, b_any,
        _cat(A, "lo", np.uint64), _cat(A, "hi", np.uint64),
        _cat(A, "ilo", np.uint64), _cat(A, "ihi", np.uint64),
        _cat(A, "ln", np.int64), _cat(A, "co", np.int64),
        _cat(B, "lo", np.uint64), _cat(B, "hi", np.uint64),
        _cat(B, "ln", np.int64), _cat(B, "co", np.int64),
        tarr, _MUL, _INV, x0, y0, W, H,
    )
    if ok:
        return True, None, int(done)
    return False, (_unpack(int(wlo), int(whi), int(wln)), int(wval)), int(done)


def _dense_fallback(pairs):
    from nclaurent.ncpoly import NCPoly

    total = NCPoly.zero()
    count = 0
    for a, b, s in pairs:
        total = total + (a * b).scale(s)
        count += len(a) * len(b)
    if not total:
        return True, None, count
    w, c = total.sorted_terms()[0]
    return False, (w, c), count


# products below this many word pairs are expanded directly, which keeps the
# full left and right sides available as a counterexample
EXPAND_LIMIT = 2_000_000


def _as_pair(term):
    from nclaurent.ncpoly import NCPoly

    if isinstance(term, NCPoly):
        return term, NCPoly.one()
    a, b = term
    return a, b


def compare_sums(lhs, rhs, limit: int = EXPAND_LIMIT):
    """Compare two sums of products; each term is a polynomial or a pair ``(A, B)``.

    Returns ``(equal, detail)``.  On a mismatch ``detail`` holds either the
    expanded ``lhs`` and ``rhs`` or, past ``limit`` word products, one word
    whose coefficient differs and the size of the difference there.
    """
    L = [_as_pair(t) for t in lhs]
    R = [_as_pair(t) for t in rhs]
    cost = sum(len(a) * len(b) for a, b in L + R)
    if cost <= limit:
        from nclaurent.ncpoly import NCPoly

        left = sum((a * b for a, b in L), NCPoly.zero())
        right = sum((a * b for a, b in R), NCPoly.zero())
        if left == right:
            return True, None
        return False, {"lhs": left, "rhs": right}
    pairs = [(a, b, 1) for a, b in L] + [(a, b, -1) for a, b in R]
    ok, witness, _ = sum_of_products_vanishes(pairs)
    if ok:
        return True, None
    w, c = witness
    return False, {"word": fg.format_word(w), "lhs_minus_rhs": str(c)}
