"""Pair-replacement grammar compression.

``repair_compress`` repeatedly replaces the most frequent adjacent symbol
pair with a fresh rule until no pair occurs twice, then keeps the
remaining sequence as the (arbitrarily long) start rule.  Occurrences are
counted non-overlapping, left to right, so ``aaaa`` holds two ``(a, a)``
pairs and ``aaa`` one; ties between equally frequent pairs go to the
smallest ``(first, second)`` code pair.

Two interchangeable engines implement the same replacement sequence: a
numpy pass over the whole array for long, highly repetitive inputs, and a
linked-list engine with a lazy max-heap for the remainder.  The switch
point only affects speed, never the produced grammar.
"""

from __future__ import annotations

import heapq
from array import array

import numpy as np

from .grammar import Grammar

_VECTOR_MIN_LEN = 1 << 22
_BINCOUNT_MAX_BINS = 1 << 22
# Below this share of the sequence length a vectorized O(len) round stops
# paying for itself and the incremental engine takes over.
_VECTOR_MIN_GAIN_SHIFT = 13


def repair_compress(text: bytes) -> Grammar:
    """Build a binary-rule grammar whose start rule derives ``text``."""
    if not text:
        raise ValueError("empty text")
    alphabet = tuple(sorted(set(text)))
    code = {b: i for i, b in enumerate(alphabet)}
    seq: list[int] = [code[b] for b in text]
    sigma = len(alphabet)
    bodies: list[tuple[int, int]] = []
    if len(seq) >= _VECTOR_MIN_LEN:
        seq, exhausted = _vector_rounds(seq, sigma, bodies)
        if exhausted:
            bodies.append(tuple(seq))
            return Grammar(alphabet, tuple(bodies))
    seq = _incremental_rounds(seq, sigma, bodies)
    bodies.append(tuple(seq))
    return Grammar(alphabet, tuple(bodies))


# --- vectorized engine ---------------------------------------------------


def _vector_rounds(
    seq: list[int], sigma: int, bodies: list[tuple[int, int]]
) -> tuple[list[int], bool]:
    arr = np.asarray(seq, dtype=np.int64)
    while arr.size >= _VECTOR_MIN_LEN:
        ncodes = sigma + len(bodies)
        best = _best_pair(arr, ncodes)
        if best is None:
            return arr.tolist(), True
        count, a, b = best
        if count < max(2, arr.size >> _VECTOR_MIN_GAIN_SHIFT):
            break
        bodies.append((a, b))
        arr = _replace_pair(arr, a, b, ncodes)
    return arr.tolist(), False


def _best_pair(arr: np.ndarray, ncodes: int) -> tuple[int, int, int] | None:
    """Most frequent pair under greedy non-overlapping counting.

    Returns (count, a, b) maximizing count with the smallest (a, b) on
    ties, or None once every count drops below 2.
    """
    left = arr[:-1]
    right = arr[1:]
    keys = left * ncodes + right
    if ncodes * ncodes <= _BINCOUNT_MAX_BINS:
        counts = np.bincount(keys)
        _apply_run_correction(arr, left, right, counts, None, ncodes)
        top = int(counts.max()) if counts.size else 0
        if top < 2:
            return None
        key = int(np.flatnonzero(counts == top)[0])
    else:
        uniq, counts = np.unique(keys, return_counts=True)
        _apply_run_correction(arr, left, right, counts, uniq, ncodes)
        top = int(counts.max()) if counts.size else 0
        if top < 2:
            return None
        key = int(uniq[counts == top].min())
    return top, key // ncodes, key % ncodes


def _apply_run_correction(
    arr: np.ndarray,
    left: np.ndarray,
    right: np.ndarray,
    counts: np.ndarray,
    uniq: np.ndarray | None,
    ncodes: int,
) -> None:
    """Deduct overlapped occurrences of equal pairs inside symbol runs.

    A run of t adjacencies of the same symbol counts ``floor((t+1)/2)``
    greedily, so ``floor(t/2)`` of the raw adjacencies are overlaps.
    """
    eq_idx = np.flatnonzero(left == right)
    if not eq_idx.size:
        return
    seg_start = np.empty(eq_idx.size, dtype=bool)
    seg_start[0] = True
    np.not_equal(np.diff(eq_idx), 1, out=seg_start[1:])
    seg_ids = np.cumsum(seg_start) - 1
    seg_len = np.bincount(seg_ids)
    syms = arr[eq_idx[seg_start]]
    overlaps = seg_len // 2
    run_keys = syms * ncodes + syms
    if uniq is None:
        np.subtract.at(counts, run_keys, overlaps)
    else:
        np.subtract.at(counts, np.searchsorted(uniq, run_keys), overlaps)


def _replace_pair(arr: np.ndarray, a: int, b: int, new_sym: int) -> np.ndarray:
    mask = (arr[:-1] == a) & (arr[1:] == b)
    idx = np.flatnonzero(mask)
    if a == b:
        # Consecutive hits overlap; keep alternating ones per run.
        seg_start = np.empty(idx.size, dtype=bool)
        seg_start[0] = True
        np.not_equal(np.diff(idx), 1, out=seg_start[1:])
        seg_first = idx[seg_start][np.cumsum(seg_start) - 1]
        idx = idx[((idx - seg_first) & 1) == 0]
    arr[idx] = new_sym
    return np.delete(arr, idx + 1)


# --- incremental engine --------------------------------------------------


def _incremental_rounds(seq: list[int], sigma: int, bodies: list[tuple[int, int]]) -> list[int]:
    n = len(seq)
    if n < 2:
        return seq
    vals = seq
    nxt = array("q", range(1, n + 1))
    nxt[n - 1] = -1
    prv = array("q", range(-1, n - 1))
    alive = bytearray(b"\x01") * n

    occ: dict[tuple[int, int], list[int]] = {}
    cnt: dict[tuple[int, int], int] = {}
    for i in range(n - 1):
        pr = (vals[i], vals[i + 1])
        lst = occ.get(pr)
        if lst is None:
            occ[pr] = [i]
        else:
            lst.append(i)
        cnt[pr] = cnt.get(pr, 0) + 1

    # Lazy max-heap keyed by adjacency counts, which only ever overestimate
    # the greedy count; entries are re-validated on pop.
    heap = [(-c, pr) for pr, c in cnt.items() if c >= 2]
    heapq.heapify(heap)

    while heap:
        claim, pr = heapq.heappop(heap)
        claim = -claim
        if cnt.get(pr, 0) < 2:
            continue
        a, b = pr
        raw = occ.get(pr, ())
        valid = sorted(
            {
                i
                for i in raw
                if alive[i] and vals[i] == a and nxt[i] != -1 and vals[nxt[i]] == b
            }
        )
        chosen: list[int] = []
        prev_right = -1
        for i in valid:
            if i == prev_right:
                continue
            chosen.append(i)
            prev_right = nxt[i]
        g = len(chosen)
        if g != claim:
            if g >= 2:
                heapq.heappush(heap, (-g, pr))
            continue
        occ[pr] = []

        new_sym = sigma + len(bodies)
        bodies.append(pr)
        created: set[tuple[int, int]] = set()
        for i in chosen:
            j = nxt[i]
            p = prv[i]
            if p != -1:
                vp = vals[p]
                cnt[(vp, a)] -= 1
                npair = (vp, new_sym)
                cnt[npair] = cnt.get(npair, 0) + 1
                lst = occ.get(npair)
                if lst is None:
                    occ[npair] = [p]
                else:
                    lst.append(p)
                created.add(npair)
            q = nxt[j]
            if q != -1:
                vq = vals[q]
                cnt[(b, vq)] -= 1
                npair = (new_sym, vq)
                cnt[npair] = cnt.get(npair, 0) + 1
                lst = occ.get(npair)
                if lst is None:
                    occ[npair] = [i]
                else:
                    lst.append(i)
                created.add(npair)
            vals[i] = new_sym
            alive[j] = 0
            nxt[i] = q
            if q != -1:
                prv[q] = i
            cnt[pr] -= 1
        for npair in created:
            c = cnt.get(npair, 0)
            if c >= 2:
                heapq.heappush(heap, (-c, npair))

    out = []
    i = 0
    while i != -1:
        out.append(vals[i])
        i = nxt[i]
    return out
