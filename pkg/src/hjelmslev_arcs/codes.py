"""Ring-linear codes from arcs: homogeneous weights, k-types of lines, the
generalized Gray map and Griesmer residuals."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .galois_ring import GaloisRing
from .plane import PlaneModel, dot_indices


class EnumerationBudgetError(RuntimeError):
    pass


DEFAULT_MAX_CODEWORDS = 200_000


@dataclass
class RingLinearCode:
    ring: GaloisRing
    generator: np.ndarray  # (k, n) element indices

    @property
    def length(self) -> int:
        return self.generator.shape[1]

    @property
    def rank(self) -> int:
        return self.generator.shape[0]

    @property
    def num_messages(self) -> int:
        return self.ring.order**self.rank


def code_from_arc(points, plane: PlaneModel) -> RingLinearCode:
    """Generator with the normalized point coordinates as columns (ascending index)."""
    points = sorted(int(i) for i in points)
    if not points:
        raise ValueError("empty arc")
    return RingLinearCode(plane.ring, plane.point_reps[points].T.copy())


# homogeneous weight


@lru_cache(maxsize=None)
def hom_weight_table(ring: GaloisRing) -> np.ndarray:
    """w(0) = 0, q^{m-1} on the nonzero minimal ideal, (q-1) q^{m-2} elsewhere.

    For m = 1 this is the Hamming weight.
    """
    q, m = ring.q, ring.m
    val = ring.valuation_table
    table = np.empty(ring.order, dtype=np.int64)
    table[val < m - 1] = (q - 1) * q ** (m - 2) if m >= 2 else 1
    table[val == m - 1] = q ** (m - 1)
    table[val == m] = 0
    return table


def hom_weight(a) -> int:
    return int(hom_weight_table(a.ring)[a.index])


def _level_weights(ring: GaloisRing) -> list[int]:
    """Homogeneous weight of an element of valuation v, for v = 0..m."""
    table = hom_weight_table(ring)
    return [int(table[np.flatnonzero(ring.valuation_table == v)[0]]) for v in range(ring.m + 1)]


# codewords and weights


def messages(ring: GaloisRing, k: int) -> np.ndarray:
    grids = np.meshgrid(*[np.arange(ring.order)] * k, indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def codewords(code: RingLinearCode, max_codewords: int = DEFAULT_MAX_CODEWORDS) -> np.ndarray:
    """All m.G in message order; (order^k, n) element indices."""
    if code.num_messages > max_codewords:
        raise EnumerationBudgetError(f"{code.num_messages} codewords exceed the budget {max_codewords}")
    if code.rank != 3:
        raise ValueError("only rank-3 generators are enumerated")
    msgs = messages(code.ring, 3)
    return dot_indices(code.ring, msgs[:, None, :], code.generator.T[None, :, :])


def hom_weights(code: RingLinearCode, words: np.ndarray | None = None) -> np.ndarray:
    if words is None:
        words = codewords(code)
    return hom_weight_table(code.ring)[words].sum(axis=1)


def hom_weight_enumerator(code: RingLinearCode, words=None) -> dict[int, int]:
    """{homogeneous weight: number of codewords} by full message enumeration."""
    w = hom_weights(code, words)
    return dict(sorted(Counter(int(x) for x in w).items()))


def minimum_hom_distance(enumerator: dict[int, int]) -> int:
    return min(w for w in enumerator if w > 0)


# k-types


def line_ktype(points, line_index: int, plane: PlaneModel) -> tuple[int, ...]:
    """(a_0, ..., a_m): arc points whose functional value on the line has
    valuation i; a_m counts the points on the line."""
    vals = plane.functional_values[line_index, np.asarray(points, dtype=np.int64)]
    heights = plane.ring.valuation_table[vals]
    return tuple(int(c) for c in np.bincount(heights, minlength=plane.ring.m + 1))


def ktype_census(points, plane: PlaneModel) -> dict[tuple[int, ...], int]:
    vals = plane.functional_values[:, np.asarray(points, dtype=np.int64)]
    heights = plane.ring.valuation_table[vals]
    m = plane.ring.m
    types = Counter(tuple(int(c) for c in np.bincount(row, minlength=m + 1)) for row in heights)
    return dict(sorted(types.items()))


def ktype_enumerator(points, plane: PlaneModel) -> dict[int, int]:
    """Homogeneous weight enumerator of the arc code from line k-types alone.

    Nonzero messages are p^j * unit * (line coordinates).  Each line
    contributes (q-1) q^{m-j-1} messages at level j, and lines agreeing mod
    p^{m-j} give the same messages, hence the division by q^{2j}.
    """
    ring = plane.ring
    q, m = ring.q, ring.m
    level_w = _level_weights(ring)
    census = ktype_census(points, plane)
    acc: Counter = Counter()
    for j in range(m):
        per_line = (q - 1) * q ** (m - j - 1)
        for ktype, count in census.items():
            weight = sum(a * level_w[min(i + j, m)] for i, a in enumerate(ktype))
            acc[(j, weight)] += count * per_line
    out: Counter = Counter({0: 1})
    for (j, weight), total in acc.items():
        assert total % q ** (2 * j) == 0
        out[weight] += total // q ** (2 * j)
    return dict(sorted(out.items()))


# Gray map


@lru_cache(maxsize=None)
def gray_table(ring: GaloisRing) -> np.ndarray:
    """(order, q^{m-1}) table of Gray images as residue field indices.

    m = 1: identity.  m = 2: with a = t0 + p t1 (Teichmueller digits), the
    coordinate at u in F_q is res(t1) + res(t0) * u.
    """
    field = ring.residue_field
    if ring.m == 1:
        return np.arange(ring.order, dtype=np.int64)[:, None]
    if ring.m != 2:
        raise NotImplementedError("the Gray map is implemented for chain length m <= 2")
    digits = ring.teichmuller_digits()
    t0 = ring.residue_table[digits[:, 0]]
    t1 = ring.residue_table[digits[:, 1]]
    u = np.arange(field.order)
    return field.add_table[t1[:, None], field.mul_table[t0[:, None], u[None, :]]]


def gray_map(a) -> tuple:
    field = a.ring.residue_field
    return tuple(field.element(int(c)) for c in gray_table(a.ring)[a.index])


def gray_words(code: RingLinearCode, words=None) -> np.ndarray:
    if words is None:
        words = codewords(code)
    table = gray_table(code.ring)
    return table[words].reshape(len(words), -1)


def hamming_weights(words: np.ndarray) -> np.ndarray:
    return (words != 0).sum(axis=1)


def distance_profiles(words: np.ndarray, q: int, rows=None, chunk: int = 512):
    """Yield (row index, {distance: count}) for the selected rows.

    Distances are computed as length - (matching symbols), the matches being a
    product of one-hot encodings.
    """
    n_words, length = words.shape
    onehot = np.zeros((n_words, length * q), dtype=np.float32)
    cols = np.arange(length) * q
    onehot[np.arange(n_words)[:, None], cols[None, :] + words] = 1.0
    rows = np.arange(n_words) if rows is None else np.asarray(rows)
    for start in range(0, len(rows), chunk):
        block = rows[start:start + chunk]
        dist = length - np.rint(onehot[block] @ onehot.T).astype(np.int64)
        for r, row in zip(block, dist):
            values, counts = np.unique(row, return_counts=True)
            yield int(r), dict(zip(values.tolist(), counts.tolist()))


def is_distance_invariant(words: np.ndarray, q: int, sample: int | None = None, seed: int = 0):
    """(invariant, min nonzero distance seen); checks every word unless
    ``sample`` caps the number of base words."""
    values, counts = np.unique(hamming_weights(words), return_counts=True)
    weights = dict(zip(values.tolist(), counts.tolist()))
    rows = None
    if sample is not None and sample < len(words):
        rng = np.random.default_rng(seed)
        rows = np.sort(rng.choice(len(words), size=sample, replace=False))
    dmin = None
    invariant = True
    for _, prof in distance_profiles(words, q, rows):
        if prof != weights:
            invariant = False
        nz = [d for d in prof if d > 0 and prof[d]]
        if nz:
            dmin = min(nz) if dmin is None else min(dmin, min(nz))
    return invariant, dmin


def span_dimension(words: np.ndarray, field: GaloisRing, stop_above: int | None = None) -> int:
    """Rank over F_q of the row set (Gaussian elimination with table arithmetic).

    With ``stop_above`` set, returns as soon as the rank exceeds it.
    """
    if field.m != 1:
        raise ValueError("span dimension needs a field")
    mul, add, neg, inv = field.mul_table, field.add_table, field.neg_table, field.inv_table
    rows = np.unique(words, axis=0)
    rows = rows[(rows != 0).any(axis=1)].copy()
    rank = 0
    for col in range(rows.shape[1]):
        if rank >= len(rows):
            break
        nz = np.flatnonzero(rows[rank:, col]) + rank
        if not len(nz):
            continue
        piv = nz[0]
        rows[[rank, piv]] = rows[[piv, rank]]
        rows[rank] = mul[inv[rows[rank, col]], rows[rank]]
        others = np.flatnonzero(rows[:, col])
        others = others[others != rank]
        if len(others):
            factors = rows[others, col]
            rows[others] = add[rows[others], neg[mul[factors[:, None], rows[rank][None, :]]]]
        rank += 1
        if stop_above is not None and rank > stop_above:
            return rank
    return rank


def is_linear(words: np.ndarray, field: GaloisRing) -> bool:
    """A word set is F_q-linear iff it is its own span, i.e. |span| = |set|."""
    distinct = len(np.unique(words, axis=0))
    dim = round(math.log(distinct, field.order))
    if field.order**dim != distinct:
        return False
    if not (words == 0).all(axis=1).any():
        return False
    return span_dimension(words, field, stop_above=dim) == dim


@dataclass
class GrayImage:
    field: GaloisRing
    words: np.ndarray
    length: int
    size: int
    min_distance: int | None
    distance_invariant: bool
    linear: bool

    @property
    def log_size(self) -> float:
        return math.log(self.size, self.field.order)


def gray_image(code: RingLinearCode, words=None, full_check_limit: int = 10_000,
               sample: int = 512) -> GrayImage:
    """Gray image of the code; distance invariance is checked from every word
    up to ``full_check_limit`` words and from ``sample`` random words beyond."""
    g = gray_words(code, words)
    field = code.ring.residue_field
    sample_rows = None if len(g) <= full_check_limit else sample
    invariant, dmin = is_distance_invariant(g, field.order, sample=sample_rows)
    return GrayImage(
        field=field,
        words=g,
        length=g.shape[1],
        size=len(np.unique(g, axis=0)),
        min_distance=dmin,
        distance_invariant=invariant,
        linear=is_linear(g, field),
    )


# Griesmer


def griesmer_step(q: int, n: int, k: int, d: int) -> tuple[int, int, int]:
    """A linear [n, k, d]_q code implies a linear [n - d, k - 1, ceil(d / q)]_q code."""
    if q < 2 or k < 2 or d < 1 or d > n:
        raise ValueError(f"invalid parameters q={q}, n={n}, k={k}, d={d}")
    return n - d, k - 1, -(-d // q)


def griesmer_chain(q: int, n: int, k: int, d: int) -> list[tuple[int, int, int]]:
    chain = [(n, k, d)]
    while k >= 2 and d >= 1:
        n, k, d = griesmer_step(q, n, k, d)
        chain.append((n, k, d))
    return chain


def code_report(points, plane: PlaneModel, max_codewords: int = DEFAULT_MAX_CODEWORDS) -> dict:
    """Everything the code-report command prints, as plain data."""
    code = code_from_arc(points, plane)
    words = codewords(code, max_codewords)
    enum = hom_weight_enumerator(code, words)
    report = {
        "ring": plane.ring.to_text(),
        "n": code.length,
        "k": code.rank,
        "num_codewords": int(len(words)),
        "d_hom": minimum_hom_distance(enum) if len(enum) > 1 else 0,
        "hom_weight_enumerator": sorted(enum.items()),
        "ktype_census": [[list(t), c] for t, c in ktype_census(points, plane).items()],
    }
    if plane.ring.m <= 2:
        img = gray_image(code, words)
        q = img.field.order
        report["gray"] = {
            "q": q,
            "N": img.length,
            "size": img.size,
            "log_q_size": round(img.log_size, 6),
            "d_ham": img.min_distance,
            "distance_invariant": img.distance_invariant,
            "linear": img.linear,
        }
        k_gray = round(img.log_size)
        if img.min_distance and q ** k_gray == img.size and k_gray >= 2:
            report["griesmer_chain"] = griesmer_chain(q, img.length, k_gray, img.min_distance)
        report["_gray_words"] = img.words
    return report
