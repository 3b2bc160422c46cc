"""Exact arithmetic in Galois rings GR(q^m, p^m) = Z_{p^m}[X]/(f).

Elements are fixed-length coefficient vectors ``(c0, ..., c_{r-1})`` with
``c_i`` in ``[0, p^m)``, standing for ``c0 + c1 X + ... + c_{r-1} X^{r-1}``.
Every ring also numbers its elements ``0 .. q^m - 1`` in lexicographic order
of the coefficient vectors; the plane and search code work on those integer
indices through the precomputed tables below.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property

import numpy as np


class RingMismatchError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def _poly_mod_p(coeffs, p):
    out = [c % p for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return out


def _poly_rem(a, b, p):
    """Remainder of a by monic b over F_p (coefficient lists, low degree first)."""
    a = _poly_mod_p(a, p)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        lead = a[-1]
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - lead * c) % p
        a = _poly_mod_p(a, p)
    return a


def is_irreducible_mod_p(f, p: int) -> bool:
    """Trial division of f mod p by every monic polynomial of degree <= deg/2."""
    f = _poly_mod_p(f, p)
    deg = len(f) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_rem(f, list(low) + [1], p):
                return False
    return True


def default_polynomial(p: int, r: int) -> tuple[int, ...]:
    """Lexicographically smallest monic degree-r polynomial irreducible mod p."""
    for low in itertools.product(range(p), repeat=r):
        f = list(low) + [1]
        if is_irreducible_mod_p(f, p):
            return tuple(f)
    raise AssertionError(f"no irreducible polynomial of degree {r} over F_{p}")


@dataclass(frozen=True, eq=False)
class RingElement:
    """An element of a Galois ring; supports ``+ - *`` and equality."""

    ring: GaloisRing
    coeffs: tuple[int, ...]

    @property
    def index(self) -> int:
        return self.ring.index_of(self.coeffs)

    def _check(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return self.ring.add(self, other)

    def __sub__(self, other):
        other = self._check(other)
        return self.ring.sub(self, other)

    def __mul__(self, other):
        other = self._check(other)
        return self.ring.mul(self, other)

    def __neg__(self):
        return self.ring.neg(self)

    def __pow__(self, e: int):
        return self.ring.element(self.ring.pow_index(self.index, e))

    def __eq__(self, other):
        return (
            isinstance(other, RingElement)
            and other.ring == self.ring
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.ring.key, self.coeffs))

    def __lt__(self, other):
        return self.coeffs < self._check(other).coeffs

    def __repr__(self):
        return f"{self.ring.short_name}{self.coeffs}"


class GaloisRing:
    """GR(q^m, p^m) with precomputed addition/multiplication tables.

    Build instances with :func:`make_ring`.  Two rings compare equal iff they
    have the same ``(p, r, m, f)``.
    """

    def __init__(self, p: int, r: int, m: int, f: tuple[int, ...]):
        self.p, self.r, self.m = p, r, m
        self.pm = p**m
        self.f = tuple(c % self.pm for c in f)
        self.q = p**r
        self.order = self.q**m
        self.characteristic = self.pm
        self.key = (p, r, m, self.f)

        pm, order = self.pm, self.order
        self._coeffs = list(itertools.product(range(pm), repeat=r))
        self._weights = [pm ** (r - 1 - i) for i in range(r)]
        self._coeff_array = np.array(self._coeffs, dtype=np.int64).reshape(order, r)

        idx = self._coeff_array @ np.array(self._weights, dtype=np.int64)
        assert np.array_equal(idx, np.arange(order))

        summed = (self._coeff_array[:, None, :] + self._coeff_array[None, :, :]) % pm
        self.add_table = (summed @ np.array(self._weights)).astype(np.int64)
        self.neg_table = ((-self._coeff_array) % pm) @ np.array(self._weights)
        self.mul_table = np.empty((order, order), dtype=np.int64)
        for a in range(order):
            for b in range(a, order):
                c = self.index_of(self._poly_mul(self._coeffs[a], self._coeffs[b]))
                self.mul_table[a, b] = self.mul_table[b, a] = c

        self.zero, self.one = 0, self.index_of((1,) + (0,) * (r - 1))
        # unit iff nonzero mod p
        self.is_unit_table = np.any(self._coeff_array % p != 0, axis=1)
        self.inv_table = np.full(order, -1, dtype=np.int64)
        for a in np.flatnonzero(self.is_unit_table):
            self.inv_table[a] = int(np.flatnonzero(self.mul_table[a] == self.one)[0])
        # p-adic valuation of each element (m for zero)
        self.valuation_table = np.full(order, m, dtype=np.int64)
        for a in range(order):
            c = self._coeff_array[a]
            for v in range(m):
                if np.any(c % p ** (v + 1) != 0):
                    self.valuation_table[a] = v
                    break

    def _poly_mul(self, a, b):
        r, pm, f = self.r, self.pm, self.f
        prod = [0] * (2 * r - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        # X^r = -(f_0 + ... + f_{r-1} X^{r-1})
        for d in range(2 * r - 2, r - 1, -1):
            c = prod[d]
            if c:
                prod[d] = 0
                for i in range(r):
                    prod[d - r + i] -= c * f[i]
        return tuple(c % pm for c in prod[:r])

    def __eq__(self, other):
        return isinstance(other, GaloisRing) and other.key == self.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return self.to_text()

    @property
    def short_name(self) -> str:
        if self.r == 1:
            return f"Z{self.pm}"
        if self.m == 1:
            return f"F{self.q}"
        return f"GR({self.order},{self.pm})"

    def to_text(self) -> str:
        f = ",".join(str(c) for c in self.f)
        return f"GR(p^m={self.pm},q={self.q},f=[{f}])"

    # element <-> index conversions

    def index_of(self, coeffs) -> int:
        coeffs = tuple(coeffs)
        if len(coeffs) != self.r:
            raise ValueError(f"expected {self.r} coefficients, got {len(coeffs)}")
        return sum(c % self.pm * w for c, w in zip(coeffs, self._weights))

    def element(self, index_or_coeffs) -> RingElement:
        if isinstance(index_or_coeffs, RingElement):
            if index_or_coeffs.ring != self:
                raise RingMismatchError(f"{index_or_coeffs.ring} vs {self}")
            return index_or_coeffs
        if isinstance(index_or_coeffs, (int, np.integer)):
            return RingElement(self, self._coeffs[int(index_or_coeffs)])
        return RingElement(self, tuple(c % self.pm for c in index_or_coeffs))

    def __call__(self, value) -> RingElement:
        """``R(5)`` is the integer 5 as a constant; ``R((1, 2))`` is 1 + 2X."""
        if isinstance(value, (int, np.integer)):
            return RingElement(self, (int(value) % self.pm,) + (0,) * (self.r - 1))
        return self.element(value)

    def coeffs_of(self, index: int) -> tuple[int, ...]:
        return self._coeffs[index]

    def elements(self) -> list[RingElement]:
        return [RingElement(self, c) for c in self._coeffs]

    @cached_property
    def X(self) -> RingElement:
        if self.r < 2:
            raise ValueError("X is only a generator for r >= 2")
        return self.element((0, 1) + (0,) * (self.r - 2))

    # arithmetic on RingElements

    def _idx(self, x: RingElement) -> int:
        if x.ring != self:
            raise RingMismatchError(f"{x.ring} vs {self}")
        return x.index

    def add(self, x, y):
        return self.element(int(self.add_table[self._idx(x), self._idx(y)]))

    def sub(self, x, y):
        return self.element(int(self.add_table[self._idx(x), self.neg_table[self._idx(y)]]))

    def neg(self, x):
        return self.element(int(self.neg_table[self._idx(x)]))

    def mul(self, x, y):
        return self.element(int(self.mul_table[self._idx(x), self._idx(y)]))

    def is_unit(self, x) -> bool:
        return bool(self.is_unit_table[self._idx(x)])

    def inverse(self, x) -> RingElement:
        inv = int(self.inv_table[self._idx(x)])
        if inv < 0:
            raise ZeroDivisionError(f"{x} is not a unit")
        return self.element(inv)

    def valuation(self, x) -> int:
        """Largest i with x in p^i R (m for zero)."""
        return int(self.valuation_table[self._idx(x)])

    def pow_index(self, a: int, e: int) -> int:
        result, base = self.one, a
        while e:
            if e & 1:
                result = int(self.mul_table[result, base])
            base = int(self.mul_table[base, base])
            e >>= 1
        return result

    # residue field and Teichmueller coordinates

    @cached_property
    def residue_field(self) -> GaloisRing:
        if self.m == 1:
            return self
        return make_ring(self.p, self.r, 1, [c % self.p for c in self.f])

    @cached_property
    def residue_table(self) -> np.ndarray:
        """Index of the residue class in ``residue_field`` for every element."""
        k = self.residue_field
        return np.array([k.index_of(c) for c in self._coeff_array % self.p], dtype=np.int64)

    def residue(self, x) -> RingElement:
        return self.residue_field.element(int(self.residue_table[self._idx(x)]))

    def lift(self, y: RingElement) -> RingElement:
        """Embed a residue-field element by its coefficients in [0, p)."""
        return self.element(self.residue_field.element(y).coeffs)

    @cached_property
    def teichmuller_set(self) -> list[int]:
        """Indices of the q solutions of t^q = t."""
        return [a for a in range(self.order) if self.pow_index(a, self.q) == a]

    @cached_property
    def _teichmuller_by_residue(self) -> dict[int, int]:
        return {int(self.residue_table[t]): t for t in self.teichmuller_set}

    def teichmuller_decompose(self, x) -> tuple[RingElement, ...]:
        """Digits (t0, ..., t_{m-1}) in the Teichmueller set with x = sum p^i t_i."""
        a = self._idx(x)
        digits = []
        for _ in range(self.m):
            t = self._teichmuller_by_residue[int(self.residue_table[a])]
            digits.append(t)
            rest = self._coeff_array[self.add_table[a, self.neg_table[t]]]
            assert not np.any(rest % self.p)
            a = self.index_of(rest // self.p)
        return tuple(self.element(t) for t in digits)

    def teichmuller_digits(self) -> np.ndarray:
        """(order, m) table of Teichmueller digit indices for every element."""
        return np.array(
            [[t.index for t in self.teichmuller_decompose(e)] for e in self.elements()],
            dtype=np.int64,
        )


_RING_CACHE: dict[tuple, GaloisRing] = {}


def make_ring(p: int, r: int, m: int, f=None) -> GaloisRing:
    """Validated GR(p^{rm}, p^m); ``f`` defaults to :func:`default_polynomial`.

    ``f`` is a coefficient list ``[f0, ..., f_{r-1}, 1]`` (low degree first).
    """
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if r < 1 or m < 1:
        raise ValueError("r and m must be at least 1")
    pm = p**m
    if f is None:
        f = default_polynomial(p, r)
    f = tuple(int(c) % pm for c in f)
    if len(f) != r + 1 or f[-1] != 1:
        raise ValueError(f"f={list(f)} is not monic of degree {r}")
    if not is_irreducible_mod_p(f, p):
        raise ValueError(f"f={list(f)} is reducible mod {p}")
    key = (p, r, m, f)
    if key not in _RING_CACHE:
        _RING_CACHE[key] = GaloisRing(p, r, m, f)
    return _RING_CACHE[key]


def _smallest_prime_factor(n: int) -> int:
    return next(d for d in range(2, n + 1) if n % d == 0)


def _exact_log(value: int, base: int) -> int:
    e = 0
    while value > 1:
        if value % base:
            raise ValueError(f"{value} is not a power of {base}")
        value //= base
        e += 1
    return e


_TEXT_RE = re.compile(r"GR\(p\^m=(\d+),q=(\d+),f=\[([\d,\s]*)\]\)")


def parse_ring(text: str) -> GaloisRing:
    """Inverse of :meth:`GaloisRing.to_text`; also accepts the shorthand
    names ``Z8``, ``Z25``, ``F4``, ``G16`` and ``GR(16,4)``."""
    text = text.strip()
    m = _TEXT_RE.fullmatch(text.replace(" ", ""))
    if m:
        pm, q = int(m.group(1)), int(m.group(2))
        f = [int(c) for c in m.group(3).split(",") if c.strip()]
        p = _smallest_prime_factor(pm)
        return make_ring(p, _exact_log(q, p), _exact_log(pm, p), f)
    short = re.fullmatch(r"(Z|F)(\d+)", text)
    if short:
        n = int(short.group(2))
        p = _smallest_prime_factor(n)
        e = _exact_log(n, p)
        return make_ring(p, 1, e) if short.group(1) == "Z" else make_ring(p, e, 1)
    if text in ("G16", "GR(16,4)"):
        return make_ring(2, 2, 2)
    gr = re.fullmatch(r"GR\((\d+),(\d+)\)", text.replace(" ", ""))
    if gr:
        order, pm = int(gr.group(1)), int(gr.group(2))
        p = _smallest_prime_factor(pm)
        m = _exact_log(pm, p)
        total = _exact_log(order, p)
        if total % m:
            raise ValueError(f"GR({order},{pm}) is not a Galois ring")
        return make_ring(p, total // m, m)
    raise ValueError(f"cannot parse ring {text!r}")
