"""Exact truncated power series over arbitrary-precision integers.

A TruncatedIntSeries holds the coefficients of a polynomial prefix
a_0 + a_1 z + ... + a_N z^N of some integer power series.  Degrees beyond the
order N are unknown, not zero, so every operation truncates its result to the
minimum order of its inputs and never invents coefficients.

The operation set is deliberately small: addition, truncating multiplication,
the substitution z -> z^2 that counts unordered pairs, and exact halving.
These four suffice to iterate the tree-counting recurrences, whose combined
numerator y^2 + y(z^2) always has even coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import OddCoefficient

# above this output order, multiplication packs coefficients into one big
# integer so CPython's subquadratic bignum product does the convolution
_SCHOOLBOOK_MAX_ORDER = 64


@dataclass(frozen=True)
class TruncatedIntSeries:
    """Polynomial prefix with exact integer coefficients, indexed from degree 0."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise ValueError("a series carries at least the degree-0 coefficient")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, degree: int) -> int:
        return self.coeffs[degree]


def series_from(coeffs, order: int | None = None) -> TruncatedIntSeries:
    """Build a series from any integer iterable, zero-padding up to order."""
    cs = [int(c) for c in coeffs]
    if order is not None:
        if order < 0:
            raise ValueError("order must be nonnegative")
        if len(cs) > order + 1:
            cs = cs[: order + 1]
        else:
            cs.extend(0 for _ in range(order + 1 - len(cs)))
    elif not cs:
        cs = [0]
    return TruncatedIntSeries(tuple(cs))


def z_series(order: int) -> TruncatedIntSeries:
    """The monomial z truncated to the given order."""
    return series_from([0, 1], order)


def series_add(a: TruncatedIntSeries, b: TruncatedIntSeries) -> TruncatedIntSeries:
    n = min(a.order, b.order)
    return TruncatedIntSeries(tuple(a.coeffs[i] + b.coeffs[i] for i in range(n + 1)))


def _mul_schoolbook(a: tuple[int, ...], b: tuple[int, ...], n: int) -> list[int]:
    out = [0] * (n + 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j in range(min(len(b), n - i + 1)):
            out[i + j] += ai * b[j]
    return out


def _mul_packed(a: tuple[int, ...], b: tuple[int, ...], n: int) -> list[int]:
    # Kronecker substitution: evaluate both polynomials at 2^(8*slot) and let
    # one big-integer product perform the convolution.  Valid only for
    # nonnegative coefficients; the slot is sized so columns cannot overflow.
    max_a = max(a)
    max_b = max(b)
    if max_a == 0 or max_b == 0:
        return [0] * (n + 1)
    slot_bits = max_a.bit_length() + max_b.bit_length() + min(len(a), len(b)).bit_length() + 1
    slot = (slot_bits + 7) // 8
    pa = b"".join(c.to_bytes(slot, "little") for c in a)
    pb = b"".join(c.to_bytes(slot, "little") for c in b)
    prod = int.from_bytes(pa, "little") * int.from_bytes(pb, "little")
    raw = prod.to_bytes((n + 2) * slot + (prod.bit_length() + 7) // 8, "little")
    return [int.from_bytes(raw[i * slot : (i + 1) * slot], "little") for i in range(n + 1)]


def series_mul(a: TruncatedIntSeries, b: TruncatedIntSeries) -> TruncatedIntSeries:
    n = min(a.order, b.order)
    ca = a.coeffs[: n + 1]
    cb = b.coeffs[: n + 1]
    if n <= _SCHOOLBOOK_MAX_ORDER or min(ca) < 0 or min(cb) < 0:
        out = _mul_schoolbook(ca, cb, n)
    else:
        out = _mul_packed(ca, cb, n)
    return TruncatedIntSeries(tuple(out))


def polya_substitute(a: TruncatedIntSeries) -> TruncatedIntSeries:
    """Return a(z^2) truncated to order(a)."""
    n = a.order
    out = [0] * (n + 1)
    for k in range(n // 2 + 1):
        out[2 * k] = a.coeffs[k]
    return TruncatedIntSeries(tuple(out))


def half_of(a: TruncatedIntSeries) -> TruncatedIntSeries:
    """Exact coefficientwise division by 2; odd coefficients are a caller bug."""
    for i, c in enumerate(a.coeffs):
        if c & 1:
            raise OddCoefficient(i)
    return TruncatedIntSeries(tuple(c >> 1 for c in a.coeffs))
