"""Exact products of integer matrices of unbounded size.

Entries are split into fixed-width limbs small enough that every limb
product can be formed with a float64 BLAS call without rounding (all partial
sums stay below 2**53).  The limb products are recombined with Python
integers.  Results come back as int64 arrays while every entry fits
comfortably, and as object arrays of Python ints otherwise.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

_FLOAT_BITS = 52
_INT64_SAFE_BITS = 62


def _max_bits(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    if a.dtype == object:
        return max(abs(int(v)).bit_length() for v in a.flat)
    lo, hi = int(a.min()), int(a.max())
    return max(abs(lo), abs(hi)).bit_length()


def _is_integral(a: np.ndarray) -> bool:
    if a.dtype.kind in "biu":
        return True
    if a.dtype == object:
        return all(isinstance(v, (int, np.integer)) for v in a.flat)
    return False


def as_exact(a) -> np.ndarray:
    """Normalise an integer array: int64 if every entry fits, else object."""
    a = np.asarray(a)
    if a.dtype.kind in "bu" and a.dtype.itemsize < 8 or a.dtype == np.bool_:
        return a.astype(np.int64)
    if a.dtype == np.int64:
        return a
    if a.dtype.kind in "iu":
        if a.dtype == np.uint64 and a.size and int(a.max()) >= 1 << 63:
            return a.astype(object)
        return a.astype(np.int64)
    if a.dtype == object:
        if _max_bits(a) <= _INT64_SAFE_BITS:
            return a.astype(np.int64)
        return a
    raise TypeError(f"not an integer array: dtype {a.dtype}")


def _limbs(a: np.ndarray, width: int, count: int) -> list[np.ndarray]:
    """Split a non-negative integer array into ``count`` float64 limbs."""
    if count == 1:
        return [a.astype(np.float64)]
    mask = (1 << width) - 1
    if a.dtype != object:
        a = a.astype(np.int64)
        return [((a >> (width * j)) & mask).astype(np.float64) for j in range(count)]
    out = []
    for j in range(count):
        out.append(np.array(((a >> (width * j)) & mask), dtype=np.float64))
    return out


def _nonneg_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    inner = a.shape[-1]
    log_inner = max(inner, 1).bit_length()
    budget = _FLOAT_BITS - log_inner
    ba, bb = max(_max_bits(a), 1), max(_max_bits(b), 1)
    if ba + bb <= budget:
        prod = a.astype(np.float64) @ b.astype(np.float64)
        return np.rint(prod).astype(np.int64)
    # keep the narrower operand whole when it leaves room for the other
    if ba <= budget // 2:
        wa, wb = ba, budget - ba
    elif bb <= budget // 2:
        wa, wb = budget - bb, bb
    else:
        wa = wb = budget // 2
    na, nb = -(-ba // wa), -(-bb // wb)
    la, lb = _limbs(a, wa, na), _limbs(b, wb, nb)
    shape = (a.shape[0], b.shape[-1]) if b.ndim == 2 else (a.shape[0],)
    groups: dict[int, np.ndarray] = {}
    for i, x in enumerate(la):
        for j, y in enumerate(lb):
            p = np.rint(x @ y).astype(np.int64)
            s = wa * i + wb * j
            if s in groups:
                groups[s] = groups[s] + p
            else:
                groups[s] = p
    total = np.zeros(shape, dtype=object)
    for s, p in groups.items():
        total = total + (p.astype(object) << s)
    return as_exact(total)


def matmul(a, b) -> np.ndarray:
    """Exact ``a @ b`` for integer matrices (``b`` may be a vector).

    Arrays holding Fractions fall back to object-dtype arithmetic.
    """
    a, b = np.asarray(a), np.asarray(b)
    if a.ndim != 2 or b.ndim not in (1, 2) or a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
    if not (_is_integral(a) and _is_integral(b)):
        return np.dot(a.astype(object), b.astype(object))
    a, b = as_exact(a), as_exact(b)
    if a.size == 0 or b.size == 0:
        shape = (a.shape[0], b.shape[1]) if b.ndim == 2 else (a.shape[0],)
        return np.zeros(shape, dtype=np.int64)
    a_neg = bool((a < 0).any())
    b_neg = bool((b < 0).any())
    if not a_neg and not b_neg:
        return _nonneg_matmul(a, b)
    ap, an = np.where(a > 0, a, 0), np.where(a < 0, -a, 0)
    bp, bn = np.where(b > 0, b, 0), np.where(b < 0, -b, 0)
    out = (_nonneg_matmul(ap, bp).astype(object) + _nonneg_matmul(an, bn).astype(object)
           - _nonneg_matmul(ap, bn).astype(object) - _nonneg_matmul(an, bp).astype(object))
    return as_exact(out)


def matpow(a, k: int) -> np.ndarray:
    """Exact ``a**k`` by repeated squaring (k >= 0)."""
    a = as_exact(a)
    result = None
    base = a
    while k:
        if k & 1:
            result = base if result is None else matmul(result, base)
        k >>= 1
        if k:
            base = matmul(base, base)
    if result is None:
        return np.eye(a.shape[0], dtype=np.int64)
    return result


def total(a) -> int:
    """Exact sum of every entry as a Python int (or Fraction)."""
    a = np.asarray(a)
    if a.dtype == object:
        return sum(a.flat, 0)
    return sum(int(v) for v in a.ravel()) if a.size else 0


def trace(a) -> int:
    return total(np.diagonal(np.asarray(a)))


def hadamard(a, b) -> np.ndarray:
    """Exact elementwise product."""
    a, b = as_exact(a), as_exact(b)
    if a.dtype != object and b.dtype != object and _max_bits(a) + _max_bits(b) <= _INT64_SAFE_BITS:
        return a * b
    return as_exact(a.astype(object) * b.astype(object))


def frobenius(a, b) -> int | Fraction:
    """Exact ``sum(a * b)``."""
    a, b = np.asarray(a), np.asarray(b)
    if a.dtype != object and b.dtype != object:
        if _max_bits(a) + _max_bits(b) + max(a.size, 1).bit_length() <= _INT64_SAFE_BITS:
            return int((a.astype(np.int64) * b.astype(np.int64)).sum())
    return sum((a.astype(object) * b.astype(object)).flat, 0)
