"""Rank of a matrix over a prime field F_p with p < 2**62.

Both backends run the same elimination with Montgomery products in uint64
arithmetic, so no 128-bit integers are needed.  A Montgomery product
returns ``a*b*2**-64 mod p``; every row update therefore rescales the
updated row by the unit ``2**-64``, which leaves the rank unchanged and
lets us skip the conversion into and out of Montgomery form entirely.

The numba backend is used when numba imports and ``LCRIG_DISABLE_NUMBA``
is unset; the numpy backend vectorizes each pivot step over the trailing
block.
"""

import numpy as np

from ._config import numba_disabled

MAX_MODULUS = 1 << 62

_M32 = np.uint64(0xFFFFFFFF)
_S32 = np.uint64(32)
_ZERO = np.uint64(0)
_ONE = np.uint64(1)


def neg_inverse_2_64(p: int) -> int:
    """Return ``-p**-1 mod 2**64`` for odd ``p``."""
    if p % 2 == 0:
        raise ValueError("modulus must be odd")
    return (-pow(p, -1, 1 << 64)) % (1 << 64)


# --------------------------------------------------------------------------
# numpy backend

def _mulhi_np(a, b):
    a0 = a & _M32
    a1 = a >> _S32
    b0 = b & _M32
    b1 = b >> _S32
    p00 = a0 * b0
    p01 = a0 * b1
    p10 = a1 * b0
    p11 = a1 * b1
    mid = (p00 >> _S32) + (p01 & _M32) + (p10 & _M32)
    return p11 + (p01 >> _S32) + (p10 >> _S32) + (mid >> _S32)


def _redc_np(a, b, p, pneg):
    lo = a * b
    hi = _mulhi_np(a, b)
    m = lo * pneg
    t = hi + _mulhi_np(m, p) + (lo != _ZERO).astype(np.uint64)
    return np.where(t >= p, t - p, t)


def _submod_np(a, b, p):
    return np.where(a >= b, a - b, a + (p - b))


def rank_mod_p_numpy(A, p: int) -> int:
    A = np.array(A, dtype=np.uint64, copy=True)
    rows, cols = A.shape
    pu = np.uint64(p)
    pneg = np.uint64(neg_inverse_2_64(p))
    r = 0
    with np.errstate(over="ignore"):
        for c in range(cols):
            if r == rows:
                break
            nz = np.flatnonzero(A[r:, c])
            if nz.size == 0:
                continue
            piv = r + int(nz[0])
            if piv != r:
                A[[r, piv]] = A[[piv, r]]
            below = r + 1 + np.flatnonzero(A[r + 1:, c])
            if below.size:
                pv = A[r, c]
                f = A[below, c][:, None]
                left = _redc_np(A[below, c:], pv, pu, pneg)
                right = _redc_np(A[r, c:][None, :], f, pu, pneg)
                A[below, c:] = _submod_np(left, right, pu)
            r += 1
    return r


# --------------------------------------------------------------------------
# numba backend

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None

if njit is not None:

    @njit(cache=True)
    def _mulhi_nb(a, b):
        a0 = a & _M32
        a1 = a >> _S32
        b0 = b & _M32
        b1 = b >> _S32
        p00 = a0 * b0
        p01 = a0 * b1
        p10 = a1 * b0
        p11 = a1 * b1
        mid = (p00 >> _S32) + (p01 & _M32) + (p10 & _M32)
        return p11 + (p01 >> _S32) + (p10 >> _S32) + (mid >> _S32)

    @njit(cache=True)
    def _redc_nb(a, b, p, pneg):
        lo = a * b
        hi = _mulhi_nb(a, b)
        m = lo * pneg
        t = hi + _mulhi_nb(m, p)
        if lo != _ZERO:
            t += _ONE
        if t >= p:
            t -= p
        return t

    @njit(cache=True)
    def _rank_nb(A, p, pneg):
        rows, cols = A.shape
        r = 0
        for c in range(cols):
            if r == rows:
                break
            piv = -1
            for i in range(r, rows):
                if A[i, c] != _ZERO:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(c, cols):
                    tmp = A[r, j]
                    A[r, j] = A[piv, j]
                    A[piv, j] = tmp
            pv = A[r, c]
            for i in range(r + 1, rows):
                f = A[i, c]
                if f == _ZERO:
                    continue
                for j in range(c, cols):
                    x = _redc_nb(A[i, j], pv, p, pneg)
                    y = _redc_nb(A[r, j], f, p, pneg)
                    if x >= y:
                        A[i, j] = x - y
                    else:
                        A[i, j] = x + (p - y)
            r += 1
        return r


def rank_mod_p_numba(A, p: int) -> int:
    if njit is None:
        raise RuntimeError("numba is not available")
    A = np.array(A, dtype=np.uint64, copy=True)
    if A.shape[0] == 0 or A.shape[1] == 0:
        return 0
    return int(_rank_nb(A, np.uint64(p), np.uint64(neg_inverse_2_64(p))))


def active_backend() -> str:
    if njit is None or numba_disabled():
        return "numpy"
    return "numba"


def rank_mod_p(A, p: int, backend: str | None = None) -> int:
    """Rank of ``A`` (entries already reduced mod ``p``) over F_p.

    ``p`` must be an odd prime below 2**62.  ``backend`` is ``"numba"``,
    ``"numpy"`` or None for the environment default.
    """
    if not (2 < p < MAX_MODULUS):
        raise ValueError(f"modulus must lie in (2, 2**62), got {p}")
    backend = backend or active_backend()
    if backend == "numba":
        return rank_mod_p_numba(A, p)
    if backend == "numpy":
        return rank_mod_p_numpy(A, p)
    raise ValueError(f"unknown backend {backend!r}")
