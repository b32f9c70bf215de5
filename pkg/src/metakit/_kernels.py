"""Hot coefficient kernels for truncated power series over a prime field.

Each kernel exists twice: a numba ``@njit`` version and a pure-numpy
fallback.  Set ``METAKIT_DISABLE_NUMBA=1`` in the environment (before import)
to force the fallback path.  Both paths return identical int64 arrays.
"""

import os

import numpy as np

__all__ = [
    "USING_NUMBA",
    "series_mul",
    "series_inv",
    "series_mul_numpy",
    "series_inv_numpy",
]


def series_mul_numpy(a, b, n, q):
    """First ``n`` coefficients of ``a * b`` reduced mod ``q``."""
    out = np.zeros(n, dtype=np.int64)
    if n == 0 or a.size == 0 or b.size == 0:
        return out
    full = np.convolve(a[:n] % q, b[:n] % q)[:n] % q
    out[: full.size] = full
    return out


def series_inv_numpy(a, n, q):
    """First ``n`` coefficients of ``1 / a``; ``a[0]`` must be invertible mod q."""
    out = np.zeros(n, dtype=np.int64)
    if n == 0:
        return out
    a = np.asarray(a, dtype=np.int64) % q
    inv0 = pow(int(a[0]), q - 2, q)
    out[0] = inv0
    for k in range(1, n):
        m = min(k, a.size - 1)
        if m <= 0:
            continue
        # sum_{i=1..m} a[i] * out[k-i]
        s = int(np.dot(a[1 : m + 1], out[k - m : k][::-1]) % q)
        out[k] = (-inv0 * s) % q
    return out


def _mul_loop(a, b, n, q):
    out = np.zeros(n, dtype=np.int64)
    la = min(a.size, n)
    lb = min(b.size, n)
    for i in range(la):
        ai = a[i] % q
        if ai == 0:
            continue
        top = min(lb, n - i)
        for j in range(top):
            out[i + j] = (out[i + j] + ai * (b[j] % q)) % q
    return out


def _inv_loop(a, n, q):
    out = np.zeros(n, dtype=np.int64)
    if n == 0:
        return out
    a0 = a[0] % q
    # modular inverse by Fermat, q prime
    inv0 = 1
    base = a0
    e = q - 2
    while e > 0:
        if e & 1:
            inv0 = (inv0 * base) % q
        base = (base * base) % q
        e >>= 1
    out[0] = inv0
    for k in range(1, n):
        s = 0
        top = min(k, a.size - 1)
        for i in range(1, top + 1):
            s = (s + (a[i] % q) * out[k - i]) % q
        out[k] = (q - (inv0 * s) % q) % q
    return out


USING_NUMBA = False
series_mul = series_mul_numpy
series_inv = series_inv_numpy

if os.environ.get("METAKIT_DISABLE_NUMBA", "0") not in ("1", "true", "yes"):
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is optional
        pass
    else:
        _mul_jit = njit(cache=True)(_mul_loop)
        _inv_jit = njit(cache=True)(_inv_loop)

        def series_mul(a, b, n, q):
            return _mul_jit(a, b, n, q)

        def series_inv(a, n, q):
            return _inv_jit(a, n, q)

        USING_NUMBA = True
