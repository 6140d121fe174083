"""Pure-Python implementations of the series kernels.

Every function here has a compiled twin in ``_ckernels.pyx`` with the same
signature and results; ``modvals.kernels`` picks one at import time.
"""

from fractions import Fraction

API_VERSION = 2


def _inverse(x):
    if type(x) is int:
        return x if x in (1, -1) else Fraction(1, x)
    return 1 / x


def conv(a, b, n):
    """Truncated Cauchy product: c[k] = sum a[i] b[k-i] for k < n."""
    la, lb = len(a), len(b)
    out = [0] * n
    for i in range(min(la, n)):
        x = a[i]
        if not x:
            continue
        top = min(lb, n - i)
        for j in range(top):
            y = b[j]
            if y:
                out[i + j] += x * y
    return out


def conv_int(a, b, n):
    return conv(a, b, n)


def recip(a, n):
    """Reciprocal of a power series whose constant term is invertible."""
    out = [0] * n
    if n == 0:
        return out
    inv0 = _inverse(a[0])
    out[0] = inv0
    la = len(a)
    for m in range(1, n):
        acc = 0
        for k in range(1, min(m, la - 1) + 1):
            ak = a[k]
            if ak:
                acc += ak * out[m - k]
        out[m] = -acc * inv0
    return out


def euler_product(s, n):
    """Coefficients of exp(-sum s[k] q^k / k), via m a(m) = -sum s(k) a(m-k).

    ``s[0]`` is ignored.  With integer input the divisions are exact whenever
    the series is a product of integral powers of (1 - q^k).
    """
    out = [0] * n
    if n == 0:
        return out
    out[0] = 1
    for m in range(1, n):
        acc = 0
        for k in range(1, m + 1):
            sk = s[k]
            if sk:
                acc += sk * out[m - k]
        if isinstance(acc, int):
            qt, r = divmod(-acc, m)
            if r:
                raise ArithmeticError("non-integral Euler product coefficient")
            out[m] = qt
        else:
            out[m] = -acc / m
    return out


def log_derivative(a, n):
    """Inverse of euler_product: s(m) = -m a(m) - sum_{k<m} s(k) a(m-k).

    Requires a[0] == 1.  Returns a list with s[0] = 0.
    """
    s = [0] * n
    la = len(a)
    for m in range(1, n):
        acc = -m * a[m] if m < la else 0
        for k in range(1, m):
            if m - k < la:
                x = a[m - k]
                if x:
                    acc -= s[k] * x
        s[m] = acc
    return s
