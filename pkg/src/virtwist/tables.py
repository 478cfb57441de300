"""Closed-form action tables for three quotient families, used as oracles.

Each function returns the image as a dict over the ``KQuotient`` basis
symbols ``("B", k, m)`` (meaning t^k X^m), so it can be compared with the
generic division-based action directly.

* first order   beta = theta - alpha:  d_k t^n = (alpha + n + k b) t^(k+n)
* degree two    beta = theta^2 - f:    d_k t^n = t^(k+n) (n + k b + theta)
                                      d_k (t^n theta) = t^(k+n) (f + (k b + n) theta)
* degree n      beta = (d/dt)^n - t:   d_k (t^r D^s) = (r + b k) t^(k+r) D^s + t^(k+r+1) D^(s+1)
                                      with D^n replaced by t.

``VARIANTS`` holds plausible misreadings of these tables (a sign flip, a
misplaced factor, an extra power of t).  The tests show each one breaks the
bracket relation, which is what pins the formulas above down.
"""

from .laurent import LaurentPoly
from .scalar import ONE, ZERO, Scalar


def _acc(out, sym, c):
    if not c:
        return
    nv = out.get(sym, ZERO) + c
    if nv:
        out[sym] = nv
    else:
        out.pop(sym, None)


def _add_poly(out, poly, shift, m):
    for e, c in poly.items():
        _acc(out, ("B", e + shift, m), c)


def first_order(alpha, b, k, n):
    """d_k . t^n in K/K(theta - alpha)."""
    alpha = LaurentPoly.coerce(alpha)
    b = Scalar.coerce(b)
    out = {}
    _add_poly(out, alpha, k + n, 0)
    _acc(out, ("B", k + n, 0), n + k * b)
    return out


def first_order_k(alpha, n):
    """theta . t^n = t^n (alpha + n)."""
    out = {}
    _add_poly(out, LaurentPoly.coerce(alpha), n, 0)
    _acc(out, ("B", n, 0), Scalar(n))
    return out


def degree_two(f, b, k, n, s):
    """d_k applied to t^n (s = 0) or t^n theta (s = 1) in K/K(theta^2 - f)."""
    f = LaurentPoly.coerce(f)
    b = Scalar.coerce(b)
    out = {}
    if s == 0:
        _acc(out, ("B", k + n, 0), n + k * b)
        _acc(out, ("B", k + n, 1), ONE)
    elif s == 1:
        _add_poly(out, f, k + n, 0)
        _acc(out, ("B", k + n, 1), k * b + n)
    else:
        raise ValueError("s must be 0 or 1")
    return out


def degree_n(order, b, k, r, s):
    """d_k applied to t^r (d/dt)^s in K/K((d/dt)^order - t)."""
    if not 0 <= s < order:
        raise ValueError("need 0 <= s < order")
    b = Scalar.coerce(b)
    out = {}
    _acc(out, ("B", k + r, s), r + b * k)
    if s + 1 < order:
        _acc(out, ("B", k + r + 1, s + 1), ONE)
    else:
        _acc(out, ("B", k + r + 2, 0), ONE)
    return out


# -- misreadings --------------------------------------------------------------

def _first_order_k_sign(alpha, n):
    out = {}
    _add_poly(out, LaurentPoly.coerce(alpha), n, 0)
    _acc(out, ("B", n, 0), Scalar(-n))
    return out


def _degree_two_constant_kb(f, b, k, n, s):
    if s == 0:
        return degree_two(f, b, k, n, 0)
    out = {}
    _add_poly(out, LaurentPoly.coerce(f), k + n, 0)
    _acc(out, ("B", k + n, 0), k * Scalar.coerce(b))
    _acc(out, ("B", k + n, 1), Scalar(n))
    return out


def _degree_n_shifted_kb(order, b, k, r, s):
    b = Scalar.coerce(b)
    out = {}
    _acc(out, ("B", k + r, s), Scalar(r))
    _acc(out, ("B", k + r + 1, s), b * k)
    if s + 1 < order:
        _acc(out, ("B", k + r + 1, s + 1), ONE)
    else:
        _acc(out, ("B", k + r + 2, 0), ONE)
    return out


VARIANTS = {
    "first_order_k_sign": _first_order_k_sign,
    "degree_two_constant_kb": _degree_two_constant_kb,
    "degree_n_shifted_kb": _degree_n_shifted_kb,
}
