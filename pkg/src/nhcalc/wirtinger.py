"""
Scalar functions of ``z = x + iy`` together with their Wirtinger partials.

A :class:`WirtingerFunction` bundles a value map with a map
``(a, b, z) -> d^a dbar^b f(z)``, where ``d = (d/dx - i d/dy)/2`` and
``dbar = (d/dx + i d/dy)/2``.  Both maps accept scalars or numpy arrays.
Builtins carry closed-form partials; :func:`numeric_partials` is the
finite-difference fallback for user callables.
"""

from __future__ import annotations

from math import comb, factorial
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import DomainError

__all__ = [
    "WirtingerFunction",
    "falling_factorial",
    "tau",
    "monomial",
    "zzbar_poly",
    "holo_poly",
    "abs_fn",
    "arg_fn",
    "sign_fn",
    "builtin",
    "from_callable",
    "product",
    "constant",
    "numeric_partials",
    "real_extension",
    "central_difference_weights",
]


def falling_factorial(s: float, k: int) -> float:
    """``s (s-1) ... (s-k+1)``; equals 1 for ``k = 0``."""
    out = 1.0
    for i in range(k):
        out *= s - i
    return out


class WirtingerFunction:
    """
    A scalar function with Wirtinger partials.

    Parameters
    ----------
    value : callable
        ``value(z)`` for scalar or array `z`.
    partial : callable
        ``partial(a, b, z)`` returning ``d^a dbar^b f(z)``.
    max_order : int or None
        Largest total order ``a + b`` that `partial` supports.  ``None``
        means unlimited.
    name : str
    excluded : callable, optional
        ``excluded(z) -> bool array``; points where the function is not
        smooth.  Evaluation there raises :class:`DomainError`.
    terms : dict, optional
        For polynomials in ``z`` and ``conj(z)``: ``{(k, m): coefficient}``.
        Enables exact arithmetic on polynomials and finite Taylor orders.
    """

    def __init__(self, value: Callable, partial: Callable, max_order: int | None = None,
                 name: str = "f", excluded: Callable | None = None,
                 terms: dict | None = None, domain: str = "entire plane"):
        self._value = value
        self._partial = partial
        self.max_order = max_order
        self.name = name
        self._excluded = excluded
        self.terms = terms
        self.domain = domain

    def __repr__(self) -> str:
        return f"WirtingerFunction({self.name})"

    @property
    def is_polynomial(self) -> bool:
        return self.terms is not None

    @property
    def degree(self) -> int | None:
        """Total degree in ``(z, conj z)`` for polynomials, otherwise ``None``."""
        if self.terms is None:
            return None
        live = [k + m for (k, m), c in self.terms.items() if c != 0]
        return max(live, default=0)

    @property
    def is_holomorphic(self) -> bool:
        return self.terms is not None and all(m == 0 for (k, m), c in self.terms.items() if c != 0)

    def check_domain(self, z) -> None:
        if self._excluded is None:
            return
        bad = np.asarray(self._excluded(np.asarray(z)))
        if np.any(bad):
            where = np.asarray(z).ravel()[np.flatnonzero(bad.ravel())[0]]
            raise DomainError(f"{self.name} is not smooth at {complex(where)} ({self.domain})")

    def check_order(self, order: int) -> None:
        if self.max_order is not None and order > self.max_order:
            raise DomainError(
                f"{self.name} provides partials up to order {self.max_order}, {order} requested")

    def __call__(self, z):
        self.check_domain(z)
        return self._value(z)

    def partial(self, a: int, b: int, z):
        """``d^a dbar^b f(z)``."""
        if a < 0 or b < 0:
            raise ValueError("derivative orders must be nonnegative")
        self.check_order(a + b)
        self.check_domain(z)
        if a == 0 and b == 0:
            return self._value(z)
        return self._partial(a, b, z)

    def d(self, z, order: int = 1):
        return self.partial(order, 0, z)

    def dbar(self, z, order: int = 1):
        return self.partial(0, order, z)

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, WirtingerFunction):
            other = constant(other)
        terms = None
        if self.terms is not None and other.terms is not None:
            terms = dict(self.terms)
            for key, c in other.terms.items():
                terms[key] = terms.get(key, 0) + c
            return zzbar_poly(terms, name=f"({self.name} + {other.name})")
        f, g = self, other
        return WirtingerFunction(
            lambda z: f._value(z) + g._value(z),
            lambda a, b, z: f._partial(a, b, z) + g._partial(a, b, z),
            _min_order(f.max_order, g.max_order),
            f"({f.name} + {g.name})",
            _union_excluded(f, g),
        )

    __radd__ = __add__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, WirtingerFunction):
            c = complex(other)
            if self.terms is not None:
                return zzbar_poly({k: c * v for k, v in self.terms.items()}, name=f"{c}*{self.name}")
            f = self
            return WirtingerFunction(
                lambda z: c * f._value(z),
                lambda a, b, z: c * f._partial(a, b, z),
                f.max_order, f"{c}*{f.name}", f._excluded,
            )
        return product(self, other)

    __rmul__ = __mul__


def _min_order(p, q):
    if p is None:
        return q
    if q is None:
        return p
    return min(p, q)


def _union_excluded(f, g):
    if f._excluded is None:
        return g._excluded
    if g._excluded is None:
        return f._excluded
    return lambda z: np.logical_or(f._excluded(z), g._excluded(z))


def _full(f, a, b, z):
    return f._value(z) if a == 0 and b == 0 else f._partial(a, b, z)


def product(f: WirtingerFunction, g: WirtingerFunction) -> WirtingerFunction:
    """Pointwise product; partials by the two-variable Leibniz rule."""

    def partial(a, b, z):
        total = 0
        for i in range(a + 1):
            for j in range(b + 1):
                total = total + comb(a, i) * comb(b, j) * _full(f, i, j, z) * _full(g, a - i, b - j, z)
        return total

    return WirtingerFunction(
        lambda z: f._value(z) * g._value(z), partial,
        _min_order(f.max_order, g.max_order), f"{f.name}*{g.name}", _union_excluded(f, g),
    )


# polynomial builtins ------------------------------------------------------

def zzbar_poly(terms, name: str | None = None) -> WirtingerFunction:
    """
    Polynomial ``sum c_km z^k conj(z)^m``.

    `terms` is a mapping ``{(k, m): c}`` or an iterable of ``(k, m, c)``.
    """
    if not isinstance(terms, dict):
        acc: dict = {}
        for k, m, c in terms:
            acc[(int(k), int(m))] = acc.get((int(k), int(m)), 0) + complex(c)
        terms = acc
    terms = {(int(k), int(m)): complex(c) for (k, m), c in terms.items()}
    for k, m in terms:
        if k < 0 or m < 0:
            raise ValueError("monomial exponents must be nonnegative")

    def partial(a, b, z):
        z = np.asarray(z, dtype=np.complex128)
        zc = np.conj(z)
        out = np.zeros_like(z)
        for (k, m), c in terms.items():
            if a > k or b > m or c == 0:
                continue
            coef = c * falling_factorial(k, a) * falling_factorial(m, b)
            out = out + coef * z ** (k - a) * zc ** (m - b)
        return out if out.ndim else complex(out)

    if name is None:
        name = " + ".join(f"({c:g})z^{k}zbar^{m}" for (k, m), c in sorted(terms.items())) or "0"
    return WirtingerFunction(lambda z: partial(0, 0, z), partial, None, name, terms=terms)


def constant(c) -> WirtingerFunction:
    return zzbar_poly({(0, 0): complex(c)}, name=f"{complex(c)}")


def monomial(k: int, m: int) -> WirtingerFunction:
    """``z^k conj(z)^m``."""
    return zzbar_poly({(k, m): 1.0}, name=f"z^{k}zbar^{m}")


def holo_poly(coeffs: Sequence) -> WirtingerFunction:
    """Holomorphic polynomial with ascending coefficients ``c_0 + c_1 z + ...``."""
    return zzbar_poly({(k, 0): complex(c) for k, c in enumerate(coeffs)},
                      name="holo_poly(" + ", ".join(f"{complex(c):g}" for c in coeffs) + ")")


def tau() -> WirtingerFunction:
    """Complex conjugation ``z -> conj(z)``."""
    return zzbar_poly({(0, 1): 1.0}, name="tau")


# non-polynomial builtins ---------------------------------------------------

_ABS_ORDER = 8


def _radial_power_partial(s: float, a: int, b: int, z):
    # d^a dbar^b (z zbar)^s = s^(a) s^(b) (z zbar)^s z^-a zbar^-b  (falling factorials)
    z = np.asarray(z, dtype=np.complex128)
    r2 = (z * np.conj(z)).real
    out = falling_factorial(s, a) * falling_factorial(s, b) * r2 ** s * z ** (-a) * np.conj(z) ** (-b)
    return out if out.ndim else complex(out)


def _at_origin(z):
    return np.asarray(z) == 0


def abs_fn() -> WirtingerFunction:
    """``|z| = (z conj z)^(1/2)``, smooth off the origin."""
    return WirtingerFunction(
        lambda z: _radial_power_partial(0.5, 0, 0, z),
        lambda a, b, z: _radial_power_partial(0.5, a, b, z),
        _ABS_ORDER, "abs", _at_origin, domain="plane minus the origin",
    )


def _arg_partial(a, b, z):
    # z * F with F = (z zbar)^(-1/2); only d acts on the factor z
    out = np.asarray(z) * _radial_power_partial(-0.5, a, b, z)
    if a:
        out = out + a * _radial_power_partial(-0.5, a - 1, b, z)
    return out if np.ndim(out) else complex(out)


def arg_fn() -> WirtingerFunction:
    """``z / |z|``, smooth off the origin."""
    return WirtingerFunction(
        lambda z: _arg_partial(0, 0, z), _arg_partial,
        _ABS_ORDER, "arg", _at_origin, domain="plane minus the origin",
    )


def sign_fn() -> WirtingerFunction:
    """``+1`` on the open right half-plane, ``-1`` on the open left half-plane."""

    def value(z):
        out = np.where(np.real(z) > 0, 1.0 + 0j, -1.0 + 0j)
        return out if out.ndim else complex(out)

    def partial(a, b, z):
        out = np.zeros(np.shape(z), dtype=np.complex128)
        return out if out.ndim else 0j

    return WirtingerFunction(value, partial, None, "sign",
                             lambda z: np.real(z) == 0, domain="plane minus the imaginary axis")


def builtin(name: str, **params) -> WirtingerFunction:
    """
    Look up a builtin by name.

    Names: ``tau``, ``abs`` (or ``abs_fn``), ``arg``, ``sign``,
    ``monomial`` (``k``, ``m``), ``holo_poly`` (``coeffs``),
    ``zzbar_poly`` (``terms``).
    """
    key = name.removesuffix("_fn")
    if key == "tau":
        return tau()
    if key == "abs":
        return abs_fn()
    if key == "arg":
        return arg_fn()
    if key == "sign":
        return sign_fn()
    if key == "monomial":
        return monomial(int(params["k"]), int(params["m"]))
    if key == "holo_poly":
        return holo_poly(params["coeffs"])
    if key == "zzbar_poly":
        return zzbar_poly(params["terms"])
    raise ValueError(f"unknown builtin function {name!r}")


# finite differences --------------------------------------------------------

def central_difference_weights(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Offsets and weights of the second-order central stencil for ``d^order/dx^order``."""
    if order == 0:
        return np.array([0]), np.array([1.0])
    radius = (order + 1) // 2
    offsets = np.arange(-radius, radius + 1)
    vander = np.vander(offsets.astype(float), increasing=True).T
    rhs = np.zeros(len(offsets))
    rhs[order] = factorial(order)
    return offsets, np.linalg.solve(vander, rhs)


def _xy_expansion(a: int, b: int) -> dict:
    """Coefficients of ``x^p y^q`` in ``(x - iy)^a (x + iy)^b / 2^(a+b)``."""
    poly = np.zeros((1, 1), dtype=np.complex128)
    poly[0, 0] = 1.0
    for sign, count in ((-1j, a), (1j, b)):
        for _ in range(count):
            new = np.zeros((poly.shape[0] + 1, poly.shape[1] + 1), dtype=np.complex128)
            new[1:, :-1] += poly
            new[:-1, 1:] += sign * poly
            poly = new
    poly /= 2 ** (a + b)
    return {(p, q): poly[p, q] for p in range(poly.shape[0]) for q in range(poly.shape[1]) if poly[p, q] != 0}


def _eval(f, pts):
    try:
        out = np.asarray(f(pts), dtype=np.complex128)
        if out.shape == pts.shape:
            return out
    except (TypeError, ValueError):
        pass
    return np.array([complex(f(complex(p))) for p in pts.ravel()]).reshape(pts.shape)


def numeric_partials(f: Callable, z: complex, a: int, b: int, h: float | None = None) -> complex:
    """
    Central finite-difference estimate of ``d^a dbar^b f(z)``.

    The Wirtinger operator is expanded into ``d/dx`` and ``d/dy`` partials,
    each approximated by a tensor product of second-order central stencils,
    so the truncation error is ``O(h^2)`` for ``f`` of class
    ``C^(a+b+2)``.  Round-off grows like ``eps / h^(a+b)``; with the default
    step, orders up to two are reliable to about ``1e-6``.

    Parameters
    ----------
    f : callable
        Value-only function of a complex argument.
    z : complex
    a, b : int
        Orders of ``d`` and ``dbar``.
    h : float, optional
        Grid spacing, default ``1e-4 * max(1, |z|)``.
    """
    z = complex(z)
    if h is None:
        h = 1e-4 * max(1.0, abs(z))
    if h <= 0:
        raise ValueError("step must be positive")
    total = 0j
    for (p, q), c in _xy_expansion(a, b).items():
        ox, wx = central_difference_weights(p)
        oy, wy = central_difference_weights(q)
        pts = z + h * (ox[:, None] + 1j * oy[None, :])
        vals = _eval(f, pts)
        total += c * (wx @ vals @ wy) / h ** (p + q)
    return total


def from_callable(fn: Callable, max_order: int = 2, h: float | None = None,
                  name: str = "user", excluded: Callable | None = None) -> WirtingerFunction:
    """Wrap a value-only callable; partials come from :func:`numeric_partials`."""

    def partial(a, b, z):
        zz = np.asarray(z, dtype=np.complex128)
        out = np.array([numeric_partials(fn, p, a, b, h) for p in zz.ravel()]).reshape(zz.shape)
        return out if out.ndim else complex(out)

    return WirtingerFunction(fn, partial, max_order, name, excluded)


# real-variable extension -------------------------------------------------

def real_extension(derivs: Iterable, phi: Callable | None = None) -> WirtingerFunction:
    """
    Extend a smooth function of a real variable to a neighbourhood of real points.

    Near each point ``lam`` the extension is
    ``taylor(zeta) + phi(lam + Re zeta) - taylor(Re zeta)`` with
    ``zeta = z - lam`` and ``taylor`` the Taylor polynomial built from the
    supplied derivatives.  Its ``d``-derivatives at ``lam`` reproduce the
    real derivatives.  Without `phi` the middle and last terms are dropped,
    which leaves the same partials at ``lam`` up to the supplied order.

    Parameters
    ----------
    derivs : iterable of (lam, values)
        ``values[nu]`` is the ``nu``-th real derivative at the real point ``lam``.
    phi : callable, optional
        The real function itself.  Enables evaluation away from the points;
        partials there are then finite-difference estimates.
    """
    pts, taylors = [], []
    for lam, values in derivs:
        lam_c = complex(lam)
        if lam_c.imag != 0:
            raise DomainError(f"real extension needs real points, got {lam_c}")
        vals = [complex(v) for v in values]
        if not vals or not all(np.isfinite(v) for v in vals):
            raise ValueError("derivative values must be finite and nonempty")
        pts.append(lam_c.real)
        taylors.append(holo_poly([v / factorial(nu) for nu, v in enumerate(vals)]))
    if not pts:
        raise ValueError("at least one point is required")
    if len(set(pts)) != len(pts):
        raise ValueError("points must be distinct")
    pts_arr = np.array(pts)

    def nearest(z):
        return np.abs(np.asarray(z)[..., None] - pts_arr).argmin(axis=-1)

    def value(z):
        z = np.asarray(z, dtype=np.complex128)
        idx = nearest(z)
        out = np.empty_like(z)
        for j, lam in enumerate(pts):
            sel = idx == j
            zeta = z[sel] - lam
            v = taylors[j]._value(zeta)
            if phi is not None:
                x = zeta.real
                v = v + np.array([complex(phi(lam + xi)) for xi in x]) - taylors[j]._value(x + 0j)
            out[sel] = v
        return out if out.ndim else complex(out)

    def partial(a, b, z):
        z = np.asarray(z, dtype=np.complex128)
        idx = nearest(z)
        out = np.empty_like(z)
        for j, lam in enumerate(pts):
            sel = idx == j
            zeta = z[sel] - lam
            exact = np.zeros(zeta.shape, dtype=bool) if phi is not None else np.ones(zeta.shape, dtype=bool)
            if phi is not None and a + b <= len(taylors[j].terms) - 1:
                exact = zeta == 0
            vals = np.empty(zeta.shape, dtype=np.complex128)
            if exact.any():
                vals[exact] = taylors[j]._partial(a, b, zeta[exact]) if b == 0 else 0
            for k in np.flatnonzero(~exact):
                vals[k] = numeric_partials(value, z[sel][k], a, b)
            out[sel] = vals
        return out if out.ndim else complex(out)

    return WirtingerFunction(value, partial, None, "real_extension",
                             domain=f"neighbourhoods of {pts}")
