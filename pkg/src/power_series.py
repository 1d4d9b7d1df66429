"""
Truncated formal power series over the rationals, the catalog of generating functions
and residual checks of the functional equations at rational (u, v) points.
"""
import logging
import time
from fractions import Fraction
from typing import Iterable

from recurrences import (a_poly, a_triangle, b_poly, b_triangle, c_poly, c_triangle, e_poly,
                         gentree_levels)

logger = logging.getLogger(__name__)


class NonUnitDivisor(ArithmeticError):
    pass


class BadSqrtConstantTerm(ArithmeticError):
    pass


class OrderMismatch(ArithmeticError):
    pass


class SingularParameter(ValueError):
    pass


class UnknownSeries(ValueError):
    pass


class MissingParameter(ValueError):
    pass


def parse_fraction(text) -> Fraction:
    """Read '1/2', '-3' or '0.25' as an exact rational."""
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"Cannot parse rational number '{text}'") from None


class FPS:
    """Power series truncated after x^order; coefficients past the order are never read."""

    __slots__ = ('coefficients', 'order')

    def __init__(self, coefficients: Iterable = (), order: int = 0):
        if order < 0:
            raise ValueError(f"Series order must be non-negative, got {order}")
        coefficients = [Fraction(c) for c in coefficients][:order + 1]
        coefficients += [Fraction(0)] * (order + 1 - len(coefficients))
        self.coefficients = tuple(coefficients)
        self.order = order

    @classmethod
    def constant(cls, value, order: int) -> "FPS":
        return cls([value], order)

    @classmethod
    def zero(cls, order: int) -> "FPS":
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> "FPS":
        return cls([1], order)

    @classmethod
    def x(cls, order: int) -> "FPS":
        return cls([0, 1], order)

    @classmethod
    def geometric(cls, ratio, order: int) -> "FPS":
        """1 / (1 - ratio*x)."""
        ratio = Fraction(ratio)
        return cls([ratio ** n for n in range(order + 1)], order)

    def __getitem__(self, n: int) -> Fraction:
        return self.coefficients[n]

    def __len__(self):
        return self.order + 1

    def __iter__(self):
        return iter(self.coefficients)

    def __repr__(self):
        terms = [f"{c}*x^{n}" for n, c in enumerate(self.coefficients) if c]
        return f"FPS({' + '.join(terms) or '0'}; O(x^{self.order + 1}))"

    def __eq__(self, other):
        if isinstance(other, FPS):
            return self.order == other.order and self.coefficients == other.coefficients
        return NotImplemented

    __hash__ = None

    def _coerce(self, other) -> "FPS":
        if isinstance(other, FPS):
            if other.order != self.order:
                raise OrderMismatch(f"Series orders differ: {self.order} and {other.order}")
            return other
        if isinstance(other, (int, Fraction)):
            return FPS.constant(other, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FPS([a + b for a, b in zip(self, other)], self.order)

    __radd__ = __add__

    def __neg__(self):
        return FPS([-c for c in self], self.order)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FPS([a - b for a, b in zip(self, other)], self.order)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        f, g = self.coefficients, other.coefficients
        product = []
        for n in range(self.order + 1):
            product.append(sum((f[k] * g[n - k] for k in range(n + 1) if f[k] and g[n - k]),
                               Fraction(0)))
        return FPS(product, self.order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise NonUnitDivisor("Division of a series by zero")
            return self.scale(Fraction(1) / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        g = other.coefficients
        if g[0] == 0:
            raise NonUnitDivisor("Divisor has zero constant term")
        q = []
        for n in range(self.order + 1):
            acc = self.coefficients[n] - sum((g[k] * q[n - k] for k in range(1, n + 1) if g[k]),
                                             Fraction(0))
            q.append(acc / g[0])
        return FPS(q, self.order)

    def __rtruediv__(self, other):
        return FPS.constant(other, self.order) / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return FPS.one(self.order) / self ** (-exponent)
        result = FPS.one(self.order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def sqrt(self) -> "FPS":
        """The square root with constant term 1, from g^2 = f coefficient by coefficient."""
        f = self.coefficients
        if f[0] != 1:
            raise BadSqrtConstantTerm(f"sqrt needs constant term 1, got {f[0]}")
        g = [Fraction(1)]
        for n in range(1, self.order + 1):
            cross = sum((g[k] * g[n - k] for k in range(1, n)), Fraction(0))
            g.append((f[n] - cross) / 2)
        return FPS(g, self.order)

    def scale(self, factor) -> "FPS":
        factor = Fraction(factor)
        return FPS([factor * c for c in self], self.order)

    def shift(self, k: int = 1) -> "FPS":
        """Multiply by x^k."""
        if k < 0:
            raise ValueError("shift needs k >= 0; use lower() to divide by x")
        return FPS([0] * k + list(self.coefficients), self.order)

    def lower(self, k: int = 1) -> "FPS":
        """Divide by x^k; the result is known only up to x^(order-k)."""
        if any(self.coefficients[:k]):
            raise NonUnitDivisor(f"Series is not divisible by x^{k}")
        return FPS(self.coefficients[k:], self.order - k)

    def truncate(self, order: int) -> "FPS":
        if order > self.order:
            raise OrderMismatch(f"Cannot extend a series of order {self.order} to {order}")
        return FPS(self.coefficients, order)

    def compose_scalar(self, c) -> "FPS":
        """f(c*x)."""
        c = Fraction(c)
        return FPS([coefficient * c ** n for n, coefficient in enumerate(self)], self.order)

    def is_zero(self) -> bool:
        return not any(self.coefficients)

    def to_lines(self, nonzero_only: bool = False) -> list:
        """One "n coefficient" line per term, coefficients as exact fractions."""
        return [f"{n} {c}" for n, c in enumerate(self.coefficients) if c or not nonzero_only]


def _sqrt_one_minus(factor, order: int) -> FPS:
    return (1 - FPS.x(order).scale(factor)).sqrt()


def catalan_series(order: int) -> FPS:
    """C(x) = (1 - sqrt(1-4x)) / (2x)."""
    s = _sqrt_one_minus(4, order + 1)
    return ((1 - s) / 2).lower(1)


def d_series(u, order: int) -> FPS:
    """D(u, x) = 2x / (1 - 2x + sqrt(1 - 4ux)): Dyck paths by length and last height."""
    x = FPS.x(order)
    return 2 * x / (1 - 2 * x + _sqrt_one_minus(4 * Fraction(u), order))


def gen_sava_series(order: int) -> FPS:
    x = FPS.x(order)
    radicand = 1 - 8 * x + 20 * x ** 2 - 16 * x ** 3
    return (1 - 4 * x + radicand.sqrt()) / (2 * (x - 1) * (4 * x - 1))


def h_closed_series(order: int) -> FPS:
    x, c = FPS.x(order), catalan_series(order)
    return (1 - x * c) / (1 - 2 * x * c)


def _fixed_point(step, order: int) -> FPS:
    # Each step fixes at least one more coefficient.
    current = FPS.one(order)
    for _ in range(order + 1):
        current = step(current)
    return current


def h_fixed_point_series(order: int) -> FPS:
    x, c = FPS.x(order), catalan_series(order)
    return _fixed_point(lambda h: 1 + x * (2 * h - 1) * c, order)


def s_system_series(order: int) -> FPS:
    """Solve S = 1 + xH/(1-x) + xC(S - 1/(1-x)) for S with H in closed form."""
    x, c = FPS.x(order), catalan_series(order)
    h = h_closed_series(order)
    return (1 + x * (h - c) / (1 - x)) / (1 - x * c)


def closed_110_102_series(order: int) -> FPS:
    """Sum of (|I_n(110,102)| - 1) x^n: the sequences whose largest entry is positive."""
    x = FPS.x(order)
    s = _sqrt_one_minus(4, order)
    return x ** 2 * (1 + s) / ((x - 1) * ((3 * x - 1) * s - 4 * x ** 2 + 5 * x - 1))


def a106228_series(order: int) -> FPS:
    x = FPS.x(order)
    return _fixed_point(lambda a: 1 + x * a / (1 - x * a * a), order)


GF_CATALOG = {
    'CATALAN_C': catalan_series,
    'D_AT': d_series,
    'GEN_SAVA': gen_sava_series,
    'S_SYSTEM': s_system_series,
    'H_CLOSED': h_closed_series,
    'H_FIXED_POINT': h_fixed_point_series,
    'CLOSED_110_102': closed_110_102_series,
    'CLOSED_120_102': closed_110_102_series,
    'A106228': a106228_series,
}

PARAMETERS = {
    'D_AT': ('u',),
}


def gf(name: str, order: int, params=()) -> FPS:
    key = name.upper()
    if key not in GF_CATALOG:
        raise UnknownSeries(f"Unknown series '{name}'. Known: {', '.join(GF_CATALOG)}")
    if order < 1:
        raise ValueError(f"Series order must be at least 1, got {order}")
    needed = PARAMETERS.get(key, ())
    if len(params) < len(needed):
        raise MissingParameter(f"{key} needs parameter(s) {', '.join(needed)}")
    params = [Fraction(p) for p in params[:len(needed)]]
    return GF_CATALOG[key](*params, order)


def _series_of(values, order: int) -> FPS:
    return FPS([0] + list(values), order)


def _require(condition: bool, eq_id: str, message: str):
    if condition:
        raise SingularParameter(f"{eq_id}: {message}")


def _residual_110_102(u, v, order):
    _require(u == 1 or v == 1 or u * v == 1, 'FUN_110_102', "needs u != 1, v != 1 and uv != 1")
    triangle = a_triangle(order)
    x = FPS.x(order)

    def a(s, t):
        return _series_of((a_poly(triangle, n, s, t) for n in range(1, order + 1)), order)

    d_uv = d_series(u * v, order)
    d_u_vx = d_series(u, order).compose_scalar(v)
    lhs = a(u, v)
    rhs = (v * x ** 2 / (x - 1)
           + v * x * d_uv / (1 - v)
           + ((u * v - v) * x / (1 - x) - v * v * x / (1 - v)) * d_u_vx
           + (u * v * v / ((1 - v) * (1 - u * v))) * x * a(u * v, 1)
           + (u * u * v * v / ((1 - u) * (1 - u * v))) * x * a(1, u * v)
           - (u * v * v / ((1 - u) * (1 - v))) * x * a(u, v))
    return lhs - rhs


def _residual_120_102(u, v, order):
    _require(u == 1 or v == 1 or u * v == 1, 'FUN_120_102', "needs u != 1, v != 1 and uv != 1")
    triangle = b_triangle(order)
    x = FPS.x(order)

    def b(s, t):
        return _series_of((b_poly(triangle, n, s, t) for n in range(1, order + 1)), order)

    d_u_vx = d_series(u, order).compose_scalar(v)
    d_1_uvx = d_series(1, order).compose_scalar(u * v)
    lhs = b(u, v)
    rhs = (u * (d_u_vx - v * x - v * x * d_1_uvx) / (1 - x)
           + (v / ((1 - v) * (1 - u * v))) * x * b(u * v, 1)
           - (v / ((1 - u) * (1 - v))) * x * b(u, v)
           + (u * v / ((1 - u) * (1 - u * v))) * x * b(1, u * v))
    return lhs - rhs


def _residual_011_201(u, v, order):
    _require(v == 0 or v == 1, 'FUNC_011_201', "needs v != 0 and v != 1")
    triangle = c_triangle(order)
    x = FPS.x(order)

    def c(s, t):
        return _series_of((c_poly(triangle, n, s, t) for n in range(1, order + 1)), order)

    lhs = (1 - (u / (v * (1 - v))) * x - u / v) * c(u, v)
    rhs = (x / (1 - x)
           - (u / (1 - v)) * x * c(u / v, 1).compose_scalar(v)
           - (u / v) * (1 + x) * c(u, 0))
    return lhs - rhs


def _residual_sav(u, v, order):
    _require(v == 1 or u == v, 'EQ_SAV', "needs v != 1 and u != v")
    levels = gentree_levels(order)
    x = FPS.x(order)

    def e(s, t):
        return _series_of((e_poly(level, s, t) for level in levels), order)

    uvx = (u * v) * x
    lhs = (1 + uvx / (1 - v)) * e(u, v)
    rhs = (uvx
           + (uvx / (1 - v) + uvx / (u - v)) * e(u, 1)
           - uvx / (u - v) * e(v, 1))
    return lhs - rhs


def _residual_s(u, v, order):
    x, c = FPS.x(order), catalan_series(order)
    s, h = gen_sava_series(order), h_fixed_point_series(order)
    return s - (1 + x * h / (1 - x) + x * c * (s - 1 / (1 - x)))


def _residual_h(u, v, order):
    x, c = FPS.x(order), catalan_series(order)
    h = h_closed_series(order)
    return h - (1 + x * (2 * h - 1) * c)


RESIDUALS = {
    'FUN_110_102': _residual_110_102,
    'FUN_120_102': _residual_120_102,
    'FUNC_011_201': _residual_011_201,
    'EQ_SAV': _residual_sav,
    'EQ_S': _residual_s,
    'EQ_H': _residual_h,
}

# Equations that take no (u, v) point.
UNIVARIATE = ('EQ_S', 'EQ_H')


def residual(eq_id: str, params: dict = None, order: int = 16) -> FPS:
    """Left side minus right side of the named equation, expected to vanish up to x^order."""
    key = eq_id.upper()
    if key not in RESIDUALS:
        raise UnknownSeries(f"Unknown equation '{eq_id}'. Known: {', '.join(RESIDUALS)}")
    params = params or {}
    if key in UNIVARIATE:
        u = v = None
    else:
        missing = [name for name in ('u', 'v') if params.get(name) is None]
        if missing:
            raise MissingParameter(f"{key} needs parameter(s) {', '.join(missing)}")
        u, v = Fraction(params['u']), Fraction(params['v'])
    started = time.perf_counter()
    result = RESIDUALS[key](u, v, order)
    logger.debug("residual %s at u=%s v=%s order %d took %.2fs",
                 key, u, v, order, time.perf_counter() - started)
    return result
