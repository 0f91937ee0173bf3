"""Exact and certified real numbers with the bracket functions [a], E(a), φ(a) and {a}.

Three representations are supported:

* :class:`Rational` wraps a :class:`fractions.Fraction`.
* :class:`QuadraticIrrational` is ``(p + q*sqrt(d)) / r`` in canonical form. Floors and
  comparisons are decided with integer arithmetic only (``math.isqrt`` and squaring).
* :class:`CertifiedDecimal` is a decimal midpoint known to ``digits`` places, optionally
  refinable: either through an evaluator built from exact operands, or by re-evaluating an
  ``expr`` with mpmath at higher precision.

Values are immutable and safe to share between threads.

Example:
    >>> a = quadratic(0, 1, 2, 2)          # sqrt(2)/2
    >>> floor_of(a * 5)
    3
"""

import ast
import logging
import math
import operator
import threading
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Callable, Dict, Optional, Tuple, Union

import mpmath

from .config import PrecisionPolicy, precision_policy
from .errors import BracketError

logger = logging.getLogger(__name__)

Enclosure = Tuple[Fraction, Fraction]
Evaluator = Callable[[int], Enclosure]
Number = Union[int, Fraction, "ExactReal"]


class Order(str, Enum):
    """Result of :func:`compare`."""

    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"


class ExactReal(ABC):
    """A real number whose floor can be decided exactly or by certified escalation."""

    @abstractmethod
    def enclosure(self, digits: int) -> Enclosure:
        """Return ``(lo, hi)`` with ``lo <= self <= hi`` and width about ``10**-digits``."""

    @property
    @abstractmethod
    def is_rational(self) -> Optional[bool]:
        """True, False, or None when rationality is not known."""

    @abstractmethod
    def to_literal(self) -> Dict[str, Any]:
        """Return the angle-literal dictionary for this value."""

    @abstractmethod
    def expression(self) -> str:
        """Return an mpmath-evaluable expression for this value."""

    def __float__(self) -> float:
        lo, hi = self.enclosure(20)
        return float((lo + hi) / 2)

    def __neg__(self) -> "ExactReal":
        return self * -1

    def __add__(self, other: Number) -> "ExactReal":
        return add(self, coerce(other))

    def __radd__(self, other: Number) -> "ExactReal":
        return add(coerce(other), self)

    def __sub__(self, other: Number) -> "ExactReal":
        return add(self, -coerce(other))

    def __rsub__(self, other: Number) -> "ExactReal":
        return add(coerce(other), -self)

    def __mul__(self, factor: Union[int, Fraction]) -> "ExactReal":
        if isinstance(factor, bool) or not isinstance(factor, (int, Fraction)):
            return NotImplemented
        return scale(self, Fraction(factor))

    __rmul__ = __mul__

    def __lt__(self, other: Number) -> bool:
        return compare(self, coerce(other)) is Order.LESS

    def __le__(self, other: Number) -> bool:
        return compare(self, coerce(other)) is not Order.GREATER

    def __gt__(self, other: Number) -> bool:
        return compare(self, coerce(other)) is Order.GREATER

    def __ge__(self, other: Number) -> bool:
        return compare(self, coerce(other)) is not Order.LESS


@dataclass(frozen=True, eq=True)
class Rational(ExactReal):
    """An exact rational number."""

    value: Fraction

    def __post_init__(self) -> None:
        if not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))

    def enclosure(self, digits: int) -> Enclosure:
        return self.value, self.value

    @property
    def is_rational(self) -> Optional[bool]:
        return True

    def to_literal(self) -> Dict[str, Any]:
        return {"kind": "rational", "p": self.value.numerator, "q": self.value.denominator}

    def expression(self) -> str:
        return f"({self.value.numerator}/{self.value.denominator})"

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True, eq=True)
class QuadraticIrrational(ExactReal):
    """``(p + q*sqrt(d)) / r`` with gcd(p, q, r) = 1, r > 0, q != 0 and d > 1 squarefree.

    Build instances with :func:`quadratic`, which canonicalizes and collapses to
    :class:`Rational` when the radical vanishes.
    """

    p: int
    q: int
    d: int
    r: int

    def __post_init__(self) -> None:
        if self.q == 0 or self.r <= 0 or self.d <= 1:
            raise ValueError(f"not a canonical quadratic irrational: {self!r}")
        if _squarefree_split(self.d)[0] != 1:
            raise ValueError(f"radicand {self.d} is not squarefree")
        if math.gcd(math.gcd(self.p, self.q), self.r) != 1:
            raise ValueError(f"quadratic irrational not gcd-reduced: {self!r}")

    def floor(self) -> int:
        """Exact floor by integer square roots."""
        return _floor_quadratic(self.p, self.q, self.d, self.r)

    def enclosure(self, digits: int) -> Enclosure:
        scale_ = 10**digits
        root = math.isqrt(self.q * self.q * self.d * scale_ * scale_)
        if self.q > 0:
            lo, hi = Fraction(root, scale_), Fraction(root + 1, scale_)
        else:
            lo, hi = Fraction(-root - 1, scale_), Fraction(-root, scale_)
        return (self.p + lo) / self.r, (self.p + hi) / self.r

    @property
    def is_rational(self) -> Optional[bool]:
        return False

    def to_literal(self) -> Dict[str, Any]:
        return {"kind": "quadratic", "p": self.p, "q": self.q, "d": self.d, "r": self.r}

    def expression(self) -> str:
        return f"(({self.p})+({self.q})*sqrt({self.d}))/{self.r}"

    def __str__(self) -> str:
        radical = f"√{self.d}" if abs(self.q) == 1 else f"{abs(self.q)}√{self.d}"
        if self.p == 0:
            body = radical if self.q > 0 else f"-{radical}"
        else:
            body = f"{self.p} {'+' if self.q > 0 else '-'} {radical}"
        if self.r == 1:
            return body
        return f"({body})/{self.r}" if self.p != 0 else f"{body}/{self.r}"


@dataclass(frozen=True, eq=True)
class CertifiedDecimal(ExactReal):
    """A decimal ``value`` with ``|x - value| <= 10**-digits``.

    Attributes:
        value: Decimal midpoint text, e.g. ``"0.7071067811865475"``
        digits: Number of certified decimal places
        expr: Optional expression re-evaluated with mpmath when more digits are needed
        irrational: Caller assertion about rationality (None when unknown)
        evaluator: Optional exact refinement callback, ``digits -> (lo, hi)``; when present it
            is the source of every enclosure
        fixed: True when the evaluator cannot narrow below a fixed width, because some
            operand it was built from is a fixed-digit decimal
    """

    value: str
    digits: int
    expr: Optional[str] = None
    irrational: Optional[bool] = None
    evaluator: Optional[Evaluator] = field(default=None, compare=False, repr=False)
    fixed: bool = field(default=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.digits < 1:
            raise ValueError("certified decimals need at least one digit")
        try:
            Fraction(self.value)
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"invalid decimal value {self.value!r}") from e
        if self.evaluator is None and self.expr is not None:
            object.__setattr__(self, "evaluator", _expression_evaluator(self.expr))

    @property
    def midpoint(self) -> Fraction:
        return Fraction(self.value)

    @property
    def radius(self) -> Fraction:
        return Fraction(1, 10**self.digits)

    @property
    def refinable(self) -> bool:
        return self.evaluator is not None and not self.fixed

    def enclosure(self, digits: int) -> Enclosure:
        if self.evaluator is not None:
            return self.evaluator(digits)
        return self.midpoint - self.radius, self.midpoint + self.radius

    @property
    def is_rational(self) -> Optional[bool]:
        if self.irrational is None:
            return None
        return not self.irrational

    def to_literal(self) -> Dict[str, Any]:
        literal: Dict[str, Any] = {"kind": "decimal", "value": self.value, "digits": self.digits}
        if self.expr is not None:
            literal["expr"] = self.expr
        if self.irrational is not None:
            literal["irrational"] = self.irrational
        return literal

    def expression(self) -> str:
        return f"({self.expr})" if self.expr is not None else f"({self.value})"

    def __str__(self) -> str:
        return f"≈{self.value[:14]}"


# Canonical construction


def _squarefree_split(d: int) -> Tuple[int, int]:
    """Return ``(s, core)`` with ``d = s*s*core`` and ``core`` squarefree."""
    s, core, f = 1, d, 2
    while f * f <= core:
        while core % (f * f) == 0:
            core //= f * f
            s *= f
        f += 1
    return s, core


def quadratic(p: int, q: int, d: int, r: int = 1) -> ExactReal:
    """Build ``(p + q*sqrt(d)) / r`` in canonical form.

    Collapses to :class:`Rational` when ``q == 0`` or ``d`` is a perfect square.

    Raises:
        ValueError: If ``r == 0`` or ``d < 0``
    """
    if r == 0:
        raise ValueError("denominator r must be non-zero")
    if d < 0:
        raise ValueError("radicand d must be non-negative")
    if r < 0:
        p, q, r = -p, -q, -r
    if q == 0 or d == 0:
        return Rational(Fraction(p, r))
    s, core = _squarefree_split(d)
    q *= s
    if core == 1:
        return Rational(Fraction(p + q, r))
    g = math.gcd(math.gcd(p, q), r)
    return QuadraticIrrational(p // g, q // g, core, r // g)


def rational(p: int, q: int = 1) -> Rational:
    """Build the rational ``p/q``."""
    if q == 0:
        raise ValueError("denominator must be non-zero")
    return Rational(Fraction(p, q))


def decimal(value: str, digits: int, expr: Optional[str] = None,
            irrational: Optional[bool] = None) -> CertifiedDecimal:
    """Build a certified decimal known to ``digits`` places."""
    return CertifiedDecimal(value=value, digits=digits, expr=expr, irrational=irrational)


def coerce(value: Number) -> ExactReal:
    """Turn ints and fractions into :class:`Rational`; pass ExactReal through."""
    if isinstance(value, ExactReal):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not real numbers")
    if isinstance(value, (int, Fraction)):
        return Rational(Fraction(value))
    raise TypeError(f"cannot interpret {value!r} as an exact real")


# Integer kernels


def _sign_quadratic(a: int, b: int, d: int) -> int:
    """Sign of ``a + b*sqrt(d)`` for squarefree ``d > 1``, decided by squaring."""
    if b == 0:
        return (a > 0) - (a < 0)
    if a == 0 or (a > 0) == (b > 0):
        return 1 if (a > 0 or (a == 0 and b > 0)) else -1
    # opposite signs: the larger square wins; equality is impossible for irrational sqrt(d)
    if a * a > b * b * d:
        return 1 if a > 0 else -1
    return 1 if b > 0 else -1


def _floor_quadratic(p: int, q: int, d: int, r: int) -> int:
    root = math.isqrt(q * q * d)
    whole = p + (root if q > 0 else -root - 1)
    return whole // r


def _format_fixed(scaled: int, digits: int) -> str:
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def _schedule(policy: Optional[PrecisionPolicy]) -> list:
    return (policy or precision_policy()).schedule()


# Certified decimals built from other values


def _is_fixed(x: ExactReal) -> bool:
    return isinstance(x, CertifiedDecimal) and not x.refinable


def _derived(evaluator: Evaluator, expr: str, *operands: ExactReal,
             policy: Optional[PrecisionPolicy] = None,
             irrational: Optional[bool] = None) -> CertifiedDecimal:
    """Wrap an evaluator, claiming only the digits its enclosure actually certifies."""
    fixed = any(_is_fixed(x) for x in operands)
    digits = (policy or precision_policy()).start_digits
    lo, hi = evaluator(digits + 2)
    # |x - value| <= (hi - lo) / 2 + 10**-d / 2 <= 10**-d
    while digits > 1 and (hi - lo) > Fraction(1, 10**digits):
        digits -= 1
    scaled = round((lo + hi) / 2 * 10**digits)
    return CertifiedDecimal(
        value=_format_fixed(scaled, digits),
        digits=digits,
        expr=None if fixed else expr,
        irrational=irrational,
        evaluator=evaluator,
        fixed=fixed,
    )


def add(a: ExactReal, b: ExactReal) -> ExactReal:
    """Exact sum when both operands share a radical, certified decimal otherwise."""
    if isinstance(a, Rational) and isinstance(b, Rational):
        return Rational(a.value + b.value)
    if isinstance(a, Rational) and isinstance(b, QuadraticIrrational):
        a, b = b, a
    if isinstance(a, QuadraticIrrational) and isinstance(b, Rational):
        v = b.value
        return quadratic(a.p * v.denominator + v.numerator * a.r, a.q * v.denominator, a.d,
                         a.r * v.denominator)
    if isinstance(a, QuadraticIrrational) and isinstance(b, QuadraticIrrational) and a.d == b.d:
        return quadratic(a.p * b.r + b.p * a.r, a.q * b.r + b.q * a.r, a.d, a.r * b.r)

    def evaluate(digits: int) -> Enclosure:
        alo, ahi = a.enclosure(digits + 1)
        blo, bhi = b.enclosure(digits + 1)
        return alo + blo, ahi + bhi

    return _derived(evaluate, f"{a.expression()}+{b.expression()}", a, b)


def scale(a: ExactReal, factor: Fraction) -> ExactReal:
    """Multiply by a rational factor, staying exact where possible."""
    if isinstance(a, Rational):
        return Rational(a.value * factor)
    if isinstance(a, QuadraticIrrational):
        if factor == 0:
            return Rational(Fraction(0))
        return quadratic(a.p * factor.numerator, a.q * factor.numerator, a.d,
                         a.r * factor.denominator)
    if factor == 0:
        return Rational(Fraction(0))
    assert isinstance(a, CertifiedDecimal)
    extra = len(str(abs(factor.numerator)))

    def evaluate(digits: int) -> Enclosure:
        lo, hi = a.enclosure(digits + extra)
        lo, hi = lo * factor, hi * factor
        return (lo, hi) if lo <= hi else (hi, lo)

    return _derived(evaluate, f"{a.expression()}*({factor})", a, irrational=a.irrational)


# Bracket functions


def floor_of(a: ExactReal, *, policy: Optional[PrecisionPolicy] = None) -> int:
    """Return [a], the unique integer k with k <= a < k + 1.

    Raises:
        BracketError: ``undecidable-floor`` when a certified interval still contains an
            integer at the maximum precision.
    """
    if isinstance(a, Rational):
        return math.floor(a.value)
    if isinstance(a, QuadraticIrrational):
        return a.floor()
    return _certified_floor(a, policy)


def _certified_floor(a: ExactReal, policy: Optional[PrecisionPolicy]) -> int:
    schedule = _schedule(policy)
    if isinstance(a, CertifiedDecimal) and not a.refinable:
        schedule = [a.digits]
    for digits in schedule:
        lo, hi = a.enclosure(digits)
        k = math.floor(lo)
        if k < lo and hi < k + 1:
            return k
        logger.debug("floor of %s undecided at %d digits", a, digits)
    raise BracketError("undecidable-floor", f"{a} straddles an integer at {schedule[-1]} digits")


def floor_of_multiple(a: ExactReal, m: int, *, policy: Optional[PrecisionPolicy] = None) -> int:
    """Return [m·a] without building the scaled value for exact inputs."""
    if isinstance(a, Rational):
        return (a.value.numerator * m) // a.value.denominator
    if isinstance(a, QuadraticIrrational):
        return _floor_quadratic(a.p * m, a.q * m, a.d, a.r) if m != 0 else 0
    return floor_of(a * m, policy=policy)


def varphi_of(a: ExactReal, *, policy: Optional[PrecisionPolicy] = None) -> int:
    """Return φ(a): 0 if a is an integer, 1 otherwise."""
    if isinstance(a, Rational):
        return 0 if a.value.denominator == 1 else 1
    if isinstance(a, QuadraticIrrational):
        return 1
    # a certified floor is only returned when the interval excludes every integer
    floor_of(a, policy=policy)
    return 1


def ceil_of(a: ExactReal, *, policy: Optional[PrecisionPolicy] = None) -> int:
    """Return E(a) = [a] + φ(a), the least integer k with k >= a."""
    return floor_of(a, policy=policy) + varphi_of(a, policy=policy)


def frac_of(a: ExactReal, *, policy: Optional[PrecisionPolicy] = None) -> ExactReal:
    """Return {a} = a - [a] in [0, 1), keeping the representation exact where possible."""
    k = floor_of(a, policy=policy)
    if k == 0:
        return a
    if isinstance(a, CertifiedDecimal):
        shifted = a.midpoint - k
        base = a.evaluator

        def evaluate(digits: int) -> Enclosure:
            lo, hi = base(digits) if base is not None else a.enclosure(digits)
            return lo - k, hi - k

        return CertifiedDecimal(
            value=_format_fixed(round(shifted * 10**a.digits), a.digits),
            digits=a.digits,
            expr=f"{a.expression()}-({k})" if a.expr is not None else None,
            irrational=a.irrational,
            evaluator=evaluate if base is not None else None,
            fixed=a.fixed,
        )
    return a - k


def compare(a: ExactReal, b: ExactReal, *, policy: Optional[PrecisionPolicy] = None) -> Order:
    """Order two reals exactly when they share a radical, by escalating intervals otherwise.

    Raises:
        BracketError: ``precision-exhausted`` when the intervals still overlap at the
            maximum precision.
    """
    exact = _exact_difference_sign(a, b)
    if exact is not None:
        return (Order.LESS, Order.EQUAL, Order.GREATER)[exact + 1]
    for digits in _schedule(policy):
        alo, ahi = a.enclosure(digits)
        blo, bhi = b.enclosure(digits)
        if ahi < blo:
            return Order.LESS
        if alo > bhi:
            return Order.GREATER
        logger.debug("comparison %s vs %s undecided at %d digits", a, b, digits)
    raise BracketError("precision-exhausted", f"cannot separate {a} and {b}")


def _exact_difference_sign(a: ExactReal, b: ExactReal) -> Optional[int]:
    if isinstance(a, CertifiedDecimal) or isinstance(b, CertifiedDecimal):
        return None
    if isinstance(a, QuadraticIrrational) and isinstance(b, QuadraticIrrational) and a.d != b.d:
        return None
    d = a.d if isinstance(a, QuadraticIrrational) else getattr(b, "d", 2)
    ap, aq, ar = _parts(a)
    bp, bq, br = _parts(b)
    return _sign_quadratic(ap * br - bp * ar, aq * br - bq * ar, d)


def _parts(x: ExactReal) -> Tuple[int, int, int]:
    if isinstance(x, QuadraticIrrational):
        return x.p, x.q, x.r
    assert isinstance(x, Rational)
    return x.value.numerator, 0, x.value.denominator


# Angle literals


def from_literal(literal: Any) -> ExactReal:
    """Parse an angle literal.

    Accepted forms::

        {"kind": "rational", "p": 1, "q": 3}
        {"kind": "quadratic", "p": 0, "q": 1, "d": 2, "r": 2}
        {"kind": "decimal", "value": "0.318309886", "digits": 9,
         "expr": "1/pi", "irrational": true}

    Integers and fractions are accepted as rationals; ExactReal values pass through.

    Raises:
        ValueError: On unknown kinds, missing keys or invalid numbers
    """
    if isinstance(literal, (ExactReal, int, Fraction)) and not isinstance(literal, bool):
        return coerce(literal)
    if not isinstance(literal, dict):
        raise ValueError(f"angle literal must be a mapping, got {type(literal).__name__}")
    kind = literal.get("kind")
    try:
        if kind == "rational":
            p, q = _int(literal["p"]), _int(literal["q"])
            if q <= 0:
                raise ValueError("rational literal needs q > 0")
            return rational(p, q)
        if kind == "quadratic":
            return quadratic(
                _int(literal["p"]), _int(literal["q"]), _int(literal["d"]),
                _int(literal.get("r", 1)),
            )
        if kind == "decimal":
            irrational = literal.get("irrational")
            if irrational is not None and not isinstance(irrational, bool):
                raise ValueError("'irrational' must be a boolean")
            return decimal(
                str(literal["value"]), _int(literal["digits"]), literal.get("expr"), irrational
            )
    except KeyError as e:
        raise ValueError(f"{kind} literal is missing key {e.args[0]!r}") from e
    raise ValueError(f"unknown angle literal kind {kind!r}")


def to_literal(value: ExactReal) -> Dict[str, Any]:
    return value.to_literal()


def _int(value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"expected an integer, got {value!r}")
    return value


# mpmath expression evaluation

_MP_LOCK = threading.Lock()
_GUARD_DIGITS = 15

_BINARY = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_FUNCTIONS = ("sqrt", "exp", "log", "sin", "cos", "tan")
_CONSTANTS = ("pi", "e", "phi", "euler")


def _check_expression(node: ast.AST) -> None:
    if isinstance(node, ast.Expression):
        _check_expression(node.body)
    elif isinstance(node, ast.BinOp) and type(node.op) in _BINARY:
        _check_expression(node.left)
        _check_expression(node.right)
    elif isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        _check_expression(node.operand)
    elif isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
        if node.func.id not in _FUNCTIONS or len(node.args) != 1 or node.keywords:
            raise ValueError(f"unsupported function in expression: {ast.dump(node.func)}")
        _check_expression(node.args[0])
    elif isinstance(node, ast.Name):
        if node.id not in _CONSTANTS:
            raise ValueError(f"unknown constant {node.id!r}")
    elif isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        return
    else:
        raise ValueError(f"unsupported syntax in expression: {type(node).__name__}")


def _evaluate_node(node: ast.AST) -> Any:
    if isinstance(node, ast.Expression):
        return _evaluate_node(node.body)
    if isinstance(node, ast.BinOp):
        return _BINARY[type(node.op)](_evaluate_node(node.left), _evaluate_node(node.right))
    if isinstance(node, ast.UnaryOp):
        value = _evaluate_node(node.operand)
        return -value if isinstance(node.op, ast.USub) else value
    if isinstance(node, ast.Call):
        return getattr(mpmath, node.func.id)(_evaluate_node(node.args[0]))  # type: ignore
    if isinstance(node, ast.Name):
        return getattr(mpmath, node.id) + 0
    # decimal text keeps literals like 0.1 exact at working precision
    return mpmath.mpf(repr(node.value)) if isinstance(node.value, float) else mpmath.mpf(
        node.value
    )


def _expression_evaluator(expr: str) -> Evaluator:
    try:
        tree = ast.parse(expr, mode="eval")
    except SyntaxError as e:
        raise ValueError(f"cannot parse expression {expr!r}: {e.msg}") from e
    _check_expression(tree)

    def evaluate(digits: int) -> Enclosure:
        with _MP_LOCK, mpmath.workdps(digits + _GUARD_DIGITS):
            scaled = int(mpmath.floor(_evaluate_node(tree) * mpmath.mpf(10) ** digits))
        return Fraction(scaled - 1, 10**digits), Fraction(scaled + 2, 10**digits)

    return evaluate
