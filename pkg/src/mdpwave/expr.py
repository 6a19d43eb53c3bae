"""Immutable symbolic expression trees.

Nodes are exact-rational constants, named parameters, variables, n-ary
sums/products, quotients, constant powers, and a closed set of elementary
functions.  Constructors fold the trivial identities (0*e, 1*e, e+0, e^1,
rational-constant arithmetic) and nothing else; correctness downstream
rests on numeric agreement, not on normal forms.

Constants stay exact rationals inside trees; floats only appear when a
tree is evaluated.  Differentiation is structural and closed over the
function set (e.g. csc' = -csc*cot), so derived trees never introduce new
node kinds.  All values are immutable and all operations are pure, so
trees are safe to share across workers.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .errors import DomainError, UnboundSymbol

__all__ = [
    "Expr", "Rational", "Param", "Var", "Add", "Mul", "Div", "Pow", "Fun",
    "FUNCTIONS", "as_expr", "add", "mul", "sub", "div", "pow_", "fun",
    "exp", "sinh", "cosh", "tanh", "tan", "cot", "csc", "sqrt", "log",
    "var", "param", "sym_sqrt", "differentiate", "nth_derivative", "substitute",
    "with_params", "evaluate", "evaluate_many", "free_symbols", "to_prefix",
    "ZERO", "ONE",
]

FUNCTIONS = ("exp", "sinh", "cosh", "tanh", "tan", "cot", "csc", "sqrt", "log")


class Expr:
    """Base node.  Subclasses set `_hash` at construction."""

    __slots__ = ("_hash",)

    def __hash__(self):
        return self._hash

    # arithmetic sugar; all routes through the canonicalizing constructors
    def __add__(self, other):
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, other)

    def __rsub__(self, other):
        return sub(other, self)

    def __mul__(self, other):
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return div(self, other)

    def __rtruediv__(self, other):
        return div(other, self)

    def __pow__(self, exponent):
        return pow_(self, exponent)

    def __neg__(self):
        return mul(-1, self)

    def __repr__(self):
        return to_prefix(self)


class Rational(Expr):
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value if isinstance(value, Fraction) else Fraction(value)
        self._hash = hash(("rat", self.value))

    def __eq__(self, other):
        return self is other or (type(other) is Rational and self.value == other.value)

    __hash__ = Expr.__hash__


class Param(Expr):
    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name
        self._hash = hash(("param", name))

    def __eq__(self, other):
        return self is other or (type(other) is Param and self.name == other.name)

    __hash__ = Expr.__hash__


class Var(Expr):
    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name
        self._hash = hash(("var", name))

    def __eq__(self, other):
        return self is other or (type(other) is Var and self.name == other.name)

    __hash__ = Expr.__hash__


class Add(Expr):
    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = terms
        self._hash = hash(("add", terms))

    def __eq__(self, other):
        return self is other or (
            type(other) is Add and self._hash == other._hash and self.terms == other.terms
        )

    __hash__ = Expr.__hash__


class Mul(Expr):
    __slots__ = ("factors",)

    def __init__(self, factors):
        self.factors = factors
        self._hash = hash(("mul", factors))

    def __eq__(self, other):
        return self is other or (
            type(other) is Mul and self._hash == other._hash and self.factors == other.factors
        )

    __hash__ = Expr.__hash__


class Div(Expr):
    __slots__ = ("num", "den")

    def __init__(self, num, den):
        self.num = num
        self.den = den
        self._hash = hash(("div", num, den))

    def __eq__(self, other):
        return self is other or (
            type(other) is Div and self._hash == other._hash
            and self.num == other.num and self.den == other.den
        )

    __hash__ = Expr.__hash__


class Pow(Expr):
    """Constant exponent only: a Fraction (covers integers) or a float."""

    __slots__ = ("base", "exponent")

    def __init__(self, base, exponent):
        self.base = base
        self.exponent = exponent
        self._hash = hash(("pow", base, exponent))

    def __eq__(self, other):
        return self is other or (
            type(other) is Pow and self._hash == other._hash
            and self.base == other.base and self.exponent == other.exponent
        )

    __hash__ = Expr.__hash__


class Fun(Expr):
    __slots__ = ("kind", "arg")

    def __init__(self, kind, arg):
        self.kind = kind
        self.arg = arg
        self._hash = hash(("fun", kind, arg))

    def __eq__(self, other):
        return self is other or (
            type(other) is Fun and self._hash == other._hash
            and self.kind == other.kind and self.arg == other.arg
        )

    __hash__ = Expr.__hash__


def as_expr(v):
    """Coerce a number to an exact rational leaf; pass expressions through."""
    if isinstance(v, Expr):
        return v
    if isinstance(v, (int, Fraction)):
        return Rational(Fraction(v))
    if isinstance(v, float):
        if not math.isfinite(v):
            raise ValueError(f"non-finite constant {v!r}")
        return Rational(Fraction(v))
    raise TypeError(f"cannot coerce {type(v).__name__} to Expr")


ZERO = Rational(Fraction(0))
ONE = Rational(Fraction(1))


def add(*terms):
    out = []
    const = Fraction(0)
    for t in terms:
        t = as_expr(t)
        parts = t.terms if isinstance(t, Add) else (t,)
        for p in parts:
            if isinstance(p, Rational):
                const += p.value
            else:
                out.append(p)
    if const != 0:
        out.insert(0, Rational(const))
    if not out:
        return ZERO
    if len(out) == 1:
        return out[0]
    return Add(tuple(out))


def mul(*factors):
    out = []
    const = Fraction(1)
    for f in factors:
        f = as_expr(f)
        parts = f.factors if isinstance(f, Mul) else (f,)
        for p in parts:
            if isinstance(p, Rational):
                const *= p.value
            else:
                out.append(p)
    if const == 0:
        return ZERO
    if not out:
        return Rational(const)
    if const != 1:
        out.insert(0, Rational(const))
    if len(out) == 1:
        return out[0]
    return Mul(tuple(out))


def sub(a, b):
    return add(a, mul(-1, b))


def div(num, den):
    num = as_expr(num)
    den = as_expr(den)
    if isinstance(den, Rational):
        if den.value == 0:
            raise ZeroDivisionError("division by exact zero at construction")
        if isinstance(num, Rational):
            return Rational(num.value / den.value)
        if den.value == 1:
            return num
    if isinstance(num, Rational) and num.value == 0:
        return ZERO
    return Div(num, den)


def pow_(base, exponent):
    base = as_expr(base)
    if isinstance(exponent, Rational):
        exponent = exponent.value
    if isinstance(exponent, (int, Fraction)):
        e = Fraction(exponent)
        if e == 1:
            return base
        if e == 0:
            return ONE
        if isinstance(base, Rational) and e.denominator == 1:
            if base.value == 0 and e < 0:
                raise ZeroDivisionError("zero base with negative exponent")
            return Rational(base.value ** e)
        return Pow(base, e)
    if isinstance(exponent, float):
        if not math.isfinite(exponent):
            raise ValueError("non-finite exponent")
        if exponent == 1.0:
            return base
        if exponent == 0.0:
            return ONE
        return Pow(base, exponent)
    raise TypeError("exponent must be a constant number")


def fun(kind, arg):
    if kind not in FUNCTIONS:
        raise ValueError(f"unknown function {kind!r}")
    return Fun(kind, as_expr(arg))


def exp(a):
    return fun("exp", a)


def sinh(a):
    return fun("sinh", a)


def cosh(a):
    return fun("cosh", a)


def tanh(a):
    return fun("tanh", a)


def tan(a):
    return fun("tan", a)


def cot(a):
    return fun("cot", a)


def csc(a):
    return fun("csc", a)


def sqrt(a):
    return fun("sqrt", a)


def log(a):
    return fun("log", a)


def sym_sqrt(q):
    """Square root of a nonnegative rational as an expression.

    Perfect squares fold to rational leaves; anything else stays a
    symbolic sqrt node so trees keep exact constants.
    """
    q = Fraction(q)
    if q < 0:
        raise ValueError("sym_sqrt of a negative rational")
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Rational(Fraction(rn, rd))
    return fun("sqrt", Rational(q))


def var(name):
    return Var(name)


def param(name):
    return Param(name)


def differentiate(e, v):
    """Exact structural derivative of `e` with respect to variable `v`.

    Parameters are treated as constants.  Total on well-formed trees.
    """
    name = v.name if isinstance(v, Var) else v
    memo = {}

    def d(node):
        key = id(node)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if isinstance(node, (Rational, Param)):
            out = ZERO
        elif isinstance(node, Var):
            out = ONE if node.name == name else ZERO
        elif isinstance(node, Add):
            out = add(*[d(t) for t in node.terms])
        elif isinstance(node, Mul):
            fs = node.factors
            out = add(*[
                mul(*fs[:i], d(f), *fs[i + 1:]) for i, f in enumerate(fs)
            ])
        elif isinstance(node, Div):
            out = div(
                sub(mul(d(node.num), node.den), mul(node.num, d(node.den))),
                pow_(node.den, 2),
            )
        elif isinstance(node, Pow):
            e0 = node.exponent
            out = mul(as_expr(e0), pow_(node.base, e0 - 1), d(node.base))
        elif isinstance(node, Fun):
            a = node.arg
            k = node.kind
            if k == "exp":
                outer = exp(a)
            elif k == "sinh":
                outer = cosh(a)
            elif k == "cosh":
                outer = sinh(a)
            elif k == "tanh":
                outer = sub(1, pow_(tanh(a), 2))
            elif k == "tan":
                outer = add(1, pow_(tan(a), 2))
            elif k == "cot":
                outer = mul(-1, add(1, pow_(cot(a), 2)))
            elif k == "csc":
                outer = mul(-1, csc(a), cot(a))
            elif k == "sqrt":
                outer = div(ONE, mul(2, sqrt(a)))
            else:  # log
                outer = div(ONE, a)
            out = mul(outer, d(a))
        else:  # pragma: no cover
            raise TypeError(f"unknown node {type(node).__name__}")
        memo[key] = out
        return out

    return d(as_expr(e))


def nth_derivative(e, v, n):
    """Iterated derivative; n = 0 returns `e` itself."""
    if n < 0:
        raise ValueError("derivative order must be nonnegative")
    out = as_expr(e)
    for _ in range(n):
        out = differentiate(out, v)
    return out


def substitute(e, v, replacement):
    """Replace every occurrence of variable `v` by `replacement`.

    Structural and capture-free (there are no binders).  Returns `e`
    unchanged (same object) when `v` does not occur.
    """
    name = v.name if isinstance(v, Var) else v
    replacement = as_expr(replacement)
    memo = {}

    def walk(node):
        key = id(node)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if isinstance(node, Var):
            out = replacement if node.name == name else node
        elif isinstance(node, (Rational, Param)):
            out = node
        elif isinstance(node, Add):
            kids = [walk(t) for t in node.terms]
            out = node if all(a is b for a, b in zip(kids, node.terms)) else add(*kids)
        elif isinstance(node, Mul):
            kids = [walk(f) for f in node.factors]
            out = node if all(a is b for a, b in zip(kids, node.factors)) else mul(*kids)
        elif isinstance(node, Div):
            n2, d2 = walk(node.num), walk(node.den)
            out = node if (n2 is node.num and d2 is node.den) else div(n2, d2)
        elif isinstance(node, Pow):
            b2 = walk(node.base)
            out = node if b2 is node.base else pow_(b2, node.exponent)
        else:
            a2 = walk(node.arg)
            out = node if a2 is node.arg else fun(node.kind, a2)
        memo[key] = out
        return out

    return walk(as_expr(e))


def with_params(e, bindings):
    """Replace named parameters by constants (or expressions).

    Numbers are embedded as exact rationals; unlisted parameters stay
    symbolic.
    """
    exprs = {k: as_expr(v) for k, v in bindings.items()}
    memo = {}

    def walk(node):
        key = id(node)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if isinstance(node, Param):
            out = exprs.get(node.name, node)
        elif isinstance(node, (Rational, Var)):
            out = node
        elif isinstance(node, Add):
            kids = [walk(t) for t in node.terms]
            out = node if all(a is b for a, b in zip(kids, node.terms)) else add(*kids)
        elif isinstance(node, Mul):
            kids = [walk(f) for f in node.factors]
            out = node if all(a is b for a, b in zip(kids, node.factors)) else mul(*kids)
        elif isinstance(node, Div):
            n2, d2 = walk(node.num), walk(node.den)
            out = node if (n2 is node.num and d2 is node.den) else div(n2, d2)
        elif isinstance(node, Pow):
            b2 = walk(node.base)
            out = node if b2 is node.base else pow_(b2, node.exponent)
        else:
            a2 = walk(node.arg)
            out = node if a2 is node.arg else fun(node.kind, a2)
        memo[key] = out
        return out

    return walk(as_expr(e))


def free_symbols(e):
    """Return (parameter names, variable names) occurring in `e`."""
    params, vs = set(), set()
    seen = set()
    stack = [as_expr(e)]
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        if isinstance(node, Param):
            params.add(node.name)
        elif isinstance(node, Var):
            vs.add(node.name)
        elif isinstance(node, Add):
            stack.extend(node.terms)
        elif isinstance(node, Mul):
            stack.extend(node.factors)
        elif isinstance(node, Div):
            stack.append(node.num)
            stack.append(node.den)
        elif isinstance(node, Pow):
            stack.append(node.base)
        elif isinstance(node, Fun):
            stack.append(node.arg)
    return params, vs


def evaluate(e, params=None, point=None):
    """Evaluate to a float.  Every parameter and variable must be bound.

    Domain violations (division by zero, sqrt of a negative, log of a
    nonpositive, trig poles, overflow) raise DomainError carrying the
    offending subtree; a NaN never propagates out.
    """
    params = params or {}
    point = point or {}
    memo = {}

    def ev(node):
        key = id(node)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if isinstance(node, Rational):
            out = float(node.value)
        elif isinstance(node, Param):
            try:
                out = float(params[node.name])
            except KeyError:
                raise UnboundSymbol(f"unbound parameter {node.name!r}") from None
        elif isinstance(node, Var):
            try:
                out = float(point[node.name])
            except KeyError:
                raise UnboundSymbol(f"unbound variable {node.name!r}") from None
        elif isinstance(node, Add):
            out = 0.0
            for t in node.terms:
                out += ev(t)
        elif isinstance(node, Mul):
            out = 1.0
            for f in node.factors:
                out *= ev(f)
        elif isinstance(node, Div):
            den = ev(node.den)
            if den == 0.0:
                raise DomainError("division by zero", node)
            out = ev(node.num) / den
        elif isinstance(node, Pow):
            base = ev(node.base)
            e0 = node.exponent
            if isinstance(e0, Fraction) and e0.denominator == 1:
                if base == 0.0 and e0 < 0:
                    raise DomainError("zero base with negative exponent", node)
                try:
                    out = base ** int(e0)
                except OverflowError:
                    raise DomainError("overflow in power", node) from None
            else:
                fe = float(e0)
                if base < 0.0:
                    raise DomainError("negative base with non-integer exponent", node)
                if base == 0.0 and fe < 0:
                    raise DomainError("zero base with negative exponent", node)
                try:
                    out = math.pow(base, fe)
                except (OverflowError, ValueError):
                    raise DomainError("overflow in power", node) from None
        elif isinstance(node, Fun):
            a = ev(node.arg)
            k = node.kind
            try:
                if k == "exp":
                    out = math.exp(a)
                elif k == "sinh":
                    out = math.sinh(a)
                elif k == "cosh":
                    out = math.cosh(a)
                elif k == "tanh":
                    out = math.tanh(a)
                elif k == "tan":
                    out = math.tan(a)
                elif k == "cot":
                    s = math.sin(a)
                    if s == 0.0:
                        raise DomainError("cot at a pole", node)
                    out = math.cos(a) / s
                elif k == "csc":
                    s = math.sin(a)
                    if s == 0.0:
                        raise DomainError("csc at a pole", node)
                    out = 1.0 / s
                elif k == "sqrt":
                    if a < 0.0:
                        raise DomainError("sqrt of a negative", node)
                    out = math.sqrt(a)
                else:  # log
                    if a <= 0.0:
                        raise DomainError("log of a nonpositive", node)
                    out = math.log(a)
            except OverflowError:
                raise DomainError("overflow in function evaluation", node) from None
        else:  # pragma: no cover
            raise TypeError(f"unknown node {type(node).__name__}")
        if out != out:  # NaN guard
            raise DomainError("evaluation produced NaN", node)
        memo[key] = out
        return out

    return ev(as_expr(e))


def evaluate_many(e, params=None, point=None):
    """Vectorized evaluation over numpy arrays of variable values.

    Unlike `evaluate`, domain violations do not raise: they yield inf/NaN
    under suppressed numpy warnings, which callers screen with their own
    guards.  Unbound symbols still raise.
    """
    params = params or {}
    point = {k: np.asarray(v, dtype=float) for k, v in (point or {}).items()}
    shape = np.broadcast_shapes(*(a.shape for a in point.values())) if point else ()
    memo = {}

    def ev(node):
        key = id(node)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if isinstance(node, Rational):
            out = float(node.value)
        elif isinstance(node, Param):
            try:
                out = float(params[node.name])
            except KeyError:
                raise UnboundSymbol(f"unbound parameter {node.name!r}") from None
        elif isinstance(node, Var):
            try:
                out = point[node.name]
            except KeyError:
                raise UnboundSymbol(f"unbound variable {node.name!r}") from None
        elif isinstance(node, Add):
            out = ev(node.terms[0])
            for t in node.terms[1:]:
                out = out + ev(t)
        elif isinstance(node, Mul):
            out = ev(node.factors[0])
            for f in node.factors[1:]:
                out = out * ev(f)
        elif isinstance(node, Div):
            out = ev(node.num) / ev(node.den)
        elif isinstance(node, Pow):
            e0 = node.exponent
            if isinstance(e0, Fraction) and e0.denominator == 1:
                out = np.power(ev(node.base), int(e0))
            else:
                out = np.power(ev(node.base), float(e0))
        else:
            a = ev(node.arg)
            k = node.kind
            if k == "exp":
                out = np.exp(a)
            elif k == "sinh":
                out = np.sinh(a)
            elif k == "cosh":
                out = np.cosh(a)
            elif k == "tanh":
                out = np.tanh(a)
            elif k == "tan":
                out = np.tan(a)
            elif k == "cot":
                out = np.cos(a) / np.sin(a)
            elif k == "csc":
                out = 1.0 / np.sin(a)
            elif k == "sqrt":
                out = np.sqrt(a)
            else:  # log
                out = np.log(a)
        memo[key] = out
        return out

    with np.errstate(all="ignore"):
        result = ev(as_expr(e))
    if np.ndim(result) == 0:
        return np.full(shape, float(result))
    return np.asarray(result, dtype=float)


def to_prefix(e):
    """Plain-text prefix rendering, for debugging (not a stable format)."""
    parts = []

    def walk(node):
        if isinstance(node, Rational):
            parts.append(str(node.value))
        elif isinstance(node, (Param, Var)):
            parts.append(node.name)
        elif isinstance(node, Add):
            parts.append("(+")
            for t in node.terms:
                parts.append(" ")
                walk(t)
            parts.append(")")
        elif isinstance(node, Mul):
            parts.append("(*")
            for f in node.factors:
                parts.append(" ")
                walk(f)
            parts.append(")")
        elif isinstance(node, Div):
            parts.append("(/ ")
            walk(node.num)
            parts.append(" ")
            walk(node.den)
            parts.append(")")
        elif isinstance(node, Pow):
            parts.append("(^ ")
            walk(node.base)
            e0 = node.exponent
            parts.append(f" {e0}" if isinstance(e0, Fraction) else f" {e0!r}")
            parts.append(")")
        else:
            parts.append(f"({node.kind} ")
            walk(node.arg)
            parts.append(")")

    walk(as_expr(e))
    return "".join(parts)
