"""Exact Laurent-polynomial arithmetic in the variable x = t^(1/2).

Jones polynomials of links live in Z[t^(1/2), t^(-1/2)], so every
polynomial here is stored over the half-integer grid: the exponent e of
x stands for t^(e/2).  Coefficients are unbounded Python integers and
the representation is canonical (no leading/trailing zeros, the zero
polynomial is the empty coefficient vector), which makes equality and
hashing structural.

The module also provides the bracket-side polynomials in the variable A
(`BracketPoly`), rational-coefficient polynomials used by the exact
derivative operator, and residue arithmetic in the cyclotomic quotients
Z[x]/Phi_k for k in {1, 6, 8, 4}, which realise exact evaluation of a
Jones polynomial at t = 1, e^(2*pi*i/3), sqrt(-1) and -1 respectively
(x is the principal square root of t, a root of unity with half the
argument of t).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction


def _trim(val: int, coeffs: list) -> tuple[int, tuple]:
    lo, hi = 0, len(coeffs)
    while lo < hi and coeffs[lo] == 0:
        lo += 1
    while lo < hi and coeffs[hi - 1] == 0:
        hi -= 1
    if lo == hi:
        return 0, ()
    return val + lo, tuple(coeffs[lo:hi])


def _add(av, ac, bv, bc):
    if not ac:
        return bv, bc
    if not bc:
        return av, ac
    lo = min(av, bv)
    hi = max(av + len(ac), bv + len(bc))
    out = [0] * (hi - lo)
    for i, c in enumerate(ac):
        out[av - lo + i] += c
    for i, c in enumerate(bc):
        out[bv - lo + i] += c
    return _trim(lo, out)


def _mul(av, ac, bv, bc):
    if not ac or not bc:
        return 0, ()
    out = [0] * (len(ac) + len(bc) - 1)
    for i, c in enumerate(ac):
        if c:
            for j, d in enumerate(bc):
                if d:
                    out[i + j] += c * d
    return _trim(av + bv, out)


class _LaurentOps:
    """Shared ring operations for dense integer Laurent polynomials.

    Subclasses fix the display variable.  `val` is the exponent of the
    first entry of `coeffs`; an empty tuple is the zero polynomial.
    """

    __slots__ = ()
    val: int
    coeffs: tuple

    def _make(self, val, coeffs):
        return type(self)(val, coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_unit(self) -> bool:
        """True for +-x^e, the invertible elements of the ring."""
        return len(self.coeffs) == 1 and self.coeffs[0] in (1, -1)

    @property
    def min_exp(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no exponents")
        return self.val

    @property
    def max_exp(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no exponents")
        return self.val + len(self.coeffs) - 1

    def coeff(self, e: int) -> int:
        i = e - self.val
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def terms(self):
        """Iterate (exponent, coefficient) pairs, ascending, zeros skipped."""
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.val + i, c

    def __add__(self, other):
        if isinstance(other, int):
            other = self._make(0, (other,))
        if type(other) is not type(self):
            return NotImplemented
        return self._make(*_add(self.val, self.coeffs, other.val, other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return self._make(self.val, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, int):
            other = self._make(0, (other,))
        if type(other) is not type(self):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self._make(self.val, tuple(other * c for c in self.coeffs))
        if type(other) is not type(self):
            return NotImplemented
        return self._make(*_mul(self.val, self.coeffs, other.val, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_unit():
                raise ValueError("negative power of a non-unit Laurent polynomial")
            base = self._make(-self.val, self.coeffs)
            return base ** (-n)
        result = self._make(0, (1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, e: int):
        """Multiply by x^e (or A^e): shift every exponent by e."""
        if not self.coeffs:
            return self
        return self._make(self.val + e, self.coeffs)

    def reversed_variable(self):
        """Substitute the variable by its inverse (x -> x^-1)."""
        if not self.coeffs:
            return self
        return self._make(-(self.val + len(self.coeffs) - 1), tuple(reversed(self.coeffs)))


@dataclass(init=False, eq=True, unsafe_hash=True)
class HalfLaurent(_LaurentOps):
    """Integer Laurent polynomial in x = t^(1/2).

    >>> p = HalfLaurent.t(1) - 1          # t - 1
    >>> (p * p).format()
    '1 - 2*t + t^2'
    """

    val: int
    coeffs: tuple

    def __init__(self, val: int = 0, coeffs=()):
        v, c = _trim(val, list(coeffs))
        self.val = v
        self.coeffs = c

    @classmethod
    def zero(cls) -> "HalfLaurent":
        return cls(0, ())

    @classmethod
    def one(cls) -> "HalfLaurent":
        return cls(0, (1,))

    @classmethod
    def x(cls, e: int = 1, c: int = 1) -> "HalfLaurent":
        """The monomial c * x^e = c * t^(e/2)."""
        return cls(e, (c,))

    @classmethod
    def t(cls, e: int = 1, c: int = 1) -> "HalfLaurent":
        """The monomial c * t^e."""
        return cls(2 * e, (c,))

    @classmethod
    def from_dict(cls, d: dict) -> "HalfLaurent":
        if not d:
            return cls.zero()
        lo = min(d)
        hi = max(d)
        out = [0] * (hi - lo + 1)
        for e, c in d.items():
            out[e - lo] += c
        return cls(lo, out)

    @classmethod
    def from_t_coeffs(cls, d: dict) -> "HalfLaurent":
        """Build from {exponent of t: coefficient} with integer exponents."""
        return cls.from_dict({2 * e: c for e, c in d.items()})

    def mirror_t(self) -> "HalfLaurent":
        """The substitution t -> t^(-1), i.e. x -> x^(-1)."""
        return self.reversed_variable()

    def has_only_integer_t_powers(self) -> bool:
        return all(e % 2 == 0 for e, _ in self.terms())

    def format(self) -> str:
        return format_half_laurent(self)

    def __repr__(self):
        return f"HalfLaurent({self.format()!r})"


@dataclass(init=False, eq=True, unsafe_hash=True)
class BracketPoly(_LaurentOps):
    """Integer Laurent polynomial in the Kauffman bracket variable A."""

    val: int
    coeffs: tuple

    def __init__(self, val: int = 0, coeffs=()):
        v, c = _trim(val, list(coeffs))
        self.val = v
        self.coeffs = c

    @classmethod
    def zero(cls) -> "BracketPoly":
        return cls(0, ())

    @classmethod
    def one(cls) -> "BracketPoly":
        return cls(0, (1,))

    @classmethod
    def a(cls, e: int = 1, c: int = 1) -> "BracketPoly":
        return cls(e, (c,))

    def format(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in self.terms():
            body = "A" if e == 1 else ("1" if e == 0 else f"A^{e}")
            if abs(c) != 1 or e == 0:
                body = f"{abs(c)}" if e == 0 else f"{abs(c)}*{body}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"BracketPoly({self.format()!r})"


@dataclass(init=False, eq=True, unsafe_hash=True)
class ConwayPoly(_LaurentOps):
    """Integer polynomial in the Conway variable z.

    Skein computations never produce negative powers of z, so `val` stays
    nonnegative for genuine links; the Laurent machinery is reused only
    for its dense arithmetic.
    """

    val: int
    coeffs: tuple

    def __init__(self, val: int = 0, coeffs=()):
        v, c = _trim(val, list(coeffs))
        self.val = v
        self.coeffs = c

    @classmethod
    def zero(cls) -> "ConwayPoly":
        return cls(0, ())

    @classmethod
    def one(cls) -> "ConwayPoly":
        return cls(0, (1,))

    @classmethod
    def z(cls, e: int = 1, c: int = 1) -> "ConwayPoly":
        return cls(e, (c,))

    def coefficient(self, degree: int) -> int:
        return self.coeff(degree)

    def degree(self) -> int:
        return self.max_exp

    def eval_residue(self, value: "CyclotomicResidue") -> "CyclotomicResidue":
        """Evaluate at z = value inside a cyclotomic residue ring."""
        out = CyclotomicResidue.constant(value.order, 0)
        for e, c in self.terms():
            out = out + (value ** e) * c
        return out

    def format(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in self.terms():
            body = "z" if e == 1 else ("1" if e == 0 else f"z^{e}")
            if abs(c) != 1 or e == 0:
                body = f"{abs(c)}" if e == 0 else f"{abs(c)}*{body}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"ConwayPoly({self.format()!r})"


LOOP_FACTOR = BracketPoly(-2, (-1, 0, 0, 0, -1))  # -A^-2 - A^2, one extra circle


def normalize_bracket(bracket: BracketPoly, writhe: int) -> HalfLaurent:
    """Turn a Kauffman bracket into the Jones polynomial.

    Multiplies by (-A)^(-3w) and substitutes x = t^(1/2) = A^(-2), so the
    A-exponent e becomes the x-exponent -e/2.  Raises ValueError if any
    exponent of the writhe-corrected bracket is odd, which signals an
    inconsistent diagram/writhe pair.
    """
    f = bracket.shift(-3 * writhe)
    if writhe % 2:
        f = -f
    out = {}
    for e, c in f.terms():
        if e % 2:
            raise ValueError(f"parity violation: A-exponent {e} after writhe correction")
        out[-e // 2] = c
    return HalfLaurent.from_dict(out)


def exact_divide(p: HalfLaurent, d: HalfLaurent):
    """Exact quotient p/d over Z[x, x^-1], or None when d does not divide p.

    Divides by iterated elimination of the lowest-order term; the first
    step that would need a fractional coefficient (or a quotient wider
    than the degrees allow) reports failure.
    """
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return HalfLaurent.zero()
    q: dict[int, int] = {}
    r = p
    dw = len(d.coeffs)
    d_lead = d.coeffs[0]
    while not r.is_zero():
        if len(r.coeffs) < dw:
            return None
        c = r.coeffs[0]
        if c % d_lead:
            return None
        k = c // d_lead
        e = r.val - d.val
        q[e] = k
        r = r - HalfLaurent.x(e, k) * d
    return HalfLaurent.from_dict(q)


@dataclass(init=False, eq=True, unsafe_hash=True)
class RationalHalfLaurent:
    """Laurent polynomial in x = t^(1/2) with Fraction coefficients.

    Only what the derivative operator d/dt needs: construction from a
    HalfLaurent, the operator itself, and evaluation at x = 1.
    """

    val: int
    coeffs: tuple

    def __init__(self, val: int = 0, coeffs=()):
        coeffs = [Fraction(c) for c in coeffs]
        v, c = _trim(val, coeffs)
        self.val = v
        self.coeffs = c

    @classmethod
    def from_half_laurent(cls, p: HalfLaurent) -> "RationalHalfLaurent":
        return cls(p.val, p.coeffs)

    def terms(self):
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.val + i, c

    def d_dt(self) -> "RationalHalfLaurent":
        """Differentiate with respect to t = x^2: d/dt = (1/2) x^(-1) d/dx."""
        out: dict[int, Fraction] = {}
        for e, c in self.terms():
            if e:
                out[e - 2] = out.get(e - 2, Fraction(0)) + c * Fraction(e, 2)
        if not out:
            return RationalHalfLaurent()
        lo, hi = min(out), max(out)
        return RationalHalfLaurent(lo, [out.get(i, Fraction(0)) for i in range(lo, hi + 1)])

    def eval_at_one(self) -> Fraction:
        return sum((c for c in self.coeffs), Fraction(0))


def derivative_at_one(p: HalfLaurent, order: int) -> Fraction:
    """Exact value of (d/dt)^order applied to p, evaluated at t = 1."""
    if order < 0:
        raise ValueError("derivative order must be >= 0")
    q = RationalHalfLaurent.from_half_laurent(p)
    for _ in range(order):
        q = q.d_dt()
    return q.eval_at_one()


# ---------------------------------------------------------------------------
# Cyclotomic residue arithmetic.
#
# Evaluating V_L at the four special points means sending x to a root of
# unity: t = 1 -> x = 1 (order 1), t = e^(2*pi*i/3) -> x = e^(pi*i/3)
# (order 6), t = sqrt(-1) -> x = e^(pi*i/4) (order 8), t = -1 -> x = i
# (order 4).  Arithmetic happens in Z[x]/Phi_k, where equality of
# residues is equivalent to equality of the complex values.
# ---------------------------------------------------------------------------

_PHI_DEGREE = {1: 1, 4: 2, 6: 2, 8: 4}

# Phi_k as a rewrite of the top power: x^deg = (tail), tail listed from x^0.
_CYCLO_TAIL = {
    1: (1,),            # x = 1
    4: (-1, 0),         # x^2 = -1
    6: (-1, 1),         # x^2 = x - 1
    8: (-1, 0, 0, 0),   # x^4 = -1
}

POINT_ORDER = {"1": 1, "omega": 6, "i": 8, "-1": 4}


def _cyclo_reduce(order: int, vec: list) -> tuple:
    deg = _PHI_DEGREE[order]
    tail = _CYCLO_TAIL[order]
    for i in range(len(vec) - 1, deg - 1, -1):
        c = vec[i]
        if c:
            vec[i] = 0
            for j, tc in enumerate(tail):
                vec[i - deg + j] += c * tc
    vec = vec[:deg]
    vec += [0] * (deg - len(vec))
    return tuple(vec)


@dataclass(frozen=True)
class CyclotomicResidue:
    """Element of Z[x]/Phi_k for k in {1, 4, 6, 8}, as a residue vector.

    The vector lists coefficients of x^0 .. x^(phi(k)-1).  The class root
    is x = e^(2*pi*i/k); residue equality is value equality there.
    """

    order: int
    vec: tuple

    @classmethod
    def from_x_dict(cls, order: int, d: dict) -> "CyclotomicResidue":
        if order not in _PHI_DEGREE:
            raise ValueError(f"unsupported cyclotomic order {order}")
        vec = [0] * order
        for e, c in d.items():
            vec[e % order] += c
        return cls(order, _cyclo_reduce(order, vec))

    @classmethod
    def constant(cls, order: int, c: int) -> "CyclotomicResidue":
        return cls.from_x_dict(order, {0: c})

    def _check(self, other):
        if self.order != other.order:
            raise ValueError("mixed cyclotomic orders")

    def __add__(self, other):
        if isinstance(other, int):
            other = CyclotomicResidue.constant(self.order, other)
        self._check(other)
        return CyclotomicResidue(self.order, tuple(a + b for a, b in zip(self.vec, other.vec)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicResidue(self.order, tuple(-a for a in self.vec))

    def __sub__(self, other):
        if isinstance(other, int):
            other = CyclotomicResidue.constant(self.order, other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicResidue(self.order, tuple(other * a for a in self.vec))
        self._check(other)
        out = [0] * (2 * len(self.vec))
        for i, a in enumerate(self.vec):
            if a:
                for j, b in enumerate(other.vec):
                    if b:
                        out[i + j] += a * b
        return CyclotomicResidue(self.order, _cyclo_reduce(self.order, out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative residue powers not supported")
        result = CyclotomicResidue.constant(self.order, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "CyclotomicResidue":
        """Complex conjugation, x -> x^(-1) = x^(k-1)."""
        d: dict[int, int] = {}
        for j, c in enumerate(self.vec):
            if c:
                e = (-j) % self.order
                d[e] = d.get(e, 0) + c
        return CyclotomicResidue.from_x_dict(self.order, d)

    def norm_squared(self) -> "CyclotomicResidue":
        """The residue of |value|^2, i.e. self times its conjugate."""
        return self * self.conjugate()

    def as_int(self):
        """The residue as a plain integer, or None if not constant."""
        if any(self.vec[1:]):
            return None
        return self.vec[0]

    def is_zero(self) -> bool:
        return not any(self.vec)


def eval_special(p: HalfLaurent, point: str) -> CyclotomicResidue:
    """Exact evaluation of p at a special value of t.

    `point` is one of "1", "omega" (t = e^(2*pi*i/3)), "i" (t = sqrt(-1))
    or "-1"; x maps to the principal-branch square root of t, so the
    residue lives in the cyclotomic ring of order 1, 6, 8 or 4.
    """
    if point not in POINT_ORDER:
        raise ValueError(f"unknown special point {point!r}")
    return CyclotomicResidue.from_x_dict(POINT_ORDER[point], dict(p.terms()))


# ---------------------------------------------------------------------------
# Canonical text rendering and parsing.
#
# Terms are printed in ascending t-exponent order as c*t^(e/2); integer
# powers of t drop the /2 and the parentheses: "t^-1 - 1 + 2*t" but
# "-1 + 2*t^(1/2)".
# ---------------------------------------------------------------------------


def format_half_laurent(p: HalfLaurent) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for e, c in p.terms():
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            if e % 2 == 0:
                power = "t" if e == 2 else f"t^{e // 2}"
            else:
                power = f"t^({e}/2)"
            body = power if mag == 1 else f"{mag}*{power}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


_TERM_RE = re.compile(
    r"""^
    (?:(?P<coeff>\d+)\s*\*?\s*)?              # optional magnitude
    (?:
        (?P<var>t)
        (?:\^(?:
            (?P<intexp>-?\d+)
            |
            \(\s*(?P<halfnum>-?\d+)\s*/\s*2\s*\)
        ))?
    )?
    $""",
    re.VERBOSE,
)


def parse_half_laurent(text: str) -> HalfLaurent:
    """Parse the output of format_half_laurent back into a polynomial."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial text")
    if s == "0":
        return HalfLaurent.zero()
    # Normalise into signed chunks.
    s = s.replace("-", " - ").replace("+", " + ")
    # Undo the damage inside exponents like t^(-5/2) and t^-1.
    s = re.sub(r"\^\s*\(\s*\-\s*", "^(-", s)
    s = re.sub(r"\^\s*\-\s*", "^-", s)
    tokens = s.split()
    sign = 1
    expect_term = True
    out: dict[int, int] = {}
    for tok in tokens:
        if tok in ("+", "-"):
            if not expect_term:
                sign = 1 if tok == "+" else -1
                expect_term = True
            else:
                sign = sign if tok == "+" else -sign
            continue
        m = _TERM_RE.match(tok)
        if not m or (m.group("coeff") is None and m.group("var") is None):
            raise ValueError(f"cannot parse term {tok!r}")
        mag = int(m.group("coeff")) if m.group("coeff") else 1
        if m.group("var") is None:
            e = 0
        elif m.group("intexp") is not None:
            e = 2 * int(m.group("intexp"))
        elif m.group("halfnum") is not None:
            e = int(m.group("halfnum"))
        else:
            e = 2
        out[e] = out.get(e, 0) + sign * mag
        sign = 1
        expect_term = False
    if expect_term:
        raise ValueError(f"dangling sign in {text!r}")
    return HalfLaurent.from_dict(out)


# Frequently used building blocks.

def t_minus_one() -> HalfLaurent:
    return HalfLaurent.from_t_coeffs({1: 1, 0: -1})


def unlink_jones(components: int) -> HalfLaurent:
    """(-t^(1/2) - t^(-1/2))^(r-1), the Jones polynomial of an r-unlink."""
    if components < 1:
        raise ValueError("a link needs at least one component")
    return HalfLaurent.from_dict({1: -1, -1: -1}) ** (components - 1)


def theorem_difference(n: int) -> HalfLaurent:
    """(-1)^(n+1) * (t-1)^n * (t^2+t+1) * (t^2+1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    g = HalfLaurent.from_t_coeffs({2: 1, 1: 1, 0: 1}) * HalfLaurent.from_t_coeffs({2: 1, 0: 1})
    d = t_minus_one() ** n * g
    return d if n % 2 == 1 else -d
