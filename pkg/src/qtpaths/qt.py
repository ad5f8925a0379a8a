"""Exact arithmetic in q and t over the rationals.

QTPoly is a sparse polynomial with Fraction coefficients keyed by
(qexp, texp); QTRational is a quotient of two QTPolys kept in canonical
form, so equality is structural. No floating point anywhere.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import reduce

from .errors import DivisionByZero, NotPolynomial

_TERM_RE = re.compile(
    r"^\s*(?P<coeff>-?\d+(?:/\d+)?)?\s*\*?\s*"
    r"(?:q(?:\^(?P<qe>\d+))?)?\s*\*?\s*"
    r"(?:t(?:\^(?P<te>\d+))?)?\s*$"
)


class QTPoly:
    """Polynomial in q, t over the rationals.

    Terms map (qexp, texp) -> nonzero Fraction. Instances are treated as
    immutable after construction; all operations return new objects.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for (qe, te), c in terms.items():
                if qe < 0 or te < 0:
                    raise ValueError("negative exponent in QTPoly")
                c = Fraction(c)
                if c:
                    clean[(qe, te)] = c
        self.terms = clean
        self._hash = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero():
        return QTPoly()

    @staticmethod
    def one():
        return QTPoly({(0, 0): 1})

    @staticmethod
    def constant(c):
        return QTPoly({(0, 0): Fraction(c)})

    @staticmethod
    def var_q():
        return QTPoly({(1, 0): 1})

    @staticmethod
    def var_t():
        return QTPoly({(0, 1): 1})

    @staticmethod
    def monomial(qe, te, coeff=1):
        return QTPoly({(qe, te): Fraction(coeff)})

    @staticmethod
    def _coerce(x):
        if isinstance(x, QTPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return QTPoly({(0, 0): Fraction(x)})
        return NotImplemented

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    @property
    def is_one(self):
        return self.terms == {(0, 0): Fraction(1)}

    def q_degree(self):
        return max((qe for qe, _ in self.terms), default=-1)

    def t_degree(self):
        return max((te for _, te in self.terms), default=-1)

    def lex_leading(self):
        """Largest monomial under lex order (qexp, then texp), with coefficient."""
        m = max(self.terms)
        return m, self.terms[m]

    def __eq__(self, other):
        other = QTPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = QTPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        r = QTPoly.__new__(QTPoly)
        r.terms = out
        r._hash = None
        return r

    __radd__ = __add__

    def __neg__(self):
        r = QTPoly.__new__(QTPoly)
        r.terms = {m: -c for m, c in self.terms.items()}
        r._hash = None
        return r

    def __sub__(self, other):
        other = QTPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = QTPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for (qa, ta), ca in self.terms.items():
            for (qb, tb), cb in other.terms.items():
                m = (qa + qb, ta + tb)
                s = out.get(m, 0) + ca * cb
                if s:
                    out[m] = s
                else:
                    del out[m]
        r = QTPoly.__new__(QTPoly)
        r.terms = out
        r._hash = None
        return r

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative power of a QTPoly; use QTRational")
        result = QTPoly.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return QTPoly.zero()
        r = QTPoly.__new__(QTPoly)
        r.terms = {m: v * c for m, v in self.terms.items()}
        r._hash = None
        return r

    def exact_divide(self, other):
        """Exact polynomial quotient self / other; NotPolynomial on remainder."""
        other = QTPoly._coerce(other)
        if other.is_zero:
            raise DivisionByZero("division by zero polynomial")
        if self.is_zero:
            return QTPoly.zero()
        lead, lc = other.lex_leading()
        rem = dict(self.terms)
        out = {}
        while rem:
            m = max(rem)
            qe, te = m[0] - lead[0], m[1] - lead[1]
            if qe < 0 or te < 0:
                raise NotPolynomial(f"({self}) is not divisible by ({other})")
            c = rem[m] / lc
            out[(qe, te)] = c
            for (qb, tb), cb in other.terms.items():
                mm = (qe + qb, te + tb)
                s = rem.get(mm, 0) - c * cb
                if s:
                    rem[mm] = s
                else:
                    rem.pop(mm, None)
        return QTPoly(out)

    # -- substitutions -----------------------------------------------------

    def power_substitute(self, r):
        """q -> q^r, t -> t^r (the power-sum plethysm substitution)."""
        return QTPoly({(qe * r, te * r): c for (qe, te), c in self.terms.items()})

    def specialize(self, q=None, t=None):
        """Substitute rational values for q and/or t; returns a QTPoly."""
        out = {}
        for (qe, te), c in self.terms.items():
            v = c
            if q is not None:
                v *= Fraction(q) ** qe
                qe = 0
            if t is not None:
                v *= Fraction(t) ** te
                te = 0
            m = (qe, te)
            s = out.get(m, 0) + v
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return QTPoly(out)

    def swap_qt(self):
        """The (q, t) -> (t, q) involution."""
        return QTPoly({(te, qe): c for (qe, te), c in self.terms.items()})

    # -- text --------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (qe, te) in sorted(self.terms):
            c = self.terms[(qe, te)]
            mono = []
            if qe:
                mono.append("q" if qe == 1 else f"q^{qe}")
            if te:
                mono.append("t" if te == 1 else f"t^{te}")
            mono_s = "*".join(mono)
            a = abs(c)
            if not mono_s:
                body = str(a)
            elif a == 1:
                body = mono_s
            else:
                body = f"{a}*{mono_s}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"QTPoly({self})"

    @staticmethod
    def parse(text):
        """Parse the canonical rendering produced by __str__."""
        text = text.strip()
        if text == "0":
            return QTPoly.zero()
        text = text.replace("- ", "+-").replace("+ ", "+")
        out = {}
        for chunk in text.split("+"):
            chunk = chunk.strip()
            if not chunk:
                continue
            neg = chunk.startswith("-")
            if neg:
                chunk = chunk[1:]
            m = _TERM_RE.match(chunk)
            if not m or not chunk:
                raise ValueError(f"cannot parse polynomial term {chunk!r}")
            coeff = Fraction(m.group("coeff")) if m.group("coeff") else Fraction(1)
            qe = 0
            if "q" in chunk:
                qe = int(m.group("qe")) if m.group("qe") else 1
            te = 0
            if "t" in chunk:
                te = int(m.group("te")) if m.group("te") else 1
            if neg:
                coeff = -coeff
            key = (qe, te)
            out[key] = out.get(key, 0) + coeff
        return QTPoly(out)


ZERO = QTPoly.zero()
ONE = QTPoly.one()
Q = QTPoly.var_q()
T = QTPoly.var_t()


# ---------------------------------------------------------------------------
# gcd of bivariate polynomials (primitive PRS over Z[t][q])
# ---------------------------------------------------------------------------

def _u_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _u_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _u_trim(out)


def _u_scale(a, c):
    return [x * c for x in a] if c else []


def _u_sub(a, b):
    out = list(a) + [0] * (len(b) - len(a))
    for i, y in enumerate(b):
        out[i] -= y
    return _u_trim(out)


def _u_content(a):
    return reduce(math.gcd, (abs(x) for x in a), 0)


def _u_exact_div_int(a, c):
    return [x // c for x in a]


def _u_exact_div(a, b):
    """Exact division in Z[t]; inputs guaranteed divisible."""
    if not b:
        raise ZeroDivisionError
    if not a:
        return []
    out = [0] * (len(a) - len(b) + 1)
    rem = list(a)
    lb = b[-1]
    for i in range(len(out) - 1, -1, -1):
        c = rem[i + len(b) - 1]
        if c % lb:
            raise ArithmeticError("inexact division in Z[t]")
        c //= lb
        out[i] = c
        if c:
            for j, y in enumerate(b):
                rem[i + j] -= c * y
    if any(rem):
        raise ArithmeticError("inexact division in Z[t]")
    return _u_trim(out)


def _u_primitive(a):
    if not a:
        return []
    c = _u_content(a)
    a = _u_exact_div_int(a, c)
    if a[-1] < 0:
        a = [-x for x in a]
    return a


def _u_gcd(a, b):
    a, b = _u_trim(list(a)), _u_trim(list(b))
    if not a and not b:
        return []
    if not a:
        a, b = b, a
    if not b:
        return _u_scale(_u_primitive(a), _u_content(a))
    c = math.gcd(_u_content(a), _u_content(b))
    a, b = _u_primitive(a), _u_primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        # pseudo-remainder step, reduced to primitive part each round
        r = a
        lb = b[-1]
        while r and len(r) >= len(b):
            lr = r[-1]
            shifted = [0] * (len(r) - len(b)) + _u_scale(b, lr)
            r = _u_sub(_u_scale(r, lb), shifted)
        a, b = b, _u_primitive(r)
    return _u_scale(a, c)


def _b_trim(A):
    while A and not A[-1]:
        A.pop()
    return A


def _b_content(A):
    g = []
    for coeff in A:
        g = _u_gcd(g, coeff)
        if g == [1]:
            break
    return g


def _b_primitive(A):
    A = _b_trim([list(c) for c in A])
    if not A:
        return []
    cont = _b_content(A)
    return [_u_exact_div(c, cont) for c in A]


def _b_sub(A, B):
    out = [list(c) for c in A] + [[] for _ in range(len(B) - len(A))]
    for i, c in enumerate(B):
        out[i] = _u_sub(out[i], c)
    return _b_trim(out)


def _b_scale(A, u):
    return _b_trim([_u_mul(c, u) for c in A])


def _b_prem(A, B):
    """Pseudo-remainder of A by B in (Z[t])[q]."""
    r = [list(c) for c in A]
    lb = B[-1]
    while r and len(r) >= len(B):
        lr = r[-1]
        shifted = [[] for _ in range(len(r) - len(B))] + [_u_mul(c, lr) for c in B]
        r = _b_sub(_b_scale(r, lb), shifted)
    return r


def _poly_to_dense(p):
    """QTPoly with Fraction coefficients -> integer dense [q][t] lists."""
    denom = reduce(math.lcm, (c.denominator for c in p.terms.values()), 1)
    qd, td = p.q_degree(), p.t_degree()
    A = [[0] * (td + 1) for _ in range(qd + 1)]
    for (qe, te), c in p.terms.items():
        v = c * denom
        A[qe][te] = v.numerator
    return _b_trim([_u_trim(row) for row in A])


def _dense_to_poly(A):
    terms = {}
    for qe, row in enumerate(A):
        for te, c in enumerate(row):
            if c:
                terms[(qe, te)] = Fraction(c)
    return QTPoly(terms)


def qt_gcd(a, b):
    """A gcd of two QTPolys over Q[q,t], normalized to integer primitive form."""
    if a.is_zero:
        g = b
    elif b.is_zero:
        g = a
    else:
        A, B = _poly_to_dense(a), _poly_to_dense(b)
        contA, contB = _b_content(A), _b_content(B)
        c = _u_gcd(contA, contB)
        A = [_u_exact_div(x, contA) for x in A]
        B = [_u_exact_div(x, contB) for x in B]
        if len(A) < len(B):
            A, B = B, A
        while B:
            R = _b_prem(A, B)
            A, B = B, _b_primitive(R)
        g = _dense_to_poly(_b_scale(A, c))
    if g.is_zero:
        return g
    _, lc = g.lex_leading()
    if lc < 0:
        g = g.scale(-1)
    return g


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class QTRational:
    """Quotient of QTPolys in canonical form.

    Canonical: gcd(num, den) is constant, den has coprime integer
    coefficients, and the lex-leading coefficient of den is positive.
    Equality and hashing are therefore structural.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        num = QTPoly._coerce(num)
        den = ONE if den is None else QTPoly._coerce(den)
        if den.is_zero:
            raise DivisionByZero("zero denominator")
        if num.is_zero:
            self.num, self.den = ZERO, ONE
            self._hash = None
            return
        if not den.is_one:
            g = qt_gcd(num, den)
            if not g.is_one:
                num = num.exact_divide(g)
                den = den.exact_divide(g)
        # scale so den is integer-primitive with positive lex-leading coeff
        denoms = reduce(math.lcm, (c.denominator for c in den.terms.values()), 1)
        numers = reduce(math.gcd, (abs(c.numerator) for c in den.terms.values()), 0)
        s = Fraction(denoms, numers)
        _, lc = den.lex_leading()
        if lc < 0:
            s = -s
        if s != 1:
            num = num.scale(s)
            den = den.scale(s)
        self.num, self.den = num, den
        self._hash = None

    @staticmethod
    def _coerce(x):
        if isinstance(x, QTRational):
            return x
        if isinstance(x, (QTPoly, int, Fraction)):
            return QTRational(x)
        return NotImplemented

    @property
    def is_zero(self):
        return self.num.is_zero

    @property
    def is_polynomial(self):
        return self.den.is_one

    def to_poly(self):
        if not self.den.is_one:
            raise NotPolynomial(f"({self}) has a nontrivial denominator")
        return self.num

    def __eq__(self, other):
        other = QTRational._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return not self.num.is_zero

    def __add__(self, other):
        other = QTRational._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return QTRational(self.num + other.num, self.den)
        return QTRational(self.num * other.den + other.num * self.den,
                          self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        r = QTRational.__new__(QTRational)
        r.num, r.den, r._hash = -self.num, self.den, None
        return r

    def __sub__(self, other):
        other = QTRational._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = QTRational._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return QT_ZERO
        # cross-cancel to keep the final gcd small
        a_num, b_den = self.num, other.den
        g1 = qt_gcd(a_num, b_den)
        if not g1.is_one:
            a_num = a_num.exact_divide(g1)
            b_den = b_den.exact_divide(g1)
        b_num, a_den = other.num, self.den
        g2 = qt_gcd(b_num, a_den)
        if not g2.is_one:
            b_num = b_num.exact_divide(g2)
            a_den = a_den.exact_divide(g2)
        return QTRational(a_num * b_num, a_den * b_den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero:
            raise DivisionByZero("inverse of zero")
        return QTRational(self.den, self.num)

    def __truediv__(self, other):
        other = QTRational._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return QTRational._coerce(other) * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        return QTRational(self.num ** e, self.den ** e)

    def power_substitute(self, r):
        return QTRational(self.num.power_substitute(r), self.den.power_substitute(r))

    def specialize(self, q=None, t=None):
        den = self.den.specialize(q=q, t=t)
        if den.is_zero:
            raise DivisionByZero("denominator vanishes at specialization")
        return QTRational(self.num.specialize(q=q, t=t), den)

    def swap_qt(self):
        return QTRational(self.num.swap_qt(), self.den.swap_qt())

    def __str__(self):
        if self.den.is_one:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"QTRational({self})"


QT_ZERO = QTRational(ZERO)
QT_ONE = QTRational(ONE)


def exact_poly_quotient(a, b):
    """The QTPoly p with a = p * b; raises NotPolynomial when none exists.

    Accepts QTPoly or QTRational arguments; used to certify that ratio-form
    identity sides are genuinely polynomial.
    """
    a = QTRational._coerce(a)
    b = QTRational._coerce(b)
    if not b:
        raise DivisionByZero("exact_poly_quotient by zero")
    return (a / b).to_poly()


# ---------------------------------------------------------------------------
# classical q-analogues (polynomials in q alone)
# ---------------------------------------------------------------------------

_QBINOM_CACHE = {}


def q_analogue(n):
    """[n]_q = 1 + q + ... + q^(n-1); zero for n = 0."""
    if n < 0:
        raise ValueError("q_analogue of a negative integer")
    return QTPoly({(i, 0): 1 for i in range(n)})


def q_factorial(n):
    out = ONE
    for k in range(1, n + 1):
        out = out * q_analogue(k)
    return out


def q_binomial(n, k):
    """Gaussian binomial; 0 when k < 0 or k > n (schedule products rely on it)."""
    if k < 0 or k > n:
        return ZERO
    k = min(k, n - k)
    key = (n, k)
    got = _QBINOM_CACHE.get(key)
    if got is None:
        got = q_factorial(n).exact_divide(q_factorial(k) * q_factorial(n - k))
        _QBINOM_CACHE[key] = got
    return got


def q_pochhammer(x, n):
    """(x; q)_n = (1-x)(1-xq)...(1-xq^(n-1)) for a QTPoly x."""
    x = QTPoly._coerce(x)
    out = ONE
    for k in range(n):
        out = out * (ONE - x * QTPoly.monomial(k, 0))
    return out
