"""Sparse multivariate polynomials over an exact coefficient field.

A Poly is a dict from exponent tuples to nonzero coefficients, tagged with
its variable tuple and its field. The field object only has to provide
zero/one/from_int/coerce/characteristic plus elements supporting +, -, *, /,
==, bool; both field towers and fraction fields of quotient rings satisfy
that, so the same polynomial (and Groebner) code runs over either.

The surface syntax accepted by parse_poly and emitted by poly_str:

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := atom ['^' uint]
    atom   := uint | name | '(' expr ')'

No implicit multiplication, no doubled unary minus; '/' is scalar division,
so the divisor must evaluate to a nonzero constant. Names resolve to ring
variables or to field constants (rational-function variables, extension
generators). Printing is deterministic: terms in descending graded-reverse-
lex, canonical coefficient text, and it round-trips through the parser.
"""

from __future__ import annotations

from fractions import Fraction

from . import expvec
from .errors import (
    DivisionByZero,
    FieldMismatch,
    NameCollision,
    PolySyntaxError,
    PositiveCharacteristic,
    UnknownSymbol,
    UnknownVariable,
)
from .fields import FieldElement, FieldTower
from .orders import grevlex_order


class Poly:
    """Immutable-by-convention sparse polynomial."""

    __slots__ = ("field", "vars", "terms")

    def __init__(self, field, vars, terms):
        self.field = field
        self.vars = vars
        self.terms = terms

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, field, vars) -> "Poly":
        return cls(field, tuple(vars), {})

    @classmethod
    def constant(cls, field, vars, c) -> "Poly":
        c = field.coerce(c)
        vars = tuple(vars)
        if not c:
            return cls(field, vars, {})
        return cls(field, vars, {(0,) * len(vars): c})

    @classmethod
    def gen(cls, field, vars, name) -> "Poly":
        vars = tuple(vars)
        if name not in vars:
            raise UnknownVariable("no variable %r in %s" % (name, vars))
        e = tuple(1 if v == name else 0 for v in vars)
        return cls(field, vars, {e: field.one()})

    @classmethod
    def from_terms(cls, field, vars, terms) -> "Poly":
        vars = tuple(vars)
        clean = {}
        for e, c in terms.items():
            c = field.coerce(c)
            if c:
                clean[tuple(e)] = c
        return cls(field, vars, clean)

    # -- basic structure -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        if not self.terms:
            return True
        z = (0,) * len(self.vars)
        return len(self.terms) == 1 and z in self.terms

    def constant_coefficient(self):
        z = (0,) * len(self.vars)
        return self.terms.get(z, self.field.zero())

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        i = self._var_index(name)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def _var_index(self, name):
        try:
            return self.vars.index(name)
        except ValueError:
            raise UnknownVariable("no variable %r in %s" % (name, self.vars)) from None

    def lt(self, order):
        """Leading (exponent, coefficient) under the given order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def coeff_of_power(self, name: str, k: int) -> "Poly":
        """Coefficient of name^k, as a polynomial in the same variables."""
        i = self._var_index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i] == k:
                out[e[:i] + (0,) + e[i + 1:]] = c
        return Poly(self.field, self.vars, out)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.field != self.field or other.vars != self.vars:
                raise FieldMismatch("polynomials from different rings")
            return other
        try:
            return Poly.constant(self.field, self.vars, other)
        except (TypeError, FieldMismatch):
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                s = v + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Poly(self.field, self.vars, out)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __neg__(self):
        return Poly(self.field, self.vars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Poly):
            o = self._coerce(other)
            out = {}
            a, b = self.terms, o.terms
            if len(a) > len(b):
                a, b = b, a
            bitems = list(b.items())
            for e, c in a.items():
                expvec.axpy(out, bitems, e, c)
            return Poly(self.field, self.vars, out)
        try:
            c = self.field.coerce(other)
        except (TypeError, FieldMismatch):
            return NotImplemented
        if not c:
            return Poly(self.field, self.vars, {})
        return Poly(self.field, self.vars, {e: v * c for e, v in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Scalar division only."""
        if isinstance(other, Poly):
            if not other.is_constant():
                raise DivisionByZero("polynomial division is not defined here; divide by a constant")
            other = other.constant_coefficient()
        c = self.field.coerce(other)
        if not c:
            raise DivisionByZero("division by zero")
        return self * c.inverse()

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = Poly.constant(self.field, self.vars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return (
                self.field == other.field
                and self.vars == other.vars
                and self.terms == other.terms
            )
        if isinstance(other, (int, Fraction, FieldElement)):
            o = self._coerce(other)
            return o is not None and self.terms == o.terms
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        return poly_str(self)

    def __repr__(self):
        return "Poly(%s)" % poly_str(self)

    # -- calculus and substitution ----------------------------------------

    def partial(self, name: str) -> "Poly":
        """Formal partial derivative."""
        i = self._var_index(name)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k == 0:
                continue
            c2 = c * self.field.from_int(k)
            if c2:
                out[e[:i] + (k - 1,) + e[i + 1:]] = c2
        return Poly(self.field, self.vars, out)

    def substitute(self, mapping) -> "Poly":
        """Substitute polynomials (or scalars) for variables, same ring;
        unmentioned variables stay themselves."""
        images = {}
        for name, val in mapping.items():
            i = self._var_index(name)
            if not isinstance(val, Poly):
                val = Poly.constant(self.field, self.vars, val)
            elif val.field != self.field or val.vars != self.vars:
                raise FieldMismatch("substitution value from a different ring")
            images[i] = val
        for i, v in enumerate(self.vars):
            if i not in images:
                images[i] = Poly.gen(self.field, self.vars, v)
        return self._rebuild(self.field, self.vars, images, lambda c: c)

    def map_vars(self, new_field, new_vars, images, coeff_map) -> "Poly":
        """General ring map: variables to given polynomials, coefficients
        through coeff_map. images maps each old variable name to a Poly over
        (new_field, new_vars); omitted variables must not occur."""
        idx_images = {}
        for name, val in images.items():
            idx_images[self._var_index(name)] = val
        return self._rebuild(new_field, tuple(new_vars), idx_images, coeff_map)

    def _rebuild(self, field, vars, idx_images, coeff_map):
        pows = {}

        def power(i, k):
            cache = pows.setdefault(i, [Poly.constant(field, vars, 1)])
            while len(cache) <= k:
                cache.append(cache[-1] * idx_images[i])
            return cache[k]

        acc = Poly.zero(field, vars)
        for e, c in self.terms.items():
            term = Poly.constant(field, vars, coeff_map(c))
            for i, k in enumerate(e):
                if k == 0:
                    continue
                if i not in idx_images:
                    raise UnknownVariable(
                        "no image for variable %r" % self.vars[i]
                    )
                term = term * power(i, k)
            acc = acc + term
        return acc

    def evaluate(self, assignment):
        """Full evaluation at field elements; returns a field element."""
        out = self.field.zero()
        vals = [assignment[v] for v in self.vars]
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    term = term * vals[i] ** k
            out = out + term
        return out


# -- parsing ------------------------------------------------------------


class _Tokens:
    def __init__(self, text):
        self.text = text
        self.pos = 0
        self.toks = []
        self._scan()
        self.i = 0

    def _scan(self):
        text, n = self.text, len(self.text)
        pos = 0
        while pos < n:
            ch = text[pos]
            if ch.isspace():
                pos += 1
                continue
            if ch.isdigit():
                j = pos
                while j < n and text[j].isdigit():
                    j += 1
                self.toks.append(("INT", text[pos:j], pos))
                pos = j
                continue
            if ch.isalpha() or ch == "_":
                j = pos
                while j < n and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                self.toks.append(("NAME", text[pos:j], pos))
                pos = j
                continue
            if ch in "+-*/^()":
                self.toks.append((ch, ch, pos))
                pos += 1
                continue
            raise PolySyntaxError("unexpected character %r" % ch, pos)
        self.toks.append(("END", "", n))

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t


class _Parser:
    def __init__(self, text, vars, field):
        self.toks = _Tokens(text)
        self.vars = tuple(vars)
        self.field = field

    def parse(self) -> Poly:
        p = self.expr()
        kind, _, pos = self.toks.peek()
        if kind != "END":
            raise PolySyntaxError("trailing input", pos)
        return p

    def expr(self) -> Poly:
        negate = False
        if self.toks.peek()[0] == "-":
            self.toks.next()
            negate = True
        p = self.term()
        if negate:
            p = -p
        while True:
            kind, _, _ = self.toks.peek()
            if kind == "+":
                self.toks.next()
                p = p + self.term()
            elif kind == "-":
                self.toks.next()
                p = p - self.term()
            else:
                return p

    def term(self) -> Poly:
        p = self.factor()
        while True:
            kind, _, pos = self.toks.peek()
            if kind == "*":
                self.toks.next()
                p = p * self.factor()
            elif kind == "/":
                self.toks.next()
                q = self.factor()
                if not q.is_constant():
                    raise PolySyntaxError("division only by field constants", pos)
                if q.is_zero():
                    raise DivisionByZero("division by zero in input")
                p = p / q.constant_coefficient()
            else:
                return p

    def factor(self) -> Poly:
        p = self.atom()
        if self.toks.peek()[0] == "^":
            self.toks.next()
            kind, val, pos = self.toks.next()
            if kind != "INT":
                raise PolySyntaxError("exponent must be a nonnegative integer", pos)
            e = int(val)
            if e > 9999:
                raise PolySyntaxError("exponent too large", pos)
            p = p ** e
        return p

    def atom(self) -> Poly:
        kind, val, pos = self.toks.next()
        if kind == "INT":
            return Poly.constant(self.field, self.vars, int(val))
        if kind == "NAME":
            if val in self.vars:
                return Poly.gen(self.field, self.vars, val)
            sym = None
            if hasattr(self.field, "symbol_or_none"):
                sym = self.field.symbol_or_none(val)
            if sym is None:
                raise UnknownSymbol("unknown symbol %r" % val, pos)
            return Poly.constant(self.field, self.vars, sym)
        if kind == "(":
            p = self.expr()
            kind2, _, pos2 = self.toks.next()
            if kind2 != ")":
                raise PolySyntaxError("expected ')'", pos2)
            return p
        raise PolySyntaxError("expected a value, got %r" % (val or kind), pos)


def parse_poly(text: str, vars, field) -> Poly:
    """Parse the surface syntax into a Poly over (field, vars)."""
    vars = tuple(vars)
    if len(set(vars)) != len(vars):
        raise NameCollision("repeated variable names in %s" % (vars,))
    if isinstance(field, FieldTower):
        for v in vars:
            if v in field.constant_names() or v == "Z":
                raise NameCollision("variable %r collides with a field constant" % v)
    p = _Parser(text, vars, field).parse()
    if isinstance(field, BoundConstants):
        p = Poly(field.field, p.vars, p.terms)
    return p


def parse_field_element(text: str, field):
    """Parse a constants-only expression into a field element."""
    p = _Parser(text, (), field).parse()
    return p.constant_coefficient()


def parse_minpoly(text: str, field) -> Poly:
    """Parse a defining polynomial written in the reserved variable Z."""
    return _Parser(text, ("Z",), field).parse()


class BoundConstants:
    """A field wrapper that resolves extra names to fixed elements.

    Lets expressions mention bound parameters as if they were named
    constants of the field; everything else delegates. Intended for
    transient parsing only: resulting elements belong to the wrapped
    field."""

    def __init__(self, field, bindings):
        self.field = field
        self.bindings = dict(bindings)

    def symbol_or_none(self, name):
        if name in self.bindings:
            return self.bindings[name]
        return self.field.symbol_or_none(name)

    def constant_names(self):
        return tuple(self.field.constant_names()) + tuple(self.bindings)

    def __getattr__(self, attr):
        return getattr(self.field, attr)


# -- printing -------------------------------------------------------------


def _coeff_text(c):
    s = str(c)
    if " " in s:
        return "+", "(%s)" % s
    if s.startswith("-"):
        return "-", s[1:]
    return "+", s


def _mono_text(vars, e):
    parts = []
    for v, k in zip(vars, e):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append("%s^%d" % (v, k))
    return "*".join(parts)


def poly_str(p: Poly) -> str:
    if not p.terms:
        return "0"
    order = grevlex_order(p.vars)
    out = []
    for e in sorted(p.terms, key=order.key, reverse=True):
        sign, body = _coeff_text(p.terms[e])
        mono = _mono_text(p.vars, e)
        if mono:
            if body == "1":
                text = mono
            else:
                text = "%s*%s" % (body, mono)
        else:
            text = body
        out.append((sign, text))
    sign, text = out[0]
    acc = ("-" + text) if sign == "-" else text
    for sign, text in out[1:]:
        acc += (" - " if sign == "-" else " + ") + text
    return acc


# -- exact division and matrix rank ----------------------------------------


def exact_div(f: Poly, g: Poly, order=None) -> Poly:
    """Quotient f/g when the division is exact; internal error otherwise."""
    if g.is_zero():
        raise DivisionByZero("exact division by zero")
    if f.is_zero():
        return f
    if order is None:
        order = grevlex_order(f.vars)
    gl, gc = g.lt(order)
    gtail = [(e, c) for e, c in g.terms.items() if e != gl]
    work = dict(f.terms)
    q = {}
    while work:
        m = max(work, key=order.key)
        c = work.pop(m)
        if not expvec.exp_divides(gl, m):
            raise ArithmeticError("non-exact polynomial division")
        u = expvec.exp_sub(m, gl)
        qc = c / gc
        q[u] = qc
        if gtail:
            expvec.axpy(work, gtail, u, -qc)
    return Poly(f.field, f.vars, q)


def poly_matrix_rank(rows) -> int:
    """Rank of a matrix of Polys over the fraction field, by fraction-free
    (Bareiss) elimination with exact divisions."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    M = [list(r) for r in rows]
    prev = None
    rank = 0
    row = 0
    for col in range(n):
        if row >= m:
            break
        piv = -1
        for i in range(row, m):
            if M[i][col].terms:
                piv = i
                break
        if piv < 0:
            continue
        M[row], M[piv] = M[piv], M[row]
        p = M[row][col]
        for i in range(row + 1, m):
            for j in range(col + 1, n):
                t = M[i][j] * p - M[i][col] * M[row][j]
                M[i][j] = t if prev is None else exact_div(t, prev)
            M[i][col] = Poly.zero(p.field, p.vars)
        prev = p
        rank += 1
        row += 1
    return rank


def jacobian_rank(fs) -> int:
    """Rank of the Jacobian of fs with respect to all their variables,
    over the rational function field. The rank of the Jacobian equals the
    transcendence degree of the subfield the fs generate; characteristic
    zero only (PositiveCharacteristic otherwise)."""
    fs = tuple(fs)
    if not fs:
        return 0
    field = fs[0].field
    if field.characteristic != 0:
        raise PositiveCharacteristic(
            "jacobian rank criterion requires characteristic zero"
        )
    vars = fs[0].vars
    for f in fs:
        if f.field != field or f.vars != vars:
            raise FieldMismatch("jacobian of polynomials from different rings")
    rows = [[f.partial(v) for v in vars] for f in fs]
    return poly_matrix_rank(rows)


def extend_field(K, name: str, minpoly: Poly):
    """Simple algebraic extension of a field tower.

    minpoly is a univariate monic Poly over K (in any single variable name,
    conventionally Z) of degree at least 2. Irreducibility is only probed by
    the trial-root scan of the tower layer; the result records the assumption.
    """
    if len(minpoly.vars) != 1:
        raise NameCollision("minimal polynomial must be univariate")
    coeffs = []
    for k in range(minpoly.total_degree() + 1):
        coeffs.append(minpoly.coeff_of_power(minpoly.vars[0], k).constant_coefficient())
    return K.with_extension(name, coeffs)
