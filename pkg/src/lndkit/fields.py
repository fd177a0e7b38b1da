"""Exact arithmetic in towers of fields.

A tower starts at a prime field (the rationals or GF(p) for prime p), adds
zero or more rational-function layers, then zero or more simple algebraic
extensions given by monic minimal polynomials over the tower built so far.
Rational-function layers are iterated univariate, so a fraction is always a
quotient of univariate polynomials over the layer below and canonical forms
need only univariate gcd: fractions are reduced, denominators monic, and
extension elements are kept reduced modulo the minimal polynomial. Equality
of elements is therefore structural equality of representations.

Irreducibility of minimal polynomials is not proved. Construction runs a
trial-root scan over small tower elements and the extension is trusted (and
reported as an assumption) thereafter; if arithmetic later meets a zero
divisor, ReducibleExtension is raised.

Representation, by layer kind:
  base Q      Fraction
  base GF(p)  int in [0, p)
  ratfunc     (num, den): coefficient tuples (low to high) over the layer
              below, den monic, gcd(num, den) = 1, zero polynomial = ()
  ext         coefficient tuple over the layer below, degree < deg(minpoly)
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    DivisionByZero,
    FieldMismatch,
    NameCollision,
    NonMonic,
    ReducibleExtension,
    UnsupportedField,
    ZeroElement,
)

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _plain_fraction(text):
    return text and all(ch.isdigit() or ch == "/" for ch in text)


def _simple_atom(text):
    # a bare literal, name, or power thereof: safe in any operand position
    return all(ch.isalnum() or ch in "_^" for ch in text)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n below 3.3e24."""
    if n < 2:
        return False
    for w in _MR_WITNESSES:
        if n % w == 0:
            return n == w
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for w in _MR_WITNESSES:
        x = pow(w, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class _Layer:
    __slots__ = ()


class _BaseQ(_Layer):
    __slots__ = ()

    def __eq__(self, other):
        return isinstance(other, _BaseQ)

    def __hash__(self):
        return hash("Q")


class _BaseGF(_Layer):
    __slots__ = ("p",)

    def __init__(self, p):
        self.p = p

    def __eq__(self, other):
        return isinstance(other, _BaseGF) and self.p == other.p

    def __hash__(self):
        return hash(("GF", self.p))


class _RatFunc(_Layer):
    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name

    def __eq__(self, other):
        return isinstance(other, _RatFunc) and self.name == other.name

    def __hash__(self):
        return hash(("rat", self.name))


class _Ext(_Layer):
    __slots__ = ("name", "minpoly")

    def __init__(self, name, minpoly):
        self.name = name
        self.minpoly = minpoly  # monic coefficient tuple over the layer below

    def __eq__(self, other):
        return (
            isinstance(other, _Ext)
            and self.name == other.name
            and self.minpoly == other.minpoly
        )

    def __hash__(self):
        return hash(("ext", self.name, self.minpoly))


class FieldTower:
    """Description of a field tower plus arithmetic on its elements.

    Instances are immutable; building on top of one returns a new tower.
    """

    __slots__ = ("layers", "characteristic", "_names")

    def __init__(self, layers):
        self.layers = tuple(layers)
        base = self.layers[0]
        self.characteristic = base.p if isinstance(base, _BaseGF) else 0
        self._names = tuple(
            lay.name for lay in self.layers[1:]
        )

    # -- construction --------------------------------------------------

    def with_ratfunc(self, name: str) -> "FieldTower":
        self._check_fresh_name(name)
        return FieldTower(self.layers + (_RatFunc(name),))

    def with_extension(self, name, coeffs, root_scan_bound=3):
        """Append a simple algebraic extension.

        coeffs: minimal polynomial coefficients, low to high, as elements of
        this tower (or ints). Must be monic of degree >= 2. A trial-root scan
        over small tower elements rejects obvious reducibility; past that the
        polynomial is trusted.
        """
        self._check_fresh_name(name)
        lvl = len(self.layers) - 1
        reps = []
        for c in coeffs:
            if isinstance(c, int):
                reps.append(self._from_int(lvl, c))
            elif isinstance(c, Fraction):
                reps.append(self._from_fraction(lvl, c))
            elif isinstance(c, FieldElement):
                if c.tower != self:
                    raise FieldMismatch("minimal polynomial coefficient from a different tower")
                reps.append(c.rep)
            else:
                raise TypeError("bad minimal polynomial coefficient: %r" % (c,))
        while reps and self._is_zero(lvl, reps[-1]):
            reps.pop()
        if len(reps) < 3:
            raise NonMonic("minimal polynomial must have degree at least 2")
        if not self._eq(lvl, reps[-1], self._one(lvl)):
            raise NonMonic("minimal polynomial must be monic")
        minpoly = tuple(reps)
        for cand in self._small_elements(root_scan_bound):
            acc = self._zero(lvl)
            for c in reversed(minpoly):
                acc = self._add(lvl, self._mul(lvl, acc, cand), c)
            if self._is_zero(lvl, acc):
                raise ReducibleExtension(
                    "proposed minimal polynomial for %s has the root %s"
                    % (name, self._rep_str(lvl, cand)[0])
                )
        return FieldTower(self.layers + (_Ext(name, minpoly),))

    def _check_fresh_name(self, name):
        if not name or not (name[0].isalpha() or name[0] == "_"):
            raise NameCollision("bad generator name %r" % name)
        if name in self._names or name == "Z":
            raise NameCollision("generator name %r already in use" % name)

    def _small_elements(self, bound):
        lvl = len(self.layers) - 1
        for n in range(-bound, bound + 1):
            yield self._from_int(lvl, n)
        for k, lay in enumerate(self.layers):
            if k == 0:
                continue
            gen = self._gen_rep(k)
            for c in (1, -1, 2, -2):
                for d in range(-bound, bound + 1):
                    cand = self._add(
                        lvl,
                        self._mul(lvl, gen, self._from_int(lvl, c)),
                        self._from_int(lvl, d),
                    )
                    yield cand

    def _gen_rep(self, k):
        """Representation at top level of the generator introduced by layer k."""
        lvl = len(self.layers) - 1
        lay = self.layers[k]
        low = k - 1
        if isinstance(lay, _RatFunc):
            rep = ((self._zero(low), self._one(low)), (self._one(low),))
        else:
            rep = (self._zero(low), self._one(low))
        for j in range(k + 1, len(self.layers)):
            rep = self._lift(j, rep)
        assert lvl >= k
        return rep

    # -- conversions ----------------------------------------------------

    def zero(self) -> "FieldElement":
        return FieldElement(self, self._zero(len(self.layers) - 1))

    def one(self) -> "FieldElement":
        return FieldElement(self, self._one(len(self.layers) - 1))

    def from_int(self, n: int) -> "FieldElement":
        return FieldElement(self, self._from_int(len(self.layers) - 1, n))

    def from_fraction(self, q) -> "FieldElement":
        return FieldElement(self, self._from_fraction(len(self.layers) - 1, Fraction(q)))

    def coerce(self, x) -> "FieldElement":
        """Turn x into an element here; strict about foreign field elements."""
        if isinstance(x, FieldElement):
            if x.tower != self:
                raise FieldMismatch(
                    "element of %s used in %s"
                    % (x.tower.describe(), self.describe())
                )
            return x
        if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
            raise TypeError("cannot coerce %r into %s" % (x, self.describe()))
        if isinstance(x, int):
            return self.from_int(x)
        return self.from_fraction(x)

    def symbol(self, name: str) -> "FieldElement":
        """The generator (rational-function variable or extension) called name."""
        for k, lay in enumerate(self.layers):
            if k > 0 and lay.name == name:
                return FieldElement(self, self._gen_rep(k))
        raise KeyError(name)

    def symbol_or_none(self, name):
        if name in self._names:
            return self.symbol(name)
        return None

    def constant_names(self):
        return self._names

    def extends(self, other: "FieldTower") -> bool:
        return self.layers[: len(other.layers)] == other.layers

    def embed(self, elem: "FieldElement") -> "FieldElement":
        """Reinterpret an element of a prefix tower as an element here."""
        if elem.tower == self:
            return elem
        if not self.extends(elem.tower):
            raise FieldMismatch("embed: %s is not a prefix of %s" % (elem.tower, self))
        rep = elem.rep
        for j in range(len(elem.tower.layers), len(self.layers)):
            rep = self._lift(j, rep)
        return FieldElement(self, rep)

    def _lift(self, j, rep):
        """Wrap a level j-1 representation as a level j one."""
        lay = self.layers[j]
        if isinstance(lay, _RatFunc):
            return ((rep,), (self._one(j - 1),))
        return (rep,)

    # -- layer-indexed arithmetic ----------------------------------------
    # lvl is an index into self.layers; a "level lvl rep" is an element of
    # the subtower through layers[lvl].

    def _zero(self, lvl):
        lay = self.layers[lvl]
        if isinstance(lay, _BaseQ):
            return Fraction(0)
        if isinstance(lay, _BaseGF):
            return 0
        if isinstance(lay, _RatFunc):
            return ((), (self._one(lvl - 1),))
        return ()

    def _one(self, lvl):
        lay = self.layers[lvl]
        if isinstance(lay, _BaseQ):
            return Fraction(1)
        if isinstance(lay, _BaseGF):
            return 1 % lay.p
        if isinstance(lay, _RatFunc):
            return ((self._one(lvl - 1),), (self._one(lvl - 1),))
        return (self._one(lvl - 1),)

    def _from_int(self, lvl, n):
        lay = self.layers[lvl]
        if isinstance(lay, _BaseQ):
            return Fraction(n)
        if isinstance(lay, _BaseGF):
            return n % lay.p
        low = self._from_int(lvl - 1, n)
        if isinstance(lay, _RatFunc):
            num = (low,) if not self._is_zero(lvl - 1, low) else ()
            return (num, (self._one(lvl - 1),))
        return (low,) if not self._is_zero(lvl - 1, low) else ()

    def _from_fraction(self, lvl, q):
        if self.characteristic == 0:
            lay = self.layers[lvl]
            if isinstance(lay, _BaseQ):
                return q
            return self._lift_chain(lvl, q)
        num = self._from_int(lvl, q.numerator)
        den = self._from_int(lvl, q.denominator)
        if self._is_zero(lvl, den):
            raise DivisionByZero("denominator divisible by the characteristic")
        return self._mul(lvl, num, self._inv(lvl, den))

    def _lift_chain(self, lvl, base_rep):
        rep = base_rep
        for j in range(1, lvl + 1):
            rep = self._lift(j, rep)
        return rep

    def _is_zero(self, lvl, a):
        lay = self.layers[lvl]
        if isinstance(lay, (_BaseQ, _BaseGF)):
            return not a
        if isinstance(lay, _RatFunc):
            return not a[0]
        return not a

    def _eq(self, lvl, a, b):
        return a == b  # representations are canonical

    def _add(self, lvl, a, b):
        lay = self.layers[lvl]
        if isinstance(lay, _BaseQ):
            return a + b
        if isinstance(lay, _BaseGF):
            return (a + b) % lay.p
        low = lvl - 1
        if isinstance(lay, _RatFunc):
            an, ad = a
            bn, bd = b
            num = self._padd(low, self._pmul(low, an, bd), self._pmul(low, bn, ad))
            return self._ratnorm(lvl, num, self._pmul(low, ad, bd))
        return self._pstrip(low, self._padd(low, a, b))

    def _neg(self, lvl, a):
        lay = self.layers[lvl]
        if isinstance(lay, _BaseQ):
            return -a
        if isinstance(lay, _BaseGF):
            return (-a) % lay.p
        low = lvl - 1
        if isinstance(lay, _RatFunc):
            return (self._pneg(low, a[0]), a[1])
        return self._pneg(low, a)

    def _sub(self, lvl, a, b):
        return self._add(lvl, a, self._neg(lvl, b))

    def _mul(self, lvl, a, b):
        lay = self.layers[lvl]
        if isinstance(lay, _BaseQ):
            return a * b
        if isinstance(lay, _BaseGF):
            return a * b % lay.p
        low = lvl - 1
        if isinstance(lay, _RatFunc):
            return self._ratnorm(
                lvl, self._pmul(low, a[0], b[0]), self._pmul(low, a[1], b[1])
            )
        return self._prem(low, self._pmul(low, a, b), lay.minpoly)

    def _inv(self, lvl, a):
        if self._is_zero(lvl, a):
            raise DivisionByZero("division by zero")
        lay = self.layers[lvl]
        if isinstance(lay, _BaseQ):
            return 1 / a
        if isinstance(lay, _BaseGF):
            return pow(a, lay.p - 2, lay.p)
        low = lvl - 1
        if isinstance(lay, _RatFunc):
            return self._ratnorm(lvl, a[1], a[0])
        g, s = self._pinvmod(low, a, lay.minpoly)
        if len(g) != 1:
            raise ReducibleExtension(
                "zero divisor met in extension %s: its minimal polynomial is reducible"
                % lay.name
            )
        c = self._inv(low, g[0])
        return self._pstrip(low, tuple(self._mul(low, c, x) for x in s))

    def _div(self, lvl, a, b):
        return self._mul(lvl, a, self._inv(lvl, b))

    # -- univariate polynomial helpers over level lvl coefficients -------

    def _pstrip(self, lvl, c):
        c = list(c)
        while c and self._is_zero(lvl, c[-1]):
            c.pop()
        return tuple(c)

    def _padd(self, lvl, a, b):
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] = self._add(lvl, out[i], x)
        return self._pstrip(lvl, out)

    def _pneg(self, lvl, a):
        return tuple(self._neg(lvl, x) for x in a)

    def _pmul(self, lvl, a, b):
        if not a or not b:
            return ()
        out = [self._zero(lvl)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if self._is_zero(lvl, x):
                continue
            for j, y in enumerate(b):
                out[i + j] = self._add(lvl, out[i + j], self._mul(lvl, x, y))
        return self._pstrip(lvl, out)

    def _pscale(self, lvl, a, s):
        return self._pstrip(lvl, tuple(self._mul(lvl, x, s) for x in a))

    def _pdivmod(self, lvl, a, b):
        if not b:
            raise DivisionByZero("polynomial division by zero")
        a = list(a)
        q = [self._zero(lvl)] * max(0, len(a) - len(b) + 1)
        inv_lead = self._inv(lvl, b[-1])
        while len(a) >= len(b):
            while a and self._is_zero(lvl, a[-1]):
                a.pop()
            if len(a) < len(b):
                break
            c = self._mul(lvl, a[-1], inv_lead)
            k = len(a) - len(b)
            q[k] = c
            for i, y in enumerate(b):
                a[k + i] = self._sub(lvl, a[k + i], self._mul(lvl, c, y))
            a.pop()
        return self._pstrip(lvl, q), self._pstrip(lvl, a)

    def _prem(self, lvl, a, b):
        return self._pdivmod(lvl, a, b)[1]

    def _pmonic(self, lvl, a):
        if not a:
            return a
        return self._pscale(lvl, a, self._inv(lvl, a[-1]))

    def _pgcd(self, lvl, a, b):
        while b:
            a, b = b, self._prem(lvl, a, b)
        return self._pmonic(lvl, a)

    def _pinvmod(self, lvl, a, m):
        """Extended Euclid: returns (g, s) with s*a = g mod m, g the gcd."""
        r0, r1 = m, self._pstrip(lvl, a)
        s0, s1 = (), (self._one(lvl),)
        while r1:
            q, r = self._pdivmod(lvl, r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, self._padd(lvl, s0, self._pneg(lvl, self._pmul(lvl, q, s1)))
        if r0:
            c = self._inv(lvl, r0[-1])
            r0 = self._pscale(lvl, r0, c)
            s0 = self._pscale(lvl, s0, c)
        return r0, s0

    def _ratnorm(self, lvl, num, den):
        """Canonical fraction at a ratfunc layer: reduced, monic denominator."""
        low = lvl - 1
        if not den:
            raise DivisionByZero("division by zero")
        if not num:
            return ((), (self._one(low),))
        g = self._pgcd(low, num, den)
        if len(g) > 1:
            num = self._pdivmod(low, num, g)[0]
            den = self._pdivmod(low, den, g)[0]
        c = self._inv(low, den[-1])
        return (self._pscale(low, num, c), self._pscale(low, den, c))

    # -- rendering --------------------------------------------------------

    def _rep_str(self, lvl, rep):
        """Render to the surface expression grammar. Returns (text, atomic)."""
        lay = self.layers[lvl]
        if isinstance(lay, _BaseQ):
            if rep.denominator == 1:
                return str(rep.numerator), rep.numerator >= 0
            return "%d/%d" % (rep.numerator, rep.denominator), False
        if isinstance(lay, _BaseGF):
            return str(rep), True
        low = lvl - 1
        if isinstance(lay, _RatFunc):
            num, den = rep
            ntext, natomic = self._upoly_str(low, num, lay.name)
            if den == (self._one(low),):
                return ntext, natomic
            dtext, datomic = self._upoly_str(low, den, lay.name)
            if not natomic:
                ntext = "(%s)" % ntext
            if not datomic:
                dtext = "(%s)" % dtext
            return "%s/%s" % (ntext, dtext), False
        return self._upoly_str(low, rep, lay.name)

    def _split_sign(self, lvl, c):
        """Pull an overall minus out of c when that prints nicely."""
        lay = self.layers[lvl]
        if isinstance(lay, _BaseQ):
            if c < 0:
                return True, -c
            return False, c
        if isinstance(lay, _BaseGF):
            return False, c
        if isinstance(lay, _Ext):
            nz = [k for k, x in enumerate(c) if not self._is_zero(lvl - 1, x)]
            if len(nz) == 1:
                neg, low = self._split_sign(lvl - 1, c[nz[0]])
                if neg:
                    return True, self._pneg(lvl - 1, c)
            return False, c
        if isinstance(lay, _RatFunc):
            num, den = c
            if num:
                neg, _ = self._split_sign(lvl - 1, num[-1])
                if neg:
                    return True, (self._pneg(lvl - 1, num), den)
        return False, c

    def _upoly_str(self, lvl, coeffs, var):
        if not coeffs:
            return "0", True
        pieces = []
        for k in range(len(coeffs) - 1, -1, -1):
            c = coeffs[k]
            if self._is_zero(lvl, c):
                continue
            neg, cabs = self._split_sign(lvl, c)
            ctext, catomic = self._rep_str(lvl, cabs)
            mul_safe = catomic or _plain_fraction(ctext)
            if k == 0:
                if neg and not mul_safe:
                    # keep the sign inside a composite constant; the join
                    # below merges a leading minus into the sum correctly
                    neg = False
                    ctext, _ = self._rep_str(lvl, c)
                body = ctext
            else:
                mono = var if k == 1 else "%s^%d" % (var, k)
                if self._eq(lvl, cabs, self._one(lvl)):
                    body = mono
                else:
                    body = "%s*%s" % (ctext if mul_safe else "(%s)" % ctext, mono)
            pieces.append((neg, body))
        neg, body = pieces[0]
        text = ("-" + body) if neg else body
        for neg, body in pieces[1:]:
            if not neg and body.startswith("-"):
                neg, body = True, body[1:]
            text += (" - " if neg else " + ") + body
        atomic = len(pieces) == 1 and not pieces[0][0] and _simple_atom(text)
        return text, atomic

    # -- descriptions ------------------------------------------------------

    def describe(self) -> str:
        base = self.layers[0]
        out = "Q" if isinstance(base, _BaseQ) else "GF(%d)" % base.p
        for k, lay in enumerate(self.layers):
            if isinstance(lay, _RatFunc):
                out += "(%s)" % lay.name
            elif isinstance(lay, _Ext):
                mp, _ = self._upoly_str(k - 1, lay.minpoly, "Z")
                out += "[%s: %s]" % (lay.name, mp)
        return out

    def extension_names(self):
        return tuple(lay.name for lay in self.layers if isinstance(lay, _Ext))

    def extension_descriptions(self):
        """(name, minimal-polynomial text in Z) per algebraic extension."""
        out = []
        for k, lay in enumerate(self.layers):
            if isinstance(lay, _Ext):
                mp, _ = self._upoly_str(k - 1, lay.minpoly, "Z")
                out.append((lay.name, mp))
        return tuple(out)

    def __eq__(self, other):
        return isinstance(other, FieldTower) and self.layers == other.layers

    def __hash__(self):
        return hash(self.layers)

    def __repr__(self):
        return "FieldTower(%s)" % self.describe()


class FieldElement:
    """An element of a FieldTower. Immutable, canonical, hashable."""

    __slots__ = ("tower", "rep")

    def __init__(self, tower, rep):
        self.tower = tower
        self.rep = rep

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.tower != self.tower:
                raise FieldMismatch(
                    "mixed operands: %s vs %s"
                    % (self.tower.describe(), other.tower.describe())
                )
            return other
        if isinstance(other, int):
            return self.tower.from_int(other)
        if isinstance(other, Fraction):
            return self.tower.from_fraction(other)
        return NotImplemented

    def _lvl(self):
        return len(self.tower.layers) - 1

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.tower, self.tower._add(self._lvl(), self.rep, o.rep))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.tower, self.tower._sub(self._lvl(), self.rep, o.rep))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.tower, self.tower._sub(self._lvl(), o.rep, self.rep))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.tower, self.tower._mul(self._lvl(), self.rep, o.rep))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.tower, self.tower._div(self._lvl(), self.rep, o.rep))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.tower, self.tower._div(self._lvl(), o.rep, self.rep))

    def __neg__(self):
        return FieldElement(self.tower, self.tower._neg(self._lvl(), self.rep))

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (self ** (-n)).inverse()
        out = self.tower.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self):
        return FieldElement(self.tower, self.tower._inv(self._lvl(), self.rep))

    def __bool__(self):
        return not self.tower._is_zero(self._lvl(), self.rep)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            o = self._coerce(other)
            return self.rep == o.rep
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.tower != self.tower:
            return False
        return self.rep == other.rep

    def __hash__(self):
        return hash(self.rep)

    def __str__(self):
        return self.tower._rep_str(self._lvl(), self.rep)[0]

    def __repr__(self):
        return "<%s in %s>" % (self, self.tower.describe())


# -- module-level constructors and the operation surface ---------------------


def rationals() -> FieldTower:
    return FieldTower((_BaseQ(),))


def prime_field(p: int) -> FieldTower:
    if not is_prime(p):
        raise UnsupportedField("GF(p) needs prime p, got %d" % p)
    return FieldTower((_BaseGF(p),))


def field_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    """Binary field arithmetic by operation name: add, sub, mul, div."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError("unknown operation %r" % op)


def _fraction_sqrt(q):
    n, d = q.numerator, q.denominator
    if n < 0:
        return None
    from math import isqrt

    rn, rd = isqrt(n), isqrt(d)
    if rn * rn != n or rd * rd != d:
        return None
    return Fraction(rn, rd)


def _gf_sqrt(p, a):
    a %= p
    if a == 0:
        return 0
    if p == 2:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    for r in range(p):  # small p only; fine for the fields this supports
        if r * r % p == a:
            return r
    return None


def _pth_root(tower, f, p):
    # f has zero derivative, so only exponents divisible by p occur and
    # coefficients are Frobenius-fixed in the prime field
    return tuple(f[i] for i in range(0, len(f), p))


def _derivative(tower, f, p):
    out = []
    for i in range(1, len(f)):
        out.append(f[i] * i % p)
    return tower._pstrip(0, out)


def squarefree_decomposition(tower, f):
    """Multiplicity decomposition of a monic univariate over GF(p).

    Returns a dict {multiplicity: monic squarefree factor}; the factors are
    pairwise coprime and their powers multiply back to f. Characteristic-p
    aware: p-th power parts are handled through p-th roots.
    """
    p = tower.characteristic
    out = {}
    if len(f) <= 1:
        return out
    d = _derivative(tower, f, p)
    if not d:
        for m, g in squarefree_decomposition(tower, _pth_root(tower, f, p)).items():
            out[m * p] = g
        return out
    c = tower._pgcd(0, f, d)
    w = tower._pdivmod(0, f, c)[0]
    i = 1
    while len(w) > 1:
        y = tower._pgcd(0, w, c)
        z = tower._pdivmod(0, w, y)[0]
        if len(z) > 1:
            out[i] = tower._pmonic(0, z)
        w = y
        c = tower._pdivmod(0, c, y)[0]
        i += 1
    if len(c) > 1:
        for m, g in squarefree_decomposition(tower, c).items():
            out[m] = g
    return out


def square_root(a: FieldElement):
    """Square root in a prime field or GF(p)(t), or None.

    Supported towers: Q, GF(p), and GF(p) with a single rational-function
    layer, where the decision runs through squarefree decomposition of the
    numerator-times-denominator, parity of every multiplicity, and squareness
    of the leading constant in GF(p). UnsupportedField otherwise.
    """
    tower = a.tower
    layers = tower.layers
    if not a:
        raise ZeroElement("square root of zero is trivial; pass a nonzero element")
    if len(layers) == 1 and isinstance(layers[0], _BaseQ):
        r = _fraction_sqrt(a.rep)
        return None if r is None else FieldElement(tower, r)
    if len(layers) == 1 and isinstance(layers[0], _BaseGF):
        r = _gf_sqrt(layers[0].p, a.rep)
        return None if r is None else FieldElement(tower, r)
    if (
        len(layers) == 2
        and isinstance(layers[0], _BaseGF)
        and isinstance(layers[1], _RatFunc)
    ):
        p = layers[0].p
        num, den = a.rep
        f = tower._pmul(0, num, den)  # a = f / den^2
        lead = f[-1]
        monic = tower._pmonic(0, f)
        decomp = squarefree_decomposition(tower, monic)
        if any(m % 2 for m in decomp):
            return None
        clead = _gf_sqrt(p, lead)
        if clead is None:
            return None
        root = (clead % p,)
        for m, g in sorted(decomp.items()):
            for _ in range(m // 2):
                root = tower._pmul(0, root, g)
        rep = tower._ratnorm(1, root, den)
        out = FieldElement(tower, rep)
        assert out * out == a
        return out
    raise UnsupportedField(
        "square test supported in prime fields and GF(p)(t) only, not %s"
        % tower.describe()
    )


def is_square(a: FieldElement) -> bool:
    """Whether a nonzero element is a square; see square_root for scope."""
    return square_root(a) is not None
