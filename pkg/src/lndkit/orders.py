"""Monomial orders as key functions on exponent tuples.

An order produces, for each exponent vector, a tuple that compares the way
the monomials should. Supported: lex and graded-reverse-lex, each over a
variable priority permutation, plus block composites of those two (used for
elimination: the eliminated block is compared first, so monomials free of it
are exactly the key-smallest ones).

All orders here are global: 1 is the smallest monomial.
"""

from .errors import UnknownVariable


class MonomialOrder:
    kind = "?"

    def key(self, exps):
        raise NotImplementedError

    @property
    def signature(self):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.signature == other.signature

    def __hash__(self):
        return hash(self.signature)

    def __repr__(self):
        return "<order %s>" % (self.signature,)


class Lex(MonomialOrder):
    kind = "lex"
    graded = False

    def __init__(self, perm):
        self.perm = tuple(perm)

    def key(self, exps):
        return tuple(exps[i] for i in self.perm)

    @property
    def signature(self):
        return ("lex", self.perm)


class Grevlex(MonomialOrder):
    kind = "grevlex"
    graded = True

    def __init__(self, perm):
        self.perm = tuple(perm)
        self._rev = tuple(reversed(self.perm))

    def key(self, exps):
        s = 0
        for i in self.perm:
            s += exps[i]
        return (s,) + tuple(-exps[i] for i in self._rev)

    @property
    def signature(self):
        return ("grevlex", self.perm)


class Block(MonomialOrder):
    """Compare block by block; each block is its own Lex/Grevlex."""

    kind = "block"
    graded = False

    def __init__(self, blocks):
        self.blocks = tuple(blocks)

    def key(self, exps):
        out = ()
        for b in self.blocks:
            out += b.key(exps)
        return out

    @property
    def signature(self):
        return ("block",) + tuple(b.signature for b in self.blocks)


def _perm_for(vars, priority):
    if priority is None:
        return tuple(range(len(vars)))
    index = {v: i for i, v in enumerate(vars)}
    out = []
    for name in priority:
        if name not in index:
            raise UnknownVariable("unknown variable %r in order priority" % name)
        out.append(index[name])
    if len(out) != len(vars):
        raise UnknownVariable("order priority must mention every variable once")
    return tuple(out)


def lex_order(vars, priority=None) -> Lex:
    return Lex(_perm_for(vars, priority))


def grevlex_order(vars, priority=None) -> Grevlex:
    return Grevlex(_perm_for(vars, priority))


def elimination_order(vars, eliminate) -> Block:
    """Block order that makes eliminate-free monomials an initial segment."""
    elim = [i for i, v in enumerate(vars) if v in eliminate]
    keep = [i for i, v in enumerate(vars) if v not in eliminate]
    missing = set(eliminate) - set(vars)
    if missing:
        raise UnknownVariable("unknown variables to eliminate: %s" % sorted(missing))
    if not elim or not keep:
        return Grevlex(tuple(elim + keep))
    return Block((Grevlex(tuple(elim)), Grevlex(tuple(keep))))
