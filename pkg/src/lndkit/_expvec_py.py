"""Pure-Python exponent-vector kernel.

Twin of the compiled module _expvec; lndkit.expvec picks one at import.
Exponent vectors are tuples of small nonnegative ints. Coefficients are
opaque objects supporting +, *, unary bool; all coefficient domains used
here are fields, so products of nonzeros are nonzero and axpy only needs
zero tests on sums.
"""


def exp_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def exp_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def exp_divides(a, b):
    """Whether the monomial with exponents a divides the one with b."""
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def exp_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def exp_deg(a):
    return sum(a)


def find_divisor(lms, m):
    """Index of the first exponent vector in lms dividing m, else -1."""
    for i, lm in enumerate(lms):
        ok = True
        for x, y in zip(lm, m):
            if x > y:
                ok = False
                break
        if ok:
            return i
    return -1


def axpy(f, items, u, c):
    """In place: f += c * x^u * g where g is given as an item list.

    f is a terms dict, items a list of (exponent tuple, coefficient). Zero
    sums are deleted so the dict never holds zero coefficients.
    """
    for m, g in items:
        k = tuple(x + y for x, y in zip(m, u))
        prod = c * g
        v = f.get(k)
        if v is None:
            f[k] = prod
        else:
            s = v + prod
            if s:
                f[k] = s
            else:
                del f[k]
