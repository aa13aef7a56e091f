"""Sparse multivariate (Laurent-)polynomial arithmetic.

A polynomial in the chart coordinates y_1..y_m is a dict mapping exponent
tuples (length m, possibly negative entries on invertible variables) to
nonzero scalars of the ground field.  Zero is the empty dict.  The canonical
term order is graded lexicographic, with the grade taken as the sum of
absolute exponents so that Laurent monomials order deterministically too.
"""


def pzero():
    return {}

def pconst(field, c, nvars):
    if c == field.zero:
        return {}
    return {(0,) * nvars: c}

def pis_zero(p):
    return not p

def padd(field, p, q):
    out = dict(p)
    for e, c in q.items():
        s = field.add(out.get(e, field.zero), c)
        if s == field.zero:
            out.pop(e, None)
        else:
            out[e] = s
    return out

def pneg(field, p):
    return {e: field.neg(c) for e, c in p.items()}

def psub(field, p, q):
    return padd(field, p, pneg(field, q))

def pscale(field, c, p):
    if c == field.zero:
        return {}
    out = {}
    for e, a in p.items():
        v = field.mul(c, a)
        if v != field.zero:
            out[e] = v
    return out

def pmul(field, p, q):
    out = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            s = field.add(out.get(e, field.zero), field.mul(c1, c2))
            if s == field.zero:
                out.pop(e, None)
            else:
                out[e] = s
    return out

def pmul_monomial(field, p, c, shift):
    """Multiply by the single term c * y^shift."""
    if c == field.zero:
        return {}
    out = {}
    for e, a in p.items():
        v = field.mul(c, a)
        if v != field.zero:
            out[tuple(x + s for x, s in zip(e, shift))] = v
    return out

def grlex_key(e):
    # Grade by total absolute degree, then plain lexicographic on exponents.
    return (sum(abs(x) for x in e), tuple(-x for x in e))

def psorted_terms(p):
    return sorted(p.items(), key=lambda item: grlex_key(item[0]))

def punit_part(p):
    """Return (c, exps) if p is a single term, else None."""
    if len(p) != 1:
        return None
    [(e, c)] = p.items()
    return c, e

def ptotal_degree(p):
    """Max over terms of the sum of absolute exponents (None for zero)."""
    if not p:
        return None
    return max(sum(abs(x) for x in e) for e in p)

def pnegative_on(p, bad_indices):
    """True if some term has a negative exponent at one of the given indices."""
    return any(any(e[i] < 0 for i in bad_indices) for e in p)

def peval(field, p, values):
    """Evaluate at a point; ``values`` is a sequence of scalars."""
    acc = field.zero
    for e, c in p.items():
        term = c
        for a, x in zip(e, values):
            term = field.mul(term, field.pow(x, a))
        acc = field.add(acc, term)
    return acc
