"""Univariate polynomials over F_p as coefficient tuples, lowest degree first."""


def trim(c, p):
    c = [int(a) % p for a in c]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def add(a, b, p):
    m = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(m)], p)


def neg(a, p):
    return trim([-x for x in a], p)


def sub(a, b, p):
    return add(a, neg(b, p), p)


def mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out, p)


def power(a, k, p):
    out = (1,)
    while k:
        if k & 1:
            out = mul(out, a, p)
        a = mul(a, a, p)
        k >>= 1
    return out


def from_roots(roots, p):
    out = (1,)
    for r in roots:
        out = mul(out, trim([-r, 1], p), p)
    return out


def evaluate(a, x, p):
    v = 0
    for c in reversed(a):
        v = (v * x + c) % p
    return v


def roots(a, p):
    """Roots in F_p, without multiplicity."""
    return [x for x in range(p) if evaluate(a, x, p) == 0]


def support(a):
    return [i for i, c in enumerate(a) if c]


def to_str(a, var="T"):
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        mon = "" if i == 0 else (var if i == 1 else "%s^%d" % (var, i))
        if not mon:
            parts.append(str(c))
        elif c == 1:
            parts.append(mon)
        else:
            parts.append("%d*%s" % (c, mon))
    return " + ".join(parts)
