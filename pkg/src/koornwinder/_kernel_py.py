"""Pure-Python sparse polynomial kernel.

A polynomial is a ``dict`` mapping a packed exponent key to a nonzero
integer coefficient. Keys are linear in the exponent vector, so multiplying
monomials is adding keys, and the integer order on keys is a monomial order.

The compiled module ``_kernel`` exposes exactly the same functions.
"""

IMPLEMENTATION = "python"

BITS = 16
MASK = (1 << BITS) - 1
HALF = 1 << (BITS - 1)


def add_into(acc, p, c=1, shift=0):
    """acc += c * z**shift * p, in place. Zero entries are dropped."""
    get = acc.get
    for k, a in p.items():
        k += shift
        s = get(k, 0) + c * a
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)


def mul(p, q):
    if len(p) < len(q):
        p, q = q, p
    out = {}
    get = out.get
    for kq, b in q.items():
        for kp, a in p.items():
            k = kp + kq
            out[k] = get(k, 0) + a * b
    return {k: c for k, c in out.items() if c}


def addmul(acc, p, q, c=1):
    """acc += c * p * q, in place. Zeros are left in ``acc``; see ``prune``."""
    if len(p) < len(q):
        p, q = q, p
    get = acc.get
    for kq, b in q.items():
        b *= c
        for kp, a in p.items():
            k = kp + kq
            acc[k] = get(k, 0) + a * b


def prune(p):
    return {k: c for k, c in p.items() if c}


def mul_binomial(p, u, ku, v, kv):
    """p * (u z**ku + v z**kv)."""
    out = {k + ku: u * a for k, a in p.items()}
    get = out.get
    for k, a in p.items():
        k += kv
        s = get(k, 0) + v * a
        if s:
            out[k] = s
        else:
            del out[k]
    return out


def _lowest_digit(delta):
    """(position, value) of the lowest nonzero balanced digit of a packed key."""
    j = 0
    while True:
        d = ((delta + HALF) & MASK) - HALF
        if d:
            return j, d
        delta = (delta - d) >> BITS
        j += 1


def div_binomial(p, u, ku, v, kv):
    """Exact quotient p / (u z**ku + v z**kv) over the integers.

    Returns ``None`` when the binomial does not divide ``p``. The binomial
    must be primitive (gcd(u, v) = 1); by Gauss's lemma the quotient of an
    integral polynomial is then integral, so any non-integral step proves
    a nonzero remainder.

    Keys split into chains ``base + t * delta`` (``delta = ku - kv``); the
    chain position ``t`` is read off one exponent digit of the key, and
    each chain is a one-variable synthetic division.
    """
    if not p:
        return {}
    if ku < kv:
        u, ku, v, kv = v, kv, u, ku
    delta = ku - kv
    j0, m0 = _lowest_digit(delta)
    shift = BITS * j0
    offset = HALF * sum(1 << (BITS * i) for i in range(j0 + 1))
    chains = {}
    for k in p:
        t = ((((k + offset) >> shift) & MASK) - HALF) // m0
        base = k - t * delta
        c = chains.get(base)
        if c is None:
            chains[base] = [t, t]
        elif t < c[0]:
            c[0] = t
        elif t > c[1]:
            c[1] = t
    out = {}
    get = p.get
    for base, (lo, hi) in chains.items():
        if lo == hi:
            return None
        prev = 0
        k = base + lo * delta
        for _ in range(hi - lo):
            qk, rem = divmod(get(k, 0) - u * prev, v)
            if rem:
                return None
            if qk:
                out[k - kv] = qk
            prev = qk
            k += delta
        if get(k, 0) != u * prev:
            return None
    return out
