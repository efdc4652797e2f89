"""Lower bounds on the order of (edge-)girth-regular graphs.

All arithmetic is exact (integers and fractions) so every ceiling is
bit-exact.  Bounds that can be out of range for a query return a flagged
:class:`BoundValue` instead of a misleading number; genuinely invalid
queries (wrong girth parity, degree below 3) raise ValueError.

Notation used throughout: k is the degree, g the girth, h = g // 2,
lambda the common per-edge girth-cycle count of an egr graph, and
a = (a_1 <= ... <= a_k) the shared vertex signature of a girth-regular
graph.  For an egr graph the signature is constant and sum(a) = k*lambda.
"""

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import ceil


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


@dataclass(frozen=True)
class BoundValue:
    """One evaluated lower bound: a value, or a reason it does not apply."""

    name: str
    value: int | None
    applicable: bool = True
    reason: str | None = None

    def __post_init__(self):
        if self.applicable != (self.value is not None):
            raise ValueError("value must be present exactly when applicable")


def _applicable(name, value):
    return BoundValue(name, int(value))


def _inapplicable(name, reason):
    return BoundValue(name, None, False, reason)


# ---------------------------------------------------------------------------
# classical distance-counting bound
# ---------------------------------------------------------------------------

def moore_bound(k: int, g: int) -> int:
    """Minimum order of a k-regular graph of girth g, by counting the
    vertices within distance floor((g-1)/2) of a vertex (odd g) or an
    edge (even g).  The division by k - 2 is always exact."""
    if k < 3:
        raise ValueError("degree must be at least 3")
    if g < 3:
        raise ValueError("girth must be at least 3")
    if g % 2:
        num = k * (k - 1) ** ((g - 1) // 2) - 2
    else:
        num = 2 * (k - 1) ** (g // 2) - 2
    if num % (k - 2):
        raise AssertionError("the distance-count formula always divides")
    return num // (k - 2)


# ---------------------------------------------------------------------------
# egr refinement of the distance count
# ---------------------------------------------------------------------------

def dfjr_bound(k: int, g: int, lam: int, bipartite: bool = False) -> BoundValue:
    """Order bound for an egr(n, k, g, lambda) graph.

    Odd g:  n0 + ((k-1)^((g-1)/2) - lambda).
    Even g: n0 + ceil(2((k-1)^(g/2) - lambda)/k), and with the correction
    doubled outside the ceiling for bipartite graphs.  Out-of-range lambda
    is flagged inapplicable rather than clamped.
    """
    n0 = moore_bound(k, g)
    if lam < 0:
        return _inapplicable("dfjr", "lambda must be nonnegative")
    if g % 2:
        cap = (k - 1) ** ((g - 1) // 2)
        if lam > cap:
            return _inapplicable("dfjr", f"lambda > (k-1)^((g-1)/2) = {cap}")
        return _applicable("dfjr", n0 + cap - lam)
    cap = (k - 1) ** (g // 2)
    if lam > cap:
        return _inapplicable("dfjr", f"lambda > (k-1)^(g/2) = {cap}")
    if bipartite:
        return _applicable("dfjr", n0 + 2 * _ceil_div(cap - lam, k))
    return _applicable("dfjr", n0 + _ceil_div(2 * (cap - lam), k))


# ---------------------------------------------------------------------------
# cycle-free closed walks in the k-regular tree
# ---------------------------------------------------------------------------

def tree_walks(length: int, k: int) -> int:
    """Closed walks of the given even length from a vertex of the infinite
    k-regular tree (equivalently, cycle-free closed walks in any k-regular
    graph of sufficient girth).

    Dynamic program over (steps taken, current depth): k branches leave
    depth 0, and at positive depth there are k - 1 outward branches and one
    inward.  tree_walks(2, k) = k and tree_walks(4, k) = 2k^2 - k.
    """
    if length < 2 or length % 2:
        raise ValueError("walk length must be even and at least 2")
    cur = {0: 1}
    for _ in range(length):
        nxt = {}
        for depth, ways in cur.items():
            if depth == 0:
                nxt[1] = nxt.get(1, 0) + ways * k
            else:
                nxt[depth + 1] = nxt.get(depth + 1, 0) + ways * (k - 1)
                nxt[depth - 1] = nxt.get(depth - 1, 0) + ways
        cur = nxt
    return cur.get(0, 0)


# ---------------------------------------------------------------------------
# even-girth spectral-moment bound
# ---------------------------------------------------------------------------

def spectral_bound(k: int, g: int, sum_a: int, bipartite: bool = False
                   ) -> BoundValue:
    """Even-girth order bound from closed-walk counts, with c = tree_walks.

    g = 0 mod 4:
        n  >= (c(g,k) + S + k^g - 2 c(g/2,k) k^(g/2))
             / (c(g,k) - c(g/2,k)^2 + S)
        n2 >= twice that,
    g = 2 mod 4:
        n  >= (c(g,k) + S + k^g) / (c(g,k) + S)
        n2 >= 2 k^g / (c(g,k) + S),
    where S is k*lambda for an egr graph and sum(a_i) in general.  The
    ceiling of the exact rational is returned.
    """
    if g % 2:
        raise ValueError("the spectral bound needs even girth")
    if k < 3:
        raise ValueError("degree must be at least 3")
    c_g = tree_walks(g, k)
    if g % 4 == 0:
        c_h = tree_walks(g // 2, k)
        den = c_g - c_h * c_h + sum_a
        if den <= 0:
            return _inapplicable("spectral", "nonpositive denominator")
        val = Fraction(c_g + sum_a + k ** g - 2 * c_h * k ** (g // 2), den)
        if bipartite:
            val *= 2
    else:
        den = c_g + sum_a
        if den <= 0:
            return _inapplicable("spectral", "nonpositive denominator")
        if bipartite:
            val = Fraction(2 * k ** g, den)
        else:
            val = Fraction(den + k ** g, den)
    return _applicable("spectral", ceil(val))


# ---------------------------------------------------------------------------
# signature bounds
# ---------------------------------------------------------------------------

def _check_signature(k, a):
    a = tuple(a)
    if len(a) != k:
        raise ValueError(f"signature length {len(a)} != degree {k}")
    if any(x < 0 for x in a):
        raise ValueError("signature entries must be nonnegative")
    if list(a) != sorted(a):
        raise ValueError("signature must be ascending")
    return a


def sgr_even_bound(k: int, g: int, a) -> int:
    """Even-girth signature bound, evaluated verbatim:

        n >= 2((k-1)^h - 2)/(k-2) + ceil(((k-1)^h - 2 a_1)/k),

    with a_1 the minimum signature entry and the first term rounded up when
    k - 2 does not divide.  The correction may be negative as printed.
    Note the base term sits below the even-girth distance count and the
    correction lacks the factor 2 of the egr bound, so for constant
    signatures this can undercut dfjr; a RuntimeWarning flags that case.
    """
    if g % 2 or g < 4:
        raise ValueError("this signature bound needs even girth")
    if k < 3:
        raise ValueError("degree must be at least 3")
    a = _check_signature(k, a)
    h = g // 2
    value = (_ceil_div(2 * ((k - 1) ** h - 2), k - 2)
             + _ceil_div((k - 1) ** h - 2 * a[0], k))
    if len(set(a)) == 1:
        d = dfjr_bound(k, g, a[0])
        if d.applicable and value < d.value:
            warnings.warn(
                f"even-girth signature bound {value} undercuts the egr bound "
                f"{d.value} for the constant signature {a[0]}",
                RuntimeWarning, stacklevel=2)
    return value


def sgr_odd_bound(k: int, g: int, a) -> int:
    """Odd-girth signature bound:

        n >= (k(k-1)^h - 2)/(k-2) + ceil((k(k-1)^h - sum(a))/k),

    with h = (g-1)/2; the first term is the odd-girth distance count and
    always divides exactly."""
    if g % 2 == 0 or g < 3:
        raise ValueError("this signature bound needs odd girth")
    if k < 3:
        raise ValueError("degree must be at least 3")
    a = _check_signature(k, a)
    h = (g - 1) // 2
    base = k * (k - 1) ** h - 2
    if base % (k - 2):
        raise AssertionError("odd distance count always divides")
    return base // (k - 2) + _ceil_div(k * (k - 1) ** h - sum(a), k)


def sgr_cycle_bound(k: int, g: int, a, variant: str = "proof") -> BoundValue:
    """Even-girth bound from counting edges across the two distance shells
    of an edge:

        n >= 2((k-1)^h - 1)/(k-2)
             + max_i ceil( ((k-1)^h - a_i)^2 /
                 (sum(a) - 3 a_i + (k-1)^h - 2 max(0, ceil(a_i^2 /
                  (2 (k-1)^(h-1)) - a_i / 2))) ).

    variant='proof' is the form above (consistent with the egr corollary,
    whose inner maximum vanishes for every a_i <= (k-1)^(h-1));
    variant='statement' divides the first numerator of the inner ceiling by
    a_i and drops the factor 2 in front of the maximum, for comparison.
    Terms with nonpositive denominator are skipped, except that a zero
    numerator contributes 0 outright; if nothing survives the bound is
    flagged inapplicable.
    """
    if g % 2 or g < 4:
        raise ValueError("this cycle bound needs even girth")
    if k < 3:
        raise ValueError("degree must be at least 3")
    if variant not in ("proof", "statement"):
        raise ValueError("variant must be 'proof' or 'statement'")
    a = _check_signature(k, a)
    h = g // 2
    kh = (k - 1) ** h
    khm1 = (k - 1) ** (h - 1)
    s = sum(a)
    if (2 * (kh - 1)) % (k - 2):
        raise AssertionError("even distance count always divides")
    base = 2 * (kh - 1) // (k - 2)
    best = None
    for ai in sorted(set(a)):
        num = (kh - ai) ** 2
        if num == 0:
            term = 0
        else:
            if variant == "proof":
                inner = max(0, _ceil_div(ai * ai - ai * khm1, 2 * khm1))
                den = s - 3 * ai + kh - 2 * inner
            else:
                inner = max(0, _ceil_div(ai - ai * khm1, 2 * khm1))
                den = s - 3 * ai + kh - inner
            if den <= 0:
                continue
            term = _ceil_div(num, den)
        best = term if best is None else max(best, term)
    if best is None:
        return _inapplicable("cycle", "all denominators nonpositive")
    return _applicable("cycle", base + best)


# ---------------------------------------------------------------------------
# reports and sweeps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundQuery:
    """A (k, g) query with either an egr lambda or a full signature."""

    k: int
    g: int
    lam: int | None = None
    signature: tuple | None = None
    bipartite: bool = False

    def __post_init__(self):
        if (self.lam is None) == (self.signature is None):
            raise ValueError("give exactly one of lambda or signature")
        if self.signature is not None:
            _check_signature(self.k, self.signature)

    @property
    def effective_signature(self) -> tuple:
        if self.signature is not None:
            return self.signature
        return (self.lam,) * self.k

    @property
    def sum_a(self) -> int:
        return sum(self.effective_signature)


@dataclass(frozen=True)
class BoundReport:
    """All applicable lower bounds for one query."""

    query: BoundQuery
    entries: tuple

    def __getitem__(self, name: str) -> BoundValue:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def to_json_dict(self) -> dict:
        q = {"k": self.query.k, "g": self.query.g,
             "bipartite": self.query.bipartite}
        if self.query.lam is not None:
            q["lambda"] = self.query.lam
        else:
            q["signature"] = list(self.query.signature)
        return {"query": q, "bounds": [
            {"name": e.name, "value": e.value, "applicable": e.applicable,
             **({"reason": e.reason} if e.reason else {})}
            for e in self.entries]}


def bound_report(k: int, g: int, lam: int | None = None,
                 signature=None, bipartite: bool = False) -> BoundReport:
    """Evaluate every bound for the query, flagging the inapplicable ones."""
    query = BoundQuery(k, g, lam,
                       tuple(signature) if signature is not None else None,
                       bipartite)
    a = query.effective_signature
    entries = [_applicable("moore", moore_bound(k, g))]
    if lam is not None:
        entries.append(dfjr_bound(k, g, lam, bipartite))
    elif len(set(a)) == 1:
        entries.append(dfjr_bound(k, g, a[0], bipartite))
    else:
        entries.append(_inapplicable("dfjr", "needs an egr (constant) signature"))
    if g % 2 == 0:
        entries.append(spectral_bound(k, g, query.sum_a, bipartite))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            entries.append(_applicable("sgr_even", sgr_even_bound(k, g, a)))
        entries.append(_rename(sgr_cycle_bound(k, g, a), "sgr_cycle"))
        entries.append(_inapplicable("sgr_odd", "odd-girth bound"))
    else:
        entries.append(_inapplicable("spectral", "even-girth bound"))
        entries.append(_inapplicable("sgr_even", "even-girth bound"))
        entries.append(_inapplicable("sgr_cycle", "even-girth bound"))
        entries.append(_applicable("sgr_odd", sgr_odd_bound(k, g, a)))
    return BoundReport(query, tuple(entries))


def _rename(bv: BoundValue, name: str) -> BoundValue:
    return BoundValue(name, bv.value, bv.applicable, bv.reason)


def sweep_rows(k: int, g: int, lam_lo: int, lam_hi: int,
               bipartite: bool = True):
    """Yield (lambda, moore, dfjr, spectral, cycle) with None for
    inapplicable entries, for lambda in [lam_lo, lam_hi].

    The comparison concerns even girth; dfjr and the spectral bound default
    to their bipartite (extremal-bipartite) variants, which is the variant
    under which the qualitative picture holds at desk scale: dfjr dominates
    near the top of the lambda range and the cycle/spectral bounds win for
    lambda up to about (k-1)^(g/2-1).
    """
    if g % 2:
        raise ValueError("sweeps compare the even-girth bounds")
    if lam_hi < lam_lo:
        raise ValueError("empty lambda range")
    n0 = moore_bound(k, g)
    for lam in range(lam_lo, lam_hi + 1):
        d = dfjr_bound(k, g, lam, bipartite)
        s = spectral_bound(k, g, k * lam, bipartite)
        c = sgr_cycle_bound(k, g, (lam,) * k)
        yield (lam, n0, d.value, s.value, c.value)


def sweep_csv(k: int, g: int, lam_lo: int, lam_hi: int,
              bipartite: bool = True) -> str:
    """CSV table of the sweep; empty cell for an inapplicable bound."""
    lines = ["lambda,moore,dfjr,spectral,cycle"]
    for lam, n0, d, s, c in sweep_rows(k, g, lam_lo, lam_hi, bipartite):
        cells = [str(lam), str(n0)] + ["" if v is None else str(v)
                                       for v in (d, s, c)]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"
