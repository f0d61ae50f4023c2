"""Ordinal notations in hereditary Cantor normal form with epsilon atoms.

A notation denotes an ordinal strictly below the least fixpoint of
``mu -> eps_mu`` (Cantor indexing).  Values come in three shapes:

* ``ZERO`` -- the ordinal 0;
* ``Cnf(terms)`` -- ``w^e1*c1 + ... + w^ek*ck`` with strictly descending
  exponents (themselves notations) and positive integer coefficients;
* ``Eps(index)`` -- the ``index``-th epsilon number in Cantor's numbering,
  usable wherever an ordinal is.  Because ``eps = w^eps``, the single-term
  power ``w^Eps(mu)`` with coefficient 1 normalizes to the atom itself, so
  every value has exactly one spelling.

All values are immutable and hashable; structural equality coincides with
ordinal equality on normalized values.  Operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError, NotSubtractable

# Finite powers whose results would exceed this many bits are refused
# instead of grinding the interpreter to a halt (towers like 2^^6).
_FINITE_POW_BIT_LIMIT = 1 << 22


class Ordinal:
    """Common base; concrete values are ZERO, Cnf, or Eps."""

    __slots__ = ()

    def __lt__(self, other: "Ordinal") -> bool:
        return compare(self, other) < 0

    def __le__(self, other: "Ordinal") -> bool:
        return compare(self, other) <= 0

    def __gt__(self, other: "Ordinal") -> bool:
        return compare(self, other) > 0

    def __ge__(self, other: "Ordinal") -> bool:
        return compare(self, other) >= 0

    def __add__(self, other: "Ordinal | int") -> "Ordinal":
        return ord_add(self, _coerce(other))

    def __mul__(self, other: "Ordinal | int") -> "Ordinal":
        return ord_mul(self, _coerce(other))

    def __pow__(self, other: "Ordinal | int") -> "Ordinal":
        return ord_exp(self, _coerce(other))

    def __str__(self) -> str:
        return format_ordinal(self)

    def __repr__(self) -> str:
        return f"<ord {format_ordinal(self)}>"


@dataclass(frozen=True, repr=False)
class _Zero(Ordinal):
    __slots__ = ()


@dataclass(frozen=True, repr=False)
class Cnf(Ordinal):
    terms: tuple[tuple[Ordinal, int], ...]

    __slots__ = ("terms",)


@dataclass(frozen=True, repr=False)
class Eps(Ordinal):
    index: Ordinal

    __slots__ = ("index",)


ZERO: Ordinal = _Zero()
ONE: Ordinal
OMEGA: Ordinal


def nat(n: int) -> Ordinal:
    """The finite ordinal n."""
    if n < 0:
        raise DomainError(f"ordinals are non-negative, got {n}")
    if n == 0:
        return ZERO
    return Cnf(((ZERO, n),))


def _coerce(x: "Ordinal | int") -> Ordinal:
    return nat(x) if isinstance(x, int) else x


ONE = nat(1)
OMEGA = Cnf(((ONE, 1),))


def terms_of(a: Ordinal) -> tuple[tuple[Ordinal, int], ...]:
    """CNF term list of a; an epsilon atom reads as the single term w^eps*1."""
    if isinstance(a, _Zero):
        return ()
    if isinstance(a, Eps):
        return ((a, 1),)
    assert isinstance(a, Cnf)
    return a.terms


def cnf(terms: list[tuple[Ordinal, int]] | tuple[tuple[Ordinal, int], ...]) -> Ordinal:
    """Build a normalized value from (exponent, coefficient) pairs.

    Pairs may repeat exponents or arrive unsorted; zero coefficients are
    dropped, equal exponents merged, and the epsilon sugar applied.
    Construct-then-normalize is idempotent.
    """
    kept = [(e, c) for (e, c) in terms if c != 0]
    if any(c < 0 for _, c in kept):
        raise DomainError("negative coefficient in normal form")
    # insertion sort by descending exponent, merging equals; term lists stay tiny
    merged: list[tuple[Ordinal, int]] = []
    for e, c in kept:
        for i, (e2, c2) in enumerate(merged):
            cmp = compare(e, e2)
            if cmp == 0:
                merged[i] = (e2, c2 + c)
                break
            if cmp > 0:
                merged.insert(i, (e, c))
                break
        else:
            merged.append((e, c))
    if not merged:
        return ZERO
    if len(merged) == 1 and merged[0][1] == 1 and isinstance(merged[0][0], Eps):
        return merged[0][0]
    return Cnf(tuple(merged))


def eps(index: Ordinal | int) -> Ordinal:
    """The epsilon number with the given Cantor index."""
    return Eps(_coerce(index))


def is_zero(a: Ordinal) -> bool:
    return isinstance(a, _Zero)


def as_int(a: Ordinal) -> int | None:
    """The value of a finite notation, or None when a >= w."""
    if isinstance(a, _Zero):
        return 0
    if isinstance(a, Cnf) and len(a.terms) == 1 and is_zero(a.terms[0][0]):
        return a.terms[0][1]
    return None


def is_finite(a: Ordinal) -> bool:
    return as_int(a) is not None


def compare(a: Ordinal, b: Ordinal) -> int:
    """Total order on notations: -1, 0, or 1.

    Epsilon atoms compare to composite values through eps = w^eps; ties
    between atoms fall through to their indices.
    """
    if a is b:
        return 0
    if isinstance(a, Eps) and isinstance(b, Eps):
        return compare(a.index, b.index)
    ta, tb = terms_of(a), terms_of(b)
    for (ea, ca), (eb, cb) in zip(ta, tb):
        c = compare(ea, eb)
        if c != 0:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    if len(ta) != len(tb):
        return -1 if len(ta) < len(tb) else 1
    return 0


def leading_exponent(a: Ordinal) -> Ordinal:
    """The e with w^e <= a < w^(e+1); a must be nonzero."""
    t = terms_of(a)
    if not t:
        raise DomainError("zero has no leading exponent")
    return t[0][0]


def ord_add(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal sum; the low tail of a below b's leading power is absorbed."""
    if is_zero(b):
        return a
    if is_zero(a):
        return b
    ta, tb = terms_of(a), terms_of(b)
    eb = tb[0][0]
    kept: list[tuple[Ordinal, int]] = []
    merge = 0
    for e, c in ta:
        cmp = compare(e, eb)
        if cmp > 0:
            kept.append((e, c))
        elif cmp == 0:
            merge = c
            break
        else:
            break
    first = (tb[0][0], tb[0][1] + merge)
    return cnf(kept + [first] + list(tb[1:]))


def ord_mul(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal product, distributing a over b's normal form from the left."""
    if is_zero(a) or is_zero(b):
        return ZERO
    ta, tb = terms_of(a), terms_of(b)
    ea = ta[0][0]
    out: list[tuple[Ordinal, int]] = []
    for f, d in tb:
        if is_zero(f):
            # finite factor: scale the leading coefficient, keep a's tail
            out.append((ea, ta[0][1] * d))
            out.extend(ta[1:])
        else:
            out.append((ord_add(ea, f), d))
    return cnf(out)


def ord_sub_left(a: Ordinal, b: Ordinal) -> Ordinal:
    """The unique d with a + d = b; requires a <= b."""
    if compare(a, b) > 0:
        raise NotSubtractable(f"{a} > {b}")
    ta, tb = terms_of(a), terms_of(b)
    for i, (e, c) in enumerate(ta):
        if i >= len(tb):
            raise NotSubtractable(f"{a} > {b}")
        eb, cb = tb[i]
        cmp = compare(e, eb)
        if cmp < 0:
            return cnf(list(tb[i:]))
        if cmp > 0:
            raise NotSubtractable(f"{a} > {b}")
        if c < cb:
            return cnf([(eb, cb - c)] + list(tb[i + 1:]))
        if c > cb:
            raise NotSubtractable(f"{a} > {b}")
    return cnf(list(tb[len(ta):]))


def successor(a: Ordinal) -> Ordinal:
    return ord_add(a, ONE)


def _split_limit_finite(a: Ordinal) -> tuple[Ordinal, int]:
    """a = lambda + k with lambda a limit (or zero) and k < w."""
    t = terms_of(a)
    if t and is_zero(t[-1][0]):
        return cnf(list(t[:-1])), t[-1][1]
    return a, 0


def _shift_exponents_down(lam: Ordinal) -> Ordinal:
    """Exponent of the w-power equal to n^lam for a finite base n >= 2.

    Every CNF term w^h*c of the limit ordinal lam contributes w^(h-1)*c,
    where h-1 is the left difference 1 + d = h (so infinite h are fixed).
    """
    out = []
    for h, c in terms_of(lam):
        out.append((ord_sub_left(ONE, h), c))
    return cnf(out)


def _pow_finite_exponent(a: Ordinal, k: int) -> Ordinal:
    """a^k for finite k by squaring."""
    if k == 0:
        return ONE
    n = as_int(a)
    if n is not None:
        if n >= 2 and k * n.bit_length() > _FINITE_POW_BIT_LIMIT:
            raise DomainError(f"finite power {n}^{k} exceeds the size guard")
        return nat(n ** k)
    result = ONE
    base = a
    while k:
        if k & 1:
            result = ord_mul(result, base)
        base = ord_mul(base, base) if k > 1 else base
        k >>= 1
    return result


def ord_exp(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal exponentiation a^b.

    b = 0 gives 1 (even at a = 0); a in {0, 1} is constant; otherwise the
    limit part of b is handled in closed form and the finite part by
    repeated multiplication.
    """
    if is_zero(b):
        return ONE
    if is_zero(a):
        return ZERO
    if compare(a, ONE) == 0:
        return ONE
    lam, k = _split_limit_finite(b)
    if is_zero(lam):
        return _pow_finite_exponent(a, k)
    if is_finite(a):
        head = cnf([(_shift_exponents_down(lam), 1)])
    else:
        head = cnf([(ord_mul(leading_exponent(a), lam), 1)])
    return ord_mul(head, _pow_finite_exponent(a, k))


def natural_sum(a: Ordinal, b: Ordinal) -> Ordinal:
    """Hessenberg sum: coefficients merge exponentwise."""
    return cnf(list(terms_of(a)) + list(terms_of(b)))


def natural_product(a: Ordinal, b: Ordinal) -> Ordinal:
    """Hessenberg product: normal forms multiply like polynomials in w,
    with natural sums of exponents."""
    if is_zero(a) or is_zero(b):
        return ZERO
    out = []
    for ea, ca in terms_of(a):
        for eb, cb in terms_of(b):
            out.append((natural_sum(ea, eb), ca * cb))
    return cnf(out)


@dataclass(frozen=True)
class OrdinalKind:
    tag: str  # "zero" | "successor" | "limit"
    finite_part: int


def kind_of(a: Ordinal) -> OrdinalKind:
    """Classify a as zero, successor, or limit, with its finite tail."""
    if is_zero(a):
        return OrdinalKind("zero", 0)
    _, k = _split_limit_finite(a)
    return OrdinalKind("successor" if k else "limit", k)


def is_limit(a: Ordinal) -> bool:
    return kind_of(a).tag == "limit"


def is_additively_indecomposable(a: Ordinal) -> bool:
    """True iff a is a single power of w (no splitting a = b + c below a)."""
    if is_zero(a):
        raise DomainError("0 is neither decomposable nor indecomposable")
    t = terms_of(a)
    return len(t) == 1 and t[0][1] == 1


def _int_log(base: int, n: int) -> int:
    """Largest k with base^k <= n, for integers base >= 2, n >= 1."""
    k = 0
    while base ** (k + 1) <= n:
        k += 1
    return k


def _shift_exponents_up(e: Ordinal) -> Ordinal:
    """Inverse of _shift_exponents_down: the xi with n^xi = w^e, n finite."""
    out = []
    for h, c in terms_of(e):
        out.append((ord_add(ONE, h), c))
    return cnf(out)


def _log_base(base: int, a: Ordinal) -> Ordinal:
    """Largest xi with base^xi <= a, for finite base >= 2 and a >= 1."""
    n = as_int(a)
    if n is not None:
        return nat(_int_log(base, n))
    t = terms_of(a)
    e, c = t[0]
    return ord_add(_shift_exponents_up(e), nat(_int_log(base, c)))


def base_expand(a: Ordinal, base: int) -> list[tuple[Ordinal, int]]:
    """Digits of a in base `base`: descending exponents xi with digits
    1 <= d < base such that sum base^xi * d recomposes to a."""
    if base < 2:
        raise DomainError("expansion base must be at least 2")
    out: list[tuple[Ordinal, int]] = []
    rest = a
    while not is_zero(rest):
        xi = _log_base(base, rest)
        power = ord_exp(nat(base), xi)
        # largest digit d < base with power*d <= rest
        lo, hi = 1, base - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if compare(ord_mul(power, nat(mid)), rest) <= 0:
                lo = mid
            else:
                hi = mid - 1
        out.append((xi, lo))
        rest = ord_sub_left(ord_mul(power, nat(lo)), rest)
    return out


def _eps_indices(a: Ordinal) -> list[Ordinal]:
    found: list[Ordinal] = []
    stack = [a]
    while stack:
        x = stack.pop()
        if isinstance(x, Eps):
            found.append(x.index)
            stack.append(x.index)
        elif isinstance(x, Cnf):
            stack.extend(e for e, _ in x.terms)
    return found


def least_epsilon_above(a: Ordinal) -> Ordinal:
    """Smallest epsilon atom strictly greater than a.

    In normal form every epsilon subterm of a is <= a, so the successor of
    the largest subterm index bounds a strictly from above; with no epsilon
    subterm a sits below eps[0].
    """
    best: Ordinal | None = None
    for idx in _eps_indices(a):
        if compare(Eps(idx), a) <= 0 and (best is None or compare(idx, best) > 0):
            best = idx
    if best is None:
        return Eps(ZERO)
    return Eps(successor(best))


def _format_exponent(e: Ordinal) -> str:
    if isinstance(e, Eps):
        return format_ordinal(e)
    if is_finite(e):
        return format_ordinal(e)
    if compare(e, OMEGA) == 0:
        return "w"
    return f"({format_ordinal(e)})"


@lru_cache(maxsize=4096)
def format_ordinal(a: Ordinal) -> str:
    """Canonical text: `w`, `eps[i]`, `^ * +`, descending terms, no spaces."""
    if isinstance(a, _Zero):
        return "0"
    if isinstance(a, Eps):
        return f"eps[{format_ordinal(a.index)}]"
    parts = []
    for e, c in terms_of(a):
        if is_zero(e):
            parts.append(str(c))
            continue
        if isinstance(e, Eps):
            base = format_ordinal(e)
        elif compare(e, ONE) == 0:
            base = "w"
        else:
            base = f"w^{_format_exponent(e)}"
        parts.append(f"{base}*{c}" if c > 1 else base)
    return "+".join(parts)
