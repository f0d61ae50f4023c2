"""Transfinite binary fractions on [0, 1] with partial arithmetic.

A value in the universe of sequence length alpha (a limit ordinal) is a
0/1 assignment to every position below alpha; the digit at position p
contributes 1/2^(p+1).  Values whose digits form finitely many runs of
ones cover exactly the fractions that are eventually 0 or 1, which are
dense in the full space, so runs are the representation.

Two spellings can denote one value: ...0111... equals ...1000... when the
ones continue to the very end of the sequence.  Canonical form rewrites a
trailing all-ones run starting at a successor into the single digit one
place earlier, repeatedly, so the last run either stops before alpha or
starts at a limit (or zero, for the value 1).

Arithmetic is deliberately partial: sums exist only when every carry can
land somewhere.  A carry of 1/2^b must become a digit at the predecessor
of b; when b is a limit it can only survive as the all-ones tail from b,
which works exactly when nothing is set at or beyond b.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DomainError,
    NotDivisible,
    NotNested,
    NotSubtractable,
    OutOfUniverse,
    UndefinedSum,
    UniverseMismatch,
)
from .ordinal import (
    OMEGA,
    ONE,
    ZERO,
    Ordinal,
    _split_limit_finite,
    cnf,
    compare,
    is_limit,
    is_zero,
    kind_of,
    nat,
    natural_sum,
    ord_add,
    terms_of,
)

_RUN_DIGIT_CAP = 4096  # explicit digit enumeration bound for multiplication


@dataclass(frozen=True)
class Universe:
    alpha: Ordinal

    def __post_init__(self):
        if not is_limit(self.alpha):
            raise DomainError("universe length must be a limit ordinal")

    def __repr__(self):
        return f"universe<{self.alpha}>"


@dataclass(frozen=True)
class GenFraction:
    """Canonical run-encoded fraction; build via canonicalize/dyadic."""

    universe: Universe
    runs: tuple[tuple[Ordinal, Ordinal], ...]

    def __repr__(self):
        spans = ",".join(f"[{a},{b})" for a, b in self.runs)
        return f"frac<{spans}@{self.universe.alpha}>"


def _pred(p: Ordinal) -> Ordinal:
    lam, k = _split_limit_finite(p)
    if k == 0:
        raise DomainError(f"{p} has no predecessor")
    return ord_add(lam, nat(k - 1))


def canonicalize(raw_runs, universe: Universe) -> GenFraction:
    """Merge, validate, and twin-normalize runs of one-digits."""
    alpha = universe.alpha
    runs = []
    for a, b in raw_runs:
        if compare(a, b) >= 0:
            raise DomainError("run must be a nonempty half-open interval")
        if compare(b, alpha) > 0:
            raise OutOfUniverse(f"run endpoint {b} beyond {alpha}")
        runs.append((a, b))
    runs.sort(key=_run_sort_key)
    while True:
        merged: list[tuple[Ordinal, Ordinal]] = []
        for a, b in runs:
            if merged and compare(a, merged[-1][1]) <= 0:
                pa, pb = merged[-1]
                if compare(b, pb) > 0:
                    merged[-1] = (pa, b)
            else:
                merged.append((a, b))
        if merged and compare(merged[-1][1], alpha) == 0:
            s = merged[-1][0]
            if kind_of(s).tag == "successor":
                # twin: all ones from a successor spell the digit before it
                merged[-1] = (_pred(s), s)
                runs = merged
                continue
        return GenFraction(universe, tuple(merged))


class _OrdKey:
    __slots__ = ("o",)

    def __init__(self, o):
        self.o = o

    def __lt__(self, other):
        return compare(self.o, other.o) < 0


def _run_sort_key(run):
    return _OrdKey(run[0])


def zero(universe: Universe) -> GenFraction:
    return GenFraction(universe, ())


def one(universe: Universe) -> GenFraction:
    return GenFraction(universe, ((ZERO, universe.alpha),))


def dyadic(e: Ordinal, universe: Universe) -> GenFraction:
    """1/2^e: a single digit for successor e, the all-ones tail for limit e,
    and the whole interval (the value 1) for e = 0."""
    alpha = universe.alpha
    if compare(e, alpha) >= 0:
        raise OutOfUniverse(f"dyadic exponent {e} not below {alpha}")
    k = kind_of(e)
    if k.tag == "zero":
        return one(universe)
    if k.tag == "successor":
        return GenFraction(universe, ((_pred(e), e),))
    return GenFraction(universe, ((e, alpha),))


def dyadic_exponent(x: GenFraction):
    """The e with x = 1/2^e, or None when x is not a single dyadic."""
    if len(x.runs) != 1:
        return None
    a, b = x.runs[0]
    if compare(b, x.universe.alpha) == 0:
        return a
    if compare(b, ord_add(a, ONE)) == 0:
        return b
    return None


def _check_same_universe(x: GenFraction, y: GenFraction):
    if compare(x.universe.alpha, y.universe.alpha) != 0:
        raise UniverseMismatch("operands live in different universes")


def _segments(x: GenFraction, y: GenFraction):
    """Common refinement of both run lists: (start, end, digit_x, digit_y)
    triples covering [0, alpha)."""
    alpha = x.universe.alpha
    points = [ZERO, alpha]
    for f in (x, y):
        for a, b in f.runs:
            points.append(a)
            points.append(b)
    uniq: list[Ordinal] = []
    points.sort(key=_OrdKey)
    for p in points:
        if not uniq or compare(p, uniq[-1]) != 0:
            uniq.append(p)

    def digit(f: GenFraction, p: Ordinal) -> int:
        for a, b in f.runs:
            if compare(a, p) <= 0 and compare(p, b) < 0:
                return 1
        return 0

    out = []
    for a, b in zip(uniq, uniq[1:]):
        out.append((a, b, digit(x, a), digit(y, a)))
    return out


def fraction_compare(x: GenFraction, y: GenFraction) -> int:
    """Lexicographic order by the first differing digit."""
    _check_same_universe(x, y)
    for _, _, dx, dy in _segments(x, y):
        if dx != dy:
            return 1 if dx > dy else -1
    return 0


def subtract(y: GenFraction, x: GenFraction) -> GenFraction:
    """Digitwise difference y - x, also trying y's twin spelling."""
    _check_same_universe(y, x)
    for spelling in (y, _twin(y)):
        if spelling is None:
            continue
        segs = _segments(spelling, x)
        if all(dy >= dx for _, _, dy, dx in segs):
            runs = [(a, b) for a, b, dy, dx in segs if dy == 1 and dx == 0]
            return canonicalize(runs, y.universe)
    raise NotSubtractable("no spelling of the minuend dominates digitwise")


def _twin(y: GenFraction):
    """The all-ones-tail spelling of y, when it exists (digits eventually 0),
    as a non-canonical fraction for digitwise work."""
    if not y.runs:
        return None
    a, b = y.runs[-1]
    alpha = y.universe.alpha
    if compare(b, alpha) == 0:
        return None
    runs = list(y.runs[:-1])
    last = _pred(b)
    if compare(a, last) < 0:
        runs.append((a, last))
    runs.append((b, alpha))
    return GenFraction(y.universe, tuple(runs))


def add(x: GenFraction, y: GenFraction) -> GenFraction:
    """Digitwise sum with carries moving toward position 0.

    Processing runs from the least significant end, a block of ones plus an
    incoming carry flips to zeros and forwards the carry; a carry entering a
    zero block lands at the block's last position when that exists, and a
    carry at a limit survives only as the all-ones tail over a still-empty
    remainder.  Everything else has no value here.
    """
    _check_same_universe(x, y)
    alpha = x.universe.alpha
    segs = [(a, b, dx + dy) for a, b, dx, dy in _segments(x, y)]
    out: list[tuple[Ordinal, Ordinal]] = []
    emitted = False  # any one-digit emitted so far (all at positions >= cursor)
    carry = False
    for a, b, v in reversed(segs):
        t = v + (1 if carry else 0)
        carry = False
        if t == 0:
            continue
        if t == 1:
            if v == 1:
                out.append((a, b))
                emitted = True
            else:
                # lone carry 1/2^b entering a zero block
                if kind_of(b).tag == "successor":
                    out.append((_pred(b), b))
                    emitted = True
                elif not emitted:
                    out.append((b, alpha))
                    emitted = True
                else:
                    raise UndefinedSum("carry at a limit position over set digits")
        elif t == 2:
            if v == 1:
                carry = True  # ones flip to zeros, carry 1/2^a moves on
            else:
                if kind_of(b).tag != "successor":
                    raise UndefinedSum("doubled digits reach a limit with no carry target")
                if compare(a, _pred(b)) < 0:
                    out.append((a, _pred(b)))
                    emitted = True
                carry = True
        else:  # t == 3
            out.append((a, b))
            emitted = True
            carry = True
    if carry:
        if emitted:
            raise UndefinedSum("sum exceeds 1")
        return one(x.universe)
    return canonicalize(out, x.universe)


def halve(x: GenFraction) -> GenFraction:
    """Each digit moves one position later; a trailing all-ones run (the
    dyadic of its limit start) becomes the single digit at that start."""
    alpha = x.universe.alpha
    runs = []
    for a, b in x.runs:
        if compare(b, alpha) == 0:
            runs.append((a, ord_add(a, ONE)))
        else:
            runs.append((ord_add(a, ONE), ord_add(b, ONE)))
    return canonicalize(runs, x.universe)


def mul_dyadic(e1: Ordinal, e2: Ordinal, universe: Universe) -> GenFraction:
    """1/2^e1 * 1/2^e2 = 1/2^(e1 # e2) with the natural sum of exponents."""
    for e in (e1, e2):
        if compare(e, universe.alpha) >= 0:
            raise OutOfUniverse(f"dyadic exponent {e} not below {universe.alpha}")
    return dyadic(natural_sum(e1, e2), universe)


def _natural_sub(beta: Ordinal, e: Ordinal) -> Ordinal:
    """Coefficientwise difference: the d with natural_sum(d, e) = beta."""
    need = dict(terms_of(e))  # normalized exponents hash structurally
    out = []
    for h, c in terms_of(beta):
        take = need.pop(h, 0)
        if take > c:
            raise NotDivisible(f"exponent {beta} lacks a {e} part")
        if c - take:
            out.append((h, c - take))
    if need:
        raise NotDivisible(f"exponent {beta} lacks a {e} part")
    return cnf(out)


def mul_by_pow2(x: GenFraction, e: Ordinal) -> GenFraction:
    """x * 2^e for x a combination of dyadics whose exponents all contain e
    as a natural summand; each summand exponent shifts down by e."""
    if compare(e, x.universe.alpha) >= 0:
        raise OutOfUniverse(f"power exponent {e} not below {x.universe.alpha}")
    alpha = x.universe.alpha
    pieces: list[GenFraction] = []
    for a, b in x.runs:
        if compare(b, alpha) == 0:
            pieces.append(dyadic(_natural_sub(a, e), x.universe))
            continue
        lam_a, fa = _split_limit_finite(a)
        lam_b, fb = _split_limit_finite(b)
        if compare(lam_a, lam_b) == 0:
            if fb - fa > _RUN_DIGIT_CAP:
                raise DomainError("run has too many digits to multiply")
            for k in range(fa, fb):
                beta = ord_add(lam_a, nat(k + 1))
                pieces.append(dyadic(_natural_sub(beta, e), x.universe))
        else:
            # run crossing a limit: shift both dyadic endpoints
            lo = _natural_sub(a, e)
            hi = _natural_sub(b, e)
            pieces.append(canonicalize([(lo, hi)], x.universe))
    acc = zero(x.universe)
    for p in pieces:
        acc = add(acc, p)
    return acc


def block_sum(e: Ordinal, universe: Universe) -> GenFraction:
    """Sum of the dyadics 1/2^b for e <= b < e+w: the ones run from the
    predecessor of e up to e+w, equal to 1/2^(e-1) - 1/2^(e+w)."""
    if kind_of(e).tag != "successor":
        raise UndefinedSum("block sum needs a successor start")
    end = ord_add(e, OMEGA)
    if compare(end, universe.alpha) > 0:
        raise OutOfUniverse("block extends beyond the universe")
    return canonicalize([(_pred(e), end)], universe)


def between(x: GenFraction, y: GenFraction):
    """Strictly interleaved pair with a dyadic gap: returns (x', y', e) with
    x < x' < y' < y and y' - x' = 1/2^e for a successor e."""
    _check_same_universe(x, y)
    if fraction_compare(x, y) >= 0:
        raise DomainError("between needs x < y")
    segs = _segments(x, y)
    diff_at = None
    for a, _, dx, dy in segs:
        if dx != dy:
            diff_at = a
            break
    assert diff_at is not None and _digit_at(y, diff_at) == 1
    # first zero of x strictly after the difference position
    q = ord_add(diff_at, ONE)
    for a, b in x.runs:
        if compare(a, q) <= 0 and compare(q, b) < 0:
            q = b
    prefix = [(a, b if compare(b, q) <= 0 else q) for a, b in x.runs if compare(a, q) < 0]
    x1 = canonicalize(prefix + [(q, ord_add(q, ONE))], x.universe)
    y1 = canonicalize(prefix + [(q, ord_add(q, nat(2)))], x.universe)
    return x1, y1, ord_add(q, nat(2))


def _digit_at(f: GenFraction, p: Ordinal) -> int:
    for a, b in f.runs:
        if compare(a, p) <= 0 and compare(p, b) < 0:
            return 1
    return 0


def embed(x: GenFraction, target: Universe) -> GenFraction:
    """Digitwise zero extension into a longer universe (order preserving;
    a trailing ones run keeps its endpoint, so tail dyadics map to runs)."""
    if compare(x.universe.alpha, target.alpha) > 0:
        raise UniverseMismatch("cannot embed into a shorter universe")
    return GenFraction(target, x.runs)


def sup_inf_finite(values, which: str) -> GenFraction:
    """Maximum or minimum of finitely many fractions under the order."""
    vals = list(values)
    if not vals:
        raise DomainError("empty set has no bounds")
    best = vals[0]
    for v in vals[1:]:
        c = fraction_compare(v, best)
        if (which == "sup" and c > 0) or (which == "inf" and c < 0):
            best = v
    return best


def dyadic_family_bounds(a: Ordinal, b: Ordinal, universe: Universe):
    """(sup, inf) of the dyadics 1/2^e for a <= e < b: the largest member
    and the limit value 1/2^b (zero when b is the whole length)."""
    if compare(a, b) >= 0 or compare(b, universe.alpha) > 0:
        raise DomainError("need a < b <= universe length")
    sup = dyadic(a, universe)
    inf = (
        zero(universe)
        if compare(b, universe.alpha) == 0
        else dyadic(b, universe)
    )
    return sup, inf


# ---------------------------------------------------------------------------
# intervals


@dataclass(frozen=True)
class GenInterval:
    lo: GenFraction
    hi: GenFraction

    def __post_init__(self):
        _check_same_universe(self.lo, self.hi)
        if fraction_compare(self.lo, self.hi) > 0:
            raise DomainError("interval needs lo <= hi")

    def length(self) -> GenFraction:
        return subtract(self.hi, self.lo)

    def __repr__(self):
        return f"[{self.lo!r}, {self.hi!r}]"


def interval_halve(iv: GenInterval) -> tuple[GenInterval, GenInterval]:
    """Split an interval of dyadic length 1/2^e at lo + 1/2^(e+1)."""
    e = dyadic_exponent(iv.length())
    if e is None:
        raise DomainError("only intervals of single-dyadic length halve")
    mid = add(iv.lo, dyadic(ord_add(e, ONE), iv.lo.universe))
    return GenInterval(iv.lo, mid), GenInterval(mid, iv.hi)


def nested_intersect(intervals, budget: int) -> GenInterval:
    """Follow a shrinking chain of intervals until one is no longer than
    1/2^budget (or the chain ends) and return it as the bracket."""
    if budget < 0:
        raise DomainError("budget must be non-negative")
    current: GenInterval | None = None
    target = None
    for iv in intervals:
        if current is not None:
            if (
                fraction_compare(iv.lo, current.lo) < 0
                or fraction_compare(iv.hi, current.hi) > 0
            ):
                raise NotNested("interval escapes its predecessor")
        current = iv
        if target is None:
            target = dyadic(nat(budget), iv.lo.universe)
        try:
            ln = current.length()
        except NotSubtractable:
            continue
        if fraction_compare(ln, target) <= 0:
            return current
    if current is None:
        raise DomainError("empty interval chain")
    return current


def _sign_of(value) -> int:
    if isinstance(value, GenNumber):
        return value.sign
    if isinstance(value, int):
        return (value > 0) - (value < 0)
    raise DomainError("sign function must yield an integer or a number")


def dichotomy_root(f, iv: GenInterval, budget: int) -> GenInterval:
    """Bracket a sign change of f down to length 1/2^budget by halving.

    Zero at an endpoint short-circuits to the degenerate bracket; a zero at
    a midpoint becomes the bracket's upper end, keeping the sign change (in
    the weak sense) inside.
    """
    if budget < 0:
        raise DomainError("budget must be non-negative")
    universe = iv.lo.universe
    s_lo = _sign_of(f(iv.lo))
    if s_lo == 0:
        return GenInterval(iv.lo, iv.lo)
    s_hi = _sign_of(f(iv.hi))
    if s_hi == 0:
        return GenInterval(iv.hi, iv.hi)
    if s_lo == s_hi:
        raise DomainError("endpoints must have different signs")
    target = dyadic(nat(budget), universe)
    current = iv
    while fraction_compare(current.length(), target) > 0:
        left, right = interval_halve(current)
        s_mid = _sign_of(f(left.hi))
        if s_mid == s_lo:
            current = right
        else:
            current = left
    return current


# ---------------------------------------------------------------------------
# derivative stages and signed numbers


def in_derivative_stage(e: Ordinal, beta: Ordinal) -> bool:
    """Does the dyadic 1/2^e survive beta rounds of taking limit points?
    Exactly the exponents divisible by w^beta, i.e. every normal-form
    exponent of e is at least beta."""
    if compare(e, ONE) < 0:
        raise DomainError("dyadic exponent must be at least 1")
    return all(compare(h, beta) >= 0 for h, _ in terms_of(e))


@dataclass(frozen=True)
class GenNumber:
    """Signed number: ordinal integer part plus a fractional part."""

    sign: int
    integer_part: Ordinal
    fraction: GenFraction

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise DomainError("sign must be -1, 0, or 1")
        if self.sign == 0 and not (
            is_zero(self.integer_part) and not self.fraction.runs
        ):
            raise DomainError("zero sign demands zero parts")
        if self.sign != 0 and is_zero(self.integer_part) and not self.fraction.runs:
            raise DomainError("nonzero sign demands a nonzero magnitude")


def number_zero(universe: Universe) -> GenNumber:
    return GenNumber(0, ZERO, zero(universe))


def make_number(sign: int, integer_part: Ordinal, fraction: GenFraction) -> GenNumber:
    if sign != 0 and is_zero(integer_part) and not fraction.runs:
        sign = 0
    if sign == 0:
        return number_zero(fraction.universe)
    return GenNumber(sign, integer_part, fraction)


def number_compare(a: GenNumber, b: GenNumber) -> int:
    if a.sign != b.sign:
        return 1 if a.sign > b.sign else -1
    if a.sign == 0:
        return 0
    mag = compare(a.integer_part, b.integer_part)
    if mag == 0:
        mag = fraction_compare(a.fraction, b.fraction)
    return mag * a.sign


def number_negate(a: GenNumber) -> GenNumber:
    return make_number(-a.sign, a.integer_part, a.fraction)
