"""Skands: ordinal-length systems of nested set components.

A skand of length l assigns a finite set (of atoms, finite sets, and
references to other skands) to every position below l.  Read as a set, a
skand is its first component's elements together with its own tail, which
is what makes skands of infinite length reflexive and circular.

The component map is piecewise: finitely many half-open spans, each
carrying a cyclic pattern of sets.  A pattern indexes by the finite part
of the position, so the phase restarts at every limit; a span given with a
pattern anchored to its own start is converted on construction (the two
views agree past the anchor's limit block).  Construction canonicalizes --
adjacent spans that one pattern reproduces are merged and patterns reduced
to their shortest period -- so structural identity of canonical values
coincides with skand equality; ``skand_equal`` nevertheless decides
equality by refining both piece lists to a common partition, independent
of canonicalization.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from .errors import DomainError, LengthMismatch, NotSelfSimilar
from .ordinal import (
    OMEGA,
    ONE,
    ZERO,
    Ordinal,
    _split_limit_finite,
    compare,
    is_additively_indecomposable,
    is_zero,
    nat,
    ord_add,
    ord_exp,
    ord_sub_left,
)

ORDINAL_SKAND_MAX = 6  # nesting depth cap for the ordinal-skand chain


# ---------------------------------------------------------------------------
# set values


class SetValue:
    """A value a component set may contain."""

    __slots__ = ()


@dataclass(frozen=True)
class Atom(SetValue):
    label: str

    __slots__ = ("label",)

    def __repr__(self):
        return self.label


@dataclass(frozen=True)
class FinSet(SetValue):
    elements: frozenset

    __slots__ = ("elements",)

    def __repr__(self):
        inner = ",".join(sorted(map(repr, self.elements)))
        return "{" + inner + "}"


@dataclass(frozen=True)
class SkandRef(SetValue):
    skand: "Skand"

    __slots__ = ("skand",)

    def __repr__(self):
        return f"ref<{self.skand!r}>"


EMPTY_SET = FinSet(frozenset())


def finset(items=()) -> FinSet:
    return FinSet(frozenset(items))


def make_ref(s: "Skand") -> SetValue:
    """Reference a skand as a value; a length-1 skand is an ordinary set."""
    if compare(s.length, ONE) == 0:
        return s.component(ZERO)
    return SkandRef(s)


# ---------------------------------------------------------------------------
# position-block helpers


def _fp(p: Ordinal) -> int:
    return _split_limit_finite(p)[1]


def _limit_part(p: Ordinal) -> Ordinal:
    return _split_limit_finite(p)[0]


def _block_end(p: Ordinal) -> Ordinal:
    return ord_add(_limit_part(p), OMEGA)


def _occurring(a: Ordinal, b: Ordinal):
    """Finite parts of positions in [a, b) as ('fin', r, s) for the integer
    range [r, s), or ('cof', r, s) for [r, oo) united with [0, s)."""
    if compare(_limit_part(a), _limit_part(b)) == 0:
        return ("fin", _fp(a), _fp(b))
    r = _fp(a)
    s = 0
    if compare(ord_add(_block_end(a), OMEGA), b) <= 0:
        r = 0  # a full block lies inside, every finite part occurs
    if _fp(b) > 0:
        s = _fp(b)
    return ("cof", r, s)


def _patterns_agree(a: Ordinal, b: Ordinal, pat1, pat2) -> bool:
    """Do two position-anchored patterns give the same components on [a, b)?"""
    n = lcm(len(pat1), len(pat2))
    kind, r, s = _occurring(a, b)
    if kind == "fin":
        idx = range(r, min(s, r + n))
    else:
        idx = list(range(r, r + n)) + list(range(min(s, n)))
    return all(pat1[j % len(pat1)] == pat2[j % len(pat2)] for j in idx)


# ---------------------------------------------------------------------------
# pieces and canonical form


@dataclass(frozen=True)
class Piece:
    """Span [lo, hi) whose component at position p is
    pattern[finite_part(p) mod len(pattern)]."""

    lo: Ordinal
    hi: Ordinal
    pattern: tuple

    __slots__ = ("lo", "hi", "pattern")

    def component_at(self, p: Ordinal) -> FinSet:
        return self.pattern[_fp(p) % len(self.pattern)]


def _anchored_to_positional(lo: Ordinal, hi: Ordinal, pattern) -> list[Piece]:
    """Convert a pattern anchored at lo (indexed by the offset's finite
    part) into position-anchored pieces."""
    n = len(pattern)
    r = _fp(lo)
    if r == 0:
        return [Piece(lo, hi, tuple(pattern))]
    rotated = tuple(pattern[(j - r) % n] for j in range(n))
    end = _block_end(lo)
    if compare(hi, end) <= 0:
        return [Piece(lo, hi, rotated)]
    return [Piece(lo, end, rotated), Piece(end, hi, tuple(pattern))]


PATTERN_CAP = 256  # longest representable component cycle
_FIT_WINDOW = PATTERN_CAP * PATTERN_CAP  # one full combined period


def _fin_values(r: int, s: int, pattern) -> dict[int, FinSet]:
    """Finite-part -> component constraints of a one-block span, windowed:
    constraints repeat with period lcm(candidate, len(pattern)) <= window."""
    n = len(pattern)
    return {j: pattern[j % n] for j in range(r, min(s, r + _FIT_WINDOW))}


def _fit_pattern(values: dict[int, FinSet], max_n: int) -> tuple | None:
    """Shortest fully determined pattern matching finite-part -> component
    constraints, trying periods up to max_n."""
    for n in range(1, min(max_n, PATTERN_CAP) + 1):
        klass: dict[int, FinSet] = {}
        ok = True
        for j, v in values.items():
            if klass.setdefault(j % n, v) != v:
                ok = False
                break
        if ok and len(klass) == n:
            return tuple(klass[k] for k in range(n))
    return None


def _minimal_pattern(lo: Ordinal, hi: Ordinal, pattern) -> tuple:
    """Shortest pattern giving the same components on [lo, hi)."""
    n = len(pattern)
    kind, r, s = _occurring(lo, hi)
    if kind == "fin":
        fitted = _fit_pattern(_fin_values(r, s, pattern), min(s - r, n))
        return fitted if fitted is not None else tuple(pattern)
    for p in range(1, n):
        if n % p:
            continue  # spans reaching a limit force divisor periods
        if _patterns_agree(lo, hi, pattern, tuple(pattern[:p])):
            return tuple(pattern[:p])
    return tuple(pattern)


def _try_merge(p1: Piece, p2: Piece) -> Piece | None:
    """One piece reproducing two adjacent pieces, or None."""
    occ1, occ2 = _occurring(p1.lo, p1.hi), _occurring(p2.lo, p2.hi)
    if occ1[0] == "fin" and occ2[0] == "fin":
        # both inside one limit block: list the components explicitly
        values = _fin_values(occ1[1], occ1[2], p1.pattern)
        values.update(_fin_values(occ2[1], occ2[2], p2.pattern))
        fitted = _fit_pattern(values, occ2[2] - occ1[1])
        if fitted is None:
            return None
        return Piece(p1.lo, p2.hi, fitted)
    # at least one span crosses or touches a limit: its period is forced
    if occ1[0] == "cof" and occ2[0] == "cof":
        n = lcm(len(p1.pattern), len(p2.pattern))
    elif occ1[0] == "cof":
        n = len(p1.pattern)
    else:
        n = len(p2.pattern)
    base = p1.pattern if occ1[0] == "cof" else p2.pattern
    cand = tuple(base[j % len(base)] for j in range(n))
    if _patterns_agree(p1.lo, p1.hi, cand, p1.pattern) and _patterns_agree(
        p2.lo, p2.hi, cand, p2.pattern
    ):
        merged_pat = _minimal_pattern(p1.lo, p2.hi, cand)
        return Piece(p1.lo, p2.hi, merged_pat)
    return None


def _canonical_pieces(pieces: list[Piece]) -> tuple[Piece, ...]:
    out: list[Piece] = []
    for pc in pieces:
        pc = Piece(pc.lo, pc.hi, _minimal_pattern(pc.lo, pc.hi, pc.pattern))
        while out:
            merged = _try_merge(out[-1], pc)
            if merged is None:
                break
            out.pop()
            pc = merged
        out.append(pc)
    return tuple(out)


# ---------------------------------------------------------------------------
# skands


@dataclass(frozen=True)
class Skand:
    """Canonical value; build through the constructor functions below."""

    length: Ordinal
    pieces: tuple[Piece, ...]

    __slots__ = ("length", "pieces")

    def component(self, p: Ordinal) -> FinSet:
        if compare(p, self.length) >= 0:
            raise DomainError("component index beyond skand length")
        for pc in self.pieces:
            if compare(p, pc.hi) < 0:
                return pc.component_at(p)
        raise AssertionError("pieces do not cover the skand")

    def __repr__(self):
        spans = ";".join(
            f"[{pc.lo},{pc.hi}):{list(map(repr, pc.pattern))}" for pc in self.pieces
        )
        return f"skand<{self.length}|{spans}>"


def piecewise_skand(length: Ordinal, spans) -> Skand:
    """Skand from (lo, hi, content) triples covering [0, length); content is
    one FinSet (constant) or a pattern sequence anchored at lo."""
    if is_zero(length):
        raise DomainError("skand length must be at least 1")
    expected = ZERO
    converted: list[Piece] = []
    for lo, hi, content in spans:
        if compare(lo, expected) != 0:
            raise DomainError("spans must tile [0, length) in order")
        if compare(lo, hi) >= 0:
            raise DomainError("empty span")
        pattern = (content,) if isinstance(content, FinSet) else tuple(content)
        if not pattern:
            raise DomainError("empty pattern")
        if len(pattern) > PATTERN_CAP:
            raise DomainError(f"pattern longer than {PATTERN_CAP}")
        if not all(isinstance(v, FinSet) for v in pattern):
            raise DomainError("components must be finite sets")
        converted.extend(_anchored_to_positional(lo, hi, pattern))
        expected = hi
    if compare(expected, length) != 0:
        raise DomainError("spans must cover the whole length")
    return Skand(length, _canonical_pieces(converted))


def constant_skand(length: Ordinal, comp: FinSet) -> Skand:
    return piecewise_skand(length, [(ZERO, length, comp)])


def periodic_skand(length: Ordinal, pattern) -> Skand:
    return piecewise_skand(length, [(ZERO, length, tuple(pattern))])


def trivial_skand(length: Ordinal) -> Skand:
    return constant_skand(length, EMPTY_SET)


def skand_equal(x: Skand, y: Skand) -> bool:
    """Equality: same length and componentwise equal sets.

    Decided on the common refinement of the two piece lists rather than by
    comparing canonical forms.
    """
    if compare(x.length, y.length) != 0:
        return False
    i = j = 0
    start = ZERO
    while i < len(x.pieces) and j < len(y.pieces):
        px, py = x.pieces[i], y.pieces[j]
        end = px.hi if compare(px.hi, py.hi) <= 0 else py.hi
        if not _patterns_agree(start, end, px.pattern, py.pattern):
            return False
        if compare(px.hi, end) == 0:
            i += 1
        if compare(py.hi, end) == 0:
            j += 1
        start = end
    return True


def suffix(x: Skand, start: Ordinal) -> Skand:
    """The skand of the components at positions start, start+1, ...

    Its length is the unique l' with start + l' = length.
    """
    if is_zero(start):
        return x
    if compare(start, x.length) >= 0:
        raise DomainError("suffix start beyond skand length")
    new_len = ord_sub_left(start, x.length)
    pieces: list[Piece] = []
    for pc in x.pieces:
        lo = pc.lo if compare(pc.lo, start) >= 0 else start
        if compare(lo, pc.hi) >= 0:
            continue
        new_lo = ord_sub_left(start, lo)
        new_hi = ord_sub_left(start, pc.hi)
        n = len(pc.pattern)
        if compare(new_lo, OMEGA) >= 0:
            # past the first new block the finite parts are unchanged
            pieces.append(Piece(new_lo, new_hi, pc.pattern))
            continue
        r = _fp(start)
        shifted = tuple(pc.pattern[(j + r) % n] for j in range(n))
        if compare(new_hi, OMEGA) <= 0:
            pieces.append(Piece(new_lo, new_hi, shifted))
        else:
            pieces.append(Piece(new_lo, OMEGA, shifted))
            pieces.append(Piece(OMEGA, new_hi, pc.pattern))
    return Skand(new_len, _canonical_pieces(pieces))


def tail(x: Skand) -> "Skand | FinSet":
    """Drop the first component; a length-1 skand yields its component."""
    if compare(x.length, ONE) == 0:
        return x.component(ZERO)
    return suffix(x, ONE)


def elements(x: Skand) -> list[SetValue]:
    """The skand read as a set: component 0's elements plus its own tail."""
    out = list(x.component(ZERO).elements)
    if compare(x.length, ONE) > 0:
        out.append(make_ref(suffix(x, ONE)))
    return out


def member(v: SetValue, x: Skand) -> bool:
    return any(_values_equal(v, e) for e in elements(x))


def _values_equal(a: SetValue, b: SetValue) -> bool:
    if isinstance(a, SkandRef) and isinstance(b, SkandRef):
        return skand_equal(a.skand, b.skand)
    return a == b


def is_reflexive(x: Skand) -> bool:
    return member(make_ref(x), x)


def is_self_similar(x: Skand) -> bool:
    """Equal to all of its suffixes: indecomposable length, one constant
    component (length 1 counts as trivially self-similar)."""
    if not is_additively_indecomposable(x.length):
        return False
    return len(x.pieces) == 1 and len(x.pieces[0].pattern) == 1


def circular_period(x: Skand, bound: int):
    """Least n <= bound with the n-fold tail equal to x, or None."""
    if bound < 1:
        raise DomainError("period bound must be at least 1")
    cur: Skand | FinSet = x
    for n in range(1, bound + 1):
        if not isinstance(cur, Skand):
            return None
        cur = tail(cur)
        if isinstance(cur, Skand) and skand_equal(cur, x):
            return n
    return None


def _setop_values(op: str, a: FinSet, b: FinSet) -> FinSet:
    # canonical values make structural and skand equality coincide, so
    # frozenset algebra decides membership
    if op == "union":
        return FinSet(a.elements | b.elements)
    if op == "intersection":
        return FinSet(a.elements & b.elements)
    if op == "difference":
        return FinSet(a.elements - b.elements)
    raise DomainError(f"unknown set operation {op!r}")


def skand_setop(op: str, x: Skand, y: Skand) -> Skand:
    """Componentwise union/intersection/difference of equal-length skands."""
    if compare(x.length, y.length) != 0:
        raise LengthMismatch("componentwise operation needs equal lengths")
    pieces: list[Piece] = []
    i = j = 0
    start = ZERO
    while i < len(x.pieces) and j < len(y.pieces):
        px, py = x.pieces[i], y.pieces[j]
        end = px.hi if compare(px.hi, py.hi) <= 0 else py.hi
        n = lcm(len(px.pattern), len(py.pattern))
        pat = tuple(
            _setop_values(op, px.pattern[k % len(px.pattern)], py.pattern[k % len(py.pattern)])
            for k in range(n)
        )
        pieces.append(Piece(start, end, pat))
        if compare(px.hi, end) == 0:
            i += 1
        if compare(py.hi, end) == 0:
            j += 1
        start = end
    return Skand(x.length, _canonical_pieces(pieces))


def power_skand(x: Skand) -> Skand:
    """Componentwise finite powerset."""
    pieces = [
        Piece(pc.lo, pc.hi, tuple(_powerset(v) for v in pc.pattern)) for pc in x.pieces
    ]
    return Skand(x.length, _canonical_pieces(pieces))


def _powerset(s: FinSet) -> FinSet:
    items = list(s.elements)
    if len(items) > 10:
        raise DomainError("powerset of a component with more than 10 elements")
    subsets = []
    for mask in range(1 << len(items)):
        subsets.append(finset(items[i] for i in range(len(items)) if mask >> i & 1))
    return finset(subsets)


def singleton_skand(x: Skand) -> Skand:
    """Same length, every component the one-element set {x}."""
    if compare(x.length, OMEGA) < 0 or not is_self_similar(x):
        raise NotSelfSimilar("singleton needs a self-similar skand of infinite length")
    return constant_skand(x.length, finset([make_ref(x)]))


def ordinal_skand(n: int, kappa: int) -> Skand:
    """The n-th stage of the membership chain of constant skands of length
    w^kappa: stage 1 is trivial, stage n holds references to all earlier
    stages."""
    if not 1 <= n <= ORDINAL_SKAND_MAX:
        raise DomainError(f"stage must be between 1 and {ORDINAL_SKAND_MAX}")
    if kappa < 1:
        raise DomainError("length exponent must be at least 1")
    length = ord_exp(OMEGA, nat(kappa))
    stages = [trivial_skand(length)]
    for _ in range(n - 1):
        stages.append(constant_skand(length, finset(make_ref(s) for s in stages)))
    return stages[-1]


def rank(x: Skand) -> int:
    """1 + the deepest skand reference nested in any component."""
    deepest = 0
    for pc in x.pieces:
        for v in pc.pattern:
            deepest = max(deepest, _value_rank(v))
    return 1 + deepest


def _value_rank(v: SetValue) -> int:
    if isinstance(v, SkandRef):
        return rank(v.skand)
    if isinstance(v, FinSet):
        return max((_value_rank(e) for e in v.elements), default=0)
    return 0
