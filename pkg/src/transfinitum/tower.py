"""Epsilon-number machinery built on transfinite exponential towers.

The enumeration here indexes epsilon numbers so that 1 and w come first
(index 0 and 1, fixpoints of x^y = y for bases 1 and finite bases), and the
classical Cantor sequence starts at index 2.  ``epsilon_paper`` converts
that numbering into the Cantor-indexed ``Eps`` atoms of the notation
system: finite indices shift down by two, infinite ones are unchanged
because 2 + mu = mu.

``tower_limit_general`` evaluates a tower of a fixed finite base whose
height is an arbitrary ordinal: the height's normal form
``w^h1*b1 + ... + w^hn*bn + b`` turns into ``b`` applications of the base,
then ``b_i`` applications of the epsilon number of index ``h_i``, folded
right to left, all through ordinary ordinal exponentiation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .ordinal import (
    OMEGA,
    ONE,
    ZERO,
    Eps,
    Ordinal,
    compare,
    is_finite,
    is_zero,
    least_epsilon_above,
    nat,
    ord_exp,
    ord_sub_left,
    terms_of,
)


@dataclass(frozen=True)
class TowerSpec:
    """Eventually constant exponent sequence: a finite prefix followed by a
    constant tail, all entries >= 1."""

    prefix: tuple[Ordinal, ...]
    tail: Ordinal

    def __post_init__(self):
        for g in (*self.prefix, self.tail):
            if compare(g, ONE) < 0:
                raise DomainError("tower entries must be at least 1")


def epsilon_paper(kappa: Ordinal | int) -> Ordinal:
    """The kappa-th epsilon number in the 1-and-w-first numbering."""
    k = nat(kappa) if isinstance(kappa, int) else kappa
    if is_zero(k):
        return ONE
    if compare(k, ONE) == 0:
        return OMEGA
    return Eps(ord_sub_left(nat(2), k))


def finite_tower(gamma: Ordinal, n: int) -> Ordinal:
    """gamma^gamma^...^gamma of height n (height 0 is the empty tower, 1)."""
    if compare(gamma, ONE) < 0:
        raise DomainError("tower base must be at least 1")
    if n < 0:
        raise DomainError("tower height must be non-negative")
    v = ONE
    for _ in range(n):
        v = ord_exp(gamma, v)
    return v


def _constant_tail_value(tail: Ordinal) -> Ordinal:
    if compare(tail, ONE) == 0:
        return ONE
    if is_finite(tail):
        return OMEGA
    return least_epsilon_above(tail)


def omega_limit_power(spec: TowerSpec) -> Ordinal:
    """Value of the w-length tower given by spec.

    The constant tail g^g^... contributes 1 when g = 1, w for finite g >= 2,
    and the least epsilon number above g otherwise; the prefix then folds
    over it right to left.
    """
    v = _constant_tail_value(spec.tail)
    for g in reversed(spec.prefix):
        v = ord_exp(g, v)
    return v


def tower_limit_general(gamma: Ordinal | int, alpha: Ordinal) -> Ordinal:
    """Tower of a finite base gamma in [2, w) whose height is the ordinal
    alpha; alpha = 0 gives the empty tower, 1."""
    g = nat(gamma) if isinstance(gamma, int) else gamma
    if not is_finite(g) or compare(g, nat(2)) < 0:
        raise DomainError("tower base must be finite and at least 2")
    if is_zero(alpha):
        return ONE
    v = ONE
    for h, b in reversed(terms_of(alpha)):
        if b > 100_000:
            raise DomainError("tower height coefficient too large to fold")
        if is_zero(h):
            for _ in range(b):
                v = ord_exp(g, v)
        else:
            e = epsilon_paper(h)
            for _ in range(b):
                v = ord_exp(e, v)
    return v


def is_epsilon_number(a: Ordinal) -> bool:
    """True iff a is a fixpoint of exponentiation: 1, w, or an Eps atom."""
    if compare(a, ONE) == 0 or compare(a, OMEGA) == 0:
        return True
    return isinstance(a, Eps)
