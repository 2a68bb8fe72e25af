"""Gabriel-Roiter measures.

A measure is a finite set of positive integers, ordered as the binary
fraction sum(2**-k).  Comparison never goes through floats: the smallest
element of the symmetric difference decides, and the set holding it wins.

For an indecomposable y the measure is the best measure of a proper
submodule with |y| appended; every proper submodule sits inside a maximal
one, and the measure of a decomposable module is the maximum over its
summands.  Results are memoized per isomorphism class of indecomposables.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .repcore.decomposition import (DEFAULT_IDEMPOTENT_CAP, IsoClassTable, canonical_key,
                                    decompose_with_inclusions, is_indecomposable)
from .repcore.representation import image_of
from .repcore.submodules import DEFAULT_SUBMODULE_CAP, enumerate_submodules, maximal_submodules


@total_ordering
@dataclass(frozen=True)
class GRMeasure:
    elements: tuple = ()

    def __post_init__(self):
        els = tuple(int(e) for e in self.elements)
        if any(e <= 0 for e in els) or any(a >= b for a, b in zip(els, els[1:])):
            raise ValueError(f"measure must be strictly increasing positive integers: {els}")
        object.__setattr__(self, "elements", els)

    def __lt__(self, other):
        return compare(self, other) < 0

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __str__(self):
        return "(" + ",".join(map(str, self.elements)) + ")"

    def __repr__(self):
        return f"GRMeasure{str(self)}"

    def extended(self, n):
        """This measure with n appended (n must exceed every element)."""
        return GRMeasure(self.elements + (n,))

    @property
    def value(self):
        return measure_value(self)

    @classmethod
    def parse(cls, text):
        body = text.strip().strip("(){}[]")
        return cls(tuple(int(t) for t in body.replace(" ", "").split(",") if t))


def compare(i, j):
    """-1, 0 or 1 as i < j, i == j or i > j."""
    a, b = set(i.elements), set(j.elements)
    diff = a ^ b
    if not diff:
        return 0
    return 1 if min(diff) in a else -1


def measure_value(i):
    return sum((Fraction(1, 2 ** k) for k in i.elements), Fraction(0))


class MeasureMemo:
    """Measures of indecomposables keyed by isomorphism class, one table per algebra."""

    def __init__(self):
        self._tables = {}

    def table(self, algebra):
        t = self._tables.get(algebra)
        if t is None:
            t = self._tables[algebra] = IsoClassTable(indecomposable=True)
        return t

    def clear(self):
        self._tables.clear()


DEFAULT_MEMO = MeasureMemo()


def _indec_measure(y, memo, cap):
    """(measure, witness) for an indecomposable y; witness is (max submodule, summand inclusion)."""
    table = memo.table(y.algebra)
    k = table.index(y)
    if k is not None and table.values[k] is not None:
        return table.values[k]
    best, witness = GRMeasure(), None
    if y.length > 1:
        for sub in maximal_submodules(y):
            rep = sub.as_representation()
            for summand, inc in decompose_with_inclusions(rep, cap):
                m = _indec_measure(summand, memo, cap)[0]
                if witness is None or m > best or (m == best and canonical_key(summand) <
                                                   canonical_key(witness[2])):
                    best, witness = m, (sub, inc, summand)
    result = (best.extended(y.length), witness)
    if k is None:
        table.add(y, result)
    else:
        table.set(k, result)
    return result


def gr_measure(x, memo=None, cap=DEFAULT_IDEMPOTENT_CAP):
    """Gabriel-Roiter measure of x (the empty measure for the zero module)."""
    memo = DEFAULT_MEMO if memo is None else memo
    best = GRMeasure()
    for summand in (s for s, _ in decompose_with_inclusions(x, cap)):
        m = _indec_measure(summand, memo, cap)[0]
        if m > best:
            best = m
    return best


def gr_submodule(x, memo=None, cap=DEFAULT_IDEMPOTENT_CAP):
    """An indecomposable proper submodule of x of maximal measure, as a handle in x."""
    memo = DEFAULT_MEMO if memo is None else memo
    if x.length == 0 or not is_indecomposable(x, cap):
        raise ValueError("gr_submodule needs an indecomposable module")
    if x.length == 1:
        raise ValueError("a simple module has no nonzero proper submodule")
    table = memo.table(x.algebra)
    k = table.index(x)
    if k is not None and table.values[k] is not None and table.reps[k].same_as(x):
        witness = table.values[k][1]
    else:
        # the memo may hold an isomorphic copy in other coordinates; recompute on x itself
        scratch = MeasureMemo()
        scratch._tables[x.algebra] = _seeded_table(table, exclude=x)
        witness = _indec_measure(x, scratch, cap)[1]
    sub, inc, _ = witness
    return image_of(sub.inclusion().compose(inc))


def _seeded_table(table, exclude):
    """Copy of ``table`` without the class of ``exclude``."""
    out = IsoClassTable(indecomposable=True)
    skip = table.index(exclude)
    for k, (rep, val) in enumerate(zip(table.reps, table.values)):
        if k != skip:
            out.add(rep, val)
    return out


# ---------- brute-force reference

def chain_measure(x, cap=DEFAULT_SUBMODULE_CAP):
    """Measure by exhaustive chain search over all indecomposable submodules of x.

    Independent of the recursion above; exponential, for cross-checks only.
    """
    subs = [s for s in enumerate_submodules(x, cap) if s.length and
            is_indecomposable(s.as_representation())]
    best_at = []
    for u in subs:
        best = GRMeasure()
        for v, mv in zip(subs, best_at):
            if v.length < u.length and u.contains(v) and mv > best:
                best = mv
        best_at.append(best.extended(u.length))
    return max(best_at, default=GRMeasure())
