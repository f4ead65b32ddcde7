"""Finite standard closure spaces over small ground sets.

Elements are dense indices 0..n-1 mapped to labels once at construction;
every subset of the ground set is a machine-word bitmask (plain int), so
set algebra is &, |, ~ and subset tests are ``a & ~b == 0``.  All families
of sets are kept in one canonical order: ascending cardinality, then
lexicographic on the ascending index tuple.  Downstream modules inherit
that order, which keeps diffs and regression expectations stable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

MAX_GROUND = 24
MAX_CLOSED_SETS = 1 << 20


class LimitExceeded(ValueError):
    """Input is beyond the desk-scale caps; every algorithm here is
    worst-case exponential, so fail loudly instead of grinding."""


class GroundMismatch(ValueError):
    """A set refers to elements outside the space's ground set."""


class NotClosed(ValueError):
    """An argument that must be a closed set is not one."""


class MissingTop(ValueError):
    """The full ground set is not a member of the family."""


class NotIntersectionClosed(ValueError):
    """The family is not closed under pairwise intersection."""

    def __init__(self, msg: str, witness: tuple[int, int]):
        super().__init__(msg)
        self.witness = witness


class NotStandard(ValueError):
    """Some element x has cl(x) \\ {x} outside the family."""

    def __init__(self, msg: str, witness: int):
        super().__init__(msg)
        self.witness = witness


class InvariantViolation(RuntimeError):
    """Two routes that must agree disagreed; signals a bug, never bad input."""


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lex_key(mask: int) -> tuple[int, ...]:
    """Ascending index tuple of a mask, the tie-breaker of the canonical order."""
    return tuple(iter_bits(mask))


def sort_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Canonical order key: cardinality first, then lexicographic."""
    return (mask.bit_count(), tuple(iter_bits(mask)))


def sort_sets(masks: Iterable[int]) -> tuple[int, ...]:
    """Sort a family of masks into the canonical order."""
    return tuple(sorted(masks, key=sort_key))


@dataclass(frozen=True)
class GroundSet:
    """An ordered ground set; the element order is fixed for good."""

    labels: tuple[str, ...]
    index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        labels = tuple(self.labels)
        if not labels:
            raise ValueError("ground set must not be empty")
        if len(labels) > MAX_GROUND:
            raise LimitExceeded(
                f"ground set has {len(labels)} elements, cap is {MAX_GROUND}")
        if len(set(labels)) != len(labels):
            raise ValueError("ground set labels must be unique")
        for lab in labels:
            if not lab or any(ch.isspace() for ch in lab) or "#" in lab:
                raise ValueError(f"bad element label {lab!r}")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "index", {lab: i for i, lab in enumerate(labels)})

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.labels)) - 1

    def mask(self, elements: Iterable[str]) -> int:
        """Bitmask of a collection of labels; a plain string is read per character."""
        m = 0
        for lab in elements:
            try:
                m |= 1 << self.index[lab]
            except KeyError:
                raise GroundMismatch(f"unknown element {lab!r}") from None
        return m

    def labels_of(self, mask: int) -> tuple[str, ...]:
        self.check(mask)
        return tuple(self.labels[i] for i in iter_bits(mask))

    def format(self, mask: int) -> str:
        """Render a mask: concatenated when all labels are single characters
        (the compact 'abc' style), space separated otherwise."""
        labs = self.labels_of(mask)
        if not labs:
            return "{}"
        if all(len(lab) == 1 for lab in self.labels):
            return "".join(labs)
        return " ".join(labs)

    def check(self, mask: int) -> None:
        if mask < 0 or mask & ~self.full_mask:
            raise GroundMismatch(f"mask {bin(mask)} is not over this ground set")


@dataclass(frozen=True)
class Implication:
    """A premise -> conclusion pair; stored with the trivial part stripped,
    so conclusion and premise are always disjoint."""

    premise: int
    conclusion: int

    def __post_init__(self):
        object.__setattr__(self, "conclusion", self.conclusion & ~self.premise)

    def sort_key(self):
        return (self.premise.bit_count(), lex_key(self.premise),
                self.conclusion.bit_count(), lex_key(self.conclusion))

    def render(self, ground: GroundSet) -> str:
        return f"{ground.format(self.premise)} -> {ground.format(self.conclusion)}"


class ImplicationalBase:
    """An ordered, duplicate-free list of implications over one ground set.

    ``form`` is "unit" (every conclusion a singleton) or "aggregated"
    (at most one implication per premise).  Construction normalizes to
    the canonical order and drops implications whose conclusion became
    empty after stripping the premise.
    """

    __slots__ = ("ground", "implications", "form")

    def __init__(self, ground: GroundSet, implications: Iterable[Implication],
                 form: str = "unit"):
        if form not in ("unit", "aggregated"):
            raise ValueError(f"unknown base form {form!r}")
        pairs = set()
        for imp in implications:
            ground.check(imp.premise)
            ground.check(imp.conclusion)
            if imp.conclusion:
                pairs.add((imp.premise, imp.conclusion))
        imps = tuple(sorted((Implication(p, c) for p, c in pairs),
                            key=Implication.sort_key))
        if form == "unit" and any(i.conclusion.bit_count() != 1 for i in imps):
            raise ValueError("unit base contains a non-singleton conclusion")
        if form == "aggregated":
            premises = [i.premise for i in imps]
            if len(set(premises)) != len(premises):
                raise ValueError("aggregated base repeats a premise")
        self.ground = ground
        self.implications = imps
        self.form = form

    def __len__(self) -> int:
        return len(self.implications)

    def __iter__(self) -> Iterator[Implication]:
        return iter(self.implications)

    def __eq__(self, other) -> bool:
        return (isinstance(other, ImplicationalBase)
                and self.ground == other.ground
                and self.implications == other.implications)

    def __hash__(self):
        return hash((self.ground, self.implications))

    def pairs(self) -> tuple[tuple[int, int], ...]:
        """The raw (premise, conclusion) mask pairs, canonical order."""
        return tuple((i.premise, i.conclusion) for i in self.implications)

    def render(self) -> list[str]:
        return [imp.render(self.ground) for imp in self.implications]

    def __repr__(self):
        return f"ImplicationalBase({', '.join(self.render())})"


def closure_table(n: int, closed_sets: Iterable[int]) -> list[int]:
    """Full 2^n closure table of an intersection-closed family containing
    the top.  cl(S) is built by joining cl(S minus its lowest bit) with the
    singleton closure of that bit, so the dominant cost is the closed-
    superset searches for the few masks that are not already closed."""
    if n > 16:
        raise LimitExceeded("closure_table is meant for small ground sets")
    full = (1 << n) - 1
    index = set(closed_sets)
    by_card: list[list[int]] = [[] for _ in range(n + 1)]
    for c in sorted(index):
        by_card[c.bit_count()].append(c)

    def smallest_closed_over(m: int) -> int:
        for card in range(m.bit_count(), n + 1):
            for c in by_card[card]:
                if m & ~c == 0:
                    return c
        raise MissingTop("no closed set contains the ground set")

    table = [0] * (full + 1)
    table[0] = 0 if 0 in index else smallest_closed_over(0)
    for s in range(1, full + 1):
        if s in index:
            table[s] = s
            continue
        low = s & -s
        m = (table[0] | s) if s == low else (table[s ^ low] | table[low])
        table[s] = m if m in index else smallest_closed_over(m)
    return table


class ClosureSpace:
    """A finite standard closure space, materialized as its closed sets.

    The constructor rejects anything that is not already a standard
    closure system over the given ground set: the family must contain the
    top, be closed under pairwise intersection, and cl(x) \\ {x} must be
    a member for every element x.  It never repairs input.
    """

    __slots__ = ("ground", "closed_sets", "covers", "closed_index",
                 "singleton_closure", "_cl_table", "_cl_cache",
                 "_succ", "_pred")

    def __init__(self, ground: GroundSet, closed_sets: Iterable[int]):
        family = set(closed_sets)
        if len(family) > MAX_CLOSED_SETS:
            raise LimitExceeded(
                f"{len(family)} closed sets, cap is {MAX_CLOSED_SETS}")
        for c in family:
            ground.check(c)
        if ground.full_mask not in family:
            raise MissingTop("the ground set itself must be closed")

        n = ground.size
        sets = sort_sets(family)
        index = {c: i for i, c in enumerate(sets)}
        for i, c1 in enumerate(sets):
            for c2 in sets[i + 1:]:
                if c1 & c2 not in family:
                    raise NotIntersectionClosed(
                        f"{ground.format(c1)} and {ground.format(c2)} "
                        f"intersect outside the family", (c1, c2))

        self.ground = ground
        self.closed_sets = sets
        self.closed_index = index
        self._cl_cache: dict[int, int] = {}
        self._cl_table = closure_table(n, sets) if n <= 12 else None

        sc = []
        for x in range(n):
            c = self._closure_raw(1 << x)
            sc.append(c)
            if c & ~(1 << x) not in family:
                raise NotStandard(
                    f"cl({ground.labels[x]}) minus the point is not closed", x)
        self.singleton_closure = tuple(sc)

        # successors via minimal elements of {cl(C + x) : x outside C}
        succ: list[tuple[int, ...]] = []
        pred: list[list[int]] = [[] for _ in sets]
        covers = []
        for i, c in enumerate(sets):
            ups = set()
            rest = ground.full_mask & ~c
            for x in iter_bits(rest):
                ups.add(self._closure_raw(c | (1 << x)))
            minimal = [u for u in ups if not any(v & ~u == 0 for v in ups if v != u)]
            minimal.sort(key=sort_key)
            succ.append(tuple(minimal))
            for u in minimal:
                covers.append((i, index[u]))
                pred[index[u]].append(i)
        covers.sort()
        self.covers = tuple(covers)
        self._succ = tuple(succ)
        self._pred = tuple(tuple(sets[i] for i in sorted(p)) for p in pred)

    # -- closure operators -------------------------------------------------

    def _closure_raw(self, x: int) -> int:
        if self._cl_table is not None:
            return self._cl_table[x]
        c = self._cl_cache.get(x)
        if c is None:
            best = self.ground.full_mask
            for cand in self.closed_sets:
                if x & ~cand == 0:
                    best = cand
                    break
            self._cl_cache[x] = best
            c = best
        return c

    def closure(self, x: int) -> int:
        """The smallest closed set including x."""
        self.ground.check(x)
        return self._closure_raw(x)

    def binary_closure(self, x: int) -> int:
        """Union of the singleton closures of the members of x."""
        self.ground.check(x)
        m = 0
        for i in iter_bits(x):
            m |= self.singleton_closure[i]
        return m

    def is_closed(self, x: int) -> bool:
        return x in self.closed_index

    def _require_closed(self, c: int) -> None:
        self.ground.check(c)
        if c not in self.closed_index:
            raise NotClosed(f"{self.ground.format(c)} is not closed")

    def meet(self, c1: int, c2: int) -> int:
        self._require_closed(c1)
        self._require_closed(c2)
        return c1 & c2

    def join(self, c1: int, c2: int) -> int:
        self._require_closed(c1)
        self._require_closed(c2)
        return self._closure_raw(c1 | c2)

    def interval(self, low: int, high: int) -> tuple[int, ...]:
        """All closed sets between two comparable closed bounds."""
        self._require_closed(low)
        self._require_closed(high)
        if low & ~high:
            raise NotClosed(
                f"{self.ground.format(low)} is not below {self.ground.format(high)}")
        return tuple(c for c in self.closed_sets
                     if low & ~c == 0 and c & ~high == 0)

    # -- covering structure ------------------------------------------------

    def successors(self, c: int) -> tuple[int, ...]:
        """Upper covers of a closed set."""
        self._require_closed(c)
        return self._succ[self.closed_index[c]]

    def predecessors(self, c: int) -> tuple[int, ...]:
        """Lower covers of a closed set."""
        self._require_closed(c)
        return self._pred[self.closed_index[c]]

    def pred_intersection(self, c: int) -> int:
        """C_*, the intersection of the lower covers (C itself when none)."""
        preds = self.predecessors(c)
        if not preds:
            return c
        m = self.ground.full_mask
        for p in preds:
            m &= p
        return m

    def height(self) -> int:
        """Length of a longest cover chain from bottom to top."""
        h = [0] * len(self.closed_sets)
        for i, j in self.covers:
            # covers is sorted with i < j impossible to violate: i indexes a
            # smaller-cardinality set, which sorts earlier
            if h[i] + 1 > h[j]:
                h[j] = h[i] + 1
        return max(h) if h else 0

    def format(self, mask: int) -> str:
        return self.ground.format(mask)

    def format_family(self, masks: Iterable[int]) -> str:
        return "{" + ", ".join(self.format(m) for m in sort_sets(masks)) + "}"

    def __repr__(self):
        return (f"ClosureSpace({''.join(self.ground.labels)}, "
                f"{len(self.closed_sets)} closed sets)")

    def __eq__(self, other):
        return (isinstance(other, ClosureSpace)
                and self.ground == other.ground
                and self.closed_sets == other.closed_sets)

    def __hash__(self):
        return hash((self.ground, self.closed_sets))


def space_from_closed_sets(ground: GroundSet,
                           family: Iterable[int]) -> ClosureSpace:
    """Build a space from an explicit family; the family must already be a
    standard closure system, it is never repaired here."""
    return ClosureSpace(ground, family)
