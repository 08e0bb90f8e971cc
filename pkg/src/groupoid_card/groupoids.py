"""Finite groupoids via skeletons and group actions.

A skeleton is the multiset of automorphism-group orders of a groupoid's
components; cardinality is the exact rational sum of their reciprocals.
Group actions yield skeletons through their orbit decomposition (the weak
quotient). Comparing skeletons checks aut-order multisets, which is the
component-level shadow of equivalence; all groups compared here are known
by construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Optional

from .groups import FiniteGroup
from .permutations import all_cycle_types
from .rng import SplitMix64

Rational = Fraction

DEFAULT_CHECK_CAP = 10_000_000
DEFAULT_SAMPLE_BUDGET = 5_000
DEFAULT_VALIDATION_SEED = 0x0AC710


def rational_str(q: Fraction) -> str:
    """Serialize exactly, always as "num/den" (integers included: "1/1")."""
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s: str) -> Fraction:
    num, _, den = s.partition("/")
    return Fraction(int(num), int(den))


def label_to_json(label: Any):
    if isinstance(label, tuple):
        return [label_to_json(x) for x in label]
    return label


@dataclass(frozen=True)
class SkeletonComponent:
    """One isomorphism class of objects with aut_order automorphisms each."""

    aut_order: int
    label: Any = None

    def __post_init__(self) -> None:
        if self.aut_order < 1:
            raise ValueError(f"automorphism group order must be positive, got {self.aut_order}")


@dataclass(frozen=True)
class GroupoidSkeleton:
    """Multiset of components, kept in a canonical sorted order."""

    components: tuple[SkeletonComponent, ...] = ()

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.components, key=lambda c: (c.aut_order, repr(c.label))))
        object.__setattr__(self, "components", ordered)

    @property
    def is_empty(self) -> bool:
        return not self.components

    def aut_orders(self) -> tuple[int, ...]:
        return tuple(c.aut_order for c in self.components)

    def to_json_dict(self) -> dict:
        return {"components": [{"aut_order": c.aut_order, "label": label_to_json(c.label)} for c in self.components]}


EMPTY_SKELETON = GroupoidSkeleton(())


def cardinality(skeleton: GroupoidSkeleton) -> Fraction:
    """Sum of 1/aut_order over components; 0 for the empty groupoid."""
    return sum((Fraction(1, c.aut_order) for c in skeleton.components), Fraction(0))


def delooping(group: FiniteGroup, label: Any = None) -> GroupoidSkeleton:
    """One object whose automorphisms form the given group."""
    return GroupoidSkeleton((SkeletonComponent(group.order, label),))


def coproduct(a: GroupoidSkeleton, b: GroupoidSkeleton) -> GroupoidSkeleton:
    """Disjoint union; cardinality adds."""
    return GroupoidSkeleton(a.components + b.components)


def product(a: GroupoidSkeleton, b: GroupoidSkeleton) -> GroupoidSkeleton:
    """Componentwise product; automorphism orders multiply and labels pair up."""
    comps = tuple(
        SkeletonComponent(x.aut_order * y.aut_order, (x.label, y.label))
        for x in a.components
        for y in b.components
    )
    return GroupoidSkeleton(comps)


def power(a: GroupoidSkeleton, p: int) -> GroupoidSkeleton:
    """p-fold product; the empty product is the one-object trivial groupoid."""
    if p < 0:
        raise ValueError(f"power must be nonnegative, got {p}")
    comps = []
    for combo in itertools.product(a.components, repeat=p):
        order = 1
        for c in combo:
            order *= c.aut_order
        comps.append(SkeletonComponent(order, tuple(c.label for c in combo)))
    return GroupoidSkeleton(tuple(comps))


def skeletons_equivalent(a: GroupoidSkeleton, b: GroupoidSkeleton, strict: bool = False) -> bool:
    """Multiset equality of aut orders (with labels too in strict mode)."""
    if strict:
        key = lambda c: (c.aut_order, repr(c.label))
        return sorted(a.components, key=key) == sorted(b.components, key=key)
    return a.aut_orders() == b.aut_orders()


@dataclass(frozen=True)
class ActionValidation:
    """Outcome of checking the identity and compatibility laws of an action."""

    ok: bool
    mode: str  # "exhaustive" or "sampled validation"
    checks: int
    failure: Optional[str] = None


class ActionValidationError(ValueError):
    """An action failed its law checks and cannot be quotiented."""


@dataclass(eq=False)
class GroupAction:
    """A finite group acting on the carrier {0..carrier_size-1} via act(g, s).

    Immutable once built; act results are memoized since orbit scans and law
    checks revisit the same pairs.
    """

    group: FiniteGroup
    carrier_size: int
    act: Callable[[int, int], int]
    name: str = "action"
    _act_memo: dict = field(default_factory=dict, repr=False)
    _validation: Optional[ActionValidation] = field(default=None, repr=False)

    def act_cached(self, g: int, s: int) -> int:
        key = g * self.carrier_size + s
        memo = self._act_memo
        t = memo.get(key)
        if t is None:
            t = self.act(g, s)
            memo[key] = t
        return t

    def validate(
        self,
        *,
        check_cap: int = DEFAULT_CHECK_CAP,
        sample_budget: int = DEFAULT_SAMPLE_BUDGET,
        seed: int = DEFAULT_VALIDATION_SEED,
    ) -> ActionValidation:
        """Check act(e, s) = s for every s, and act(g, act(h, s)) = act(gh, s).

        The identity law is always exhaustive. Compatibility runs over all
        |G|^2 |S| triples when that fits under check_cap, otherwise over a
        seeded deterministic sample, reported as "sampled validation".
        The first validation result is cached.
        """
        if self._validation is not None:
            return self._validation
        group, size = self.group, self.carrier_size
        order = group.order
        checks = 0
        failure = None

        e = group.identity
        for s in range(size):
            checks += 1
            t = self.act_cached(e, s)
            if t != s:
                failure = f"identity law fails at s={s}: act(e, s) = {t}"
                break
            if not 0 <= t < size:
                failure = f"act(e, {s}) = {t} is outside the carrier"
                break

        compat_total = order * order * size
        mode = "exhaustive"
        if failure is None:
            if checks + compat_total <= check_cap:
                for g in range(order):
                    for h in range(order):
                        gh = group.mul(g, h)
                        for s in range(size):
                            checks += 1
                            t = self.act_cached(h, s)
                            if not 0 <= t < size:
                                failure = f"act({h}, {s}) = {t} is outside the carrier"
                                break
                            if self.act_cached(g, t) != self.act_cached(gh, s):
                                failure = (
                                    f"compatibility fails at (g={g}, h={h}, s={s}): "
                                    f"act(g, act(h, s)) = {self.act_cached(g, t)} "
                                    f"but act(g*h, s) = {self.act_cached(gh, s)}"
                                )
                                break
                        if failure:
                            break
                    if failure:
                        break
            else:
                mode = "sampled validation"
                rng = SplitMix64(seed)
                for _ in range(sample_budget):
                    g = rng.below(order)
                    h = rng.below(order)
                    s = rng.below(size)
                    checks += 1
                    t = self.act_cached(h, s)
                    if not 0 <= t < size or self.act_cached(g, t) != self.act_cached(gh := group.mul(g, h), s):
                        failure = f"compatibility fails at sampled (g={g}, h={h}, s={s})"
                        break

        result = ActionValidation(ok=failure is None, mode=mode, checks=checks, failure=failure)
        self._validation = result
        return result


def _require_valid(action: GroupAction) -> None:
    report = action.validate()
    if not report.ok:
        raise ActionValidationError(f"invalid action {action.name!r}: {report.failure}")


@dataclass(frozen=True)
class Orbit:
    """One orbit: smallest-index representative, size, stabilizer order."""

    representative: int
    size: int
    stabilizer_order: int


def orbit_decomposition(action: GroupAction) -> list[Orbit]:
    """Orbits in order of their smallest carrier index, with the stabilizer
    order of that representative found by direct scan."""
    _require_valid(action)
    seen = bytearray(action.carrier_size)
    orbits: list[Orbit] = []
    for s in range(action.carrier_size):
        if seen[s]:
            continue
        stabilizer = 0
        members = set()
        for g in action.group.elements():
            t = action.act_cached(g, s)
            members.add(t)
            if t == s:
                stabilizer += 1
        for t in members:
            seen[t] = 1
        orbits.append(Orbit(representative=s, size=len(members), stabilizer_order=stabilizer))
    return orbits


def skeleton_from_orbits(orbits: list[Orbit]) -> GroupoidSkeleton:
    return GroupoidSkeleton(tuple(SkeletonComponent(o.stabilizer_order, label=o.representative) for o in orbits))


def weak_quotient(action: GroupAction) -> GroupoidSkeleton:
    """The action groupoid, skeletonized: one component per orbit whose
    aut order is the stabilizer order of the orbit representative.
    Its cardinality is exactly carrier_size / group order."""
    return skeleton_from_orbits(orbit_decomposition(action))


def cardinality_via_outdegrees(action: GroupAction) -> Fraction:
    """Sum of 1/|out(s)| over carrier objects. Every group element labels
    exactly one morphism out of each object, so |out(s)| = |G| for all s;
    the count is taken by explicit iteration and must agree with the
    weak-quotient cardinality."""
    _require_valid(action)
    out_degree = sum(1 for _ in action.group.elements())
    if action.carrier_size == 0:
        return Fraction(0)
    return Fraction(action.carrier_size, out_degree)


def conjugation_action(group: FiniteGroup) -> GroupAction:
    """The group acting on its own elements by h . g = h g h^-1."""
    return GroupAction(
        group=group,
        carrier_size=group.order,
        act=lambda h, s: group.conjugate(s, h),
        name=f"conjugation({group.name})",
    )


def perm_groupoid_skeleton(n: int) -> GroupoidSkeleton:
    """Skeleton of the groupoid of n-element sets with a permutation: one
    component per cycle type, labeled by its partition, with aut order the
    centralizer order. Empty for n < 0; cardinality 1 for n >= 0."""
    if n < 0:
        return EMPTY_SKELETON
    comps = tuple(
        SkeletonComponent(lam.centralizer_order(), label=lam.partition())
        for lam in all_cycle_types(n)
    )
    return GroupoidSkeleton(comps)
