"""Conjugation-equivariant set-valued structures on a finite group.

A structure assigns every group element g a finite set F(g) and every pair
(h, g) a transport bijection F(g) -> F(h g h^-1), functorially. The average
fiber size over the group equals, exactly, the groupoid cardinality of the
category of elements: the set of pairs (g, x in F(g)) modulo the evident
action. Fibers are dense index ranges so transports are plain index arrays.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .categorified import relabel_choice
from .groups import FiniteGroup, from_cayley_json, make_symmetric
from .groupoids import (
    DEFAULT_CHECK_CAP,
    DEFAULT_SAMPLE_BUDGET,
    GroupAction,
    GroupoidSkeleton,
    Orbit,
    cardinality,
    cardinality_via_outdegrees,
    orbit_decomposition,
    rational_str,
    skeleton_from_orbits,
)
from .permutations import (
    DEFAULT_ENUMERATION_CAP,
    CapExceededError,
    list_cycle_tuples,
    validate_pvector,
)
from .rng import SplitMix64

DEFAULT_FUNCTOR_VALIDATION_SEED = 0xF4C702


@dataclass(eq=False)
class EquivariantFunctor:
    """Extensional functor data: fiber sizes per element plus a transport map.

    transport(h, g) must return the image array of a bijection
    F(g) -> F(h g h^-1). Arrays are checked for well-formedness on first use
    and memoized.
    """

    group: FiniteGroup
    fiber_sizes: tuple[int, ...]
    transport: Callable[[int, int], tuple[int, ...]]
    name: str = "functor"
    _transport_memo: dict = field(default_factory=dict, repr=False)
    _validation: Optional["FunctorValidation"] = field(default=None, repr=False)

    def __post_init__(self) -> None:
        sizes = tuple(int(s) for s in self.fiber_sizes)
        if len(sizes) != self.group.order:
            raise ValueError(f"need one fiber size per element: got {len(sizes)} for order {self.group.order}")
        if any(s < 0 for s in sizes):
            raise ValueError("fiber sizes must be nonnegative")
        self.fiber_sizes = sizes

    @property
    def total_size(self) -> int:
        return sum(self.fiber_sizes)

    def transport_cached(self, h: int, g: int) -> tuple[int, ...]:
        key = h * self.group.order + g
        arr = self._transport_memo.get(key)
        if arr is None:
            arr = tuple(self.transport(h, g))
            target = self.group.conjugate(g, h)
            if len(arr) != self.fiber_sizes[g] or sorted(arr) != list(range(self.fiber_sizes[target])):
                raise ValueError(
                    f"transport({h}, {g}) = {arr!r} is not a bijection from a fiber of size "
                    f"{self.fiber_sizes[g]} onto one of size {self.fiber_sizes[target]}"
                )
            self._transport_memo[key] = arr
        return arr


@dataclass(frozen=True)
class FunctorValidation:
    """Outcome of the functor law checks, with the first failure witnessed."""

    ok: bool
    mode: str  # "exhaustive" or "sampled validation"
    checks: int
    failing_law: Optional[str] = None
    witness: Optional[tuple] = None
    message: Optional[str] = None


class FunctorValidationError(ValueError):
    """The functor data violates a law; carries the validation report."""

    def __init__(self, report: FunctorValidation):
        super().__init__(report.message or "functor validation failed")
        self.report = report


def validate_functor(
    functor: EquivariantFunctor,
    *,
    check_cap: int = DEFAULT_CHECK_CAP,
    sample_budget: int = DEFAULT_SAMPLE_BUDGET,
    seed: int = DEFAULT_FUNCTOR_VALIDATION_SEED,
) -> FunctorValidation:
    """Check fiber-size conjugation invariance, identity transports, and the
    composition law transport(h2, h1 g h1^-1) o transport(h1, g) =
    transport(h2 h1, g).

    The first two run exhaustively. Composition runs over all (h2, h1, g) in
    lexicographic order when |G|^2 * total fiber size fits under check_cap,
    otherwise over a seeded deterministic sample. Results are cached on the
    functor."""
    if functor._validation is not None:
        return functor._validation
    group = functor.group
    order = group.order
    sizes = functor.fiber_sizes
    checks = 0
    failure: Optional[tuple[str, tuple, str]] = None

    # Conjugation invariance of fiber sizes: cheap smoke test.
    for h in range(order):
        if failure:
            break
        for g in range(order):
            checks += 1
            target = group.conjugate(g, h)
            if sizes[g] != sizes[target]:
                failure = (
                    "fiber_size",
                    (h, g),
                    f"|F({g})| = {sizes[g]} but |F({target})| = {sizes[target]} after conjugating by {h}",
                )
                break

    identity = group.identity
    if failure is None:
        for g in range(order):
            checks += 1
            try:
                arr = functor.transport_cached(identity, g)
            except ValueError as exc:
                failure = ("bijection", (identity, g), str(exc))
                break
            if arr != tuple(range(sizes[g])):
                failure = ("identity", (g,), f"transport(e, {g}) = {arr!r} is not the identity")
                break

    mode = "exhaustive"
    total = functor.total_size
    # The composition law is vacuous on empty fibers, so only populated ones count.
    nonempty = [g for g in range(order) if sizes[g] > 0]
    if failure is None and nonempty:
        composition_cost = order * order * total

        def composition_ok(h2: int, h1: int, g: int) -> Optional[tuple[str, tuple, str]]:
            try:
                first = functor.transport_cached(h1, g)
                mid = group.conjugate(g, h1)
                second = functor.transport_cached(h2, mid)
                combined = functor.transport_cached(group.mul(h2, h1), g)
            except ValueError as exc:
                return ("bijection", (h2, h1, g), str(exc))
            for x in range(sizes[g]):
                if combined[x] != second[first[x]]:
                    return (
                        "composition",
                        (h2, h1, g),
                        f"composition law fails at (h2={h2}, h1={h1}, g={g}), fiber element {x}",
                    )
            return None

        if checks + composition_cost <= check_cap:
            # Same (h2, h1, g) coverage as the literal triple loop, reordered
            # so the h1-dependent pieces are computed once per (h1, g).
            transport_of = functor.transport_cached
            conj = group.conjugate
            mul = group.mul
            for h1 in range(order):
                mul_with_h1 = [mul(h2, h1) for h2 in range(order)]
                for g in nonempty:
                    try:
                        first = transport_of(h1, g)
                        mid = conj(g, h1)
                        size = sizes[g]
                        for h2 in range(order):
                            second = transport_of(h2, mid)
                            combined = transport_of(mul_with_h1[h2], g)
                            checks += size
                            for x in range(size):
                                if combined[x] != second[first[x]]:
                                    failure = (
                                        "composition",
                                        (h2, h1, g),
                                        f"composition law fails at (h2={h2}, h1={h1}, g={g}), fiber element {x}",
                                    )
                                    break
                            if failure:
                                break
                    except ValueError as exc:
                        failure = ("bijection", (h1, g), str(exc))
                    if failure:
                        break
                if failure:
                    break
            if failure is not None:
                # Re-locate the canonical witness: lowest (h2, h1, g) in
                # lexicographic order. Failures are exceptional, so the
                # second scan only runs on broken data.
                for h2 in range(order):
                    located = None
                    for h1 in range(order):
                        for g in nonempty:
                            located = composition_ok(h2, h1, g)
                            if located:
                                break
                        if located:
                            break
                    if located:
                        failure = located
                        break
        else:
            mode = "sampled validation"
            rng = SplitMix64(seed)
            count_nonempty = len(nonempty)
            for _ in range(sample_budget):
                h2 = rng.below(order)
                h1 = rng.below(order)
                g = nonempty[rng.below(count_nonempty)]
                checks += sizes[g]
                failure = composition_ok(h2, h1, g)
                if failure:
                    break

    if failure is None:
        report = FunctorValidation(ok=True, mode=mode, checks=checks)
    else:
        law, witness, message = failure
        report = FunctorValidation(ok=False, mode=mode, checks=checks, failing_law=law, witness=witness, message=message)
    functor._validation = report
    return report


def _require_valid(functor: EquivariantFunctor) -> None:
    report = validate_functor(functor)
    if not report.ok:
        raise FunctorValidationError(report)


def expected_size(functor: EquivariantFunctor) -> Fraction:
    """Exact average fiber size over the group."""
    _require_valid(functor)
    return Fraction(functor.total_size, functor.group.order)


def category_of_elements(functor: EquivariantFunctor) -> GroupAction:
    """The group acting on all pairs (g, x in F(g)): h sends (g, x) to
    (h g h^-1, transport(h, g)(x)). Carrier size is the total fiber size."""
    _require_valid(functor)
    group = functor.group
    offsets = []
    total = 0
    obj_g: list[int] = []
    obj_x: list[int] = []
    for g, size in enumerate(functor.fiber_sizes):
        offsets.append(total)
        total += size
        obj_g.extend([g] * size)
        obj_x.extend(range(size))

    def act(h: int, s: int) -> int:
        g, x = obj_g[s], obj_x[s]
        target = group.conjugate(g, h)
        return offsets[target] + functor.transport_cached(h, g)[x]

    return GroupAction(group=group, carrier_size=total, act=act, name=f"elements({functor.name})")


@dataclass(frozen=True)
class GeneralTheoremReport:
    """Both sides of the expectation identity, with the quotient's orbit data."""

    functor_name: str
    group_name: str
    group_order: int
    fiber_total: int
    expected: Fraction
    elements_cardinality: Fraction
    outdegree_cardinality: Fraction
    equal: bool
    skeleton: GroupoidSkeleton
    orbits: tuple[Orbit, ...]

    def to_json_dict(self) -> dict:
        return {
            "functor": self.functor_name,
            "group": self.group_name,
            "group_order": self.group_order,
            "fiber_total": self.fiber_total,
            "expected_size": rational_str(self.expected),
            "elements_cardinality": rational_str(self.elements_cardinality),
            "outdegree_cardinality": rational_str(self.outdegree_cardinality),
            "equal": self.equal,
            "skeleton": self.skeleton.to_json_dict(),
            "orbits": [
                {"representative": o.representative, "size": o.size, "stabilizer_order": o.stabilizer_order}
                for o in self.orbits
            ],
        }


def verify_general_theorem(functor: EquivariantFunctor) -> GeneralTheoremReport:
    """Check that the exact average fiber size equals the groupoid cardinality
    of the category of elements, computed via the weak quotient (and
    cross-checked via out-degrees)."""
    _require_valid(functor)
    action = category_of_elements(functor)
    orbits = orbit_decomposition(action)
    skeleton = skeleton_from_orbits(orbits)
    lhs = expected_size(functor)
    rhs = cardinality(skeleton)
    return GeneralTheoremReport(
        functor_name=functor.name,
        group_name=functor.group.name,
        group_order=functor.group.order,
        fiber_total=functor.total_size,
        expected=lhs,
        elements_cardinality=rhs,
        outdegree_cardinality=cardinality_via_outdegrees(action),
        equal=lhs == rhs,
        skeleton=skeleton,
        orbits=tuple(orbits),
    )


def make_trivial_functor(group: FiniteGroup) -> EquivariantFunctor:
    """Every fiber a single point, every transport the identity."""
    return EquivariantFunctor(
        group=group,
        fiber_sizes=(1,) * group.order,
        transport=lambda h, g: (0,),
        name=f"trivial({group.name})",
    )


def make_fixed_point_functor(n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> EquivariantFunctor:
    """F(sigma) = the fixed points of sigma, transported by relabeling.
    Fiber elements are indices into the sorted fixed-point list."""
    if n > cap:
        raise CapExceededError(f"degree {n} exceeds enumeration cap {cap}")
    group = make_symmetric(n)
    fixed: list[tuple[int, ...]] = []
    for g in group.elements():
        images = group.permutation_at(g).images
        fixed.append(tuple(i for i in range(n) if images[i] == i))

    def transport(h: int, g: int) -> tuple[int, ...]:
        himg = group.permutation_at(h).images
        target = fixed[group.conjugate(g, h)]
        position = {v: i for i, v in enumerate(target)}
        return tuple(position[himg[v]] for v in fixed[g])

    return EquivariantFunctor(
        group=group,
        fiber_sizes=tuple(len(f) for f in fixed),
        transport=transport,
        name=f"fixed-points(S{n})",
    )


def make_cycle_tuple_functor(n: int, p: Sequence[int], cap: int = DEFAULT_ENUMERATION_CAP) -> EquivariantFunctor:
    """F(sigma) = the ordered tuples of distinct cycles of sigma prescribed by
    the p-vector, transported by relabeling. The elements of the category of
    elements correspond one to one with the decorated permutations."""
    pvec = validate_pvector(n, p)
    if n > cap:
        raise CapExceededError(f"degree {n} exceeds enumeration cap {cap}")
    group = make_symmetric(n)
    choices = [list(list_cycle_tuples(group.permutation_at(g), pvec)) for g in group.elements()]
    index: dict[int, dict] = {}

    def index_of(g: int) -> dict:
        table = index.get(g)
        if table is None:
            table = {choice: i for i, choice in enumerate(choices[g])}
            index[g] = table
        return table

    def transport(h: int, g: int) -> tuple[int, ...]:
        tau = group.permutation_at(h)
        target = index_of(group.conjugate(g, h))
        return tuple(target[relabel_choice(tau, choice)] for choice in choices[g])

    return EquivariantFunctor(
        group=group,
        fiber_sizes=tuple(len(c) for c in choices),
        transport=transport,
        name=f"cycle-tuples(S{n}, p={list(pvec)})",
    )


def functor_from_json(data: dict) -> EquivariantFunctor:
    """Ingest {"group": <cayley json or "S<n>">, "fibers": {g: size},
    "transports": {h: {g: [images]}}}.

    Every fiber size must be listed, and a transport must be listed for every
    (h, g) with a nonempty fiber at g; the empty bijection out of an empty
    fiber is the only omission allowed (it is forced, not inferred)."""
    if not isinstance(data, dict):
        raise ValueError("functor JSON must be an object")
    for key in ("group", "fibers", "transports"):
        if key not in data:
            raise ValueError(f'functor JSON is missing the "{key}" key')

    spec = data["group"]
    if isinstance(spec, str):
        if not (spec.startswith("S") and spec[1:].isdigit()):
            raise ValueError(f'group spec {spec!r} is not "S<n>" or a Cayley table object')
        group: FiniteGroup = make_symmetric(int(spec[1:]))
    else:
        group = from_cayley_json(spec)

    sizes = [0] * group.order
    fibers = data["fibers"]
    for g in range(group.order):
        key = str(g)
        if key not in fibers:
            raise ValueError(f"fiber size for element {g} is missing")
        sizes[g] = int(fibers[key])
        if sizes[g] < 0:
            raise ValueError(f"fiber size for element {g} is negative")

    transports = data["transports"]
    table: dict[tuple[int, int], tuple[int, ...]] = {}
    for h in range(group.order):
        per_h = transports.get(str(h), {})
        for g in range(group.order):
            entry = per_h.get(str(g))
            if entry is None:
                if sizes[g] == 0:
                    table[(h, g)] = ()
                    continue
                raise ValueError(f"transport for (h={h}, g={g}) is omitted; transports may not be inferred")
            table[(h, g)] = tuple(int(x) for x in entry)

    return EquivariantFunctor(
        group=group,
        fiber_sizes=tuple(sizes),
        transport=lambda h, g: table[(h, g)],
        name=str(data.get("name", "json-functor")),
    )
