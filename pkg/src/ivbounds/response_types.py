"""Treatment response types, model supports, and monotonicity checks.

A model of potential treatments is represented extensionally as the set of
treatment response types it allows (outcomes are never restricted).  This
makes generalized-monotonicity checks, LP assembly, and equality of models
decidable by plain set operations.

Generalized monotonicity, support-level form: for each treatment d there is
an instrument value z that maximally encourages d, meaning no allowed type
takes d at some other instrument value while not taking d at z.  The
``gm_witness`` check returns, for every d, the full set of instrument values
with that property (the set, not one representative: the encouraging value
need not be unique).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import EnumerationTooLarge, IncompatibleSpaces, UnknownModel
from .model import ProblemSpaces, TreatmentResponseType

DEFAULT_ENUMERATION_CAP = 10**6


def enumerate_treatment_types(spaces: ProblemSpaces,
                              cap: int = DEFAULT_ENUMERATION_CAP
                              ) -> list[TreatmentResponseType]:
    """All treatment response types, lexicographically ordered.

    Materializes n_treatments ** n_instruments tuples; refuses above ``cap``.
    """
    count = spaces.n_treatments ** spaces.n_instruments
    if count > cap:
        raise EnumerationTooLarge(
            f"{spaces.n_treatments}^{spaces.n_instruments} = {count} "
            f"treatment response types exceeds cap {cap}")
    return list(itertools.product(spaces.treatments, repeat=spaces.n_instruments))


def never_taker_partition(rt: TreatmentResponseType, spaces: ProblemSpaces
                          ) -> tuple[frozenset[int], frozenset[int]]:
    """Split treatments into (never taken by rt, taken by rt somewhere).

    The first set holds treatments d with rt[z] != d for every z; the second
    is its complement.  Their union is always the full treatment set.
    """
    spaces.check_treatment_type(rt)
    taken = frozenset(rt)
    never = frozenset(spaces.treatments) - taken
    return never, taken


@dataclass(frozen=True)
class ResponseModel:
    """A model for potential treatments: a nonempty support of response types.

    Outcomes are unrestricted by construction; only the treatment response
    type's support is constrained.
    """

    spaces: ProblemSpaces
    support: frozenset[TreatmentResponseType]
    label: str = ""

    def __post_init__(self):
        support = frozenset(self.spaces.check_treatment_type(rt) for rt in self.support)
        if not support:
            raise IncompatibleSpaces("model support must be nonempty")
        object.__setattr__(self, "support", support)

    def sorted_support(self) -> list[TreatmentResponseType]:
        return sorted(self.support)

    def __contains__(self, rt) -> bool:
        return tuple(rt) in self.support


@dataclass(frozen=True)
class EncouragementMap:
    """Chosen encouraging instrument per treatment plus the full valid sets."""

    zstar: tuple[int, ...]
    zstar_sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        for z, zs in zip(self.zstar, self.zstar_sets):
            if z not in zs:
                raise IncompatibleSpaces(f"chosen z*={z} not in its valid set {sorted(zs)}")


@dataclass(frozen=True)
class GMFailure:
    """Generalized monotonicity fails: some treatment has no encouraging value."""

    failing: tuple[int, ...]
    zstar_sets: tuple[frozenset[int], ...]


def encouraging_instruments(model: ResponseModel, d: int) -> frozenset[int]:
    """Instrument values that maximally encourage treatment d on this support.

    z qualifies iff no supported type takes d at some instrument value while
    not taking d at z.
    """
    model.spaces.check_treatment(d)
    valid = set(model.spaces.instruments)
    for rt in model.support:
        if d in rt:
            valid.intersection_update(z for z in valid if rt[z] == d)
            if not valid:
                break
    return frozenset(valid)


def gm_witness(model: ResponseModel) -> EncouragementMap | GMFailure:
    """Check generalized monotonicity at the support level.

    On success returns the full valid set per treatment together with a
    deterministic representative (the smallest valid index).  On failure
    returns every treatment whose valid set is empty; failure is a value,
    not an error.
    """
    sets = tuple(encouraging_instruments(model, d) for d in model.spaces.treatments)
    failing = tuple(d for d, zs in enumerate(sets) if not zs)
    if failing:
        return GMFailure(failing=failing, zstar_sets=sets)
    return EncouragementMap(zstar=tuple(min(zs) for zs in sets), zstar_sets=sets)


def unordered_violation(model: ResponseModel) -> tuple[int, int, int] | None:
    """First (d, z, z') witnessing an unordered-monotonicity failure, or None.

    Unordered monotonicity, support-level form: for every treatment d and
    every instrument pair (z, z'), the indicators of taking d at z and at z'
    are comparable in the same direction across the whole support.
    """
    sp = model.spaces
    support = model.sorted_support()
    for d in sp.treatments:
        for z in sp.instruments:
            for zp in range(z + 1, sp.n_instruments):
                ge_ok = all((rt[z] == d) >= (rt[zp] == d) for rt in support)
                le_ok = all((rt[z] == d) <= (rt[zp] == d) for rt in support)
                if not (ge_ok or le_ok):
                    return (d, z, zp)
    return None


def is_unordered_monotone(model: ResponseModel) -> bool:
    return unordered_violation(model) is None


def is_ordered_monotone(model: ResponseModel) -> bool:
    """True iff every supported type is nondecreasing in the instrument."""
    return all(all(a <= b for a, b in zip(rt, rt[1:])) for rt in model.support)


# ---------------------------------------------------------------------------
# Builtin model constructors
# ---------------------------------------------------------------------------
#
# Each constructor filters the full enumeration by the named restriction, so
# the support is exactly the set of types satisfying it.

def _require_square(spaces: ProblemSpaces, name: str):
    if spaces.n_treatments != spaces.n_instruments:
        raise IncompatibleSpaces(
            f"{name} requires as many instrument values as treatments, got "
            f"{spaces.n_treatments} treatments and {spaces.n_instruments} instruments")


def _exogeneity_only(spaces, params):
    return lambda rt: True


def _one_sided_rct(spaces, params):
    # Arm z encourages treatment z; a subject either complies with the
    # assigned arm or falls back to treatment 0.
    _require_square(spaces, "one_sided_rct")
    return lambda rt: all(rt[z] in (0, z) for z in spaces.instruments)


def _generalized_no_defier(spaces, params):
    # No type takes d when assigned elsewhere yet refuses d when assigned d.
    _require_square(spaces, "generalized_no_defier")

    def pred(rt):
        return not any(rt[d] != d and d in rt for d in spaces.treatments)
    return pred


def _cheng_small(spaces, params):
    # One-sided RCT over three arms plus: anyone complying with arm 2 would
    # also comply with arm 1.
    if spaces.n_treatments != 3 or spaces.n_instruments != 3:
        raise IncompatibleSpaces("cheng_small requires 3 treatments and 3 instruments")
    one_sided = _one_sided_rct(spaces, params)
    return lambda rt: one_sided(rt) and (rt[2] != 2 or rt[1] == 1)


def _compliers_or_defiers(spaces, params):
    if spaces.n_treatments != 2 or spaces.n_instruments != 2:
        raise IncompatibleSpaces("compliers_or_defiers requires binary treatment and instrument")
    return lambda rt: rt[0] != rt[1]


def _ordered(spaces, params):
    return lambda rt: all(a <= b for a, b in zip(rt, rt[1:]))


def _kline_walters(spaces, params):
    # Offer experiment with a close substitute: if the offer changes the
    # choice at all, the chosen option under the offer is the offered one (2).
    if spaces.n_treatments != 3 or spaces.n_instruments != 2:
        raise IncompatibleSpaces("kline_walters requires 3 treatments and 2 instruments")
    return lambda rt: rt[0] == rt[1] or rt[1] == 2


def _klm(spaces, params):
    # Three-field admission-cutoff design: crossing the cutoff for field k
    # weakly encourages field k (monotonicity), and crossing an irrelevant
    # cutoff neither pushes toward nor away from the other field (irrelevance).
    if spaces.n_treatments != 3 or spaces.n_instruments != 3:
        raise IncompatibleSpaces("klm requires 3 treatments and 3 instruments")

    def pred(rt):
        d0, d1, d2 = rt
        if d0 == 1 and d1 != 1:
            return False
        if d0 == 2 and d2 != 2:
            return False
        if d0 != 1 and d1 != 1 and (d1 == 2) != (d0 == 2):
            return False
        if d0 != 2 and d2 != 2 and (d2 == 1) != (d0 == 1):
            return False
        return True
    return pred


def _gm_max(spaces, params):
    # Maximal support consistent with generalized monotonicity for a fixed
    # per-treatment encouraging instrument assignment.
    if not params or "zstar" not in params:
        raise IncompatibleSpaces("gm_max requires params={'zstar': [z per treatment]}")
    zstar = tuple(int(z) for z in params["zstar"])
    if len(zstar) != spaces.n_treatments:
        raise IncompatibleSpaces(
            f"gm_max zstar has length {len(zstar)}, expected {spaces.n_treatments}")
    for z in zstar:
        spaces.check_instrument(z)

    def pred(rt):
        return all(rt[zstar[d]] == d or d not in rt for d in spaces.treatments)
    return pred


BUILTIN_MODELS = {
    "exogeneity_only": _exogeneity_only,
    "one_sided_rct": _one_sided_rct,
    "generalized_no_defier": _generalized_no_defier,
    "cheng_small": _cheng_small,
    "compliers_or_defiers": _compliers_or_defiers,
    "ordered": _ordered,
    "kline_walters": _kline_walters,
    "klm": _klm,
    "gm_max": _gm_max,
}


def builtin(name: str, spaces: ProblemSpaces, params: dict | None = None,
            cap: int = DEFAULT_ENUMERATION_CAP) -> ResponseModel:
    """Construct a named builtin model over the given spaces.

    The support is computed by filtering the full type enumeration with the
    model's defining predicate.
    """
    try:
        builder = BUILTIN_MODELS[name]
    except KeyError:
        raise UnknownModel(
            f"unknown builtin model {name!r}; known: {sorted(BUILTIN_MODELS)}") from None
    pred = builder(spaces, params or {})
    support = frozenset(rt for rt in enumerate_treatment_types(spaces, cap) if pred(rt))
    label = name if not params else f"{name}({params})"
    return ResponseModel(spaces=spaces, support=support, label=label)
