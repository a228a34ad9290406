"""Core data model: problem spaces, observed and latent distributions.

Conventions
-----------
- Outcomes take values in a finite, strictly increasing set of rationals
  ``y_values``; ``y_low``/``y_high`` denote its endpoints.
- Treatments are labeled ``0 .. n_treatments-1`` and instruments
  ``0 .. n_instruments-1``.
- The observable object is the conditional law ``p[z][d][y]`` of
  ``(outcome, treatment)`` given each instrument value.  The marginal law of
  the instrument is never stored: every bound and every rationalization
  constraint conditions on the instrument, so the marginal is irrelevant.
- A treatment response type is the vector of treatments an individual would
  take at each instrument value, ``rt[z] in treatments``.  An outcome
  response type is the vector of outcomes realized under each treatment,
  ``ro[d] in y_values``.  Both are plain tuples.
- A latent distribution assigns mass ``q(ro, rt)`` to pairs of response
  types.  It is stored sparsely: zero cells are dropped on construction.

All containers are immutable after construction and safe to share across
threads.  All masses are exact rationals; validation is exact, not
tolerance-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    MassNotOne,
    NegativeMass,
)
from .rational import Rational, parse_rational

TreatmentResponseType = tuple[int, ...]
OutcomeResponseType = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class ProblemSpaces:
    """Finite outcome values and treatment/instrument index sets.

    Degenerate cases are ruled out: at least two outcome values, two
    treatments and two instrument values.
    """

    y_values: tuple[Fraction, ...]
    n_treatments: int
    n_instruments: int

    def __post_init__(self):
        ys = tuple(Fraction(y) for y in self.y_values)
        object.__setattr__(self, "y_values", ys)
        if len(ys) < 2:
            raise DimensionMismatch("need at least two outcome values")
        if any(a >= b for a, b in zip(ys, ys[1:])):
            raise DimensionMismatch("outcome values must be strictly increasing")
        if self.n_treatments < 2:
            raise DimensionMismatch("need at least two treatments")
        if self.n_instruments < 2:
            raise DimensionMismatch("need at least two instrument values")

    @classmethod
    def from_strings(cls, y_values: Iterable[str], n_treatments: int,
                     n_instruments: int) -> "ProblemSpaces":
        return cls(tuple(parse_rational(y) for y in y_values),
                   int(n_treatments), int(n_instruments))

    @property
    def n_outcomes(self) -> int:
        return len(self.y_values)

    @property
    def y_low(self) -> Fraction:
        return self.y_values[0]

    @property
    def y_high(self) -> Fraction:
        return self.y_values[-1]

    @property
    def treatments(self) -> range:
        return range(self.n_treatments)

    @property
    def instruments(self) -> range:
        return range(self.n_instruments)

    def outcome_index(self, y: Fraction) -> int:
        try:
            return self.y_values.index(Fraction(y))
        except ValueError:
            raise IndexOutOfRange(f"outcome value {y} not in y_values") from None

    def check_treatment(self, d: int) -> int:
        if not 0 <= d < self.n_treatments:
            raise IndexOutOfRange(f"treatment {d} out of range [0, {self.n_treatments})")
        return d

    def check_instrument(self, z: int) -> int:
        if not 0 <= z < self.n_instruments:
            raise IndexOutOfRange(f"instrument {z} out of range [0, {self.n_instruments})")
        return z

    def check_treatment_type(self, rt: TreatmentResponseType) -> TreatmentResponseType:
        rt = tuple(rt)
        if len(rt) != self.n_instruments:
            raise DimensionMismatch(
                f"treatment response type {rt} has length {len(rt)}, "
                f"expected {self.n_instruments}")
        for d in rt:
            self.check_treatment(d)
        return rt

    def check_outcome_type(self, ro: OutcomeResponseType) -> OutcomeResponseType:
        ro = tuple(Fraction(y) for y in ro)
        if len(ro) != self.n_treatments:
            raise DimensionMismatch(
                f"outcome response type {ro} has length {len(ro)}, "
                f"expected {self.n_treatments}")
        for y in ro:
            if y not in self.y_values:
                raise IndexOutOfRange(f"outcome value {y} not in y_values")
        return ro


@dataclass(frozen=True)
class ObservedDistribution:
    """Conditional law ``p[z][d][y]`` of (outcome, treatment) given the instrument.

    Entries are nonnegative rationals summing exactly to one within each
    instrument slice.  Construct via :func:`validate_observed` or the
    from_* classmethods; direct construction also validates.
    """

    spaces: ProblemSpaces
    p: tuple[tuple[tuple[Fraction, ...], ...], ...]

    def __post_init__(self):
        sp = self.spaces
        table = self.p
        if len(table) != sp.n_instruments:
            raise DimensionMismatch(
                f"p has {len(table)} instrument slices, expected {sp.n_instruments}")
        rows = []
        for z, slice_z in enumerate(table):
            if len(slice_z) != sp.n_treatments:
                raise DimensionMismatch(
                    f"p[{z}] has {len(slice_z)} treatment rows, expected {sp.n_treatments}")
            total = ZERO
            new_slice = []
            for d, row in enumerate(slice_z):
                if len(row) != sp.n_outcomes:
                    raise DimensionMismatch(
                        f"p[{z}][{d}] has {len(row)} outcome cells, expected {sp.n_outcomes}")
                cells = tuple(Fraction(v) for v in row)
                for y_index, v in enumerate(cells):
                    if v < 0:
                        raise NegativeMass(f"p[{z}][{d}][{y_index}] = {v} is negative")
                total += sum(cells)
                new_slice.append(cells)
            if total != ONE:
                raise MassNotOne(
                    f"masses given instrument {z} sum to {total}, not 1",
                    where=z, deficit=total - ONE)
            rows.append(tuple(new_slice))
        object.__setattr__(self, "p", tuple(rows))

    @classmethod
    def from_strings(cls, spaces: ProblemSpaces,
                     table: Iterable[Iterable[Iterable[str]]]) -> "ObservedDistribution":
        parsed = tuple(
            tuple(tuple(parse_rational(v) for v in row) for row in slice_z)
            for slice_z in table)
        return cls(spaces, parsed)

    def mass(self, y: Fraction, d: int, z: int) -> Fraction:
        """Exact mass of {outcome=y, treatment=d} given instrument z."""
        self.spaces.check_treatment(d)
        self.spaces.check_instrument(z)
        return self.p[z][d][self.spaces.outcome_index(y)]

    def beta(self, d: int, z: int) -> Fraction:
        """Conditional mean of outcome restricted to treatment d, given z.

        Computes sum over y of y * p[z][d][y].
        """
        self.spaces.check_treatment(d)
        self.spaces.check_instrument(z)
        return sum((y * v for y, v in zip(self.spaces.y_values, self.p[z][d])), ZERO)

    def treatment_prob(self, d: int, z: int) -> Fraction:
        """Probability of taking treatment d given instrument z."""
        self.spaces.check_treatment(d)
        self.spaces.check_instrument(z)
        return sum(self.p[z][d], ZERO)


def validate_observed(p_table, spaces: ProblemSpaces) -> ObservedDistribution:
    """Validate a raw [z][d][y] table of rationals against the spaces.

    Raises DimensionMismatch, NegativeMass or MassNotOne on bad input and
    returns the immutable distribution otherwise.  Sums are checked exactly.
    """
    parsed = tuple(
        tuple(tuple(Fraction(v) for v in row) for row in slice_z)
        for slice_z in p_table)
    return ObservedDistribution(spaces, parsed)


@dataclass(frozen=True, eq=False)
class LatentDistribution:
    """Sparse joint law q(ro, rt) over outcome and treatment response types.

    The full state space (|y_values| ** n_treatments outcome types times
    n_treatments ** n_instruments treatment types) blows up quickly, but
    every support of interest here is sparse, so only strictly positive
    cells are stored.
    """

    spaces: ProblemSpaces
    q: Mapping[tuple[OutcomeResponseType, TreatmentResponseType], Fraction]
    _cells: tuple = field(init=False, repr=False)

    def __post_init__(self):
        sp = self.spaces
        cleaned = {}
        total = ZERO
        for (ro, rt), mass in self.q.items():
            mass = Fraction(mass)
            if mass < 0:
                raise NegativeMass(f"q({ro}, {rt}) = {mass} is negative")
            if mass == 0:
                continue
            key = (sp.check_outcome_type(ro), sp.check_treatment_type(rt))
            cleaned[key] = cleaned.get(key, ZERO) + mass
            total += mass
        if total != ONE:
            raise MassNotOne(f"latent masses sum to {total}, not 1",
                             deficit=total - ONE)
        object.__setattr__(self, "q", cleaned)
        object.__setattr__(self, "_cells", tuple(sorted(cleaned.items())))

    def __eq__(self, other):
        if not isinstance(other, LatentDistribution):
            return NotImplemented
        return self.spaces == other.spaces and self._cells == other._cells

    def __hash__(self):
        return hash((self.spaces, self._cells))

    def cells(self):
        """Positive cells in deterministic sorted order."""
        return self._cells

    def mass(self, ro: OutcomeResponseType, rt: TreatmentResponseType) -> Fraction:
        return self.q.get((tuple(ro), tuple(rt)), ZERO)

    def treatment_marginal(self) -> dict[TreatmentResponseType, Fraction]:
        """Marginal law of the treatment response type."""
        out: dict[TreatmentResponseType, Fraction] = {}
        for (ro, rt), mass in self._cells:
            out[rt] = out.get(rt, ZERO) + mass
        return out

    def support_treatment_types(self) -> frozenset[TreatmentResponseType]:
        return frozenset(rt for (ro, rt) in self.q)

    def mean_potential_outcome(self, d: int) -> Fraction:
        """Exact mean of the potential outcome under treatment d."""
        self.spaces.check_treatment(d)
        return sum((ro[d] * mass for (ro, rt), mass in self._cells), ZERO)

    def push_forward(self) -> ObservedDistribution:
        """Consistency map: the observable conditional law this Q induces.

        For each (y, d, z), sums q(ro, rt) over cells with ro[d] = y and
        rt[z] = d.  The result is the conditional law given each z; under
        instrument exogeneity it does not depend on any instrument marginal.
        """
        sp = self.spaces
        table = [[[ZERO for _ in sp.y_values] for _ in sp.treatments]
                 for _ in sp.instruments]
        y_index = {y: i for i, y in enumerate(sp.y_values)}
        for (ro, rt), mass in self._cells:
            for z, d in enumerate(rt):
                table[z][d][y_index[ro[d]]] += mass
        return ObservedDistribution(
            sp, tuple(tuple(tuple(row) for row in slice_z) for slice_z in table))


def push_forward(q: LatentDistribution) -> ObservedDistribution:
    """Functional alias for :meth:`LatentDistribution.push_forward`."""
    return q.push_forward()


def point_mass(spaces: ProblemSpaces, ro: OutcomeResponseType,
               rt: TreatmentResponseType) -> LatentDistribution:
    """Degenerate latent distribution concentrated on one response pair."""
    return LatentDistribution(spaces, {(tuple(ro), tuple(rt)): ONE})
