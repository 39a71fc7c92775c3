"""Relational and probabilistic teams.

A team is a finite set of assignments over a shared, ordered variable
domain, with values drawn from a finite symbol universe.  A probabilistic
team additionally carries an exact-rational, full-support probability
distribution over its rows.  Everything downstream (formula evaluation,
hidden-variable models, constructions, the no-go searches) is built from
the operators defined here: restriction, generalisation, Skolem extension,
value-universe extension and possibilistic collapse.

Values are opaque tokens: strings, integers, exact rationals, or nested
tuples of these (tuples are used for vectors in 4-space and for structured
hidden-variable tags).  They carry a content-based total order via
:func:`value_key`, so every iteration and every serialized output is
bit-deterministic regardless of construction order or hash seeds.

All objects are immutable after construction and all operations are pure
functions; values and teams may be shared freely between threads.
"""

from __future__ import annotations

from collections.abc import Mapping
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

from .errors import DomainError, InvalidArgumentError

# A value is a str, int, Fraction, or a (nested) tuple of values.
Value = object
Row = tuple

#: Exact rational number used for all probability arithmetic.  No floating
#: point appears anywhere in this package: independence atoms compare
#: products of conditional probabilities for *equality*.
Rational = Fraction


def value_key(value: Value):
    """Sort key inducing a stable total order on all admissible values.

    Numbers sort before strings before tuples; tuples compare
    lexicographically by their members' keys.
    """
    if isinstance(value, bool):
        raise InvalidArgumentError("booleans are not valid team values")
    if isinstance(value, (int, Fraction)):
        return ("n", Fraction(value))
    if isinstance(value, str):
        return ("s", value)
    if isinstance(value, tuple):
        return ("t", tuple(value_key(v) for v in value))
    raise InvalidArgumentError(f"unsupported value type: {type(value).__name__}")


def row_key(row: Row):
    return tuple(value_key(v) for v in row)


def _check_value(value: Value) -> Value:
    value_key(value)
    return value


class Assignment(Mapping):
    """A single row of a team, viewed as a variable-to-value mapping.

    Hashable and immutable, so it can key Skolem-function tables.
    """

    __slots__ = ("_domain", "_row", "_index")

    def __init__(self, domain: tuple[str, ...], row: Row):
        if len(domain) != len(row):
            raise InvalidArgumentError("assignment row length does not match domain")
        self._domain = domain
        self._row = row
        self._index = {v: i for i, v in enumerate(domain)}

    @property
    def domain(self) -> tuple[str, ...]:
        return self._domain

    @property
    def row(self) -> Row:
        """The underlying value tuple, aligned with the domain order."""
        return self._row

    def __getitem__(self, var: str) -> Value:
        try:
            return self._row[self._index[var]]
        except KeyError:
            raise DomainError(f"variable {var!r} not in assignment domain") from None

    def values_at(self, variables: Sequence[str]) -> Row:
        """Project the assignment onto a tuple of variables."""
        return tuple(self[v] for v in variables)

    def __iter__(self) -> Iterator[str]:
        return iter(self._domain)

    def __len__(self) -> int:
        return len(self._domain)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Assignment)
            and self._domain == other._domain
            and self._row == other._row
        )

    def __hash__(self) -> int:
        return hash((self._domain, self._row))

    def __repr__(self) -> str:
        pairs = ", ".join(f"{v}={self._row[i]!r}" for i, v in enumerate(self._domain))
        return f"Assignment({pairs})"


class Team:
    """A duplicate-free set of assignments over an ordered variable domain.

    ``rows`` is kept as a canonically sorted tuple; ``universe`` is the
    (sorted) set of values available to quantifiers, always a superset of
    the values actually occurring in rows.  The empty team is legal here;
    the model layer rejects it.
    """

    __slots__ = ("domain", "rows", "universe", "_rowset", "_hash")

    def __init__(
        self,
        domain: Sequence[str],
        rows: Iterable[Sequence[Value]],
        universe: Iterable[Value] | None = None,
    ):
        dom = tuple(domain)
        if len(set(dom)) != len(dom):
            raise InvalidArgumentError(f"duplicate variables in domain {dom}")
        width = len(dom)
        canonical = set()
        for r in rows:
            row = tuple(r)
            if len(row) != width:
                raise InvalidArgumentError(
                    f"row {row!r} does not match domain width {width}"
                )
            for v in row:
                _check_value(v)
            canonical.add(row)
        sorted_rows = tuple(sorted(canonical, key=row_key))
        active = {v for row in sorted_rows for v in row}
        if universe is None:
            uni = active
        else:
            uni = {_check_value(v) for v in universe}
            if not active <= uni:
                raise InvalidArgumentError(
                    "universe must contain every value occurring in rows"
                )
        self.domain = dom
        self.rows = sorted_rows
        self.universe = tuple(sorted(uni, key=value_key))
        self._rowset = frozenset(sorted_rows)
        self._hash = hash((dom, sorted_rows, self.universe))

    # -- basic protocol ------------------------------------------------

    def __len__(self) -> int:
        return len(self.rows)

    def __contains__(self, row: Row) -> bool:
        return tuple(row) in self._rowset

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Team)
            and self.domain == other.domain
            and self.rows == other.rows
            and self.universe == other.universe
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Team(domain={self.domain}, rows={len(self.rows)}, universe={len(self.universe)})"

    def assignments(self) -> Iterator[Assignment]:
        for row in self.rows:
            yield Assignment(self.domain, row)

    def positions(self, variables: Sequence[str]) -> tuple[int, ...]:
        """Column indices of ``variables``, raising on unknown names."""
        index = {v: i for i, v in enumerate(self.domain)}
        try:
            return tuple(index[v] for v in variables)
        except KeyError as exc:
            raise DomainError(f"variable {exc.args[0]!r} not in domain {self.domain}") from None

    def same_rows(self, other: "Team") -> bool:
        """Row-set equality, ignoring the universes."""
        return self.domain == other.domain and self.rows == other.rows

    # -- team operators -------------------------------------------------

    def values_of(self, variables: Sequence[str]) -> frozenset:
        """The set of value tuples taken by a variable tuple across rows."""
        pos = self.positions(variables)
        return frozenset(tuple(row[i] for i in pos) for row in self.rows)

    def restrict(self, variables: Sequence[str]) -> "Team":
        """Project onto a variable list, deduplicating rows.

        The universe is unchanged: restriction never discards values.
        """
        pos = self.positions(variables)
        projected = {tuple(row[i] for i in pos) for row in self.rows}
        return Team(tuple(variables), projected, self.universe)

    def generalize(self, var: str, values: Iterable[Value]) -> "Team":
        """Unrestricted generalisation: extend (or rebind) ``var`` to every
        value of ``values`` in every row."""
        vals = sorted({_check_value(v) for v in values}, key=value_key)
        if not vals:
            raise InvalidArgumentError("cannot generalize over an empty value set")
        return self._extend(var, lambda row: vals)

    def skolem_extend(
        self,
        var: str,
        function: Callable[[Assignment], Iterable[Value]] | Mapping,
    ) -> "Team":
        """Skolem extension: each row is extended by every value of its
        (nonempty) image set under ``function``.

        ``function`` may be a callable on assignments or a mapping keyed by
        :class:`Assignment`; it must cover every row.
        """
        lookup = self._skolem_lookup(var, function)
        return self._extend(var, lookup)

    def _skolem_lookup(self, var: str, function) -> Callable[[Row], list]:
        if isinstance(function, Mapping):
            table = dict(function)

            def lookup(row: Row) -> list:
                s = Assignment(self.domain, row)
                if s not in table:
                    raise InvalidArgumentError(
                        f"Skolem function is undefined on row {row!r}"
                    )
                return self._checked_image(table[s], row)

        else:

            def lookup(row: Row) -> list:
                return self._checked_image(function(Assignment(self.domain, row)), row)

        return lookup

    @staticmethod
    def _checked_image(image, row: Row) -> list:
        vals = sorted({_check_value(v) for v in image}, key=value_key)
        if not vals:
            raise InvalidArgumentError(f"Skolem image for row {row!r} is empty")
        return vals

    def _extend(self, var: str, image_of: Callable[[Row], list]) -> "Team":
        new_universe = set(self.universe)
        if var in self.domain:
            pos = self.domain.index(var)
            new_rows = set()
            for row in self.rows:
                for v in image_of(row):
                    new_rows.add(row[:pos] + (v,) + row[pos + 1 :])
                    new_universe.add(v)
            return Team(self.domain, new_rows, new_universe)
        new_rows = set()
        for row in self.rows:
            for v in image_of(row):
                new_rows.add(row + (v,))
                new_universe.add(v)
        return Team(self.domain + (var,), new_rows, new_universe)

    def add_values(self, values: Iterable[Value]) -> "Team":
        """The team X+A: identical rows, universe enlarged by ``values``.

        Enlarging the universe changes no atomic formula; it only widens
        the range of quantifiers.
        """
        extra = {_check_value(v) for v in values}
        return Team(self.domain, self.rows, set(self.universe) | extra)


class ProbTeam:
    """A team plus an exact-rational full-support distribution over it.

    Full support is structural: zero weights are rejected at construction,
    so the underlying team *is* the possibilistic collapse.  Weights must
    sum to exactly 1.
    """

    __slots__ = ("team", "_weights", "_hash")

    def __init__(self, team: Team, weights: Mapping):
        table: dict[Row, Fraction] = {}
        for key, w in weights.items():
            row = key.row if isinstance(key, Assignment) else tuple(key)
            weight = Fraction(w)
            if row in table:
                raise InvalidArgumentError(f"duplicate weight entry for row {row!r}")
            table[row] = weight
        if set(table) != set(team.rows):
            raise InvalidArgumentError("weights must cover exactly the team's rows")
        for row, weight in table.items():
            if weight <= 0:
                raise InvalidArgumentError(
                    f"weight of row {row!r} is {weight}; full support requires > 0"
                )
        total = sum(table.values(), Fraction(0))
        if total != 1:
            raise InvalidArgumentError(f"weights sum to {total}, expected exactly 1")
        self.team = team
        self._weights = table
        self._hash = hash((team, tuple(table[row] for row in team.rows)))

    @property
    def domain(self) -> tuple[str, ...]:
        return self.team.domain

    @property
    def universe(self) -> tuple:
        return self.team.universe

    def weight(self, row) -> Fraction:
        key = row.row if isinstance(row, Assignment) else tuple(row)
        try:
            return self._weights[key]
        except KeyError:
            raise InvalidArgumentError(f"row {key!r} is not in the team") from None

    def weights(self) -> dict[Row, Fraction]:
        """Weights keyed by row tuple, in canonical row order."""
        return {row: self._weights[row] for row in self.team.rows}

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ProbTeam)
            and self.team == other.team
            and self._weights == other._weights
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"ProbTeam({self.team!r})"

    @classmethod
    def uniform(cls, team: Team) -> "ProbTeam":
        """The uniform distribution over a nonempty team."""
        n = len(team)
        if n == 0:
            raise InvalidArgumentError("cannot build a distribution over an empty team")
        w = Fraction(1, n)
        return cls(team, {row: w for row in team.rows})

    # -- probabilistic team operators ------------------------------------

    def support(self) -> Team:
        """Possibilistic collapse.  Full support makes this the underlying team."""
        return self.team

    def restrict(self, variables: Sequence[str]) -> "ProbTeam":
        """Marginalize onto a variable list; weights of merged rows add exactly."""
        pos = self.team.positions(variables)
        merged: dict[Row, Fraction] = {}
        for row in self.team.rows:
            proj = tuple(row[i] for i in pos)
            merged[proj] = merged.get(proj, Fraction(0)) + self._weights[row]
        return ProbTeam(Team(tuple(variables), merged.keys(), self.universe), merged)

    def skolem_extend(self, var: str, function) -> "ProbTeam":
        """Probabilistic Skolem extension.

        ``function`` maps each assignment to an exact-rational distribution
        (a mapping value -> weight summing to 1).  The probability mass of a
        row is split over its extensions in those proportions; zero-weight
        extensions are dropped so full support is preserved.
        """
        if isinstance(function, Mapping):
            table = dict(function)

            def dist_of(s: Assignment):
                if s not in table:
                    raise InvalidArgumentError(
                        f"Skolem family is undefined on row {s.row!r}"
                    )
                return table[s]

        else:
            dist_of = function

        new_weights: dict[Row, Fraction] = {}
        rebound = var in self.domain
        pos = self.domain.index(var) if rebound else None
        for row in self.team.rows:
            dist = dict(dist_of(Assignment(self.domain, row)))
            total = Fraction(0)
            for v, p in dist.items():
                _check_value(v)
                p = Fraction(p)
                if p < 0:
                    raise InvalidArgumentError(f"negative probability {p} for value {v!r}")
                total += p
            if total != 1:
                raise InvalidArgumentError(
                    f"distribution for row {row!r} sums to {total}, expected 1"
                )
            base = self._weights[row]
            for v, p in dist.items():
                p = Fraction(p)
                if p == 0:
                    continue
                if rebound:
                    new_row = row[:pos] + (v,) + row[pos + 1 :]
                else:
                    new_row = row + (v,)
                new_weights[new_row] = new_weights.get(new_row, Fraction(0)) + base * p
        domain = self.domain if rebound else self.domain + (var,)
        column = pos if rebound else -1
        universe = set(self.universe) | {row[column] for row in new_weights}
        return ProbTeam(Team(domain, new_weights.keys(), universe), new_weights)

    def uniform_extend(self, var: str, values: Iterable[Value]) -> "ProbTeam":
        """Skolem extension splitting every row's mass uniformly over ``values``."""
        vals = sorted({_check_value(v) for v in values}, key=value_key)
        if not vals:
            raise InvalidArgumentError("cannot extend uniformly over an empty value set")
        share = Fraction(1, len(vals))
        dist = {v: share for v in vals}
        return self.skolem_extend(var, lambda s: dist)
