"""The no-go searches: Bell/Hardy non-locality and Kochen-Specker.

Classical explainability of an empirical model by a strongly
deterministic, measurement-independent hidden-variable model reduces to a
finite combinatorial question: every hidden value of such a model carves
out a *global section*, a family of per-component outcome functions whose
graph lies inside the model, and the model is explainable exactly when
the consistent sections jointly cover it.  :func:`exists_strongdet_lambdaindep`
decides this by exhaustive section enumeration with per-context
propagation; :func:`exists_local_lambdaindep` answers the Locality
variant, which the localization normal form makes the same decision.

The canonical Hardy empirical model has no such explanation, and the
bundled 18-vector configuration in 4-space drives two team-semantical
formulations of the Kochen-Specker theorem: the 9-row measurement team
falsifies the non-contextual-choice atom, and no extension of it by
one-hot outcome columns is non-contextual.  Both reduce to the
orthogonal-basis coloring search, and the parity structure (every vector
in exactly two of an odd number of bases) already forbids a coloring; all
routes are checked against each other.

Probabilistic no-go verdicts follow from the relational ones: a
probabilistic explanation collapses to a relational one, so nonexistence
transfers; the reports state this derivation rather than re-searching.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BudgetExceededError, InvalidArgumentError
from .eval_rel import eval_atom_rel
from .formulas import NCC
from .models import (
    LAMBDA_VAR,
    EmpiricalModel,
    HVModel,
    empirical_domain,
    from_team,
)
from .teams import Team, Value, value_key


@dataclass(frozen=True)
class GlobalSection:
    """Per-component outcome functions, stored as sorted value tables."""

    tables: tuple[tuple[tuple[Value, Value], ...], ...]

    def outcome(self, component: int, measurement: Value) -> Value:
        for key, val in self.tables[component]:
            if key == measurement:
                return val
        raise InvalidArgumentError(f"measurement {measurement!r} outside section domain")

    def outcomes(self, measurements) -> tuple:
        return tuple(self.outcome(i, m) for i, m in enumerate(measurements))


def consistent_sections(model: EmpiricalModel, max_sections: int = 5_000_000) -> list[GlobalSection]:
    """All global sections whose graph is contained in the model.

    Enumerated by per-context propagation: contexts are processed in
    canonical order, each choosing a compatible outcome row and extending
    the partial per-component functions, with contradictions pruned early.
    """
    team = model.team
    n = model.arity
    mpos = team.positions(empirical_domain(n)[:n])
    opos = team.positions(empirical_domain(n)[n:])
    space = 1
    for i in range(1, n + 1):
        space *= len(model.outcome_values(i)) ** len(model.measurement_values(i))
        if space > max_sections:
            raise BudgetExceededError(
                f"section space exceeds {max_sections}; refusing blind enumeration"
            )

    outcomes_by_context: dict = {}
    for row in team.rows:
        a = tuple(row[i] for i in mpos)
        outcomes_by_context.setdefault(a, []).append(tuple(row[i] for i in opos))
    contexts = sorted(outcomes_by_context, key=lambda a: tuple(value_key(v) for v in a))

    sections: list[GlobalSection] = []
    partial: list[dict] = [{} for _ in range(n)]

    def dfs(k: int):
        if k == len(contexts):
            tables = tuple(
                tuple(sorted(partial[i].items(), key=lambda kv: value_key(kv[0])))
                for i in range(n)
            )
            sections.append(GlobalSection(tables))
            return
        a = contexts[k]
        for b in sorted(outcomes_by_context[a], key=lambda b: tuple(value_key(v) for v in b)):
            added = []
            ok = True
            for i in range(n):
                known = partial[i].get(a[i])
                if known is None:
                    partial[i][a[i]] = b[i]
                    added.append((i, a[i]))
                elif known != b[i]:
                    ok = False
                    break
            if ok:
                dfs(k + 1)
            for i, key in added:
                del partial[i][key]

    dfs(0)
    return sections


def exists_strongdet_lambdaindep(
    model: EmpiricalModel, max_sections: int = 5_000_000
) -> HVModel | None:
    """Decide whether an empirically equivalent hidden-variable model
    satisfying Strong Determinism and hidden-variable independence exists;
    return one (hidden values are the consistent sections) or None.

    Soundness: in such a model each hidden value determines each
    component's outcome from its measurement, and independence makes every
    measurement tuple occur with every hidden value, so each hidden value
    yields a consistent total section and their graphs cover the model.
    Completeness: a covering family of consistent sections *is* such a
    model.
    """
    if model.probabilistic:
        raise InvalidArgumentError(
            "decision runs on relational models; collapse probabilistic ones first "
            "(nonexistence transfers to the probabilistic side)"
        )
    sections = consistent_sections(model, max_sections)
    team = model.team
    n = model.arity
    mpos = team.positions(empirical_domain(n)[:n])
    contexts = sorted(
        {tuple(row[i] for i in mpos) for row in team.rows},
        key=lambda a: tuple(value_key(v) for v in a),
    )
    covered = {
        a + section.outcomes(a)
        for section in sections
        for a in contexts
    }
    if covered != set(team.rows):
        return None
    rows = [
        a + section.outcomes(a) + (("sec", section.tables),)
        for section in sections
        for a in contexts
    ]
    return from_team(Team(team.domain + (LAMBDA_VAR,), rows), "hidden")


def exists_local_lambdaindep(
    model: EmpiricalModel, max_sections: int = 5_000_000
) -> HVModel | None:
    """Decide existence of an equivalent Loc and hidden-variable
    independent model.

    Same decision as the strong-determinism variant: Strong Determinism
    entails Locality one way, and the localization normal form upgrades a
    Loc witness to a strongly deterministic one the other way.  The
    returned witness is the strongly deterministic one.
    """
    return exists_strongdet_lambdaindep(model, max_sections)


# ---------------------------------------------------------------------------
# Hardy


def hardy_team() -> EmpiricalModel:
    from .datasets import load_bundled

    model = load_bundled("hardy")
    assert isinstance(model, EmpiricalModel)
    return model


def check_hardy_conditions(model: EmpiricalModel) -> list[str]:
    """Syntactic check of the six Hardy conditions; returns the violated
    ones (empty list means the no-go argument applies)."""
    team = model.team
    if model.arity != 2:
        return ["arity must be 2"]
    mset = team.values_of(("m1", "m2"))
    oset = team.values_of(("o1", "o2"))
    m1 = sorted(team.values_of(("m1",)), key=lambda t: value_key(t[0]))
    m2 = sorted(team.values_of(("m2",)), key=lambda t: value_key(t[0]))
    failures = []
    if len(m1) != 2 or len(m2) != 2 or len(mset) != 4:
        failures.append("(1) measurement grid must be full 2x2")
        return failures
    outcome_values = {v for pair in oset for v in pair}
    if len(outcome_values) != 2:
        failures.append("(2) outcomes must use exactly two values")
        return failures
    (a1,), (a2,) = m1
    (b1,), (b2,) = m2
    r_candidates = [
        (r, g)
        for r in sorted(outcome_values, key=value_key)
        for g in sorted(outcome_values, key=value_key)
        if r != g
    ]
    for r, g in r_candidates:
        ok = (
            (a1, b1, r, r) in team
            and (a1, b2, r, r) not in team
            and (a2, b1, r, r) not in team
            and (a2, b2, g, g) not in team
        )
        if ok:
            return []
    failures.append("(3)-(6) no labeling of outcomes as R,G satisfies the Hardy pattern")
    return failures


@dataclass
class HardyReport:
    conditions_ok: bool
    witness_exists: bool
    sections_found: int

    @property
    def ok(self) -> bool:
        return self.conditions_ok and not self.witness_exists

    def lines(self) -> list[str]:
        return [
            f"hardy team satisfies conditions (1)-(6): {self.conditions_ok}",
            f"consistent global sections: {self.sections_found}",
            f"StrongDet & lambda-indep model exists: {self.witness_exists} (expected False)",
            "Loc & lambda-indep model exists: "
            f"{self.witness_exists} (same decision, by the localization normal form)",
            "probabilistic no-go follows: a probabilistic explanation would collapse "
            "to a relational one",
        ]


def verify_hardy() -> HardyReport:
    model = hardy_team()
    failures = check_hardy_conditions(model)
    witness = exists_strongdet_lambdaindep(model)
    return HardyReport(
        conditions_ok=not failures,
        witness_exists=witness is not None,
        sections_found=len(consistent_sections(model)),
    )


# ---------------------------------------------------------------------------
# Kochen-Specker


@dataclass(frozen=True)
class KSConfiguration:
    """Rays in 4-space grouped into orthogonal quadruples.

    Coordinates are exact (integers or rationals); normalization is
    irrelevant to the combinatorics, so rays are stored as given.
    """

    vectors: tuple[tuple, ...]
    bases: tuple[tuple[int, int, int, int], ...]

    def validate(self, require_double_cover: bool = True) -> list[str]:
        """Structural problems, empty when valid.  ``require_double_cover``
        additionally demands every vector in exactly two bases (the parity
        structure of the bundled configuration)."""
        problems = []
        for idx, vec in enumerate(self.vectors):
            if len(vec) != 4:
                problems.append(f"vector {idx} is not 4-dimensional")
            elif all(x == 0 for x in vec):
                problems.append(f"vector {idx} is zero")
        for j, basis in enumerate(self.bases):
            if len(set(basis)) != 4:
                problems.append(f"basis {j} repeats a vector")
                continue
            if any(i < 0 or i >= len(self.vectors) for i in basis):
                problems.append(f"basis {j} references a missing vector")
                continue
            for p in range(4):
                for q in range(p + 1, 4):
                    u, v = self.vectors[basis[p]], self.vectors[basis[q]]
                    if _dot(u, v) != 0:
                        problems.append(
                            f"basis {j}: vectors {basis[p]} and {basis[q]} are not orthogonal"
                        )
        if require_double_cover:
            counts = [0] * len(self.vectors)
            for basis in self.bases:
                for i in basis:
                    counts[i] += 1
            for idx, c in enumerate(counts):
                if c != 2:
                    problems.append(f"vector {idx} occurs in {c} bases, expected exactly 2")
        return problems


def _dot(u: tuple, v: tuple) -> Fraction:
    return sum((Fraction(a) * Fraction(b) for a, b in zip(u, v)), Fraction(0))


def ks_config_from_dict(payload: dict) -> KSConfiguration:
    try:
        vectors = tuple(tuple(_coord(x) for x in vec) for vec in payload["vectors"])
        bases = tuple(tuple(int(i) for i in basis) for basis in payload["bases"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidArgumentError(f"malformed KS configuration: {exc}") from None
    return KSConfiguration(vectors, bases)


def _coord(x) -> Value:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise InvalidArgumentError(f"KS coordinates must be exact, got {x!r}")
    return Fraction(x) if isinstance(x, str) else x


def cabello_config() -> KSConfiguration:
    """The bundled 18-vector, 9-basis configuration (exact integer rays,
    each vector in exactly two bases)."""
    from .datasets import load_bundled

    cfg = load_bundled("cabello18")
    assert isinstance(cfg, KSConfiguration)
    problems = cfg.validate()
    if problems:
        raise InvalidArgumentError("bundled configuration invalid: " + "; ".join(problems))
    return cfg


def load_ks(path) -> KSConfiguration:
    from .jsonio import load_path

    cfg = ks_config_from_dict(load_path(path))
    problems = cfg.validate()
    if problems:
        raise InvalidArgumentError("; ".join(problems))
    return cfg


def parity_obstruction(cfg: KSConfiguration) -> bool:
    """True when the double-cover parity argument alone forbids a
    coloring: with every vector in exactly two bases, the incidences of a
    transversal are even, but one per basis needs an odd count."""
    counts: dict[int, int] = {}
    for basis in cfg.bases:
        for i in basis:
            counts[i] = counts.get(i, 0) + 1
    return all(c == 2 for c in counts.values()) and len(cfg.bases) % 2 == 1


def ks_colorable(cfg: KSConfiguration) -> tuple[int, ...] | None:
    """Search for a vector set meeting every basis exactly once.

    Per-basis choice with propagation: choosing a vector for a basis
    forbids its siblings everywhere, and a basis containing an already
    chosen vector is forced.  Returns the canonically least transversal
    as sorted vector indices, or None.
    """
    status: dict[int, bool] = {}

    def dfs(j: int) -> bool:
        if j == len(cfg.bases):
            return True
        basis = cfg.bases[j]
        chosen = [i for i in basis if status.get(i) is True]
        if len(chosen) > 1:
            return False
        candidates = chosen if chosen else [i for i in basis if status.get(i) is None]
        for pick in candidates:
            trail = []
            ok = True
            for i in basis:
                want = i == pick
                prev = status.get(i)
                if prev is None:
                    status[i] = want
                    trail.append(i)
                elif prev != want:
                    ok = False
                    break
            if ok and dfs(j + 1):
                return True
            for i in trail:
                del status[i]
        return False

    if dfs(0):
        return tuple(sorted(i for i, v in status.items() if v))
    return None


def ks_team(cfg: KSConfiguration) -> Team:
    """The measurement team: one row per basis, listing its four rays."""
    rows = [tuple(cfg.vectors[i] for i in basis) for basis in cfg.bases]
    return Team(("m1", "m2", "m3", "m4"), rows)


ONE_HOT = (
    (1, 0, 0, 0),
    (0, 1, 0, 0),
    (0, 0, 1, 0),
    (0, 0, 0, 1),
)


def noncontextual_extension(cfg: KSConfiguration) -> Team | None:
    """Search directly for a global vector valuation selecting exactly one
    ray per measurement row; on success, return the witnessing extension
    of the measurement team by one-hot outcome columns."""
    team = ks_team(cfg)
    selection: dict = {}

    rows = team.rows

    def dfs(k: int) -> bool:
        if k == len(rows):
            return True
        row = rows[k]
        chosen = [v for v in row if selection.get(v) is True]
        if len(chosen) > 1:
            return False
        candidates = chosen if chosen else [v for v in row if selection.get(v) is None]
        for pick in candidates:
            trail = []
            ok = True
            for v in row:
                want = v == pick
                prev = selection.get(v)
                if prev is None:
                    selection[v] = want
                    trail.append(v)
                elif prev != want:
                    ok = False
                    break
            if ok and dfs(k + 1):
                return True
            for v in trail:
                del selection[v]
        return False

    if not dfs(0):
        return None
    extended = [
        row + tuple(1 if selection.get(v) else 0 for v in row)
        for row in rows
    ]
    return Team(("m1", "m2", "m3", "m4", "o1", "o2", "o3", "o4"), extended)


@dataclass
class KSReport:
    validation_problems: list[str]
    parity_forbids: bool
    coloring: tuple[int, ...] | None
    ncc_holds: bool
    extension: Team | None

    @property
    def ok(self) -> bool:
        colorable = self.coloring is not None
        extendable = self.extension is not None
        agree = (colorable == self.ncc_holds == extendable)
        return not self.validation_problems and agree and (
            not self.parity_forbids or not colorable
        )

    def lines(self) -> list[str]:
        colorable = self.coloring is not None
        return [
            f"configuration valid: {not self.validation_problems}"
            + (f" ({'; '.join(self.validation_problems)})" if self.validation_problems else ""),
            f"parity argument forbids a transversal: {self.parity_forbids}",
            f"transversal exists (exhaustive search): {colorable}",
            f"measurement team satisfies ncc(m1..m4): {self.ncc_holds}",
            f"non-contextual one-hot extension exists: {self.extension is not None}",
            f"all three formulations agree: {colorable == self.ncc_holds == (self.extension is not None)}",
        ]


def verify_ks(cfg: KSConfiguration | None = None, require_double_cover: bool = True) -> KSReport:
    """Run all three Kochen-Specker formulations and cross-check them."""
    cfg = cfg or cabello_config()
    problems = cfg.validate(require_double_cover=require_double_cover)
    team = ks_team(cfg)
    return KSReport(
        validation_problems=problems,
        parity_forbids=parity_obstruction(cfg),
        coloring=ks_colorable(cfg),
        ncc_holds=eval_atom_rel(team, NCC(("m1", "m2", "m3", "m4"))),
        extension=noncontextual_extension(cfg),
    )
