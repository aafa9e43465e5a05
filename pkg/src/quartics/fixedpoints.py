"""Torus-fixed points of the Hilbert-scheme component of rational quartics.

The quartics in P(2,1,1,1) (coordinates x0..x3, x0 of weight two) are
parameterized by a smooth compactification built in three stages:

* a Grassmannian of pencils of invariant quadrics — its fixed points are
  the 12 unordered pairs of invariant quadric monomials with disjoint
  variable support;
* a first blow-up along the locus of pencils with a common linear factor
  — each center point contributes one candidate fixed point per normal
  direction, with a third ideal generator obtained by lifting the syzygy
  of the base pair;
* a second blow-up along the locus where the first blow-up still leaves
  a common factor — contributing a fourth generator the same way.

This yields 126 fixed points (12 + 42 + 72), each a monomial ideal with a
10-dimensional tangent representation.  A quartic in P(2,1,1,1,1) spans an
invariant hyperplane {x_i = 0}, i in 1..4, so the component for the full
space fibers over the dual projective 3-space: re-embedding the 126 points
into each hyperplane and adding the hyperplane's tangent directions gives
504 fixed points with 13-dimensional tangent spaces and 13-dimensional
fibers of the pushed-forward degree-6 bundle.

Blow-up tangent spaces follow the standard decomposition at a fixed point
x_xi of the exceptional divisor over a center point x:

    T(x_xi) = T_center(x) + L_xi + T_{P(N*)}(x_xi)
            = T_center(x) + {xi} + sum over other normal characters eta of
              {eta * xi^-1}

where the normal space N(x) has a basis of degree-0 semiinvariant
directions recorded per center below.  The center tables (tangent space
and normal basis at each blow-up center) are hardcoded data; their
consistency with independently computed ambient tangent spaces is an
invariant checked by the test suite, and `limit_ideal_oracle` recomputes
every blown-up ideal from first principles as a flat limit.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Mapping, Sequence

from .repring import (
    LaurentMonomial,
    MonomialIdeal,
    RepElement,
    ideal_twist,
    invariant_sections,
)

STAGE_GRASSMANNIAN = "grassmannian"
STAGE_BLOWUP1 = "blowup1"
STAGE_BLOWUP2 = "blowup2"
STAGES = (STAGE_GRASSMANNIAN, STAGE_BLOWUP1, STAGE_BLOWUP2)

#: Default twisting degree: the Calabi-Yau hypersurface has weighted
#: degree 6, so curve counts come from the degree-6 bundle.
DEFAULT_DEGREE = 6

#: Hyperplane index -> where the four P(2,1,1,1) characters (x0,x1,x2,x3)
#: land among the five P(2,1,1,1,1) characters.  The hyperplane {x_i = 0}
#: receives the remaining weight-one coordinates in cyclic order.  Any
#: bijective relabeling yields the same localization sum.
PERM_H: dict[int, tuple[int, int, int, int]] = {
    1: (0, 2, 3, 4),
    2: (0, 3, 4, 1),
    3: (0, 4, 1, 2),
    4: (0, 1, 2, 3),
}


@dataclass(frozen=True)
class FixedPoint:
    """A torus-fixed point with its ideal, tangent and fiber data.

    `hyperplane` is None for points of the P(2,1,1,1) component and the
    index i of the invariant hyperplane {x_i = 0} after assembly into
    P(2,1,1,1,1).
    """

    stage: str
    ideal: MonomialIdeal
    tangent: RepElement
    fiber: RepElement
    hyperplane: int | None = None

    @property
    def label(self) -> str:
        prefix = f"h{self.hyperplane}:" if self.hyperplane is not None else ""
        return f"{prefix}{self.stage}:{self.ideal}"

    def sort_key(self) -> tuple:
        return (
            self.hyperplane if self.hyperplane is not None else 0,
            STAGES.index(self.stage),
            self.ideal.sort_key(),
        )


@dataclass(frozen=True)
class BlowupCenterDatum:
    """Tangent/normal data at one torus-fixed point of a blow-up center.

    `normal_basis` lists the degree-0 semiinvariant characters of the
    normal space; `lcm_base` is the least common multiple of the generator
    pair whose syzygy is lifted, so the candidate fixed point in direction
    mu acquires the new generator lcm_base * mu.  `stage` tags the stage of
    the points this center produces.
    """

    base_ideal: MonomialIdeal
    tangent_to_center: RepElement
    normal_basis: tuple[LaurentMonomial, ...]
    lcm_base: LaurentMonomial
    stage: str

    def ambient_tangent(self) -> RepElement:
        """Tangent to the ambient space at the center point.

        The center's tangent space plus one line per normal direction;
        equals the independently computed ambient tangent (an invariant
        exercised by the test suite).
        """
        return self.tangent_to_center + RepElement.from_monomials(self.normal_basis)


# ---------------------------------------------------------------------------
#  Stage 0: the Grassmannian of invariant quadric pencils.
# ---------------------------------------------------------------------------


def _quadric_pair_ideals() -> list[MonomialIdeal]:
    """Unordered disjoint-support pairs of invariant quadric monomials."""
    quadrics = invariant_sections(3, 2).support()
    ideals = []
    for a, b in combinations(quadrics, 2):
        if a.gcd(b).is_trivial():
            ideals.append(MonomialIdeal([a, b]))
    return ideals


def grassmann_fixed_points(degree: int = DEFAULT_DEGREE) -> list[FixedPoint]:
    """The 12 fixed points of the Grassmannian stage.

    Pairs of invariant quadrics sharing a variable lie in the first
    blow-up center and are excluded here.  The tangent space is
    Hom(I, V[2]/I) = (V[2] - I) * dual(I).
    """
    v2 = invariant_sections(3, 2)
    points = []
    for ideal in _quadric_pair_ideals():
        gens = ideal.as_rep()
        tangent = (v2 - gens) * gens.dual()
        points.append(
            FixedPoint(
                stage=STAGE_GRASSMANNIAN,
                ideal=ideal,
                tangent=tangent,
                fiber=fiber_rep(ideal, degree),
            )
        )
    points.sort(key=FixedPoint.sort_key)
    return points


# ---------------------------------------------------------------------------
#  Blow-up center tables.
#
#  Each table below is given at the identity labeling of the weight-one
#  coordinates x1,x2,x3 and expanded over the permutation orbit indicated.
#  T entries and normal directions are degree-0 Laurent monomials in the
#  four characters.
# ---------------------------------------------------------------------------

_IDENTITY = {0: 0, 1: 1, 2: 2, 3: 3}


def _mono4(text: str) -> LaurentMonomial:
    return LaurentMonomial.parse(text, 4)


def _rep4(pairs: Iterable[tuple[str, int]]) -> RepElement:
    return RepElement((_mono4(t), k) for t, k in pairs)


def _perm_mapping(images: Sequence[int]) -> dict[int, int]:
    """Index mapping fixing x0 and sending x1,x2,x3 to the given images."""
    return {0: 0, 1: images[0], 2: images[1], 3: images[2]}


_CYCLIC_PERMS = [(1, 2, 3), (2, 3, 1), (3, 1, 2)]
_ALL_PERMS = [tuple(p) for p in permutations((1, 2, 3))]


@dataclass(frozen=True)
class _CenterTable:
    base: MonomialIdeal
    tangent: RepElement
    normal: tuple[LaurentMonomial, ...]
    lcm_base: LaurentMonomial
    perms: tuple[tuple[int, int, int], ...]
    stage: str


# First blow-up, center type (x1*x2, x1*x3): a pencil with common factor
# x1 and coprime second factors.  The ideal is symmetric in x2,x3, so the
# three cyclic relabelings already cover its orbit.
_STAGE1_PENCIL = _CenterTable(
    base=MonomialIdeal.of(4, "x1*x2", "x1*x3"),
    tangent=_rep4(
        [("x1*x2^-1", 1), ("x1*x3^-1", 1), ("x2*x1^-1", 1), ("x3*x1^-1", 1)]
    ),
    normal=(
        _mono4("x0^2*x1^-1*x2^-1"),
        _mono4("x0^2*x1^-1*x3^-1"),
        _mono4("x2*x1^-1"),
        _mono4("x3*x1^-1"),
        _mono4("x3^2*x1^-1*x2^-1"),
        _mono4("x2^2*x1^-1*x3^-1"),
    ),
    lcm_base=_mono4("x1*x2*x3"),
    perms=tuple(_CYCLIC_PERMS),
    stage=STAGE_BLOWUP1,
)

# First blow-up, center type (x1^2, x1*x2): common factor x1 with a
# repeated root.  Not symmetric in x2,x3: all six relabelings occur.
_STAGE1_DOUBLE = _CenterTable(
    base=MonomialIdeal.of(4, "x1^2", "x1*x2"),
    tangent=_rep4([("x3*x1^-1", 2), ("x3*x2^-1", 1), ("x2*x1^-1", 1)]),
    normal=(
        _mono4("x0^2*x1^-2"),
        _mono4("x0^2*x1^-1*x2^-1"),
        _mono4("x2^2*x1^-2"),
        _mono4("x3^2*x1^-2"),
        _mono4("x3^2*x1^-1*x2^-1"),
        _mono4("x2*x3*x1^-2"),
    ),
    lcm_base=_mono4("x1^2*x2"),
    perms=tuple(_ALL_PERMS),
    stage=STAGE_BLOWUP1,
)

# Second blow-up centers: the two candidate families from the type
# (x1^2, x1*x2) whose lifted generator keeps the common factor x1.
# Directions x3*x2^-1 and x0^2*x3^-2 (respectively x3^2*x0^-2) stay inside
# the common-factor locus and belong to the center's own tangent space,
# not to the normal basis.
_STAGE2_CUSP = _CenterTable(
    base=MonomialIdeal.of(4, "x1^2", "x1*x2", "x1*x3^2"),
    tangent=_rep4(
        [("x3*x1^-1", 1), ("x2*x1^-1", 1), ("x3*x2^-1", 1), ("x0^2*x3^-2", 1)]
    ),
    normal=(
        _mono4("x3*x1^-1"),
        _mono4("x3^2*x1^-1*x2^-1"),
        _mono4("x2^3*x1^-1*x3^-2"),
        _mono4("x2^2*x1^-1*x3^-1"),
        _mono4("x2*x1^-1"),
        _mono4("x0^2*x2*x1^-1*x3^-2"),
    ),
    lcm_base=_mono4("x1*x2*x3^2"),
    perms=tuple(_ALL_PERMS),
    stage=STAGE_BLOWUP2,
)

_STAGE2_WEIGHTED = _CenterTable(
    base=MonomialIdeal.of(4, "x1^2", "x1*x2", "x0^2*x1"),
    tangent=_rep4(
        [("x3*x1^-1", 1), ("x2*x1^-1", 1), ("x3*x2^-1", 1), ("x3^2*x0^-2", 1)]
    ),
    normal=(
        _mono4("x3*x1^-1"),
        _mono4("x0^2*x1^-1*x2^-1"),
        _mono4("x2^3*x1^-1*x0^-2"),
        _mono4("x2^2*x3*x1^-1*x0^-2"),
        _mono4("x2*x1^-1"),
        _mono4("x2*x3^2*x1^-1*x0^-2"),
    ),
    lcm_base=_mono4("x0^2*x1*x2"),
    perms=tuple(_ALL_PERMS),
    stage=STAGE_BLOWUP2,
)


def _expand_table(table: _CenterTable) -> list[BlowupCenterDatum]:
    centers = []
    for perm in table.perms:
        mapping = _perm_mapping(perm)
        centers.append(
            BlowupCenterDatum(
                base_ideal=table.base.remap(mapping, 4),
                tangent_to_center=table.tangent.remap(mapping, 4),
                normal_basis=tuple(m.remap(mapping, 4) for m in table.normal),
                lcm_base=table.lcm_base.remap(mapping, 4),
                stage=table.stage,
            )
        )
    return centers


def stage1_centers() -> list[BlowupCenterDatum]:
    """Fixed points of the first blow-up center (3 + 6 = 9 of them)."""
    return _expand_table(_STAGE1_PENCIL) + _expand_table(_STAGE1_DOUBLE)


def stage2_centers() -> list[BlowupCenterDatum]:
    """Fixed points of the second blow-up center (6 + 6 = 12 of them)."""
    return _expand_table(_STAGE2_CUSP) + _expand_table(_STAGE2_WEIGHTED)


# ---------------------------------------------------------------------------
#  Points on the exceptional divisors.
# ---------------------------------------------------------------------------


def blowup_point_tangent(
    center: BlowupCenterDatum, direction: LaurentMonomial
) -> RepElement:
    """Tangent space at the fixed point of the exceptional divisor.

    Composes the center's tangent space, the normal line along
    `direction`, and the tangent space of the projectivized normal space
    (one line eta * direction^-1 per other normal character eta).
    """
    if direction not in center.normal_basis:
        raise ValueError(f"{direction} is not a normal direction of {center.base_ideal}")
    lines = [direction]
    lines.extend(
        eta / direction for eta in center.normal_basis if eta != direction
    )
    return center.tangent_to_center + RepElement.from_monomials(lines)


def blowup_fixed_points(
    center: BlowupCenterDatum,
    lcm_base: LaurentMonomial,
    degree: int = DEFAULT_DEGREE,
) -> list[FixedPoint]:
    """Fixed points of the exceptional divisor over one center point.

    One candidate per normal direction mu: the ideal acquires the new
    generator lcm_base * mu.  Candidates whose generators still share a
    common variable factor lie in the next blow-up center and are dropped
    from this stage's output.
    """
    points = []
    for mu in center.normal_basis:
        new_gen = lcm_base * mu
        if not new_gen.is_regular():
            raise ValueError(
                f"inconsistent center data: {lcm_base} * {mu} has a negative exponent"
            )
        ideal = center.base_ideal.with_generator(new_gen)
        if ideal.has_common_factor():
            continue
        points.append(
            FixedPoint(
                stage=center.stage,
                ideal=ideal,
                tangent=blowup_point_tangent(center, mu),
                fiber=fiber_rep(ideal, degree),
            )
        )
    return points


# ---------------------------------------------------------------------------
#  Flat limits: the flattening iteration, used as an independent oracle
#  for the closed-form blown-up ideals.
# ---------------------------------------------------------------------------


def limit_ideal_oracle(
    base: MonomialIdeal, direction: LaurentMonomial, degree_bound: int
) -> MonomialIdeal:
    """Flat limit at t=0 of the family perturbing `base` along `direction`.

    The family moves each generator m to m + t c mu m (mu = `direction`, a
    degree-0 Laurent monomial) whenever mu * m is an ordinary monomial, with
    generic pairwise-distinct scalars c; generators whose perturbation would
    need a negative exponent stay put.  Distinct scalars matter: equal ones
    can degenerate the family to a coordinate change along the blow-up
    center and miss the limit point.

    Iteration, to first order in t: for every pair of current generators,
    the lifted syzygy leaves a remainder t * q; monomials of q divisible by
    a current generator cancel against it.  A surviving remainder must be a
    single monomial g — it is adjoined to the generators (with unknown
    first-order term, i.e. treated as unperturbed) and the loop repeats.
    Remainders of degree above `degree_bound` are second-order artifacts of
    the truncation and are skipped; a multi-monomial remainder signals a
    case outside this computation's scope and raises.
    """
    if direction.degree != 0:
        raise ValueError(f"direction must have degree 0: {direction}")

    # generator -> scalar coefficient of its first-order term c * mu * m;
    # 0 encodes both "no perturbation possible" and "unknown" (adjoined).
    coeffs: dict[LaurentMonomial, int] = {}
    for position, gen in enumerate(base.generators):
        perturbed = direction * gen
        coeffs[gen] = position + 1 if perturbed.is_regular() else 0

    while True:
        gens = list(coeffs)
        ideal = MonomialIdeal(gens)
        adjoined = None
        for gi, gj in combinations(gens, 2):
            lcm = gi.lcm(gj)
            # t-coefficient of the lifted syzygy (lcm/gi)*gi(t) - (lcm/gj)*gj(t):
            # both contributions sit on the single monomial direction * lcm.
            net = coeffs[gi] - coeffs[gj]
            if net == 0:
                continue
            remainder = direction * lcm
            if ideal.contains(remainder):
                continue  # cancels against a current generator
            if remainder.degree > degree_bound:
                continue  # beyond the first-order truncation
            adjoined = remainder
            break
        if adjoined is None:
            return ideal
        coeffs = {g: c for g, c in coeffs.items() if not adjoined.divides(g)}
        coeffs[adjoined] = 0


def stage2_composed_tangent(
    center: BlowupCenterDatum, stage1: Sequence[BlowupCenterDatum]
) -> RepElement:
    """Ambient tangent at a second-stage center, assembled independently.

    A second-stage center point sits on the exceptional divisor of the
    first blow-up: its base ideal extends a first-stage base by one
    generator lcm * xi.  Locating that parent center and direction, the
    ambient tangent follows from the blow-up tangent decomposition and
    must match the hardcoded table's tangent-plus-normal sum.
    """
    parents = [
        c for c in stage1 if set(c.base_ideal.generators) < set(center.base_ideal.generators)
    ]
    if len(parents) != 1:
        raise ValueError(f"no unique parent center for {center.base_ideal}")
    parent = parents[0]
    extra = [
        g for g in center.base_ideal.generators
        if g not in parent.base_ideal.generators
    ]
    if len(extra) != 1:
        raise ValueError(f"expected one extra generator in {center.base_ideal}")
    direction = extra[0] / parent.lcm_base
    return blowup_point_tangent(parent, direction)


def center_oracle_agreement(
    center: BlowupCenterDatum, lcm_base: LaurentMonomial, degree_bound: int
) -> list[tuple[LaurentMonomial, MonomialIdeal, MonomialIdeal]]:
    """Mismatches between flat limits and closed-form blown-up ideals.

    Runs `limit_ideal_oracle` for every normal direction of the center and
    compares with base + lcm_base * mu (discarded common-factor candidates
    included).  Returns a list of (direction, oracle ideal, closed form),
    empty when the center data is consistent.
    """
    mismatches = []
    for mu in center.normal_basis:
        closed_form = center.base_ideal.with_generator(lcm_base * mu)
        limit = limit_ideal_oracle(center.base_ideal, mu, degree_bound)
        if limit != closed_form:
            mismatches.append((mu, limit, closed_form))
    return mismatches


#: First-order flat limits adjoin generators of these degrees per stage.
ORACLE_DEGREE_BOUNDS = {STAGE_BLOWUP1: 3, STAGE_BLOWUP2: 4}


# ---------------------------------------------------------------------------
#  Full enumerations.
# ---------------------------------------------------------------------------


def enumerate_h3(degree: int = DEFAULT_DEGREE) -> list[FixedPoint]:
    """All 126 fixed points of the P(2,1,1,1) component (12 + 42 + 72)."""
    points = grassmann_fixed_points(degree)
    for center in stage1_centers() + stage2_centers():
        points.extend(blowup_fixed_points(center, center.lcm_base, degree))
    points.sort(key=FixedPoint.sort_key)
    seen: set[MonomialIdeal] = set()
    for point in points:
        if point.ideal in seen:
            raise RuntimeError(f"duplicate fixed-point ideal: {point.ideal}")
        seen.add(point.ideal)
    return points


def assemble_h4(
    h3: Sequence[FixedPoint],
    degree: int = DEFAULT_DEGREE,
    perm_h: Mapping[int, tuple[int, int, int, int]] = PERM_H,
) -> list[FixedPoint]:
    """The 504 fixed points of the P(2,1,1,1,1) component.

    Re-embeds each of the 126 points into each invariant hyperplane
    {x_i = 0}, i in 1..4, along `perm_h`; the ideal gains the generator
    x_i, the tangent space gains the hyperplane's three directions
    x_j / x_i (j in 1..4, j != i), and the fiber is recomputed in the
    five-character ring.
    """
    if len(h3) != 126:
        raise ValueError(f"expected the 126 fixed points, got {len(h3)}")
    points = []
    for i in sorted(perm_h):
        images = perm_h[i]
        if images[0] != 0 or sorted(images[1:]) != sorted({1, 2, 3, 4} - {i}):
            raise ValueError(f"hyperplane {i}: invalid character images {images}")
        mapping = dict(enumerate(images))
        x_i = LaurentMonomial.parse(f"x{i}", 5)
        dual_tangent = RepElement.from_monomials(
            LaurentMonomial.parse(f"x{j}*x{i}^-1", 5) for j in range(1, 5) if j != i
        )
        for point in h3:
            if point.ideal.nvars != 4:
                raise ValueError(f"expected four characters: {point.ideal}")
            ideal = point.ideal.remap(mapping, 5).with_generator(x_i)
            tangent = point.tangent.remap(mapping, 5) + dual_tangent
            points.append(
                FixedPoint(
                    stage=point.stage,
                    ideal=ideal,
                    tangent=tangent,
                    fiber=fiber_rep(ideal, degree),
                    hyperplane=i,
                )
            )
    points.sort(key=FixedPoint.sort_key)
    return points


def fiber_rep(I: MonomialIdeal, d: int) -> RepElement:
    """Sections of the twisted structure sheaf: V[d] minus the ideal slice.

    Spanned by the invariant degree-d monomials not lying in the ideal;
    always multiplicity-1 for valid curve ideals.
    """
    result = invariant_sections(I.nvars - 1, d) - ideal_twist(I, d)
    if any(mult < 0 for _, mult in result.items()):
        raise ValueError(f"ideal slice exceeds the section space at degree {d}: {I}")
    return result


def lemma_injectivity_check(I: MonomialIdeal) -> bool:
    """Check the cubic-multiplier condition used to embed curves.

    True iff there is no invariant degree-3 monomial m outside I with all
    of x1 m, x2 m, x3 m inside I.  Holds for every fixed-point ideal of
    the P(2,1,1,1) component.
    """
    if I.nvars != 4:
        raise ValueError(f"expected four characters: {I}")
    multipliers = invariant_sections(3, 1).support()
    for m in invariant_sections(3, 3).support():
        if I.contains(m):
            continue
        if all(I.contains(x * m) for x in multipliers):
            return False
    return True


def census(points: Iterable[FixedPoint]) -> dict[str, int]:
    """Point counts per stage, in stage order."""
    counts = {stage: 0 for stage in STAGES}
    for point in points:
        counts[point.stage] += 1
    return counts


# ---------------------------------------------------------------------------
#  Serialization of fixed points (the dump schema used by the CLI).
# ---------------------------------------------------------------------------


def fixed_point_record(point: FixedPoint) -> dict:
    """JSON-ready record: ideal and fiber as monomial strings in canonical
    order, tangent as (monomial, multiplicity) pairs."""
    return {
        "stage": point.stage,
        "hyperplane": point.hyperplane,
        "ideal": [str(g) for g in point.ideal.generators],
        "tangent": [
            {"monomial": str(m), "multiplicity": k} for m, k in point.tangent.items()
        ],
        "fiber": [str(m) for m in point.fiber.support()],
    }


def fixed_point_from_record(record: Mapping) -> FixedPoint:
    """Inverse of `fixed_point_record`."""
    nvars = 4 if record["hyperplane"] is None else 5
    return FixedPoint(
        stage=record["stage"],
        ideal=MonomialIdeal(
            LaurentMonomial.parse(t, nvars) for t in record["ideal"]
        ),
        tangent=RepElement(
            (LaurentMonomial.parse(t["monomial"], nvars), t["multiplicity"])
            for t in record["tangent"]
        ),
        fiber=RepElement.from_monomials(
            LaurentMonomial.parse(t, nvars) for t in record["fiber"]
        ),
        hyperplane=record["hyperplane"],
    )
