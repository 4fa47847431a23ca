"""Fat-flag point configurations in P^(n+m) and the proof machinery.

The single-graded counterpart of the bidegree-(1,d) problem lives in
P^(n+m) with a fixed frame: coordinates split as a_0..a_{n-1}, b_0..b_m,
H1 is the linear span cut out by all b's, H2 the one cut out by the a's
and b_0, and the designated hyperplane for residual/trace splitting is
{a_{n-1} = 0} (it contains H2 and misses nothing generic). Genericity is
carried entirely by the point coordinates, so fixing the frame loses no
generality.

A configuration consists of the fat flag dH1 + H2, double and simple
points, and linear spans through H1 anchored at a point. Its ideal
dimension in one degree is computed exactly: flag membership by restricting
the monomial basis, everything else by explicit condition rows.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from math import comb
from typing import Sequence

import numpy as np

from .linalg import (
    FieldConfig,
    ideal_dimension,
    matrix_from_rows,
    require_headroom,
)
from .monomials import (
    ExponentVector,
    derivative_rows,
    evaluation_row,
    graded_basis,
)
from .terracini import (
    SampleConfig,
    SegreVeroneseParams,
    derived_rng,
    draw_projective_point,
    ideal_dim_bidegree,
)

# stream tag separating dictionary draws from tangent-side draws
_DICTIONARY_TAG = 101


@dataclass(frozen=True)
class SchemePoint:
    """A point of the frame; on_h marks membership in {a_{n-1} = 0}."""

    coords: tuple[int, ...]
    on_h: bool = False


@dataclass(frozen=True)
class SchemeSpec:
    """A configuration of flag, points and spans in the fixed frame.

    fat_h1 is the multiplicity of the H1 component (0 or d), include_h2
    adds the reduced H2 component, v_spans lists indices (double points
    first, then simple points) whose span with H1 is part of the scheme,
    and w_anchors carries free span anchors not tied to a listed point.
    """

    n: int
    m: int
    d: int
    fat_h1: int = 0
    include_h2: bool = False
    double_points: tuple[SchemePoint, ...] = ()
    simple_points: tuple[tuple[int, ...], ...] = ()
    w_anchors: tuple[tuple[int, ...], ...] = ()
    v_spans: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 0 or self.m < 1 or self.d < 1:
            raise ValueError("need n >= 0, m >= 1, d >= 1")
        if self.fat_h1 not in (0, self.d):
            raise ValueError("fat multiplicity must be 0 or d")
        if self.n == 0 and self.fat_h1:
            raise ValueError("fat flag needs a nonempty a-block")
        nvars = self.n + self.m + 1
        for pt in self.double_points:
            _check_point(pt.coords, nvars)
            if pt.on_h and (self.n < 1 or pt.coords[self.n - 1] != 0):
                raise ValueError("on-hyperplane point has nonzero a_{n-1}")
        for coords in self.simple_points:
            _check_point(coords, nvars)
        for coords in self.w_anchors:
            _check_point(coords, nvars)
            self._check_anchor(coords)
        npts = len(self.double_points) + len(self.simple_points)
        for idx in self.v_spans:
            if not 0 <= idx < npts:
                raise ValueError("span index out of range")
            coords, _ = _combined_point(self, idx)
            self._check_anchor(coords)

    def _check_anchor(self, coords: tuple[int, ...]) -> None:
        if self.n < 1:
            raise ValueError("span anchors need a nonempty a-block")
        if not any(coords[self.n :]):
            raise ValueError("span anchor lies on H1")


def _check_point(coords: tuple[int, ...], nvars: int) -> None:
    if len(coords) != nvars:
        raise ValueError("coordinate length does not match the frame")
    if not any(coords):
        raise ValueError("projective point needs a nonzero coordinate")


def _combined_point(spec: SchemeSpec, idx: int) -> tuple[tuple[int, ...], bool]:
    """Point idx in the doubles-then-simples numbering, with on-H status."""
    nd = len(spec.double_points)
    if idx < nd:
        pt = spec.double_points[idx]
        return pt.coords, pt.on_h
    coords = spec.simple_points[idx - nd]
    return coords, spec.n >= 1 and coords[spec.n - 1] == 0


def scheme_to_dict(spec: SchemeSpec) -> dict:
    """JSON-friendly form, for reproducible failure reports."""
    return {
        "n": spec.n,
        "m": spec.m,
        "d": spec.d,
        "fatH1": spec.fat_h1,
        "includeH2": spec.include_h2,
        "doublePoints": [
            {"coords": list(pt.coords), "onH": pt.on_h}
            for pt in spec.double_points
        ],
        "simplePoints": [list(c) for c in spec.simple_points],
        "wAnchors": [list(c) for c in spec.w_anchors],
        "vSpans": list(spec.v_spans),
    }


def scheme_from_dict(data: dict) -> SchemeSpec:
    return SchemeSpec(
        n=int(data["n"]),
        m=int(data["m"]),
        d=int(data["d"]),
        fat_h1=int(data["fatH1"]),
        include_h2=bool(data["includeH2"]),
        double_points=tuple(
            SchemePoint(tuple(int(c) for c in pt["coords"]), bool(pt["onH"]))
            for pt in data["doublePoints"]
        ),
        simple_points=tuple(
            tuple(int(c) for c in coords) for coords in data["simplePoints"]
        ),
        w_anchors=tuple(
            tuple(int(c) for c in coords) for coords in data["wAnchors"]
        ),
        v_spans=tuple(int(i) for i in data["vSpans"]),
    )


def restricted_basis(n: int, m: int, d: int) -> tuple[ExponentVector, ...]:
    """Monomial basis of the degree-(d+1) forms through the flag dH1 + H2.

    Vanishing to order d on H1 forces b-degree >= d, and through H2 forces
    divisibility by some a_i or by b_0; what survives in degree d+1 is
    a_i * (degree-d monomial in b) for each i, then b_0 * (degree-d
    monomial in b). Exactly (n+1) * C(m+d, d) monomials, in that order.
    """
    if n < 1 or m < 1 or d < 1:
        raise ValueError("need n, m, d >= 1")
    ydeg = graded_basis(m + 1, d).monomials
    out: list[ExponentVector] = []
    for i in range(n):
        prefix = (0,) * i + (1,) + (0,) * (n - 1 - i)
        out.extend(prefix + beta for beta in ydeg)
    out.extend((0,) * n + (beta[0] + 1,) + beta[1:] for beta in ydeg)
    return tuple(out)


def scheme_basis(spec: SchemeSpec, degree: int) -> tuple[ExponentVector, ...]:
    """Monomial basis of the degree piece cut down by the flag components."""
    if degree < 0:
        raise ValueError("degree must be non-negative")
    if (
        spec.n >= 1
        and spec.include_h2
        and spec.fat_h1 == spec.d
        and degree == spec.d + 1
    ):
        return restricted_basis(spec.n, spec.m, spec.d)
    keep: list[ExponentVector] = []
    for mono in graded_basis(spec.n + spec.m + 1, degree).monomials:
        if sum(mono[spec.n :]) < spec.fat_h1:
            continue
        if spec.include_h2 and not (any(mono[: spec.n]) or mono[spec.n] > 0):
            continue
        keep.append(mono)
    return tuple(keep)


def double_point_rows(
    basis: Sequence[ExponentVector],
    point: Sequence[int],
    cfg: FieldConfig,
) -> list[list[int]]:
    """Every first partial of the basis at the point, one row per variable.

    The value row is omitted: the Euler identity makes it a combination of
    the partial rows whenever the modulus exceeds the degree.
    """
    return derivative_rows(basis, point, cfg)


def _mu_lambda_terms(
    alpha: ExponentVector, qa: tuple[int, ...], cfg: FieldConfig
) -> list[tuple[ExponentVector, int]]:
    """Expansion of prod_i (mu_i + lam * qa_i)^alpha_i keyed by mu-exponent."""
    terms: list[tuple[ExponentVector, int]] = [((), 1)]
    for a_i, q_i in zip(alpha, qa):
        grown: list[tuple[ExponentVector, int]] = []
        for gamma, coeff in terms:
            for g in range(a_i + 1):
                if cfg.is_modular:
                    c = (
                        coeff
                        * comb(a_i, g)
                        % cfg.modulus
                        * pow(q_i % cfg.modulus, a_i - g, cfg.modulus)
                        % cfg.modulus
                    )
                else:
                    c = coeff * comb(a_i, g) * q_i ** (a_i - g)
                grown.append((gamma + (g,), c))
        terms = grown
    return [(gamma, c) for gamma, c in terms if c]


def span_rows(
    basis: Sequence[ExponentVector],
    n: int,
    anchor: Sequence[int],
    cfg: FieldConfig,
) -> list[list[int]]:
    """Conditions for vanishing on span(H1, anchor), by exact restriction.

    A point of the span is (mu + lam * qa, lam * qb) with chart coordinates
    (mu_0..mu_{n-1}, lam). Each basis monomial is expanded in the chart and
    one row is emitted per chart monomial that occurs; a form contains the
    span iff all rows annihilate its coefficient vector. No sampling on the
    span is involved.
    """
    if n < 1:
        raise ValueError("span needs a nonempty a-block")
    anchor = tuple(int(c) for c in anchor)
    qa, qb = anchor[:n], anchor[n:]
    if not any(qb):
        raise ValueError("span anchor lies on H1")
    maxdeg = max((sum(mono[n:]) for mono in basis), default=0)
    btable = []
    for coord in qb:
        value = coord % cfg.modulus if cfg.is_modular else coord
        powers = [1]
        for _ in range(maxdeg):
            nxt = powers[-1] * value
            powers.append(nxt % cfg.modulus if cfg.is_modular else nxt)
        btable.append(powers)
    rows: dict[ExponentVector, list[int]] = {}
    for col, mono in enumerate(basis):
        alpha, beta = mono[:n], mono[n:]
        bval = 1
        for v, e in enumerate(beta):
            if e:
                bval *= btable[v][e]
                if cfg.is_modular:
                    bval %= cfg.modulus
        for gamma, coeff in _mu_lambda_terms(alpha, qa, cfg):
            row = rows.setdefault(gamma, [0] * len(basis))
            value = row[col] + coeff * bval
            row[col] = value % cfg.modulus if cfg.is_modular else value
    return [rows[gamma] for gamma in sorted(rows, reverse=True)]


def w_space_rows(
    n: int, m: int, d: int, anchor: Sequence[int], cfg: FieldConfig
) -> list[list[int]]:
    """The n+1 conditions a span through H1 imposes on the restricted basis.

    On the flag basis the chart expansion collapses to n rows indexed by the
    mu variables (the anchor's b-powers against each a_i block) plus one
    evaluation row at the anchor itself.
    """
    rows = span_rows(restricted_basis(n, m, d), n, anchor, cfg)
    assert len(rows) == n + 1
    return rows


def scheme_ideal_dimension(
    spec: SchemeSpec, degree: int, cfg: FieldConfig
) -> int:
    """Exact dimension of the degree piece of the configuration's ideal."""
    require_headroom(cfg, degree)
    basis = scheme_basis(spec, degree)
    if not basis:
        return 0
    rows: list[list[int]] = []
    for pt in spec.double_points:
        rows.extend(double_point_rows(basis, pt.coords, cfg))
    for coords in spec.simple_points:
        rows.append(evaluation_row(basis, coords, cfg))
    for anchor in spec.w_anchors:
        rows.extend(span_rows(basis, spec.n, anchor, cfg))
    for idx in spec.v_spans:
        coords, _ = _combined_point(spec, idx)
        rows.extend(span_rows(basis, spec.n, coords, cfg))
    return ideal_dimension(matrix_from_rows(rows, len(basis), cfg), cfg)


def sample_scheme(
    params: SegreVeroneseParams,
    s: int,
    t: int,
    rng: np.random.Generator,
    modulus: int,
    specialize: bool = False,
) -> SchemeSpec:
    """Random flag configuration: dH1 + H2 + s double points + t spans.

    All points are kept off H1 so spans and projections stay well defined.
    With specialize=True (s must be a multiple of n+1) the first s - s/(n+1)
    double points land on the splitting hyperplane {a_{n-1} = 0}, the layout
    the residual/trace induction consumes.
    """
    if s < 0 or t < 0:
        raise ValueError("need s >= 0 and t >= 0")
    n, m = params.n, params.m
    nvars = n + m + 1
    on_count = 0
    if specialize:
        if s % (n + 1):
            raise ValueError("specialization needs s divisible by n+1")
        on_count = s - s // (n + 1)
    doubles = []
    for i in range(s):
        on_h = i < on_count
        coords = draw_projective_point(
            rng,
            nvars,
            modulus,
            zero_coord=n - 1 if on_h else None,
            nonzero_tail=m + 1,
        )
        doubles.append(SchemePoint(coords, on_h))
    anchors = tuple(
        draw_projective_point(rng, nvars, modulus, nonzero_tail=m + 1)
        for _ in range(t)
    )
    return SchemeSpec(
        n=n,
        m=m,
        d=params.d,
        fat_h1=params.d,
        include_h2=True,
        double_points=tuple(doubles),
        w_anchors=anchors,
    )


@dataclass(frozen=True)
class DictionaryCheck:
    """Both sides of the multigraded / single-graded correspondence."""

    lhs: int  # bidegree-(1,d) forms singular at s points of P^n x P^m
    rhs: int  # degree-(d+1) forms through the flag scheme in P^(n+m)

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def verify_dictionary(
    params: SegreVeroneseParams, s: int, cfg: SampleConfig
) -> DictionaryCheck:
    """Cross-check the two sides on independent random draws.

    Each side takes its best value over cfg.trials draws, so both settle on
    the generic dimension with overwhelming probability.
    """
    lhs = ideal_dim_bidegree(params, s, cfg)
    rhs = None
    for trial in range(cfg.trials):
        rng = derived_rng(cfg.seed, _DICTIONARY_TAG, trial)
        spec = sample_scheme(params, s, 0, rng, cfg.field.modulus)
        dim = scheme_ideal_dimension(spec, params.d + 1, cfg.field)
        rhs = dim if rhs is None else min(rhs, dim)
    return DictionaryCheck(lhs, rhs)


def add_v_spans(spec: SchemeSpec) -> SchemeSpec:
    """Attach the span through H1 at every double point.

    With the flag at full multiplicity those spans lie in the base locus of
    the degree-(d+1) system, so the ideal dimension must not change; callers
    use that invariance as a consistency check. Without double points this
    is a no-op.
    """
    if not spec.double_points:
        return spec
    if spec.fat_h1 != spec.d:
        raise ValueError("base-locus spans need the flag at full multiplicity")
    return replace(spec, v_spans=tuple(range(len(spec.double_points))))


@dataclass(frozen=True)
class ResidualTracePair:
    """Output of one splitting step, each half with its working degree."""

    residual: SchemeSpec
    residual_degree: int
    trace: SchemeSpec
    trace_degree: int


def _drop(coords: tuple[int, ...], index: int) -> tuple[int, ...]:
    return coords[:index] + coords[index + 1 :]


def residual_trace(spec: SchemeSpec, degree: int) -> ResidualTracePair:
    """Split the configuration across the hyperplane {a_{n-1} = 0}.

    A double point on the hyperplane leaves a simple point in the residual
    and a double point in the trace; components not contained in the
    hyperplane pass whole to the residual and meet it in their trace (spans
    through H1 trace to spans of the smaller frame, anchored at the image
    of their anchor). H2 lies inside the hyperplane, so it disappears from
    the residual and survives in the trace. The trace frame drops the
    a_{n-1} coordinate; when n = 1 that removes H1 itself, so the flag
    degenerates and spans collapse to their anchor points.

    Returns the residual paired with degree-1 and the trace with degree;
    the dimension in degree is at most the sum of the two halves.
    """
    if spec.n < 1:
        raise ValueError("frame has no a-coordinates to split along")
    h = spec.n - 1
    collapse = spec.n == 1

    res_doubles: list[SchemePoint] = []
    res_simples: list[tuple[int, ...]] = []
    tr_doubles: list[SchemePoint] = []
    tr_simples: list[tuple[int, ...]] = []
    res_pos: dict[int, tuple[str, int]] = {}
    tr_pos: dict[int, int] = {}

    for j, pt in enumerate(spec.double_points):
        if pt.on_h:
            res_pos[j] = ("simple", len(res_simples))
            res_simples.append(pt.coords)
            tr_pos[j] = len(tr_doubles)
            tr_doubles.append(SchemePoint(_drop(pt.coords, h), False))
        else:
            res_pos[j] = ("double", len(res_doubles))
            res_doubles.append(SchemePoint(pt.coords, False))

    base = len(spec.double_points)
    for j, coords in enumerate(spec.simple_points):
        if coords[h] == 0:
            tr_simples.append(_drop(coords, h))
        else:
            res_pos[base + j] = ("simple", len(res_simples))
            res_simples.append(coords)

    res_span_refs: list[tuple[str, int]] = []
    res_anchor_extra: list[tuple[int, ...]] = []
    tr_anchor_extra: list[tuple[int, ...]] = []
    tr_vspans: list[int] = []
    for idx in spec.v_spans:
        coords, on_h = _combined_point(spec, idx)
        ref = res_pos.get(idx)
        if ref is None:
            # the anchoring point fell into the trace; the span itself
            # stays in the residual as a free anchor
            res_anchor_extra.append(coords)
        else:
            res_span_refs.append(ref)
        if on_h:
            if not collapse:
                tr_vspans.append(tr_pos[idx])
            # n = 1: the traced span is the anchor point itself, already
            # present as a trace double point
        else:
            dropped = _drop(coords, h)
            if collapse:
                tr_simples.append(dropped)
            else:
                tr_anchor_extra.append(dropped)

    res_vspans = tuple(
        pos if kind == "double" else len(res_doubles) + pos
        for kind, pos in res_span_refs
    )

    if collapse:
        tr_simples.extend(_drop(q, h) for q in spec.w_anchors)
        tr_anchors: tuple[tuple[int, ...], ...] = ()
        tr_fat = 0
    else:
        tr_anchors = tuple(_drop(q, h) for q in spec.w_anchors) + tuple(
            tr_anchor_extra
        )
        tr_fat = spec.fat_h1

    # drop duplicate trace points (a span collapsing onto a double point
    # imposes nothing new)
    seen = {pt.coords for pt in tr_doubles}
    tr_unique: list[tuple[int, ...]] = []
    for coords in tr_simples:
        if coords not in seen:
            seen.add(coords)
            tr_unique.append(coords)

    residual = SchemeSpec(
        n=spec.n,
        m=spec.m,
        d=spec.d,
        fat_h1=spec.fat_h1,
        include_h2=False,
        double_points=tuple(res_doubles),
        simple_points=tuple(res_simples),
        w_anchors=spec.w_anchors + tuple(res_anchor_extra),
        v_spans=res_vspans,
    )
    trace = SchemeSpec(
        n=spec.n - 1,
        m=spec.m,
        d=spec.d,
        fat_h1=tr_fat,
        include_h2=spec.include_h2,
        double_points=tuple(tr_doubles),
        simple_points=tuple(tr_unique),
        w_anchors=tr_anchors,
        v_spans=tuple(tr_vspans),
    )
    return ResidualTracePair(residual, degree - 1, trace, degree)


@dataclass(frozen=True)
class CastelnuovoCheck:
    """One splitting step: total against residual plus trace."""

    total: int
    residual: int
    trace: int

    @property
    def holds(self) -> bool:
        return self.total <= self.residual + self.trace


def castelnuovo_check(
    spec: SchemeSpec, degree: int, cfg: FieldConfig
) -> CastelnuovoCheck:
    """Exact-sequence bound: dim in degree <= residual in degree-1 + trace."""
    pair = residual_trace(spec, degree)
    return CastelnuovoCheck(
        scheme_ideal_dimension(spec, degree, cfg),
        scheme_ideal_dimension(pair.residual, pair.residual_degree, cfg),
        scheme_ideal_dimension(pair.trace, pair.trace_degree, cfg),
    )


@dataclass(frozen=True)
class ProjectionCheck:
    """Cone-shaped residual against its image in the b-coordinate frame."""

    projected: SchemeSpec
    residual_dim: int
    projected_dim: int

    @property
    def equal(self) -> bool:
        return self.residual_dim == self.projected_dim


def project_from_h1(residual: SchemeSpec, cfg: FieldConfig) -> ProjectionCheck:
    """Project a cone-shaped residual from H1 onto P^m.

    Valid when every degree-d form through the configuration is a cone with
    vertex H1 (flag at full multiplicity, no H2 component): the basis is
    then pure in the b variables. Double points map to double points of
    P^m; simple points and span anchors map to simple points, with
    duplicates and points absorbed by a double image dropped. The degree-d
    dimensions on both sides must agree.
    """
    if residual.n < 1 or residual.fat_h1 != residual.d or residual.include_h2:
        raise ValueError("configuration is not a cone over H1 in degree d")
    n = residual.n
    doubles = []
    for pt in residual.double_points:
        image = pt.coords[n:]
        if not any(image):
            raise ValueError("double point lies on the projection center")
        doubles.append(SchemePoint(image, False))
    sources = list(residual.simple_points)
    sources.extend(_combined_point(residual, idx)[0] for idx in residual.v_spans)
    sources.extend(residual.w_anchors)
    seen = {pt.coords for pt in doubles}
    simples: list[tuple[int, ...]] = []
    for coords in sources:
        image = coords[n:]
        if not any(image):
            raise ValueError("component projects from the center")
        if image not in seen:
            seen.add(image)
            simples.append(image)
    projected = SchemeSpec(
        n=0,
        m=residual.m,
        d=residual.d,
        double_points=tuple(doubles),
        simple_points=tuple(simples),
    )
    return ProjectionCheck(
        projected,
        scheme_ideal_dimension(residual, residual.d, cfg),
        scheme_ideal_dimension(projected, residual.d, cfg),
    )
