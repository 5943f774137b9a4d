"""Counts of minimal first-syzygy generators degree by degree.

The dimension in question is the cokernel rank of the multiplication map from
sections in one degree (tensored with the linear forms) to sections one degree
up.  For nef classes the case rules give it outright; for everything else a
fixed-part bookkeeping identity reduces to the nef answer.
"""

from __future__ import annotations

from dataclasses import dataclass

from .configuration import (
    FatPointScheme,
    ProximityMatrix,
    UnsupportedRuleError,
    check_proximity,
)
from .lattice import (
    ClassVector,
    canonical_class,
    e0_class,
    intersect,
    nef_basis_coefficients,
)
from .cohomology import (
    CaseContext,
    h0_any,
    make_context,
    regularity_bound,
)
from .zariski import NotEffective, zariski_decompose

RULE_BEYOND_REGULARITY = "beyond-regularity"
RULE_INITIAL_GENERATORS = "initial-generators"
RULE_FLEX_COMPOSITE = "flex-composite"


@dataclass(frozen=True)
class SyzygyAnswer:
    value: int
    rule: str


def _uniform_nef_answer(h: ClassVector, context: CaseContext) -> SyzygyAnswer:
    r = h.r
    if r < 9:
        raise UnsupportedRuleError(
            "rules for points on a smooth cubic need at least nine points"
        )
    if len(set(h.m)) > 1:
        raise ValueError(f"uniform moving parts have equal multiplicities, got {h}")
    mk = intersect(-canonical_class(r), h)
    if mk < 0:
        raise ValueError(f"s_of_nef expects a nef class, got {h}")
    if mk > 1:
        return SyzygyAnswer(0, "uniform-ample-restriction")
    if mk == 1:
        return SyzygyAnswer(1, "uniform-degree-one-restriction")
    if r == 10:
        return SyzygyAnswer(1, "uniform-ten-point-boundary")
    if r > 10:
        return SyzygyAnswer(0, "uniform-trivial-restriction")
    # r == 9 and mk == 0 force a multiple of the cubic.
    c = h.m[0]
    if c < 0 or h != c * (-canonical_class(9)):
        raise ValueError(f"s_of_nef expects a moving part, got {h}")
    if c == 0:
        return SyzygyAnswer(0, "uniform-zero-class")
    spec = context.config.lambda_spec
    if spec is None:
        raise ValueError("uniform cubic rules need the restriction kernel")
    if not spec.contains_multiple_of_k(c, 9):
        raise ValueError(f"{h} is not a moving part for the given kernel")
    order = next(n for n in range(1, c + 1) if spec.contains_multiple_of_k(n, 9))
    multiple = c // order
    return SyzygyAnswer(3 * multiple * (order - 1), "uniform-kernel-multiple")


def _flex_shape(h: ClassVector) -> tuple[tuple[int, ...], int]:
    coeffs = nef_basis_coefficients(h)
    if min(coeffs.a) < 0 or coeffs.minus_k_pairing < 0:
        raise ValueError(f"s_of_nef expects a nef class, got {h}")
    return coeffs.a, coeffs.minus_k_pairing


def _is_flex_composite(a: tuple[int, ...], r: int) -> bool:
    if r < 9 or a[8] != 1:
        return False
    tail = a[9] + (a[10] if r >= 10 else 0)
    if tail == 0:
        return False
    return all(v == 0 for i, v in enumerate(a) if i not in (8, 9, 10))


def _flex_nef_answer(h: ClassVector) -> SyzygyAnswer:
    a, mk = _flex_shape(h)
    r = h.r
    if _is_flex_composite(a, r):
        raise ValueError(
            f"{h} is a cubic pencil class plus kernel multiples; its syzygy "
            "count comes from the fixed-locus rule, not the nef table"
        )
    j = max((i for i, v in enumerate(a) if v > 0), default=0)
    boundary = mk == 1 or (mk == 0 and j == 10)
    if any(a[i] > 0 for i in range(min(8, r + 1))):
        if boundary:
            return SyzygyAnswer(1, "flex-low-index-boundary")
        return SyzygyAnswer(0, "flex-low-index")
    b8 = a[8] if r >= 8 else 0
    if b8 == 0:
        return SyzygyAnswer(0, "flex-kernel-multiples")
    if b8 == 1:
        return SyzygyAnswer(1, "flex-cubic-pencil")
    if boundary:
        return SyzygyAnswer(2, "flex-high-index-boundary")
    return SyzygyAnswer(1, "flex-high-index")


def s_of_nef(h: ClassVector, context: CaseContext) -> SyzygyAnswer:
    """Syzygy count for a nef moving part, straight from the case rules."""
    kind = context.config.curve_kind
    if h.r != context.config.r:
        raise ValueError(f"class of rank {h.r} does not match {context.config.r} points")
    if kind in ("line", "conic"):
        return SyzygyAnswer(0, "rational-normal-restriction")
    if kind == "cubic_uniform":
        return _uniform_nef_answer(h, context)
    if kind == "cubic_flex":
        return _flex_nef_answer(h)
    raise UnsupportedRuleError(f"no syzygy rules for curve kind {kind}")


def _moving_syzygies(h: ClassVector, context: CaseContext) -> SyzygyAnswer:
    if context.config.curve_kind == "cubic_flex":
        a, _ = _flex_shape(h)
        if _is_flex_composite(a, h.r):
            return SyzygyAnswer(a[9] + 1, RULE_FLEX_COMPOSITE)
    return s_of_nef(h, context)


def s_dim(scheme: FatPointScheme, d: int, context: CaseContext | None = None) -> SyzygyAnswer:
    """Number of minimal syzygies in degree d+1 of the scheme's ideal."""
    if context is None:
        context = make_context(scheme.config)
    check_proximity(scheme)
    if d > regularity_bound(scheme):
        return SyzygyAnswer(0, RULE_BEYOND_REGULARITY)
    f = scheme.to_class(d)
    up = h0_any(scheme.to_class(d + 1), context).h0
    dec = zariski_decompose(f, context.config, context.curves)
    if isinstance(dec, NotEffective):
        return SyzygyAnswer(up, RULE_INITIAL_GENERATORS)
    moving = dec.moving
    base = _moving_syzygies(moving, context)
    moving_up = h0_any(moving + e0_class(moving.r), context).h0
    value = base.value + up - moving_up
    if value < 0:
        raise RuntimeError(f"internal error: negative syzygy count at degree {d}")
    rule = base.rule if moving == f else base.rule + "+fixed-part"
    return SyzygyAnswer(value, rule)


def s_vanish_by_degree(f: ClassVector, g: ClassVector, prox: ProximityMatrix) -> bool:
    """Degree test certifying no syzygies between a pair of class twists.

    Both classes must satisfy the proximity inequalities recorded in ``prox``.
    """
    for cls in (f, g):
        if cls.r != len(prox.entries):
            raise ValueError("class rank does not match the proximity matrix")
        for i in range(1, cls.r + 1):
            total = sum(cls.m[j - 1] for j in prox.points_proximate_to(i))
            if cls.m[i - 1] < total:
                raise ValueError(f"proximity inequality fails at p{i}")
    return f.d >= sum(f.m) and g.d >= sum(g.m)


__all__ = [
    "SyzygyAnswer",
    "s_dim",
    "s_of_nef",
    "s_vanish_by_degree",
]
