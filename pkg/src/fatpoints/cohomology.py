"""Section counts of divisor classes, case by case.

Every path reduces to the Euler characteristic of a nef moving part plus a
correction known in closed form, so the only arithmetic is exact pairing
evaluations.  The answers carry short notes naming the rule that produced
them, which the CLI surfaces in traces.
"""

from __future__ import annotations

from dataclasses import dataclass

from .configuration import (
    FatPointScheme,
    LambdaSpec,
    PointConfig,
    UnsupportedRuleError,
    check_proximity,
    validate,
)
from .lattice import (
    ClassVector,
    canonical_class,
    exceptional_class,
    intersect,
    nef_basis_coefficients,
    zero_class,
)
from .negcurves import NegativeCurveList, enumerate_negative_curves
from .zariski import (
    NotEffective,
    ZariskiDecomposition,
    kernel_multiple_data,
    zariski_decompose,
)


@dataclass(frozen=True)
class CohomologyAnswer:
    """h0/h1 of a class, the nef moving part used, and rule notes.

    h1 is None when the class is not effective (nothing forces a value there).
    Whenever h1 is reported, h0 - h1 equals the Euler characteristic of the
    queried class.
    """

    h0: int
    h1: int | None
    moving_part: ClassVector
    notes: tuple[str, ...]


@dataclass(frozen=True)
class CaseContext:
    """A validated configuration bundled with its enumerated curve classes."""

    config: PointConfig
    curves: NegativeCurveList | None


def make_context(config: PointConfig) -> CaseContext:
    validate(config)
    curves = None
    if config.curve_kind in ("line", "conic"):
        curves = enumerate_negative_curves(config)
    return CaseContext(config, curves)


def chi(f: ClassVector) -> int:
    """Euler characteristic (F.F - K.F)/2 + 1."""
    total = f.square() - intersect(canonical_class(f.r), f)
    if total % 2:
        raise RuntimeError(f"internal error: odd Riemann-Roch numerator for {f}")
    return total // 2 + 1


def regularity_bound(scheme: FatPointScheme) -> int:
    """Degree bound past which the ideal sheaf twist has no first cohomology."""
    check_proximity(scheme)
    return sum(scheme.multiplicities) - 1


def _not_effective_answer(f: ClassVector, reason: str) -> CohomologyAnswer:
    return CohomologyAnswer(0, None, zero_class(f.r), (f"not effective: {reason}",))


def h0_conic(
    f: ClassVector,
    config: PointConfig,
    curves: NegativeCurveList | None = None,
) -> CohomologyAnswer:
    """Sections of ``f`` for a configuration on a line or a conic."""
    if config.curve_kind not in ("line", "conic"):
        raise ValueError(
            f"h0_conic handles line and conic configurations, not {config.curve_kind}"
        )
    dec = zariski_decompose(f, config, curves)
    if isinstance(dec, NotEffective):
        return _not_effective_answer(f, dec.reason)
    h0 = chi(dec.moving)
    h1 = h0 - chi(f)
    if h0 < 0 or h1 < 0:
        raise RuntimeError(f"internal error: negative section count for {f}")
    return CohomologyAnswer(h0, h1, dec.moving, ("nef moving part is regular",))


def h0_uniform(t: int, m: int, r: int, lambda_spec: LambdaSpec | None) -> CohomologyAnswer:
    """Sections of t*e0 + m*(-K) for r general points of a smooth cubic."""
    if r < 9:
        raise UnsupportedRuleError(
            "rules for points on a smooth cubic need at least nine points"
        )
    if m < 0:
        raise ValueError("uniform multiplicity must be nonnegative")
    k = canonical_class(r)
    f = ClassVector(t + 3 * m, (m,) * r)
    if t < 0:
        return _not_effective_answer(f, "degree below three times the multiplicity")
    if m == 0:
        return CohomologyAnswer(chi(f), 0, f, ("plane curves of the given degree",))
    if lambda_spec is None:
        raise ValueError("uniform cubic rules need the restriction kernel")

    if r == 9:
        if t > 0:
            return CohomologyAnswer(chi(f), 0, f, ("fixed component free and regular",))
        shift, multiple = kernel_multiple_data(m, lambda_spec, 9)
        moving = (m - shift) * (-k)
        h0 = multiple + 1
        h1 = h0 - chi(f)
        return CohomologyAnswer(
            h0,
            h1,
            moving,
            (f"fixed part is {shift} copies of the cubic", "kernel multiple count"),
        )

    u = 3 * t + (9 - r) * m
    if u > 0:
        return CohomologyAnswer(chi(f), 0, f, ("positive restriction degree",))
    if t == 0:
        h0 = 1
        return CohomologyAnswer(
            h0,
            h0 - chi(f),
            zero_class(r),
            ("multiple of the cubic: one section",),
        )
    shift = (-u + (r - 9) - 1) // (r - 9)
    boundary = u + shift * (r - 9)
    if boundary > 0:
        moving = f + shift * k
        h0 = chi(moving)
        notes = (f"fixed part is {shift} copies of the cubic",)
    elif lambda_spec.contains(f + shift * k):
        moving = f + shift * k
        h0 = chi(moving) + 1
        notes = (
            f"fixed part is {shift} copies of the cubic",
            "moving part lies in the restriction kernel: one extra section",
        )
    else:
        moving = f + (shift + 1) * k
        h0 = chi(moving)
        notes = (f"fixed part is {shift + 1} copies of the cubic",)
    h1 = h0 - chi(f)
    if h0 < 0 or h1 < 0:
        raise RuntimeError(f"internal error: negative section count for {f}")
    return CohomologyAnswer(h0, h1, moving, notes)


def _flex_base_locus_note(f: ClassVector, a: tuple[int, ...], mk: int) -> str:
    r = f.r
    positive = [i for i, v in enumerate(a) if v > 0]
    if not positive:
        return "base-point free"
    j = max(positive)

    def only(indices: tuple[int, ...]) -> bool:
        return all(v == 0 for i, v in enumerate(a) if i not in indices)

    if r >= 10 and a[8] == 1 and a[10] == 1 and only((8, 9, 10)):
        return "base locus is the component E9 - E10"
    if r >= 9 and a[8] == 1 and a[9] > 0 and only((8, 9)):
        return "base locus is the exceptional divisor E9"
    if r >= 8 and a[8] == 1 and only((8,)):
        return "nonempty base locus: pencil of cubics through the chain"
    if mk == 1:
        if j == r:
            return "base locus is one point"
        return f"base locus is the exceptional divisor E{j + 1}"
    return "base-point free"


def h0_flex(f: ClassVector) -> CohomologyAnswer:
    """Sections of a nef class for a chain of points at a flex of a cubic."""
    coeffs = nef_basis_coefficients(f)
    mk = coeffs.minus_k_pairing
    if min(coeffs.a) < 0 or mk < 0:
        raise ValueError(f"h0_flex requires a nef class, got {f}")
    if mk >= 1:
        h1 = 0
        note = "nef with positive restriction degree"
    elif f.square() > 0:
        h1 = 1
        note = "nef with restriction degree zero and positive square"
    else:
        h1 = intersect(f, exceptional_class(1, f.r))
        note = "multiple of the nine-point cubic class"
    h0 = chi(f) + h1
    if h0 < 0:
        raise RuntimeError(f"internal error: negative section count for {f}")
    return CohomologyAnswer(h0, h1, f, (note, _flex_base_locus_note(f, coeffs.a, mk)))


def h0_with_decomposition(
    f: ClassVector, context: CaseContext
) -> tuple[CohomologyAnswer, ZariskiDecomposition | NotEffective]:
    """One decomposition pass feeding both the section count and the trace."""
    config = context.config
    kind = config.curve_kind
    if kind in ("line", "conic"):
        dec = zariski_decompose(f, config, context.curves)
        if isinstance(dec, NotEffective):
            return _not_effective_answer(f, dec.reason), dec
        h0 = chi(dec.moving)
        return (
            CohomologyAnswer(h0, h0 - chi(f), dec.moving, ("nef moving part is regular",)),
            dec,
        )
    if kind == "cubic_uniform":
        dec = zariski_decompose(f, config)
        values = set(f.m)
        m = f.m[0] if f.r else 0
        if len(values) > 1:
            raise UnsupportedRuleError(
                f"only uniform multiplicities are supported on a smooth cubic, got {f.m}"
            )
        if m < 0:
            answer = h0_uniform(f.d, 0, f.r, config.lambda_spec)
        else:
            answer = h0_uniform(f.d - 3 * m, m, f.r, config.lambda_spec)
        if isinstance(dec, NotEffective):
            if answer.h0 != 0:
                raise RuntimeError(f"internal error: rule mismatch on {f}")
            return answer, dec
        if answer.moving_part != dec.moving:
            raise RuntimeError(
                f"internal error: moving parts disagree for {f}: "
                f"{answer.moving_part} vs {dec.moving}"
            )
        h1 = answer.h0 - chi(f)
        if h1 < 0:
            raise RuntimeError(f"internal error: negative h1 for {f}")
        return CohomologyAnswer(answer.h0, h1, dec.moving, answer.notes), dec
    if kind == "cubic_flex":
        dec = zariski_decompose(f, config)
        if isinstance(dec, NotEffective):
            return _not_effective_answer(f, dec.reason), dec
        base = h0_flex(dec.moving)
        h1 = base.h0 - chi(f)
        if h1 < 0:
            raise RuntimeError(f"internal error: negative h1 for {f}")
        return CohomologyAnswer(base.h0, h1, dec.moving, base.notes), dec
    raise UnsupportedRuleError(f"no section rules for curve kind {kind}")


def h0_any(f: ClassVector, context: CaseContext) -> CohomologyAnswer:
    return h0_with_decomposition(f, context)[0]


__all__ = [
    "CaseContext",
    "CohomologyAnswer",
    "chi",
    "h0_any",
    "h0_conic",
    "h0_flex",
    "h0_uniform",
    "h0_with_decomposition",
    "make_context",
    "regularity_bound",
]
