"""Moving and fixed parts of divisor classes.

The conic, line, and flex cases run a subtraction loop against the candidate
negative classes; the uniform-cubic case follows the closed-form rules, which
decide effectivity and the fixed anticanonical multiple directly.  Each loop
step records a certificate (the negative pairing that forced it), and an
ample-degree potential bounds the iteration so a bad candidate list fails
loudly instead of spinning.
"""

from __future__ import annotations

from dataclasses import dataclass

from .configuration import (
    PointConfig,
    UnsupportedRuleError,
    validate,
)
from .lattice import (
    ClassVector,
    canonical_class,
    e0_class,
    exceptional_class,
    intersect,
)
from .negcurves import (
    KIND_CUBIC,
    KIND_LINE,
    NegativeCurve,
    NegativeCurveList,
    enumerate_negative_curves,
    flex_candidate_fixed_classes,
)

RULE_NEGATIVE_PAIRING = "negative-pairing"
RULE_FORCED_CUBIC = "forced-anticanonical"
RULE_UNIFORM_CUBIC = "uniform-fixed-cubic"
RULE_UNIFORM_EXCEPTIONAL = "uniform-negative-multiplicity"


@dataclass(frozen=True)
class SubtractionStep:
    subtracted: ClassVector
    kind: str
    label: str
    pairing: int
    square: int
    rule: str


@dataclass(frozen=True)
class NotEffective:
    reason: str
    trace: tuple[SubtractionStep, ...]


@dataclass(frozen=True)
class ZariskiDecomposition:
    moving: ClassVector
    fixed: ClassVector
    trace: tuple[SubtractionStep, ...]


def _loop_candidates(config: PointConfig, curves: NegativeCurveList | None) -> tuple[NegativeCurve, ...]:
    if config.curve_kind == "cubic_flex":
        return tuple(flex_candidate_fixed_classes(config.r))
    if curves is None:
        curves = enumerate_negative_curves(config)
    entries = list(curves)
    if config.r == 1:
        # The line through a single point has square zero, so the enumeration
        # omits it, but a class can still be cut down by it (a fat point of
        # multiplicity above the degree is not effective).
        singleton = e0_class(1) - exceptional_class(1, 1)
        if all(entry.cls != singleton for entry in entries):
            entries.append(NegativeCurve(singleton, KIND_LINE, "L(1)"))
    return tuple(entries)


def _ample_witness(r: int) -> ClassVector:
    return ClassVector(2**r, tuple(2 ** (r - i) for i in range(1, r + 1)))


def is_nef(f: ClassVector, config: PointConfig, curves: NegativeCurveList | None = None) -> bool:
    """Whether ``f`` pairs nonnegatively with every curve class of the case."""
    validate(config)
    if f.r != config.r:
        raise ValueError(f"class of rank {f.r} does not match {config.r} points")
    kind = config.curve_kind
    if kind == "cubic_flex":
        coeffs = _flex_coefficients(f)
        return min(coeffs.a) >= 0 and coeffs.minus_k_pairing >= 0
    if kind == "cubic_uniform":
        m = _uniform_multiplicity(f)
        t = f.d - 3 * m
        return m >= 0 and t >= 0 and 3 * t + (9 - f.r) * m >= 0
    if f.d < 0:
        return False
    return all(intersect(f, entry.cls) >= 0 for entry in _loop_candidates(config, curves))


def _flex_coefficients(f: ClassVector):
    from .lattice import nef_basis_coefficients

    return nef_basis_coefficients(f)


def _uniform_multiplicity(f: ClassVector) -> int:
    if f.r < 9:
        raise UnsupportedRuleError(
            "rules for points on a smooth cubic need at least nine points"
        )
    values = set(f.m)
    if len(values) > 1:
        raise UnsupportedRuleError(
            f"only uniform multiplicities are supported on a smooth cubic, got {f.m}"
        )
    return f.m[0]


def zariski_decompose(
    f: ClassVector,
    config: PointConfig,
    curves: NegativeCurveList | None = None,
) -> ZariskiDecomposition | NotEffective:
    """Split ``f`` into a nef moving part plus the forced fixed classes.

    Returns ``NotEffective`` when the subtraction drives the degree negative.
    """
    validate(config)
    if f.r != config.r:
        raise ValueError(f"class of rank {f.r} does not match {config.r} points")
    if config.curve_kind == "cubic_uniform":
        return _decompose_uniform(f, config)

    candidates = _loop_candidates(config, curves)
    ample = _ample_witness(f.r)
    for entry in candidates:
        if intersect(ample, entry.cls) < 1:
            raise RuntimeError(
                f"internal error: ample witness meets candidate {entry.cls} "
                f"in degree {intersect(ample, entry.cls)}"
            )
    minus_k = -canonical_class(f.r)
    forced_cubic = config.curve_kind == "cubic_flex" and f.r > 9

    current = f
    steps: list[SubtractionStep] = []
    potential = intersect(current, ample)
    budget = 2 * abs(potential) + 1000 * (f.r + 2)
    while True:
        if current.d < 0:
            return NotEffective(
                "subtracting forced fixed classes drove the degree negative",
                tuple(steps),
            )
        step = None
        if forced_cubic and intersect(minus_k, current) < 0:
            step = SubtractionStep(
                minus_k,
                KIND_CUBIC,
                "D",
                intersect(minus_k, current),
                minus_k.square(),
                RULE_FORCED_CUBIC,
            )
        if step is None:
            for entry in candidates:
                pairing = intersect(current, entry.cls)
                if pairing < 0:
                    step = SubtractionStep(
                        entry.cls,
                        entry.kind,
                        entry.label,
                        pairing,
                        entry.cls.square(),
                        RULE_NEGATIVE_PAIRING,
                    )
                    break
        if step is None:
            break
        current = current - step.subtracted
        steps.append(step)
        next_potential = intersect(current, ample)
        if next_potential >= potential:
            raise RuntimeError(
                "internal error: subtraction failed to lower the ample degree"
            )
        potential = next_potential
        if len(steps) > budget:
            raise RuntimeError("internal error: subtraction budget exceeded")

    if not is_nef(current, config, curves):
        raise RuntimeError(f"internal error: loop stopped at non-nef {current}")
    return ZariskiDecomposition(current, f - current, tuple(steps))


def _uniform_cubic_steps(
    start: ClassVector, count: int, rule: str
) -> tuple[ClassVector, list[SubtractionStep]]:
    minus_k = -canonical_class(start.r)
    current = start
    steps = []
    for _ in range(count):
        steps.append(
            SubtractionStep(
                minus_k,
                KIND_CUBIC,
                "D",
                intersect(minus_k, current),
                minus_k.square(),
                rule,
            )
        )
        current = current - minus_k
    return current, steps


def _decompose_uniform(f: ClassVector, config: PointConfig) -> ZariskiDecomposition | NotEffective:
    r = config.r
    m = _uniform_multiplicity(f)
    steps: list[SubtractionStep] = []
    current = f
    if m < 0:
        # Negative multiplicities just stack copies of the exceptional
        # divisors on the fixed part.
        for _ in range(-m):
            for i in range(1, r + 1):
                e_i = exceptional_class(i, r)
                steps.append(
                    SubtractionStep(
                        e_i,
                        "exceptional_component",
                        f"E{i}",
                        intersect(current, e_i),
                        e_i.square(),
                        RULE_UNIFORM_EXCEPTIONAL,
                    )
                )
                current = current - e_i
        m = 0
    t = current.d - 3 * m
    if t < 0:
        return NotEffective(
            "degree below three times the uniform multiplicity", tuple(steps)
        )
    if m == 0:
        return ZariskiDecomposition(current, f - current, tuple(steps))

    spec = config.lambda_spec
    if spec is None:
        raise UnsupportedRuleError(
            "uniform cubic rules need the restriction kernel of the point set"
        )
    if r == 9:
        if t > 0:
            moving = current
        else:
            shift, _ = kernel_multiple_data(m, spec, 9)
            moving, cubic_steps = _uniform_cubic_steps(current, shift, RULE_UNIFORM_CUBIC)
            steps.extend(cubic_steps)
        return ZariskiDecomposition(moving, f - moving, tuple(steps))

    u = 3 * t + (9 - r) * m
    if u > 0:
        return ZariskiDecomposition(current, f - current, tuple(steps))
    if t == 0:
        moving, cubic_steps = _uniform_cubic_steps(current, m, RULE_UNIFORM_CUBIC)
        steps.extend(cubic_steps)
        if not moving.is_zero():
            raise RuntimeError("internal error: multiple of the cubic left a residue")
        return ZariskiDecomposition(moving, f - moving, tuple(steps))

    shift = (-u + (r - 9) - 1) // (r - 9)
    boundary = u + shift * (r - 9)
    if boundary > 0:
        count = shift
    elif spec.contains(current + shift * canonical_class(r)):
        count = shift
    else:
        count = shift + 1
    moving, cubic_steps = _uniform_cubic_steps(current, count, RULE_UNIFORM_CUBIC)
    steps.extend(cubic_steps)
    return ZariskiDecomposition(moving, f - moving, tuple(steps))


def kernel_multiple_data(m: int, spec, r: int) -> tuple[int, int]:
    """Least shift s with (m - s) copies of the cubic in the kernel, and the
    multiple count (m - s) divided by the least kernel order."""
    if m < 0:
        raise ValueError("kernel shift needs a nonnegative multiplicity")
    for s in range(m + 1):
        if spec.contains_multiple_of_k(m - s, r):
            break
    else:
        raise RuntimeError("internal error: zero is always in the kernel")
    c = m - s
    if c == 0:
        return s, 0
    for order in range(1, c + 1):
        if spec.contains_multiple_of_k(order, r):
            return s, c // order
    raise RuntimeError("internal error: kernel multiple without a least order")


__all__ = [
    "NotEffective",
    "SubtractionStep",
    "ZariskiDecomposition",
    "is_nef",
    "kernel_multiple_data",
    "zariski_decompose",
]
