"""Acceptance gate: one test per criterion, exact integer equality throughout.

Each test prints its own "acceptance criterion N: PASS" line (visible with
pytest -s; pytest -v shows the same verdict per test either way).  Random
families are seeded, so every run checks the same cases.
"""

import random

from fatpoints.cohomology import chi, h0_any, make_context, regularity_bound
from fatpoints.configuration import (
    ConicShape,
    FatPointScheme,
    LambdaSpec,
    Point,
    PointConfig,
    conjugate_partition,
)
from fatpoints.lattice import (
    ClassVector,
    canonical_class,
    e0_class,
    intersect,
    nef_basis_class,
    nef_basis_coefficients,
    zero_class,
)
from fatpoints.oracle import oracle_report
from fatpoints.resolution import (
    GradedFreeModule,
    line_hilbert_condensed,
    line_hilbert_direct,
    resolve,
    resolve_line_closed_form,
)
from fatpoints.syzygy import s_dim, s_of_nef
from fatpoints.zariski import NotEffective, is_nef, zariski_decompose

GOLDEN_CONIC = PointConfig(
    curve_kind="conic",
    points=(Point(1), Point(2), Point(3), Point(4), Point(5), Point(6, parent=5)),
    lines=((1, 2, 3, 4), (1, 5, 6)),
    conic_shape=ConicShape("two_lines", line_a=0, line_b=1),
)
GOLDEN_SCHEME = FatPointScheme(GOLDEN_CONIC, (3, 2, 2, 1, 3, 2))


def line_scheme(mults):
    r = len(mults)
    cfg = PointConfig(
        curve_kind="line",
        points=tuple(Point(i) for i in range(1, r + 1)),
        lines=(tuple(range(1, r + 1)),) if r else (),
    )
    return FatPointScheme(cfg, tuple(mults))


def smooth_conic_scheme(mults):
    r = len(mults)
    cfg = PointConfig(
        curve_kind="conic",
        points=tuple(Point(i) for i in range(1, r + 1)),
        conic_shape=ConicShape("smooth"),
    )
    return FatPointScheme(cfg, tuple(mults))


def uniform_config(r, order=None):
    spec = LambdaSpec("trivial") if order is None else LambdaSpec("order", order=order)
    return PointConfig(
        curve_kind="cubic_uniform",
        points=tuple(Point(i) for i in range(1, r + 1)),
        lambda_spec=spec,
    )


def flex_config(r):
    pts = [Point(1)] + [Point(i, parent=i - 1) for i in range(2, r + 1)]
    return PointConfig(curve_kind="cubic_flex", points=tuple(pts))


def descending_partitions(total_max, max_parts):
    """All weakly decreasing positive tuples with bounded sum and length."""
    out = []
    for total in range(1, total_max + 1):
        stack = [((), total, total)]
        while stack:
            prefix, remaining, cap = stack.pop()
            if remaining == 0:
                out.append(prefix)
                continue
            if len(prefix) == max_parts:
                continue
            for part in range(min(cap, remaining), 0, -1):
                stack.append((prefix + (part,), remaining - part, part))
    return out


def test_criterion_1_conic_golden():
    report = resolve(GOLDEN_SCHEME)
    for d in range(5):
        assert report.h[d] == 0
    assert list(report.h[5:9]) == [3, 8, 14, 23]

    ctx = make_context(GOLDEN_CONIC)
    moving = {
        5: ClassVector(2, (0, 1, 1, 0, 1, 0)),
        6: ClassVector(4, (1, 1, 1, 0, 2, 1)),
        7: ClassVector(5, (1, 1, 1, 0, 2, 1)),
    }
    for d, want in moving.items():
        dec = zariski_decompose(GOLDEN_SCHEME.to_class(d), GOLDEN_CONIC)
        assert dec.moving == want

    assert list(report.nu[5:9]) == [3, 1, 0, 2]
    assert report.f0 == GradedFreeModule({5: 3, 6: 1, 8: 2})
    assert report.f1 == GradedFreeModule({6: 2, 7: 1, 9: 2})
    print("acceptance criterion 1: PASS")


def test_criterion_2_line_closed_form():
    checked = 0
    for mults in descending_partitions(15, 6):
        scheme = line_scheme(mults)
        closed = resolve_line_closed_form(scheme)
        pipeline = resolve(scheme)
        assert closed.h == pipeline.h, mults
        assert closed.nu == pipeline.nu, mults
        assert closed.f0 == pipeline.f0, mults
        assert closed.f1 == pipeline.f1, mults
        for n in range(sum(mults) + 4):
            direct = line_hilbert_direct(mults, n)
            condensed = line_hilbert_condensed(mults, n)
            assert direct == condensed, (mults, n)
            assert direct == pipeline.f0.hilbert(n) - pipeline.f1.hilbert(n), (mults, n)
            if n < len(pipeline.h):
                assert direct == pipeline.h[n], (mults, n)
        checked += 1
    assert checked > 300
    print(f"acceptance criterion 2: PASS ({checked} partitions)")


def test_criterion_3_oracle_distinct_points():
    rng = random.Random(1003)

    def random_line():
        while True:
            r = rng.randint(1, 5)
            mults = tuple(sorted((rng.randint(1, 4) for _ in range(r)), reverse=True))
            if sum(mults) <= 10:
                return line_scheme(mults)

    def random_conic():
        while True:
            r = rng.randint(1, 6)
            mults = tuple(sorted((rng.randint(1, 3) for _ in range(r)), reverse=True))
            if sum(mults) <= 10:
                return smooth_conic_scheme(mults)

    for seed in range(20):
        scheme = random_line()
        rep = oracle_report(scheme, seed=seed, max_degree=regularity_bound(scheme) + 2)
        assert rep.all_agree, ("line", seed, scheme.multiplicities)

    for seed in range(20):
        scheme = random_conic()
        rep = oracle_report(scheme, seed=seed, max_degree=regularity_bound(scheme) + 2)
        assert rep.all_agree, ("conic", seed, scheme.multiplicities)

    for seed in range(20):
        rep = oracle_report(
            GOLDEN_SCHEME, seed=seed, max_degree=regularity_bound(GOLDEN_SCHEME) + 2
        )
        assert rep.all_agree, ("golden", seed)
    print("acceptance criterion 3: PASS (60 seeded runs)")


def test_criterion_4_uniform_cubic_golden():
    cfg = uniform_config(12)
    for m in (1, 2, 3, 4):
        report = resolve(FatPointScheme(cfg, (m,) * 12))
        want_f0 = {3 * m: 1}
        want_f1 = {}
        for i in range(1, m + 1):
            want_f0[3 * m + i + 1] = 3
            want_f1[3 * m + i + 2] = 3
        assert report.f0 == GradedFreeModule(want_f0), m
        assert report.f1 == GradedFreeModule(want_f1), m

    for m in (1, 2):
        scheme = FatPointScheme(cfg, (m,) * 12)
        agreed = False
        for seed in range(6):
            try:
                rep = oracle_report(scheme, seed=seed, max_degree=4 * m + 3)
            except (ValueError, RuntimeError):
                continue  # degenerate sample flagged; try the next seed
            if rep.all_agree:
                agreed = True
                break
        assert agreed, m
    print("acceptance criterion 4: PASS")


def test_criterion_5_uniform_s_values():
    ctx12 = make_context(uniform_config(12))
    ctx10 = make_context(uniform_config(10))
    # restriction degree above one: no syzygies
    assert s_of_nef(ClassVector(9, (2,) * 12), ctx12).value == 0
    # restriction degree exactly one
    assert s_of_nef(ClassVector(7, (2,) * 10), ctx10).value == 1
    # ten-point exception at restriction degree zero
    assert s_of_nef(ClassVector(10, (3,) * 10), ctx10).value == 1
    # r = 9 kernel-multiple values 3b(a-1)
    for a, b in ((1, 1), (2, 1), (2, 2), (3, 1)):
        ctx9 = make_context(uniform_config(9, order=a))
        h = ClassVector(3 * a * b, (a * b,) * 9)
        assert s_of_nef(h, ctx9).value == 3 * b * (a - 1), (a, b)

    # the r=9 pipeline consumes these without tripping its internal checks
    for a in (1, 2, 3):
        cfg9 = uniform_config(9, order=a)
        for m in (1, 2, 3, 4):
            report = resolve(FatPointScheme(cfg9, (m,) * 9))
            assert report.f0.rank() - report.f1.rank() == 1
            for n in range(report.cutoff + 1):
                assert report.f0.hilbert(n) - report.f1.hilbert(n) == report.h[n]
    print("acceptance criterion 5: PASS")


def test_criterion_6_flex_rules():
    ctx10 = make_context(flex_config(10))
    ctx12 = make_context(flex_config(12))
    h8 = nef_basis_class(8, 10)
    h9 = nef_basis_class(9, 10)
    h10 = nef_basis_class(10, 10)

    assert s_of_nef(h8, ctx10).value == 1
    for b9 in (0, 1, 2, 3):
        assert s_of_nef(b9 * h9, ctx10).value == 0

    # type I: zero in the interior of the nef cone, one on the two boundaries
    assert s_of_nef(nef_basis_class(1, 10), ctx10).value == 0
    assert s_of_nef(nef_basis_class(7, 10), ctx10).value == 0
    boundary_one = nef_basis_class(7, 10) + h10  # -K pairing 1
    assert intersect(-canonical_class(10), boundary_one) == 1
    assert s_of_nef(boundary_one, ctx10).value == 1
    boundary_zero = nef_basis_class(7, 10) + 2 * h10  # -K pairing 0, top index 10
    assert intersect(-canonical_class(10), boundary_zero) == 0
    assert s_of_nef(boundary_zero, ctx10).value == 1
    # at twelve points the same pairing-zero class tops out past index 10: zero
    deep = nef_basis_class(7, 12) + nef_basis_class(11, 12)
    assert intersect(-canonical_class(12), deep) == 0
    assert s_of_nef(deep, ctx12).value == 0

    # type II with leading coefficient above one
    assert s_of_nef(2 * h8, ctx10).value == 1
    assert s_of_nef(2 * h8 + h10, ctx10).value == 2

    # composite pencil classes through the scheme pipeline: b9 + 1
    scheme9 = FatPointScheme(flex_config(9), (2,) * 8 + (1,))
    ans = s_dim(scheme9, 6)
    assert ans.value == 2 and ans.rule == "flex-composite"
    scheme10 = FatPointScheme(flex_config(10), (3,) * 8 + (2, 1))
    ans = s_dim(scheme10, 9)
    assert ans.value == 2 and ans.rule == "flex-composite"

    # resolutions across the supported flex range stay internally consistent
    rng = random.Random(1006)
    ran = 0
    for _ in range(60):
        r = rng.randint(3, 12)
        mults = tuple(sorted((rng.randint(0, 3) for _ in range(r)), reverse=True))
        report = resolve(FatPointScheme(flex_config(r), mults))
        assert report.f0.rank() - report.f1.rank() == 1
        for n in range(report.cutoff + 1):
            assert report.f0.hilbert(n) - report.f1.hilbert(n) == report.h[n]
        ran += 1
    assert ran == 60
    print("acceptance criterion 6: PASS")


def test_criterion_7_invariant_suite():
    rng = random.Random(1007)

    # pairing bilinearity and symmetry
    for _ in range(500):
        r = rng.randint(1, 10)
        f = ClassVector(rng.randint(-9, 9), tuple(rng.randint(-9, 9) for _ in range(r)))
        g = ClassVector(rng.randint(-9, 9), tuple(rng.randint(-9, 9) for _ in range(r)))
        h = ClassVector(rng.randint(-9, 9), tuple(rng.randint(-9, 9) for _ in range(r)))
        c = rng.randint(-4, 4)
        assert intersect(f + g, h) == intersect(f, h) + intersect(g, h)
        assert intersect(c * f, g) == c * intersect(f, g)
        assert intersect(f, g) == intersect(g, f)

    # nef-basis coefficients round-trip
    for _ in range(500):
        r = rng.randint(3, 12)
        f = ClassVector(rng.randint(-9, 9), tuple(rng.randint(-9, 9) for _ in range(r)))
        coeffs = nef_basis_coefficients(f)
        rebuilt = zero_class(r)
        for i, a in enumerate(coeffs.a):
            rebuilt = rebuilt + a * nef_basis_class(i, r)
        assert rebuilt == f

    # conjugate partition is an involution
    for _ in range(500):
        parts = tuple(
            sorted((rng.randint(1, 9) for _ in range(rng.randint(1, 8))), reverse=True)
        )
        assert conjugate_partition(conjugate_partition(parts)) == parts

    # Zariski idempotence with per-step certificates
    ctx = make_context(GOLDEN_CONIC)
    effective = 0
    for _ in range(500):
        f = ClassVector(rng.randint(0, 12), tuple(rng.randint(0, 5) for _ in range(6)))
        dec = zariski_decompose(f, GOLDEN_CONIC, ctx.curves)
        if isinstance(dec, NotEffective):
            continue
        effective += 1
        for step in dec.trace:
            assert step.pairing < 0
            assert step.square < 0
        again = zariski_decompose(dec.moving, GOLDEN_CONIC, ctx.curves)
        assert again.moving == dec.moving and again.fixed.is_zero()
        assert is_nef(dec.moving, GOLDEN_CONIC, ctx.curves)
    assert effective > 100

    # reorder-invariance of resolve
    for _ in range(500):
        r = rng.randint(1, 4)
        mults = [rng.randint(1, 3) for _ in range(r)]
        scheme = smooth_conic_scheme(tuple(mults))
        rng.shuffle(mults)
        permuted = smooth_conic_scheme(tuple(mults))
        a = resolve(scheme)
        b = resolve(permuted)
        assert a.f0 == b.f0 and a.f1 == b.f1 and a.h == b.h

    # Riemann-Roch parity: the chi numerator is always even
    for _ in range(500):
        r = rng.randint(1, 12)
        f = ClassVector(rng.randint(-9, 9), tuple(rng.randint(-9, 9) for _ in range(r)))
        k = canonical_class(r)
        assert (f.square() - intersect(k, f)) % 2 == 0
        chi(f)

    # adding a line never loses sections
    for _ in range(500):
        f = ClassVector(rng.randint(0, 10), tuple(rng.randint(0, 5) for _ in range(6)))
        assert h0_any(f + e0_class(6), ctx).h0 >= h0_any(f, ctx).h0
    print("acceptance criterion 7: PASS")
