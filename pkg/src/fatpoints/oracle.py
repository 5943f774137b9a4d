"""Brute-force check over a finite field.

Points get explicit coordinates on a model of the declared curve, vanishing
conditions become exact linear algebra mod p, and the Hilbert and generator
counts come from ranks.  Nothing here shares code with the lattice pipeline,
which is the point: agreement is evidence, not tautology.

Conditions always come from coefficient extraction after an affine change of
frame, never from derivatives, so any prime beyond the working degree is safe.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .configuration import (
    FatPointScheme,
    PointConfig,
    UnsupportedRuleError,
    check_proximity,
    validate,
)
from .cohomology import h0_any, make_context, regularity_bound
from .syzygy import s_dim

DEFAULT_PRIME = 32003
_SAMPLING_ATTEMPTS = 500


@dataclass(frozen=True)
class PointCoordinates:
    """Affine data for one point: a location, or a parent plus a direction."""

    x: int | None
    y: int | None
    parent: int | None
    tangent: tuple[int, int] | None


@dataclass(frozen=True)
class CoordinateAssignment:
    prime: int
    points: tuple[PointCoordinates, ...]


def _proper(x: int, y: int) -> PointCoordinates:
    return PointCoordinates(x, y, None, None)


def _near(parent: int, dx: int, dy: int) -> PointCoordinates:
    return PointCoordinates(None, None, parent, (dx, dy))


def _distinct_param(rng: random.Random, p: int, used: set[int], exclude_zero: bool) -> int:
    while True:
        t = rng.randrange(p)
        if t in used or (exclude_zero and t == 0):
            continue
        used.add(t)
        return t


def _collinear(a: tuple[int, int], b: tuple[int, int], c: tuple[int, int], p: int) -> bool:
    det = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return det % p == 0


def _sample_on_line(config: PointConfig, rng: random.Random, p: int) -> list[PointCoordinates]:
    used: set[int] = set()
    out: list[PointCoordinates] = []
    for pt in config.points:
        if pt.parent is None:
            out.append(_proper(_distinct_param(rng, p, used, False), 0))
        else:
            out.append(_near(pt.parent, 1, 0))
    return out


def _sample_on_parabola(config: PointConfig, rng: random.Random, p: int) -> list[PointCoordinates]:
    used: set[int] = set()
    params: dict[int, int] = {}
    out: list[PointCoordinates] = []
    for pt in config.points:
        if pt.parent is None:
            t = _distinct_param(rng, p, used, False)
            params[pt.id] = t
            out.append(_proper(t, t * t % p))
        else:
            t = params[pt.parent]
            out.append(_near(pt.parent, 1, 2 * t % p))
    return out


def _sample_on_two_lines(config: PointConfig, rng: random.Random, p: int) -> list[PointCoordinates]:
    shape = config.conic_shape
    on_a = set(config.lines[shape.line_a])
    on_b = set(config.lines[shape.line_b])
    shared = on_a & on_b
    used_a: set[int] = set()
    used_b: set[int] = set()
    out: list[PointCoordinates] = []
    for pt in config.points:
        if pt.parent is not None:
            # component membership fixes the direction, even over the node
            if pt.id in on_a:
                out.append(_near(pt.parent, 1, 0))
            else:
                out.append(_near(pt.parent, 0, 1))
        elif pt.id in shared:
            out.append(_proper(0, 0))
        elif pt.id in on_a:
            out.append(_proper(_distinct_param(rng, p, used_a, True), 0))
        else:
            out.append(_proper(0, _distinct_param(rng, p, used_b, True)))
    return out


def _sqrt_modp(value: int, p: int) -> int | None:
    if value == 0:
        return 0
    if pow(value, (p - 1) // 2, p) != 1:
        return None
    return pow(value, (p + 1) // 4, p)


def _sample_on_cubic(config: PointConfig, rng: random.Random, p: int) -> list[PointCoordinates]:
    if p % 4 != 3:
        raise ValueError("cubic sampling wants a prime that is 3 mod 4")
    if any(pt.parent is not None for pt in config.points):
        raise UnsupportedRuleError(
            "near points on the cubic have no coordinate model here"
        )
    spec = config.lambda_spec
    if spec is not None and spec.kind != "trivial":
        raise UnsupportedRuleError(
            "a declared nontrivial restriction kernel cannot be realized by "
            "random coordinates"
        )
    for _ in range(_SAMPLING_ATTEMPTS):
        chosen: list[tuple[int, int]] = []
        ok = True
        guard = 0
        while len(chosen) < config.r:
            guard += 1
            if guard > 50 * (config.r + 5):
                ok = False
                break
            x = rng.randrange(p)
            y = _sqrt_modp((x * x * x + x + 3) % p, p)
            if y is None:
                continue
            if rng.randrange(2):
                y = (-y) % p
            if (x, y) in chosen:
                continue
            chosen.append((x, y))
        if not ok:
            continue
        degenerate = any(
            _collinear(chosen[i], chosen[j], chosen[k], p)
            for i in range(config.r)
            for j in range(i + 1, config.r)
            for k in range(j + 1, config.r)
        )
        if not degenerate:
            return [_proper(x, y) for x, y in chosen]
    raise RuntimeError("internal error: could not sample a nondegenerate cubic point set")


def sample_coordinates(config: PointConfig, seed: int = 0, p: int = DEFAULT_PRIME) -> CoordinateAssignment:
    """Deterministic coordinates for the configuration over F_p."""
    validate(config)
    if p < 5:
        raise ValueError("prime too small")
    for pt in config.points:
        if config.depth_of(pt.id) > 1:
            raise UnsupportedRuleError(
                f"p{pt.id} is stacked more than one level deep; no coordinate "
                "model is available"
            )
    if config.extra_proximities:
        raise UnsupportedRuleError("satellite proximities have no coordinate model")
    rng = random.Random(seed)
    kind = config.curve_kind
    if kind == "line":
        points = _sample_on_line(config, rng, p)
    elif kind == "conic":
        shape_kind = config.conic_shape.kind
        if shape_kind == "smooth":
            points = _sample_on_parabola(config, rng, p)
        elif shape_kind == "two_lines":
            points = _sample_on_two_lines(config, rng, p)
        else:
            points = _sample_on_line(config, rng, p)
    elif kind == "cubic_uniform":
        points = _sample_on_cubic(config, rng, p)
    else:
        raise UnsupportedRuleError(
            "a very general cubic cannot be realized over a finite field"
        )
    return CoordinateAssignment(p, tuple(points))


def _monomials(d: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(d, -1, -1) for b in range(d - a, -1, -1)]


def _mul_linear(poly: np.ndarray, c0: int, c1: int, c2: int, p: int) -> np.ndarray:
    size = poly.shape[0] + 1
    out = np.zeros((size, size), dtype=np.int64)
    out[: size - 1, : size - 1] += c0 * poly
    out[1:size, : size - 1] += c1 * poly
    out[: size - 1, 1:size] += c2 * poly
    return out % p


def _coefficient_table(
    x0: int, y0: int, frame: tuple[int, int, int, int], d: int, p: int
) -> list[list[np.ndarray]]:
    """All products (x0 + dx*s + ex*t)^a (y0 + dy*s + ey*t)^b up to degree d."""
    dx, dy, ex, ey = frame
    a_pows = [np.ones((1, 1), dtype=np.int64)]
    for _ in range(d):
        a_pows.append(_mul_linear(a_pows[-1], x0, dx, ex, p))
    table: list[list[np.ndarray]] = []
    for a in range(d + 1):
        row = [a_pows[a]]
        for _ in range(d - a):
            row.append(_mul_linear(row[-1], y0, dy, ey, p))
        table.append(row)
    return table


def _rows_for_point(
    location: tuple[int, int],
    frame: tuple[int, int, int, int],
    wanted: list[tuple[int, int]],
    d: int,
    p: int,
) -> np.ndarray:
    order = _monomials(d)
    table = _coefficient_table(location[0], location[1], frame, d, p)
    rows = np.zeros((len(wanted), len(order)), dtype=np.int64)
    for col, (a, b) in enumerate(order):
        arr = table[a][b]
        size = arr.shape[0]
        for rix, (sigma, tau) in enumerate(wanted):
            if sigma < size and tau < size:
                rows[rix, col] = arr[sigma, tau]
    return rows


def _conditions_matrix(coords: CoordinateAssignment, mults, d: int) -> np.ndarray:
    p = coords.prime
    ncols = (d + 2) * (d + 1) // 2
    if len(mults) != len(coords.points):
        raise ValueError("multiplicity count does not match the coordinate list")
    blocks = []
    for pid, (pt, m) in enumerate(zip(coords.points, mults), start=1):
        if m <= 0:
            continue
        if pt.parent is None:
            wanted = [(s, t) for s in range(m) for t in range(m - s)]
            blocks.append(_rows_for_point((pt.x, pt.y), (1, 0, 0, 1), wanted, d, p))
        else:
            parent = coords.points[pt.parent - 1]
            if parent.parent is not None:
                raise UnsupportedRuleError("chains deeper than one level are unsupported")
            base = mults[pt.parent - 1]
            if base <= 0:
                raise ValueError(
                    f"near point p{pid} has a parent of nonpositive multiplicity"
                )
            dx, dy = pt.tangent
            frame = (dx % p, dy % p, (-dy) % p, dx % p)
            wanted = [
                (k - j, j) for k in range(base, base + m) for j in range(base + m - k)
            ]
            blocks.append(_rows_for_point((parent.x, parent.y), frame, wanted, d, p))
    if not blocks:
        return np.zeros((0, ncols), dtype=np.int64)
    return np.vstack(blocks)


def _row_reduce(mat: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    m = mat % p
    nrows, ncols = m.shape
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        support = np.nonzero(m[rank:, col])[0]
        if support.size == 0:
            continue
        lead = rank + int(support[0])
        if lead != rank:
            m[[rank, lead]] = m[[lead, rank]]
        inv = pow(int(m[rank, col]), -1, p)
        m[rank] = m[rank] * inv % p
        for rix in np.nonzero(m[:, col])[0]:
            if rix != rank:
                m[rix] = (m[rix] - m[rix, col] * m[rank]) % p
        pivots.append(col)
        rank += 1
    return m, pivots


def _rank_modp(mat: np.ndarray, p: int) -> int:
    if mat.shape[0] == 0:
        return 0
    return len(_row_reduce(mat, p)[1])


def _nullspace_modp(mat: np.ndarray, p: int) -> np.ndarray:
    ncols = mat.shape[1]
    if mat.shape[0] == 0:
        return np.eye(ncols, dtype=np.int64)
    rref, pivots = _row_reduce(mat, p)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = np.zeros((ncols, len(free)), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[fc, k] = 1
        for rix, pc in enumerate(pivots):
            basis[pc, k] = (-int(rref[rix, fc])) % p
    return basis


def hilbert_oracle(coords: CoordinateAssignment, mults, d: int) -> int:
    """Dimension of the degree-d forms satisfying all point conditions."""
    if d < 0:
        return 0
    p = coords.prime
    if p <= d:
        raise ValueError(f"prime {p} does not exceed the degree {d}")
    mat = _conditions_matrix(coords, mults, d)
    ncols = (d + 2) * (d + 1) // 2
    return ncols - _rank_modp(mat, p)


def nu_oracle(coords: CoordinateAssignment, mults, d: int) -> int:
    """Minimal generators of the conditions ideal in degree d+1."""
    if d < -1:
        return 0
    if d == -1:
        return hilbert_oracle(coords, mults, 0)
    p = coords.prime
    if p <= d + 1:
        raise ValueError(f"prime {p} does not exceed the degree {d + 1}")
    kernel = _nullspace_modp(_conditions_matrix(coords, mults, d), p)
    h_up = hilbert_oracle(coords, mults, d + 1)
    if kernel.shape[1] == 0:
        return h_up
    order_d = _monomials(d)
    index_up = {mon: i for i, mon in enumerate(_monomials(d + 1))}
    ncols_up = (d + 3) * (d + 2) // 2
    span = np.zeros((3 * kernel.shape[1], ncols_up), dtype=np.int64)
    for j in range(kernel.shape[1]):
        for row_d, (a, b) in enumerate(order_d):
            c = int(kernel[row_d, j])
            if not c:
                continue
            span[3 * j, index_up[(a + 1, b)]] = c
            span[3 * j + 1, index_up[(a, b + 1)]] = c
            span[3 * j + 2, index_up[(a, b)]] = c
    return h_up - _rank_modp(span, p)


@dataclass(frozen=True)
class OracleReport:
    prime: int
    seed: int
    degrees: tuple[int, ...]
    h_values: tuple[int, ...]
    nu_values: tuple[int, ...]
    pipeline_h: tuple[int, ...]
    pipeline_nu: tuple[int, ...]

    @property
    def h_agreement(self) -> tuple[bool, ...]:
        return tuple(a == b for a, b in zip(self.h_values, self.pipeline_h))

    @property
    def nu_agreement(self) -> tuple[bool, ...]:
        return tuple(a == b for a, b in zip(self.nu_values, self.pipeline_nu))

    @property
    def all_agree(self) -> bool:
        return all(self.h_agreement) and all(self.nu_agreement)


def oracle_report(
    scheme: FatPointScheme,
    seed: int = 0,
    p: int = DEFAULT_PRIME,
    max_degree: int | None = None,
) -> OracleReport:
    """Compare oracle and pipeline values across the interesting degrees."""
    check_proximity(scheme)
    context = make_context(scheme.config)
    top = max_degree if max_degree is not None else regularity_bound(scheme) + 1
    top = max(top, 0)
    if p <= 2 * top + 1:
        raise ValueError(f"prime {p} too small for degrees up to {top}")
    coords = sample_coordinates(scheme.config, seed, p)
    mults = scheme.multiplicities
    degrees = tuple(range(top + 1))
    h_values = tuple(hilbert_oracle(coords, mults, d) for d in degrees)
    nu_values = tuple(nu_oracle(coords, mults, d - 1) for d in degrees)
    pipeline_h = tuple(h0_any(scheme.to_class(d), context).h0 for d in degrees)
    pipeline_nu = tuple(s_dim(scheme, d - 1, context).value for d in degrees)
    return OracleReport(p, seed, degrees, h_values, nu_values, pipeline_h, pipeline_nu)


__all__ = [
    "CoordinateAssignment",
    "DEFAULT_PRIME",
    "OracleReport",
    "PointCoordinates",
    "hilbert_oracle",
    "nu_oracle",
    "oracle_report",
    "sample_coordinates",
]
