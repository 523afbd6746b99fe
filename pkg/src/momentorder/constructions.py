"""Executable counterexample constructions on moment sequences.

Every construction here is a finite-stage, fully explicit version of an
existence argument: signed kernels with prescribed vanishing moments, pairs
of distinct probability densities agreeing on infinitely many moments (at
truncation: on a recorded exponent list), pairs whose moment sequences
alternate, a unimodal variant, and discrete/absolutely-continuous pairs with
alternating CDFs. All free choices (grids, searched exponents, coefficient
shrink factors) are deterministic and recorded in the returned objects so a
run can be replayed and re-verified bit for bit.

Smooth (true C-infinity) bumps can be demoed through quadrature, but every
exactness claim below is made with polynomial bumps (x-l)^m (r-x)^m, which
are C^(m-1) at the seams and make all integrals rational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .config import DEFAULT, Settings
from .measures import (
    DiscreteRule,
    PiecewisePolyDensity,
    _PiecewiseScanner,
    alternating_cdf_f_measure,
    alternating_cdf_g_measure,
    cdf,
    common_scale,
    moment,
    piecewise_combine,
    piecewise_equal,
    rat,
    rat_str,
    total_mass,
)
from .polynomials import (
    Poly,
    derivative,
    shifted_abs_bound_on,
    evaluate,
    mul,
    nonneg_on,
    poly,
    power_moment,
    scale,
    sign_run_pattern,
    sub,
)
from .tailorder import EventualPositivity, certify_eventual_positive


class ConstructionFailure(RuntimeError):
    """A deterministic search or a post-construction check failed."""


@dataclass(frozen=True)
class BumpSpec:
    """How elementary bumps are realized.

    ``polynomial`` bumps (x-l)^m (r-x)^m of degree m >= 2 vanish to order
    m-1 at both ends and keep every integral rational; this is the mode all
    exact constructions use. ``smooth-quadrature`` switches to true smooth
    bumps exp(-1/((x-l)(r-x))) integrated numerically and is demo-only.
    """

    mode: str = "polynomial"
    degree: int = 4
    quad_tol: float = 1e-12

    def __post_init__(self):
        if self.mode not in ("polynomial", "smooth-quadrature"):
            raise ValueError(f"unknown bump mode: {self.mode!r}")
        if self.degree < 2:
            raise ValueError("bump degree must be at least 2")

    def require_polynomial(self, op: str) -> None:
        if self.mode != "polynomial":
            raise ValueError(
                f"{op} makes exact claims and needs polynomial bumps; "
                "smooth-quadrature mode is demo-only"
            )


DEFAULT_BUMP = BumpSpec()


@dataclass(frozen=True)
class Bump:
    """Polynomial bump (x-lo)^m (hi-x)^m supported on [lo, hi]."""

    lo: Fraction
    hi: Fraction
    m: int

    @cached_property
    def shape(self) -> Poly:
        p = poly([Fraction(1)])
        rise = poly([-self.lo, Fraction(1)])
        fall = poly([self.hi, Fraction(-1)])
        for _ in range(self.m):
            p = mul(p, rise)
        for _ in range(self.m):
            p = mul(p, fall)
        return p

    @property
    def sup(self) -> Fraction:
        # peak at the midpoint by symmetry
        return ((self.hi - self.lo) / 2) ** (2 * self.m)

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def moment(self, k: int) -> Fraction:
        return power_moment(self.shape, self.lo, self.hi, k)

    @property
    def mass(self) -> Fraction:
        # integral of u^m (w-u)^m over [0, w]: w^(2m+1) * m!^2/(2m+1)!
        w = self.hi - self.lo
        m = self.m
        beta = Fraction(
            math.factorial(m) * math.factorial(m), math.factorial(2 * m + 1)
        )
        return w ** (2 * m + 1) * beta


def normalized_bump_density(a, b, m: int) -> PiecewisePolyDensity:
    """Unit-mass probability density from a single bump on [a, b]."""
    bump = Bump(Fraction(a), Fraction(b), m)
    return PiecewisePolyDensity(
        (bump.lo, bump.hi), (scale(bump.shape, 1 / bump.mass),)
    )


def peak_normalized_bump_density(a, b, m: int) -> PiecewisePolyDensity:
    """Bump rescaled to peak value 1 (values in [0, 1])."""
    bump = Bump(Fraction(a), Fraction(b), m)
    return PiecewisePolyDensity(
        (bump.lo, bump.hi), (scale(bump.shape, 1 / bump.sup),)
    )


def _bumps_to_density(
    coeff_bumps: list[tuple[Fraction, Bump]], signed: bool = True
) -> PiecewisePolyDensity:
    """Assemble disjoint scaled bumps into one piecewise density."""
    coeff_bumps = sorted(coeff_bumps, key=lambda cb: cb[1].lo)
    pts: list[Fraction] = []
    pieces: list[Poly] = []
    for c, bump in coeff_bumps:
        if pts and bump.lo < pts[-1]:
            raise ValueError("bumps must have disjoint interiors")
        if pts and bump.lo > pts[-1]:
            pts.append(bump.lo)
            pieces.append(())
        elif not pts:
            pts.append(bump.lo)
        pts.append(bump.hi)
        pieces.append(scale(bump.shape, c))
    return PiecewisePolyDensity(tuple(pts), tuple(pieces), signed=signed)


# ---------------------------------------------------------------------------
# nullspace of the bump-moment matrix
# ---------------------------------------------------------------------------


def _nullspace_last_free(M: list[list[Fraction]]) -> list[Fraction]:
    """Kernel vector of an n x (n+1) exact matrix with last variable = 1.

    Plain fraction Gaussian elimination on the leading square block; raises
    ConstructionFailure when that block is singular (degenerate geometry).
    """
    n = len(M)
    A = [row[:n] for row in M]
    rhs = [-row[n] for row in M]
    perm = list(range(n))
    for col in range(n):
        pivot = next((r for r in range(col, n) if A[r][col] != 0), None)
        if pivot is None:
            raise ConstructionFailure("moment matrix block is singular")
        A[col], A[pivot] = A[pivot], A[col]
        rhs[col], rhs[pivot] = rhs[pivot], rhs[col]
        inv = 1 / A[col][col]
        A[col] = [v * inv for v in A[col]]
        rhs[col] *= inv
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [v - f * w for v, w in zip(A[r], A[col])]
                rhs[r] -= f * rhs[col]
    return [rhs[i] for i in range(n)] + [Fraction(1)]


def _binomial_kernel_vector(n: int) -> list[Fraction]:
    """Closed-form kernel for identical translated bumps, contiguous orders.

    With bumps that are exact translates on an equispaced grid, the moment
    of bump i at order k is p_k(l_i) for polynomials p_k of degree exactly k,
    so annihilating orders 0..n means annihilating all polynomials of degree
    <= n at n+2 equispaced nodes: the alternating binomial coefficients.
    Normalized so the last coefficient is +1, matching elimination with the
    last variable free.
    """
    n1 = n + 1
    return [
        Fraction((-1) ** (n1 - i) * math.comb(n1, i)) for i in range(n1 + 1)
    ]


@dataclass(frozen=True)
class VanishingKernel:
    """Signed density whose prescribed moment orders vanish exactly.

    Values lie in [-1, 1]; the final bump carries a positive coefficient, so
    the density is nonnegative from ``positivity_point`` rightward and the
    eventual-positivity certifier applies.
    """

    density: PiecewisePolyDensity
    vanished_orders: tuple[int, ...]
    positivity_point: Fraction
    coefficients: tuple[Fraction, ...]
    bump_supports: tuple[tuple[Fraction, Fraction], ...]
    bump_degree: int
    grid_shifted: bool = False

    def to_json(self) -> dict:
        return {
            "construction": "vanishing-moment-kernel",
            "vanished_orders": list(self.vanished_orders),
            "positivity_point": rat_str(self.positivity_point),
            "coefficients": [rat_str(c) for c in self.coefficients],
            "bump_supports": [
                [rat_str(lo), rat_str(hi)] for lo, hi in self.bump_supports
            ],
            "bump_degree": self.bump_degree,
            "grid_shifted": self.grid_shifted,
        }


def _build_kernel_once(
    a: Fraction, b: Fraction, orders: tuple[int, ...], m: int
) -> tuple[list[Fraction], list[Bump]]:
    count = len(orders) + 1
    w = (b - a) / count
    bumps = [Bump(a + i * w, a + (i + 1) * w, m) for i in range(count)]
    if orders == tuple(range(len(orders))):
        coeffs = _binomial_kernel_vector(len(orders) - 1)
    else:
        M = [[bump.moment(k) for bump in bumps] for k in orders]
        coeffs = _nullspace_last_free(M)
    return coeffs, bumps


def vanishing_moment_kernel(
    a,
    b,
    n: int | None = None,
    spec: BumpSpec = DEFAULT_BUMP,
    orders: tuple[int, ...] | None = None,
    settings: Settings = DEFAULT,
) -> VanishingKernel:
    """Signed kernel on [a, b] whose moments vanish at the given orders.

    By default the orders are 0..n. Places len(orders)+1 identical bumps on
    an equispaced subdivision of [a, b], solves the exact linear system for
    a kernel vector (last coefficient set to 1), rescales to sup norm 1 and
    flips signs if needed so the rightmost coefficient is positive. Vanishing
    is re-verified through the independent moment evaluator; if the kernel
    accidentally also kills order max(orders)+1, the grid is shifted by a
    seventh of a cell and rebuilt once.
    """
    spec.require_polynomial("vanishing_moment_kernel")
    a, b = rat(a), rat(b)
    if not 0 < a < b:
        raise ValueError("need 0 < a < b")
    if orders is None:
        if n is None:
            raise ValueError("give n or an explicit order tuple")
        orders = tuple(range(n + 1))
    orders = tuple(sorted(set(int(k) for k in orders)))
    if not orders or any(k < 0 for k in orders):
        raise ValueError("orders must be a nonempty set of nonneg integers")

    shifted = False
    lo = a
    for attempt in range(2):
        coeffs, bumps = _build_kernel_once(lo, b, orders, spec.degree)
        # sup-normalize: disjoint bumps share one shape sup, so the overall
        # sup is max |c_i| * bump_sup
        peak = max(abs(c) for c in coeffs) * bumps[0].sup
        coeffs = [c / peak for c in coeffs]
        if coeffs[-1] < 0:
            coeffs = [-c for c in coeffs]
        density = _bumps_to_density(list(zip(coeffs, bumps)), signed=True)
        bad = any(
            moment(density, k, settings).value != 0 for k in orders
        )
        degenerate = moment(density, max(orders) + 1, settings).value == 0
        if not bad and not degenerate:
            return VanishingKernel(
                density,
                orders,
                bumps[-1].midpoint,
                tuple(coeffs),
                tuple((bp.lo, bp.hi) for bp in bumps),
                spec.degree,
                grid_shifted=shifted,
            )
        if bad:
            raise ConstructionFailure("kernel failed exact vanishing check")
        # degenerate extra vanishing order: deterministic retry on a grid
        # shifted by 1/7 of a cell
        shifted = True
        lo = a + (b - a) / (len(orders) + 1) / 7
    raise ConstructionFailure(
        "kernel still degenerate after deterministic grid shift"
    )


@dataclass(frozen=True)
class SmoothKernelDemo:
    """Quadrature-mode kernel: float coefficients and residual moments."""

    coefficients: tuple[float, ...]
    bump_supports: tuple[tuple[float, float], ...]
    orders: tuple[int, ...]
    residuals: tuple[float, ...]
    tolerance: float

    def to_json(self) -> dict:
        return {
            "construction": "vanishing-moment-kernel-smooth-demo",
            "coefficients": list(self.coefficients),
            "bump_supports": [list(s) for s in self.bump_supports],
            "orders": list(self.orders),
            "residuals": list(self.residuals),
            "tolerance": self.tolerance,
        }


def _adaptive_simpson(f, lo: float, hi: float, tol: float) -> float:
    def simpson(x0, x2):
        x1 = 0.5 * (x0 + x2)
        return (x2 - x0) / 6.0 * (f(x0) + 4.0 * f(x1) + f(x2)), x1

    def rec(x0, x2, whole, eps, depth):
        s_l, x1l = simpson(x0, 0.5 * (x0 + x2))
        s_r, _ = simpson(0.5 * (x0 + x2), x2)
        if depth > 40 or abs(s_l + s_r - whole) < 15.0 * eps:
            return s_l + s_r + (s_l + s_r - whole) / 15.0
        mid = 0.5 * (x0 + x2)
        return rec(x0, mid, s_l, eps / 2, depth + 1) + rec(
            mid, x2, s_r, eps / 2, depth + 1
        )

    whole, _ = simpson(lo, hi)
    return rec(lo, hi, whole, tol, 0)


def smooth_kernel_demo(a, b, n: int, spec: BumpSpec) -> SmoothKernelDemo:
    """Quadrature rendition of the kernel with true smooth bumps.

    exp(-1/((x-l)(r-x))) replaces the polynomial bump; moments come from
    adaptive Simpson quadrature and vanishing holds only to tolerance.
    """
    a, b = float(Fraction(rat(a))), float(Fraction(rat(b)))
    count = n + 2
    w = (b - a) / count
    supports = [(a + i * w, a + (i + 1) * w) for i in range(count)]

    def smooth_bump(lo, hi):
        def f(x):
            t = (x - lo) * (hi - x)
            return math.exp(-1.0 / t) if t > 0 else 0.0

        return f

    def bump_moment(lo, hi, k):
        g = smooth_bump(lo, hi)
        return _adaptive_simpson(lambda x: g(x) * x**k, lo, hi, spec.quad_tol)

    M = [[bump_moment(lo, hi, k) for lo, hi in supports] for k in range(n + 1)]
    # float elimination, last variable free
    size = n + 1
    A = [row[:size] for row in M]
    rhs = [-row[size] for row in M]
    for col in range(size):
        pivot = max(range(col, size), key=lambda r: abs(A[r][col]))
        A[col], A[pivot] = A[pivot], A[col]
        rhs[col], rhs[pivot] = rhs[pivot], rhs[col]
        inv = 1.0 / A[col][col]
        A[col] = [v * inv for v in A[col]]
        rhs[col] *= inv
        for r in range(size):
            if r != col:
                f = A[r][col]
                A[r] = [v - f * u for v, u in zip(A[r], A[col])]
                rhs[r] -= f * rhs[col]
    coeffs = rhs + [1.0]
    peak = max(abs(c) for c in coeffs) * math.exp(-4.0 / (w * w))
    coeffs = [c / peak for c in coeffs]
    residuals = [
        sum(c * bump_moment(lo, hi, k) for c, (lo, hi) in zip(coeffs, supports))
        for k in range(n + 1)
    ]
    return SmoothKernelDemo(
        tuple(coeffs),
        tuple(supports),
        tuple(range(n + 1)),
        tuple(residuals),
        spec.quad_tol,
    )


# ---------------------------------------------------------------------------
# staged kernel: vanishing moments at an unbounded exponent list
# ---------------------------------------------------------------------------


def geometric_grid(
    a: Fraction, b: Fraction, count: int, ratio: Fraction
) -> list[Fraction]:
    """Accumulation toward b: t_i = b - (b-a) * ratio^i (t_0 = a)."""
    ratio = Fraction(ratio)
    if not 0 < ratio < 1:
        raise ValueError("grid ratio must lie in (0, 1)")
    return [b - (b - a) * ratio**i for i in range(count)]


def default_grid(a: Fraction, b: Fraction, count: int) -> list[Fraction]:
    """Geometric accumulation toward b: t_i = b - (b-a) * 2^-i."""
    return geometric_grid(a, b, count, Fraction(1, 2))


@dataclass(frozen=True)
class StageRecord:
    support: tuple[Fraction, Fraction]
    orders: tuple[int, ...]
    chosen_exponent: int
    ratio: Fraction  # the accepted a_ell, |ratio| < 1
    scanned: int

    def to_json(self) -> dict:
        return {
            "support": [rat_str(self.support[0]), rat_str(self.support[1])],
            "orders": list(self.orders),
            "chosen_exponent": self.chosen_exponent,
            "ratio": rat_str(self.ratio),
            "scanned": self.scanned,
        }


@dataclass(frozen=True)
class StagedKernel:
    """Signed density with vanishing moments at 0, 1 and k_1 < ... < k_N.

    Built stage by stage: each stage places a fresh kernel on the next grid
    interval and scales it by -a_ell0 where a_ell0 is the exact ratio of the
    running sum's ell-th moment to the fresh kernel's, at the first exponent
    past the previous one with |a_ell0| < 1.
    """

    density: PiecewisePolyDensity
    exponents: tuple[int, ...]  # k_1 < ... < k_N
    grid: tuple[Fraction, ...]
    stages: tuple[StageRecord, ...]

    @property
    def all_vanishing(self) -> tuple[int, ...]:
        return tuple(sorted({0, 1, *self.exponents}))

    def to_json(self) -> dict:
        return {
            "construction": "staged-vanishing-kernel",
            "exponents": list(self.exponents),
            "grid": [rat_str(t) for t in self.grid],
            "stages": [s.to_json() for s in self.stages],
        }


def staged_vanishing_kernel(
    a,
    b,
    stages: int,
    grid: list | None = None,
    spec: BumpSpec = DEFAULT_BUMP,
    settings: Settings = DEFAULT,
) -> StagedKernel:
    """Iterate the kernel construction toward infinitely many vanishing
    moments, truncated at the given stage count.

    Stage n+1 works on (t_{n+1}, t_{n+2}). Its fresh kernel protects the
    exponents accumulated so far ({0, 1} and every chosen k_j): protecting
    the full contiguous range instead would need k_n + 2 bumps per stage,
    and with k_n growing geometrically that is out of reach, while the
    sparse set is exactly what the inductive argument uses. The exponent
    search scans ell = k_n + 1, k_n + 2, ... for |a_ell| < 1. The seed stage
    has a zero running sum, so a_ell = 0 identically and ell_0 = k_0 + 1;
    the fresh kernel is then used unscaled with ell_0 added to its own
    vanishing set (a literal -a_ell0 scaling would zero the construction).
    """
    spec.require_polynomial("staged_vanishing_kernel")
    a, b = rat(a), rat(b)
    if not 0 < a < b:
        raise ValueError("need 0 < a < b")
    if stages < 1:
        raise ValueError("need at least one stage")
    if grid is None:
        t = default_grid(a, b, stages + 2)
    else:
        t = [rat(x) for x in grid]
        if len(t) < stages + 2 or any(x >= y for x, y in zip(t, t[1:])):
            raise ValueError(
                "grid must be strictly increasing, one point per stage plus two"
            )

    exponents: list[int] = []
    k_prev = 1
    h: PiecewisePolyDensity | None = None
    records: list[StageRecord] = []

    for n in range(stages):
        lo, hi = t[n + 1], t[n + 2]
        protect = tuple(sorted({0, 1, *exponents}))
        if h is None:
            ell0 = k_prev + 1
            kern = vanishing_moment_kernel(
                lo, hi, spec=spec, orders=protect + (ell0,), settings=settings
            )
            g = kern.density
            ratio = Fraction(0)
            scanned = 0
        else:
            kern = vanishing_moment_kernel(
                lo, hi, spec=spec, orders=protect, settings=settings
            )
            ell0, ratio = _scan_ratio(
                h, kern.density, k_prev, settings, records
            )
            scanned = ell0 - k_prev
            g = (
                None
                if ratio == 0
                else piecewise_combine([(-ratio, kern.density)], signed=True)
            )
        if g is not None:
            h = g if h is None else piecewise_combine(
                [(Fraction(1), h), (Fraction(1), g)], signed=True
            )
        exponents.append(ell0)
        records.append(StageRecord((lo, hi), protect, ell0, ratio, scanned))
        k_prev = ell0

    assert h is not None
    result = StagedKernel(h, tuple(exponents), tuple(t), tuple(records))
    _verify_staged(result, settings)
    return result


def _scan_ratio(
    h: PiecewisePolyDensity,
    fresh: PiecewisePolyDensity,
    k_prev: int,
    settings: Settings,
    records: list[StageRecord],
) -> tuple[int, Fraction]:
    """First ell > k_prev with |moment(h, ell) / moment(fresh, ell)| < 1.

    Runs on incremental common-scale scanners, so one step costs a handful
    of bigint-by-smallint multiplies instead of fresh power evaluations.
    """
    D = common_scale([h, fresh])
    sh = _PiecewiseScanner(h, D, k_prev + 1)
    sg = _PiecewiseScanner(fresh, D, k_prev + 1)
    ell = k_prev
    while True:
        ell += 1
        if ell > settings.ell_search_cap:
            raise ConstructionFailure(
                f"no |a_ell| < 1 up to cap {settings.ell_search_cap}; "
                f"stages so far: {[r.to_json() for r in records]}"
            )
        num_n, num_c = sh.current_pair()
        if num_n == 0:
            return ell, Fraction(0)
        den_n, den_c = sg.current_pair()
        # |a_ell| < 1 via integer cross multiplication (scales positive)
        if den_n != 0 and abs(num_n) * den_c < abs(den_n) * num_c:
            return ell, Fraction(num_n * den_c, num_c * den_n)
        sh.step()
        sg.step()


def _verify_staged(sk: StagedKernel, settings: Settings) -> None:
    for k in sk.all_vanishing:
        if moment(sk.density, k, settings).value != 0:
            raise ConstructionFailure(f"staged kernel: moment {k} not zero")
    for k in sk.exponents:
        if moment(sk.density, k + 1, settings).value == 0:
            raise ConstructionFailure(
                f"staged kernel: moment {k + 1} unexpectedly zero (degenerate)"
            )
    for rec in sk.stages:
        if not abs(rec.ratio) < 1:
            raise ConstructionFailure("staged kernel: |a_ell0| >= 1")


# ---------------------------------------------------------------------------
# matched-moment probability pair: f1 = g - h, f2 = g + h
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MatchedMomentPair:
    """Distinct probability densities agreeing exactly on the recorded
    moment orders (the staged kernel's vanishing set)."""

    f1: PiecewisePolyDensity
    f2: PiecewisePolyDensity
    agreement_indices: tuple[int, ...]
    kernel: StagedKernel
    epsilon: Fraction
    window: tuple[Fraction, Fraction]

    def to_json(self) -> dict:
        return {
            "construction": "matched-moment-pair",
            "agreement_indices": list(self.agreement_indices),
            "epsilon": rat_str(self.epsilon),
            "window": [rat_str(self.window[0]), rat_str(self.window[1])],
            "kernel": self.kernel.to_json(),
        }


def matched_moment_pair(
    a,
    b,
    stages: int,
    spec: BumpSpec = DEFAULT_BUMP,
    settings: Settings = DEFAULT,
) -> MatchedMomentPair:
    """Two distinct unit-mass densities with exactly agreeing moments at
    0, 1 and every staged exponent.

    A unit-mass base bump g spans [a, b]; a staged kernel h lives on the
    middle half [c, d], scaled so |h| <= eps where eps is the exact minimum
    of g on [c, d] (attained at the window endpoints by symmetry and
    verified by root isolation). Then f1 = g - h and f2 = g + h are
    nonnegative, have mass one, and share every moment the kernel kills.
    """
    spec.require_polynomial("matched_moment_pair")
    a, b = rat(a), rat(b)
    if stages < 1:
        raise ValueError("need at least one stage")
    base = normalized_bump_density(a, b, spec.degree)
    c = a + (b - a) / 4
    d = b - (b - a) / 4
    eps = min(base.evaluate(c), base.evaluate(d))
    ok, witness = nonneg_on(
        sub(base.pieces[0], poly([eps])), c, d
    )
    if not ok:
        raise ConstructionFailure(
            f"base bump drops below eps inside the window at {witness}"
        )
    kernel = staged_vanishing_kernel(c, d, stages, spec=spec, settings=settings)
    f1 = piecewise_combine(
        [(Fraction(1), base), (-eps, kernel.density)], signed=False
    )
    f2 = piecewise_combine(
        [(Fraction(1), base), (eps, kernel.density)], signed=False
    )
    agreement = kernel.all_vanishing
    for k in agreement:
        if moment(f1, k, settings).value != moment(f2, k, settings).value:
            raise ConstructionFailure(f"moments differ at agreed order {k}")
    if total_mass(f1).value != 1 or total_mass(f2).value != 1:
        raise ConstructionFailure("matched pair masses are not exactly one")
    if piecewise_equal(f1, f2):
        raise ConstructionFailure("matched pair collapsed to equal densities")
    return MatchedMomentPair(f1, f2, agreement, kernel, eps, (c, d))


# ---------------------------------------------------------------------------
# alternating pair: moment sequences that cross infinitely often
# ---------------------------------------------------------------------------


def _peak_bumps(grid: list[Fraction], m: int) -> list[Bump]:
    return [Bump(lo, hi, m) for lo, hi in zip(grid, grid[1:])]


@dataclass(frozen=True)
class AlternatingPair:
    """Probability densities f, g with s_l(f) - s_l(g) of sign (-1)^n at
    the recorded indices l_0 < ... < l_N (exact, re-verified).

    With ``padded`` the sign is constant on each whole run [l_n, 2*l_n],
    which makes both dominance index sets contain harmonic mass >= 1/2 per
    run (the divergence certificate used downstream).
    """

    f: PiecewisePolyDensity
    g: PiecewisePolyDensity
    indices: tuple[int, ...]
    gammas: tuple[Fraction, ...]  # payload coefficients, strictly decreasing
    d_f: Fraction
    d_g: Fraction
    grid: tuple[Fraction, ...]
    bump_degree: int
    padded: bool

    def payload_bumps(self) -> list[Bump]:
        return _peak_bumps(list(self.grid[1:]), self.bump_degree)

    def normalizer_bump(self) -> Bump:
        return Bump(self.grid[0], self.grid[1], self.bump_degree)

    def to_json(self) -> dict:
        return {
            "construction": "alternating-pair",
            "indices": list(self.indices),
            "gammas": [rat_str(gm) for gm in self.gammas],
            "d_f": rat_str(self.d_f),
            "d_g": rat_str(self.d_g),
            "grid": [rat_str(t) for t in self.grid],
            "bump_degree": self.bump_degree,
            "padded": self.padded,
        }


def _f_weight(j: int) -> Fraction:
    return Fraction(1) if j % 2 == 1 else Fraction(2, 3)


def _g_weight(j: int) -> Fraction:
    return Fraction(2, 3) if j % 2 == 1 else Fraction(1)


def alternating_pair(
    a,
    b,
    N: int,
    spec: BumpSpec = DEFAULT_BUMP,
    padded: bool = False,
    settings: Settings = DEFAULT,
    grid_ratio: Fraction = Fraction(1, 2),
) -> AlternatingPair:
    """Construct a pair of probability densities whose moment sequences
    alternate at N+1 searched exponents (N strict sign changes).

    Bump j (supported on the j-th grid interval, peak value 1) enters f
    with weight gamma_j when j is odd and (2/3) gamma_j when j is even, and
    enters g the other way round; bump 0 carries the mass normalizers. At
    step n the next exponent l_n is the first one for which the worst-case
    partial difference (normalizer weight at its exact running bound on the
    opposing side) is strictly positive; gamma_{n+2} is then half the
    largest value keeping that inequality, rounded down to a power of two,
    so all later bumps together cannot flip the verified sign. Every
    claimed sign is re-verified exactly on the finished densities.

    The grid is the same dyadic accumulation toward b the staged kernel
    uses, with t_0 = a.
    """
    spec.require_polynomial("alternating_pair")
    a, b = rat(a), rat(b)
    if not 0 < a < b:
        raise ValueError("need 0 < a < b")
    if N < 1:
        raise ValueError("need N >= 1")
    grid = geometric_grid(a, b, N + 3, grid_ratio)
    m = spec.degree
    bump0 = Bump(grid[0], grid[1], m)
    payload = _peak_bumps(grid[1:], m)
    mass0 = bump0.mass / bump0.sup  # peak-normalized masses
    masses = [bp.mass / bp.sup for bp in payload]

    gammas: list[Fraction] = [min(Fraction(1, 2 * (b - a)), Fraction(1))]
    indices: list[int] = []

    for n in range(N + 1):
        # later bumps live on [t_{n+2}, b]: the coefficient budget compares
        # the verified margin against the moment of that tail slab only
        tail = PiecewisePolyDensity(
            (grid[n + 2], b), (poly([Fraction(1)]),), signed=True
        )
        # exact budget for the normalizer difference |d_f - d_g|: the payload
        # weights differ by gamma_j / 3 per bump and gammas are decreasing,
        # so the tail is capped by the most recent gamma
        spent = sum(
            (gammas[j - 1] * masses[j - 1] for j in range(1, len(gammas) + 1)),
            Fraction(0),
        )
        future = gammas[-1] * sum(masses[len(gammas):], Fraction(0))
        bound0 = (spent + future) / (3 * mass0)
        worst_terms = [(-bound0, _scaled_bump_density(bump0, Fraction(1)))]
        for j in range(1, n + 2):
            sigma = 1 if (j % 2) == ((n + 1) % 2) else -1
            worst_terms.append(
                (
                    Fraction(sigma, 3) * gammas[j - 1],
                    _scaled_bump_density(payload[j - 1], Fraction(1)),
                )
            )
        worst = piecewise_combine(worst_terms, signed=True)
        lead = _scaled_bump_density(payload[n], gammas[n] / 3)
        start = (2 * indices[-1] + 1) if (padded and indices) else (
            indices[-1] + 1 if indices else 1
        )
        ell, run_floor = _positive_exponent_search(
            worst, tail, lead, start, padded, settings
        )
        indices.append(ell)
        if n < N:
            # half the admissible budget, rounded down to a power of two so
            # later coefficient arithmetic stays small; any value below the
            # floor keeps every verified inequality intact
            gammas.append(_dyadic_floor(min(gammas[-1], run_floor) / 2))

    payload_f = sum(
        (_f_weight(j) * gammas[j - 1] * masses[j - 1] for j in range(1, N + 2)),
        Fraction(0),
    )
    payload_g = sum(
        (_g_weight(j) * gammas[j - 1] * masses[j - 1] for j in range(1, N + 2)),
        Fraction(0),
    )
    d_f = (1 - payload_f) / mass0
    d_g = (1 - payload_g) / mass0
    if not (0 < d_f <= 1 / mass0 and 0 < d_g <= 1 / mass0):
        raise ConstructionFailure("normalizer weights left their safe range")

    f = piecewise_combine(
        [(d_f, _scaled_bump_density(bump0, Fraction(1)))]
        + [
            (_f_weight(j) * gammas[j - 1], _scaled_bump_density(payload[j - 1], Fraction(1)))
            for j in range(1, N + 2)
        ],
        signed=False,
    )
    g = piecewise_combine(
        [(d_g, _scaled_bump_density(bump0, Fraction(1)))]
        + [
            (_g_weight(j) * gammas[j - 1], _scaled_bump_density(payload[j - 1], Fraction(1)))
            for j in range(1, N + 2)
        ],
        signed=False,
    )
    pair = AlternatingPair(
        f, g, tuple(indices), tuple(gammas), d_f, d_g, tuple(grid), m, padded
    )
    _verify_alternating(pair, settings)
    return pair


def _scaled_bump_density(bump: Bump, factor: Fraction) -> PiecewisePolyDensity:
    return PiecewisePolyDensity(
        (bump.lo, bump.hi),
        (scale(bump.shape, factor / bump.sup),),
        signed=True,
    )


def _dyadic_floor(q: Fraction) -> Fraction:
    """Largest power of two <= q (q > 0)."""
    if q <= 0:
        raise ValueError("need a positive value")
    e = q.numerator.bit_length() - q.denominator.bit_length()
    cand = Fraction(2) ** e
    if cand > q:
        cand /= 2
    return cand


def _positive_exponent_search(
    worst: PiecewisePolyDensity,
    tail: PiecewisePolyDensity,
    lead: PiecewisePolyDensity,
    start: int,
    padded: bool,
    settings: Settings,
) -> tuple[int, Fraction]:
    """First exponent where the worst-case difference moment is positive
    with margin: Delta(l) must reach half the newest bump's own moment, so
    the recorded budget floor is never squeezed by a grazing crossing.

    Returns (l, floor) where floor = min over the verified exponents (just
    l, or the whole run [l, 2l] when padded) of Delta(i) / tail-slab moment,
    the largest coefficient budget later bumps may spend without flipping
    the verified sign. Scanning is single-pass: a candidate run restarts
    right after any failing index.
    """
    D = common_scale([worst, tail, lead])
    sw = _PiecewiseScanner(worst, D, start)
    su = _PiecewiseScanner(tail, D, start)
    sl = _PiecewiseScanner(lead, D, start)
    run_start = None
    floor = None
    ell = start - 1
    while True:
        ell += 1
        if ell > settings.ell_search_cap:
            raise ConstructionFailure(
                f"no admissible exponent below cap {settings.ell_search_cap}"
            )
        dn, dc = sw.current_pair()
        ln, lc = sl.current_pair()
        if dn > 0 and 2 * dn * lc >= ln * dc:
            un, uc = su.current_pair()
            ratio = Fraction(dn * uc, dc * un)
            if run_start is None:
                run_start = ell
                floor = ratio
            else:
                floor = min(floor, ratio)
            done = (not padded and run_start == ell) or (
                padded and ell >= 2 * run_start
            )
            if done:
                return run_start, floor
        else:
            run_start, floor = None, None
        sw.step()
        su.step()
        sl.step()


def _difference_sign_at(
    diff_scanner: "_PiecewiseScanner",
) -> int:
    n, _ = diff_scanner.current_pair()
    return 0 if n == 0 else (1 if n > 0 else -1)


def _verify_alternating(pair: AlternatingPair, settings: Settings) -> None:
    if total_mass(pair.f).value != 1 or total_mass(pair.g).value != 1:
        raise ConstructionFailure("alternating pair masses are not one")
    if any(
        g2 >= g1 for g1, g2 in zip(pair.gammas, pair.gammas[1:])
    ) or any(gm <= 0 for gm in pair.gammas):
        raise ConstructionFailure("payload coefficients not strictly decreasing")
    diff = piecewise_combine(
        [(Fraction(1), pair.f), (Fraction(-1), pair.g)], signed=True
    )
    targets = []
    for n, ell in enumerate(pair.indices):
        want = 1 if n % 2 == 0 else -1
        if pair.padded:
            targets.extend((i, want) for i in range(ell, 2 * ell + 1))
        else:
            targets.append((ell, want))
    D = common_scale([diff])
    sc = _PiecewiseScanner(diff, D, targets[0][0])
    pos = targets[0][0]
    for k, want in targets:
        while pos < k:
            sc.step()
            pos += 1
        if _difference_sign_at(sc) != want:
            raise ConstructionFailure(
                f"alternation failed at exponent {k}: expected sign {want}"
            )


# ---------------------------------------------------------------------------
# padded runs: dominance on whole exponent blocks [l, 2l]
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PaddedRunReport:
    """Sign-constant exponent blocks and their harmonic-mass certificates.

    Each run [l_n, 2*l_n] carries harmonic mass sum(1/i) >= 1/2, so the two
    dominance index sets grow without bound in reciprocal sum at rate at
    least 1/2 per run: exactly the divergence a Muntz-Szasz sequence needs.
    """

    runs: tuple[tuple[int, int], ...]
    run_signs: tuple[int, ...]  # +1: f dominates on the run, -1: g does
    harmonic_sums: tuple[Fraction, ...]
    f_dominant_indices: tuple[int, ...]  # M2-style prefix (s(f) > s(g))
    g_dominant_indices: tuple[int, ...]  # M1-style prefix (s(f) < s(g))
    theta_partial_sum: Fraction

    def run_certificate(self, which: str) -> dict:
        """Machine-checkable run certificate for one dominance set."""
        want = 1 if which == "f" else -1
        runs = [r for r, s in zip(self.runs, self.run_signs) if s == want]
        prefix = (
            self.f_dominant_indices if which == "f" else self.g_dominant_indices
        )
        return {
            "cert": "harmonic-run",
            "prefix": list(prefix),
            "runs": [list(r) for r in runs],
        }

    def to_json(self) -> dict:
        return {
            "construction": "padded-run-report",
            "runs": [list(r) for r in self.runs],
            "run_signs": list(self.run_signs),
            "harmonic_sums": [rat_str(h) for h in self.harmonic_sums],
            "theta_partial_sum": rat_str(self.theta_partial_sum),
        }


def run_padded_alternating(
    pair: AlternatingPair, settings: Settings = DEFAULT
) -> PaddedRunReport:
    """Verify sign constancy on every block [l_n, 2*l_n] of a padded pair
    and emit the harmonic certificates for both dominance index sets."""
    if not pair.padded:
        raise ValueError("pair was not built with run padding")
    diff = piecewise_combine(
        [(Fraction(1), pair.f), (Fraction(-1), pair.g)], signed=True
    )
    D = common_scale([diff])
    runs = []
    signs = []
    sums = []
    f_dom: list[int] = []
    g_dom: list[int] = []
    for n, ell in enumerate(pair.indices):
        want = 1 if n % 2 == 0 else -1
        sc = _PiecewiseScanner(diff, D, ell)
        run = (ell, 2 * ell)
        for i in range(ell, 2 * ell + 1):
            v, _ = sc.current_pair()
            got = 0 if v == 0 else (1 if v > 0 else -1)
            if got != want:
                raise ConstructionFailure(
                    f"run [{ell}, {2 * ell}] breaks at exponent {i}"
                )
            (f_dom if want > 0 else g_dom).append(i)
            sc.step()
        runs.append(run)
        signs.append(want)
        s = sum((Fraction(1, i) for i in range(ell, 2 * ell + 1)), Fraction(0))
        if s < Fraction(1, 2):
            raise ConstructionFailure(f"harmonic mass of run {run} below 1/2")
        sums.append(s)
    return PaddedRunReport(
        tuple(runs),
        tuple(signs),
        tuple(sums),
        tuple(f_dom),
        tuple(g_dom),
        sum(sums, Fraction(0)),
    )


# ---------------------------------------------------------------------------
# unimodal alternating pair
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UnimodalAlternatingPair:
    """Alternating pair mixed into a single-peak base so both densities
    stay unimodal (their derivatives change sign exactly once)."""

    f: PiecewisePolyDensity
    g: PiecewisePolyDensity
    inner: AlternatingPair
    base: PiecewisePolyDensity
    alpha: Fraction
    slope_bound_base: Fraction  # K: base falls at least this fast on window
    slope_bound_inner: Fraction  # L: inner derivatives bounded by this
    window: tuple[Fraction, Fraction]

    @property
    def indices(self) -> tuple[int, ...]:
        return self.inner.indices

    def to_json(self) -> dict:
        return {
            "construction": "unimodal-alternating-pair",
            "alpha": rat_str(self.alpha),
            "slope_bound_base": rat_str(self.slope_bound_base),
            "slope_bound_inner": rat_str(self.slope_bound_inner),
            "window": [rat_str(self.window[0]), rat_str(self.window[1])],
            "inner": self.inner.to_json(),
        }


def derivative_sign_pattern(d: PiecewisePolyDensity) -> tuple[int, ...]:
    """Compressed sign sequence of d' across the support."""
    pattern: list[int] = []
    for p, lo, hi in zip(d.pieces, d.breakpoints, d.breakpoints[1:]):
        dp = derivative(p)
        for s in sign_run_pattern(dp, lo, hi):
            if not pattern or pattern[-1] != s:
                pattern.append(s)
    return tuple(pattern)


def unimodal_alternating_pair(
    a,
    b,
    N: int,
    spec: BumpSpec = DEFAULT_BUMP,
    settings: Settings = DEFAULT,
) -> UnimodalAlternatingPair:
    """Alternating pair whose densities are unimodal.

    A unit-mass base bump peaks at the midpoint of [a, b]; on a window of
    its strictly decreasing flank the slope is below -K exactly (K from the
    window endpoints, verified by root isolation). An alternating pair built
    inside the window is mixed in with weight alpha = K / (L + K), L being
    an exact coefficient bound on the inner derivatives, so the mixtures
    still fall strictly on the window and inherit the base's single peak,
    while moment differences scale by exactly alpha.
    """
    spec.require_polynomial("unimodal_alternating_pair")
    a, b = rat(a), rat(b)
    base = normalized_bump_density(a, b, spec.degree)
    width = b - a
    c = a + width * Fraction(9, 16)
    d = a + width * Fraction(15, 16)
    if not a < c < d < b:
        raise ValueError("window left the support; widen [a, b]")

    dbase = derivative(base.pieces[0])
    K = min(-evaluate(dbase, c), -evaluate(dbase, d))
    if K <= 0:
        raise ConstructionFailure(
            "window is not inside the strictly decreasing flank; "
            "widen [a, b] or move the window"
        )
    ok, witness = nonneg_on(sub(scale(dbase, Fraction(-1)), poly([K])), c, d)
    if not ok:
        raise ConstructionFailure(
            f"base slope rises above -K inside the window at {witness}"
        )

    inner = alternating_pair(c, d, N, spec=spec, settings=settings)
    L = Fraction(0)
    for dens in (inner.f, inner.g):
        for p, lo, hi in zip(dens.pieces, dens.breakpoints, dens.breakpoints[1:]):
            L = max(L, shifted_abs_bound_on(derivative(p), lo, hi))
    alpha = K / (L + K)

    f = piecewise_combine(
        [(alpha, inner.f), (1 - alpha, base)], signed=False
    )
    g = piecewise_combine(
        [(alpha, inner.g), (1 - alpha, base)], signed=False
    )
    out = UnimodalAlternatingPair(
        f, g, inner, base, alpha, K, L, (c, d)
    )
    _verify_unimodal(out, settings)
    return out


def _verify_unimodal(u: UnimodalAlternatingPair, settings: Settings) -> None:
    for dens, name in ((u.f, "f"), (u.g, "g")):
        if total_mass(dens, settings).value != 1:
            raise ConstructionFailure(f"unimodal {name} mass is not one")
        pattern = derivative_sign_pattern(dens)
        if pattern != (1, -1):
            raise ConstructionFailure(
                f"unimodal {name} derivative sign pattern {pattern} != (+, -)"
            )
    if not 0 < u.alpha < 1:
        raise ConstructionFailure("mixing weight left (0, 1)")
    # moment differences must scale by exactly alpha, and therefore alternate
    for n, ell in enumerate(u.indices):
        outer = (
            moment(u.f, ell, settings).value - moment(u.g, ell, settings).value
        )
        inner = (
            moment(u.inner.f, ell, settings).value
            - moment(u.inner.g, ell, settings).value
        )
        if outer != u.alpha * inner:
            raise ConstructionFailure(f"alpha scaling fails at exponent {ell}")
        if (1 if n % 2 == 0 else -1) * outer <= 0:
            raise ConstructionFailure(f"alternation lost at exponent {ell}")


# ---------------------------------------------------------------------------
# mixed-strategy non-comparability demo
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MixedComparabilityDemo:
    """Three densities showing order on pure payoffs but not on mixtures.

    low <= anchor <= high in the tail order (both certified), yet the even
    mixture (low + high) / 2 equals the alternating pair's f, which is not
    comparable with the anchor g.
    """

    low: PiecewisePolyDensity
    high: PiecewisePolyDensity
    anchor: PiecewisePolyDensity  # the pair's g
    mixture: PiecewisePolyDensity  # equals the pair's f exactly
    low_certificate: EventualPositivity
    high_certificate: EventualPositivity
    alternation_indices: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "construction": "mixed-incomparability-demo",
            "low_certificate": self.low_certificate.to_json(),
            "high_certificate": self.high_certificate.to_json(),
            "alternation_indices": list(self.alternation_indices),
        }


def mixed_incomparable_demo(
    pair: AlternatingPair, settings: Settings = DEFAULT
) -> MixedComparabilityDemo:
    """Rescale the pair's payload into two comparable probability densities
    whose even mixture reproduces the non-comparable f exactly.

    The low density carries 1/3 of every payload coefficient, the high one
    5/3 on odd bumps and the full weight on even bumps; averaging returns
    f's weights (1 odd, 2/3 even). Both tail-order relations to the pair's
    g are certified through eventual positivity of the difference density.
    """
    bump0 = pair.normalizer_bump()
    payload = pair.payload_bumps()
    mass0 = bump0.mass / bump0.sup
    masses = [bp.mass / bp.sup for bp in payload]
    gammas = pair.gammas

    def build(weights: list[Fraction]) -> PiecewisePolyDensity:
        spent = sum(
            (w * gm * m for w, gm, m in zip(weights, gammas, masses)),
            Fraction(0),
        )
        head = (1 - spent) / mass0
        if head <= 0:
            raise ConstructionFailure("mixture weights exhaust the unit mass")
        return piecewise_combine(
            [(head, _scaled_bump_density(bump0, Fraction(1)))]
            + [
                (w * gm, _scaled_bump_density(bp, Fraction(1)))
                for w, gm, bp in zip(weights, gammas, payload)
            ],
            signed=False,
        )

    n_payload = len(payload)
    low = build([Fraction(1, 3)] * n_payload)
    high = build(
        [
            Fraction(5, 3) if j % 2 == 1 else Fraction(1)
            for j in range(1, n_payload + 1)
        ]
    )
    mixture = piecewise_combine(
        [(Fraction(1, 2), low), (Fraction(1, 2), high)], signed=False
    )
    if not piecewise_equal(mixture, pair.f):
        raise ConstructionFailure("mixture does not reproduce the pair")
    if total_mass(low, settings).value != 1 or total_mass(high, settings).value != 1:
        raise ConstructionFailure("demo masses are not one")

    x0 = payload[0].midpoint
    low_diff = piecewise_combine(
        [(Fraction(1), pair.g), (Fraction(-1), low)], signed=True
    )
    high_diff = piecewise_combine(
        [(Fraction(1), high), (Fraction(-1), pair.g)], signed=True
    )
    low_cert = certify_eventual_positive(low_diff, x0, settings)
    high_cert = certify_eventual_positive(high_diff, x0, settings)
    if not (low_cert.certified and high_cert.certified):
        raise ConstructionFailure("comparability certificates failed")
    return MixedComparabilityDemo(
        low, high, pair.g, mixture, low_cert, high_cert, pair.indices
    )


# ---------------------------------------------------------------------------
# alternating-CDF pairs (discrete and smeared absolutely continuous)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AlternatingCdfReport:
    """Checks backing the discrete pair with alternating CDFs.

    ``dominance_depth`` records up to which exponent the certified bound
    s_n(high) - s_n(low) >= anchor_mass * anchor^n was verified exactly on
    the truncated atoms; the per-atom inequality high_mass*loc >= low_mass*loc
    makes every dropped tail term nonnegative, so the bound survives
    truncation for every n.
    """

    anchor: Fraction
    anchor_mass: Fraction
    shift_factors: tuple[Fraction, ...]  # c_i, strictly below one
    cdf_checks: tuple[tuple[int, Fraction, Fraction, Fraction, Fraction], ...]
    dominance_depth: int

    def to_json(self) -> dict:
        return {
            "construction": "discrete-alternating-cdf-pair",
            "anchor": rat_str(self.anchor),
            "anchor_mass": rat_str(self.anchor_mass),
            "shift_factors": [rat_str(c) for c in self.shift_factors],
            "dominance_depth": self.dominance_depth,
            "cdf_checks": [
                [k, rat_str(gy), rat_str(fy), rat_str(gx), rat_str(fx)]
                for k, gy, fy, gx, fx in self.cdf_checks
            ],
        }


def discrete_alternating_cdf_pair(
    a,
    k_max: int,
    truncation: int = 40,
    dominance_depth: int = 100,
    settings: Settings = DEFAULT,
) -> tuple[DiscreteRule, DiscreteRule, AlternatingCdfReport]:
    """Discrete pair ordered in the tail yet with alternating CDFs.

    The low measure puts mass 2^-i on points increasing to 2; the high one
    shifts each point right to the midpoint y_i with its mass scaled by
    c_i = max(x_i / y_i, 1 - 2^-i) < 1 and parks the spare mass on the
    anchor (1 + a) / 2 left of the support. The anchor's mass times
    anchor^n is then an exact lower bound on every moment difference, while
    the CDFs alternate at the x_k and y_k forever.
    """
    a = rat(a)
    mu_f = alternating_cdf_f_measure(truncation)
    mu_g = alternating_cdf_g_measure(a, truncation)
    fi, gi = mu_f.impl, mu_g.impl
    if k_max + 1 > truncation:
        raise ValueError("k_max needs atoms beyond the truncation")

    y0 = gi.location(0)
    g0 = gi.mass(0)
    shift = []
    for i in range(1, truncation + 1):
        x, y = fi.location(i), gi.location(i)
        c = gi.mass(i) / fi.mass(i)
        if not (1 - Fraction(1, 2**i) <= c < 1):
            raise ConstructionFailure(f"shift factor out of range at {i}")
        if c * y < x:
            raise ConstructionFailure(f"per-atom dominance fails at {i}")
        shift.append(c)

    # certified moment dominance at truncation: every per-atom term
    # high_mass * y^n - low_mass * x^n is nonnegative (c_i y_i >= x_i and
    # y_i > x_i), so the truncated difference already dominates the anchor
    # bound and dropped tail terms only help
    for n in range(1, dominance_depth + 1):
        diff = moment(mu_g, n, settings).value - moment(mu_f, n, settings).value
        if diff < g0 * y0**n:
            raise ConstructionFailure(f"anchor bound fails at exponent {n}")

    checks = []
    for k in range(1, k_max + 1):
        yk, xk = gi.location(k), fi.location(k)
        Gy = cdf(mu_g, yk, settings)
        Fy = cdf(mu_f, yk, settings)
        Gx = cdf(mu_g, xk, settings)
        Fx = cdf(mu_f, xk, settings)
        if not (Gy.exact and Fy.exact and Gx.exact and Fx.exact):
            raise ConstructionFailure("CDF values not exact below truncation")
        if not (Gy.value > Fy.value and Gx.value < Fx.value):
            raise ConstructionFailure(f"CDF alternation fails at k={k}")
        checks.append((k, Gy.value, Fy.value, Gx.value, Fx.value))

    report = AlternatingCdfReport(
        y0, g0, tuple(shift), tuple(checks), dominance_depth
    )
    return mu_f, mu_g, report


@dataclass(frozen=True)
class SmearedCdfPair:
    """Absolutely continuous rendition of the alternating-CDF pair."""

    low: PiecewisePolyDensity
    high: PiecewisePolyDensity
    anchor: Fraction
    cdf_checks: tuple[tuple[int, Fraction, Fraction, Fraction, Fraction], ...]
    truncation: int

    def to_json(self) -> dict:
        return {
            "construction": "smeared-alternating-cdf-pair",
            "anchor": rat_str(self.anchor),
            "truncation": self.truncation,
            "cdf_checks": [
                [k, rat_str(gz), rat_str(fz), rat_str(gx), rat_str(fx)]
                for k, gz, fz, gx, fx in self.cdf_checks
            ],
        }


def ac_alternating_cdf_pair(
    a,
    k_max: int,
    spec: BumpSpec = DEFAULT_BUMP,
    truncation: int = 25,
    settings: Settings = DEFAULT,
) -> SmearedCdfPair:
    """Smear each atom of the discrete pair onto an interval, masses intact.

    The low measure's atom at x_k spreads left onto [z_k, x_k] and the high
    measure's atom at y_k spreads right onto [y_k, z_(k+1)], where z_k is
    the midpoint of y_(k-1) and x_k. At every x_k and z_(k+1) the smeared
    CDFs therefore reproduce the discrete ones exactly, and the alternation
    survives with continuous densities.
    """
    spec.require_polynomial("ac_alternating_cdf_pair")
    a = rat(a)
    mu_f = alternating_cdf_f_measure(truncation)
    mu_g = alternating_cdf_g_measure(a, truncation)
    fi, gi = mu_f.impl, mu_g.impl
    if k_max + 2 > truncation:
        raise ValueError("k_max needs atoms beyond the truncation")

    def z(k: int) -> Fraction:
        return (gi.location(k - 1) + fi.location(k)) / 2

    low_bumps = []
    for k in range(1, truncation + 1):
        bp = Bump(z(k), fi.location(k), spec.degree)
        low_bumps.append((fi.mass(k) / bp.mass, bp))
    high_bumps = []
    for k in range(0, truncation + 1):
        bp = Bump(gi.location(k), z(k + 1), spec.degree)
        high_bumps.append((gi.mass(k) / bp.mass, bp))
    low = _bumps_to_density(low_bumps, signed=False)
    high = _bumps_to_density(high_bumps, signed=False)

    checks = []
    for k in range(1, k_max + 1):
        xk = fi.location(k)
        zk1 = z(k + 1)
        Fx = cdf(low, xk, settings).value
        Gx = cdf(high, xk, settings).value
        Gz = cdf(high, zk1, settings).value
        Fz = cdf(low, zk1, settings).value
        if Fx != cdf(mu_f, xk, settings).value or Gx != cdf(mu_g, xk, settings).value:
            raise ConstructionFailure(f"smeared CDF mismatch at x_{k}")
        if Gz != cdf(mu_g, gi.location(k), settings).value or Fz != cdf(
            mu_f, gi.location(k), settings
        ).value:
            raise ConstructionFailure(f"smeared CDF mismatch at z_{k + 1}")
        if not (Fx > Gx and Gz > Fz):
            raise ConstructionFailure(f"smeared alternation fails at k={k}")
        checks.append((k, Gz, Fz, Gx, Fx))

    return SmearedCdfPair(low, high, gi.location(0), tuple(checks), truncation)
