"""Positively supported finite measures and exact/validated moments.

Three measure representations share one operation surface:

* ``DiscreteFinite`` -- finitely many atoms, everything exact.
* ``PiecewisePolyDensity`` -- piecewise polynomial density on a compact
  interval of the positive axis; may be signed (tagged), moments and CDF are
  exact rationals.
* ``DiscreteRule`` -- countable discrete measure given by closed-form
  location/mass rules, truncated at a recorded index; moments come back as
  intervals whose radius is a proven tail bound.

Every value is immutable and every operation is a pure function, so
concurrent use (including parallel per-k moment sweeps) is safe.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

from .config import DEFAULT, Settings
from .polynomials import (
    Poly,
    add,
    evaluate,
    is_zero,
    nonneg_on,
    poly,
    power_moment,
    scale,
)


class PrecisionExceeded(ArithmeticError):
    """An exact value outgrew the configured precision budget."""


def _guard(value: Fraction, settings: Settings) -> Fraction:
    bits = value.numerator.bit_length() + value.denominator.bit_length()
    if bits > settings.precision_bits:
        raise PrecisionExceeded(
            f"exact value needs {bits} bits, budget is {settings.precision_bits}"
        )
    return value


def rat(x) -> Fraction:
    """Parse a rational from int/str/Fraction ('3/4', '0.75', 7)."""
    if isinstance(x, float):
        raise TypeError("refusing to coerce float to exact rational")
    return Fraction(x)


def rat_str(x: Fraction) -> str:
    return str(Fraction(x))


@dataclass(frozen=True)
class MomentValue:
    """A moment, either exact or as a validated interval.

    The true value always lies in [value - error_radius, value + error_radius]
    and error_radius == 0 iff exact.
    """

    value: Fraction
    exact: bool
    error_radius: Fraction = Fraction(0)

    def __post_init__(self):
        if self.error_radius < 0:
            raise ValueError("error radius must be nonnegative")
        if self.exact != (self.error_radius == 0):
            raise ValueError("exactness flag inconsistent with error radius")

    @property
    def lower(self) -> Fraction:
        return self.value - self.error_radius

    @property
    def upper(self) -> Fraction:
        return self.value + self.error_radius


def exact_value(v) -> MomentValue:
    return MomentValue(Fraction(v), True)


def interval_value(v, radius) -> MomentValue:
    radius = Fraction(radius)
    return MomentValue(Fraction(v), radius == 0, radius)


def sign_of_difference(a: MomentValue, b: MomentValue) -> str:
    """Sign of (b - a): '+', '-', '0', or '?' when intervals overlap."""
    if b.lower > a.upper:
        return "+"
    if b.upper < a.lower:
        return "-"
    if a.exact and b.exact and a.value == b.value:
        return "0"
    return "?"


# ---------------------------------------------------------------------------
# measure representations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DiscreteFinite:
    """Finite positive discrete measure: atoms of (location, mass)."""

    atoms: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        cleaned = {}
        for loc, mass in self.atoms:
            loc, mass = Fraction(loc), Fraction(mass)
            if loc <= 0:
                raise ValueError("atom locations must be strictly positive")
            if mass <= 0:
                raise ValueError("atom masses must be strictly positive")
            cleaned[loc] = cleaned.get(loc, Fraction(0)) + mass
        object.__setattr__(
            self, "atoms", tuple(sorted(cleaned.items()))
        )

    @property
    def support(self) -> tuple[Fraction, Fraction]:
        return self.atoms[0][0], self.atoms[-1][0]


def delta(location, mass=1) -> DiscreteFinite:
    return DiscreteFinite(((Fraction(location), Fraction(mass)),))


@dataclass(frozen=True)
class PiecewisePolyDensity:
    """Density that is polynomial between consecutive breakpoints.

    Breakpoints are strictly increasing positive rationals; piece i lives on
    [breakpoints[i], breakpoints[i+1]]. A density constructed with
    ``signed=False`` is checked nonnegative piece by piece via root
    isolation; signed densities skip that check but are rejected by
    operations that require positivity (CDF, Carleman sums).
    """

    breakpoints: tuple[Fraction, ...]
    pieces: tuple[Poly, ...]
    signed: bool = False

    def __post_init__(self):
        bps = tuple(Fraction(b) for b in self.breakpoints)
        pcs = tuple(poly(p) for p in self.pieces)
        if len(bps) < 2 or len(pcs) != len(bps) - 1:
            raise ValueError("need n+1 breakpoints for n pieces")
        if bps[0] <= 0:
            raise ValueError("support must lie in the strictly positive axis")
        if any(x >= y for x, y in zip(bps, bps[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "pieces", pcs)
        if not self.signed:
            for p, lo, hi in zip(pcs, bps, bps[1:]):
                ok, witness = nonneg_on(p, lo, hi)
                if not ok:
                    raise ValueError(
                        f"unsigned density is negative at x={witness}"
                    )

    @property
    def support(self) -> tuple[Fraction, Fraction]:
        return self.breakpoints[0], self.breakpoints[-1]

    def evaluate(self, x) -> Fraction:
        """Density value; at interior breakpoints the right piece wins."""
        x = Fraction(x)
        bps = self.breakpoints
        if x < bps[0] or x > bps[-1]:
            return Fraction(0)
        for i in range(len(self.pieces)):
            if x < bps[i + 1] or (i == len(self.pieces) - 1 and x == bps[-1]):
                return evaluate(self.pieces[i], x)
        return Fraction(0)

    def is_identically_zero(self) -> bool:
        return all(is_zero(p) for p in self.pieces)


def uniform_density(a, b) -> PiecewisePolyDensity:
    """Probability density constant on [a, b]."""
    a, b = Fraction(a), Fraction(b)
    return PiecewisePolyDensity((a, b), (poly([Fraction(1, 1) / (b - a)]),))


def piecewise_combine(
    terms: list[tuple[Fraction, PiecewisePolyDensity]], signed: bool = True
) -> PiecewisePolyDensity:
    """Exact linear combination sum(c * d) of piecewise densities.

    Breakpoints are merged; gaps between supports become zero pieces.
    """
    if not terms:
        raise ValueError("empty combination")
    pts = sorted({b for _, d in terms for b in d.breakpoints})
    pieces = []
    for lo, hi in zip(pts, pts[1:]):
        acc: Poly = ()
        for c, d in terms:
            c = Fraction(c)
            if c == 0:
                continue
            bps = d.breakpoints
            if bps[0] <= lo and hi <= bps[-1]:
                for i in range(len(d.pieces)):
                    if bps[i] <= lo and hi <= bps[i + 1]:
                        acc = add(acc, scale(d.pieces[i], c))
                        break
        pieces.append(acc)
    return PiecewisePolyDensity(tuple(pts), tuple(pieces), signed=signed)


def piecewise_equal(d1: PiecewisePolyDensity, d2: PiecewisePolyDensity) -> bool:
    """Equality as functions (common-refinement piece comparison)."""
    diff = piecewise_combine([(Fraction(1), d1), (Fraction(-1), d2)])
    return diff.is_identically_zero()


# ---------------------------------------------------------------------------
# rule-based truncated countable measures
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RuleImpl:
    """Resolved closed-form rules backing a DiscreteRule measure."""

    location: Callable[[int], Fraction]
    mass: Callable[[int], Fraction]
    tail_mass_bound: Callable[[int], Fraction]  # bound on mass beyond index
    support_upper_bound: Fraction
    index_start: int = 1
    locations_increasing: bool = True


@dataclass(frozen=True)
class DiscreteRule:
    """Truncated countable discrete measure defined by a registered rule."""

    name: str
    params: tuple[tuple[str, str], ...]
    truncation_index: int

    def __post_init__(self):
        if self.truncation_index < 1:
            raise ValueError("truncation index must be >= 1")
        object.__setattr__(self, "params", tuple(sorted(self.params)))
        self.impl  # fail early on unknown rules / bad params

    @property
    def impl(self) -> RuleImpl:
        return _resolve_rule(self.name, self.params)

    def with_truncation(self, truncation: int) -> "DiscreteRule":
        return DiscreteRule(self.name, self.params, truncation)

    def atoms(self) -> list[tuple[Fraction, Fraction]]:
        impl = self.impl
        return [
            (impl.location(i), impl.mass(i))
            for i in range(impl.index_start, self.truncation_index + 1)
        ]


_RULE_FACTORIES: dict[str, Callable[[dict], RuleImpl]] = {}


def register_rule(name: str):
    def deco(factory):
        _RULE_FACTORIES[name] = factory
        return factory

    return deco


_RULE_CACHE: dict[tuple, RuleImpl] = {}


def _resolve_rule(name: str, params: tuple[tuple[str, str], ...]) -> RuleImpl:
    key = (name, params)
    if key not in _RULE_CACHE:
        if name not in _RULE_FACTORIES:
            raise ValueError(f"unknown discrete rule: {name!r}")
        _RULE_CACHE[key] = _RULE_FACTORIES[name](dict(params))
    return _RULE_CACHE[key]


@register_rule("affine-recip-geometric")
def _affine_recip_geometric(params: dict) -> RuleImpl:
    """Locations u + sum(v/(i+c)); masses A*r^i with 0 < r < 1.

    The geometric masses give the exact tail bound A*r^(T+1)/(1-r).
    """
    u = rat(params["loc_const"])
    terms = tuple(
        (rat(v), rat(c)) for v, c in json.loads(params["loc_terms"])
    )
    A = rat(params["mass_coeff"])
    r = rat(params["mass_ratio"])
    start = int(params.get("index_start", 1))
    if not (0 < r < 1) or A <= 0:
        raise ValueError("geometric mass rule needs A > 0 and 0 < r < 1")

    def location(i: int) -> Fraction:
        return u + sum((v / (i + c) for v, c in terms), Fraction(0))

    def mass(i: int) -> Fraction:
        return A * r**i

    def tail(T: int) -> Fraction:
        return A * r ** (T + 1) / (1 - r)

    increasing = all(location(i) < location(i + 1) for i in range(start, start + 64))
    bound = rat(params.get("support_upper_bound", u))
    return RuleImpl(location, mass, tail, bound, start, increasing)


_ALTERNATING_BRANCH_SWITCH = 13  # smallest i with 2^i >= i(i+1)(i+2)*y_i forever


def _alt_cdf_x(i: int) -> Fraction:
    return 2 - Fraction(1, i * (i + 1))


def _alt_cdf_y(i: int) -> Fraction:
    # midpoint of consecutive support points: 2 - 1/(i(i+2))
    return 2 - Fraction(1, i * (i + 2))


def _alt_cdf_c(i: int) -> Fraction:
    return max(_alt_cdf_x(i) / _alt_cdf_y(i), 1 - Fraction(1, 2**i))


def _alt_cdf_anchor_mass() -> Fraction:
    """Exact value of sum_i (1 - c_i) * 2^-i.

    For i >= 13 the max above is attained by 1 - 2^-i (since 2^(i-1) >=
    i(i+1)(i+2) from 13 on and doubling beats the ratio (i+3)/i * y_{i+1}/y_i
    < 2), so the tail is the exact geometric sum of 4^-i.
    """
    s = _ALTERNATING_BRANCH_SWITCH
    for i in range(1, s):
        assert 2**i < i * (i + 1) * (i + 2) * _alt_cdf_y(i)
    for i in range(s, 4 * s):
        assert 2**i >= i * (i + 1) * (i + 2) * _alt_cdf_y(i)
    head = sum(
        ((1 - _alt_cdf_c(i)) * Fraction(1, 2**i) for i in range(1, s)),
        Fraction(0),
    )
    return head + Fraction(4, 3) * Fraction(1, 4**s)


@register_rule("alternating-cdf-f")
def _alternating_cdf_f(params: dict) -> RuleImpl:
    def tail(T: int) -> Fraction:
        return Fraction(1, 2**T)

    return RuleImpl(
        _alt_cdf_x, lambda i: Fraction(1, 2**i), tail, Fraction(2), 1, True
    )


@register_rule("alternating-cdf-g")
def _alternating_cdf_g(params: dict) -> RuleImpl:
    a = rat(params["a"])
    if not (1 < a < Fraction(3, 2)):
        raise ValueError("anchor parameter must satisfy 1 < a < 3/2")
    y0 = (1 + a) / 2
    anchor = _alt_cdf_anchor_mass()

    def location(i: int) -> Fraction:
        return y0 if i == 0 else _alt_cdf_y(i)

    def mass(i: int) -> Fraction:
        return anchor if i == 0 else _alt_cdf_c(i) * Fraction(1, 2**i)

    def tail(T: int) -> Fraction:
        # sum_{i>T} c_i 2^-i < 2^-T since every c_i < 1
        return Fraction(1, 2**T)

    return RuleImpl(location, mass, tail, Fraction(2), 0, True)


Measure = Union[DiscreteFinite, PiecewisePolyDensity, DiscreteRule]


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def moment(mu: Measure, k: int, settings: Settings = DEFAULT) -> MomentValue:
    """k-th moment: integral of x^k against mu."""
    if k < 0:
        raise ValueError("moment order must be nonnegative")
    if isinstance(mu, DiscreteFinite):
        total = sum((m * x**k for x, m in mu.atoms), Fraction(0))
        return exact_value(_guard(total, settings))
    if isinstance(mu, PiecewisePolyDensity):
        total = Fraction(0)
        for p, lo, hi in zip(mu.pieces, mu.breakpoints, mu.breakpoints[1:]):
            total += power_moment(p, lo, hi, k)
        return exact_value(_guard(total, settings))
    if isinstance(mu, DiscreteRule):
        impl = mu.impl
        total = Fraction(0)
        for x, m in mu.atoms():
            total += m * x**k
        _guard(total, settings)
        radius = impl.tail_mass_bound(mu.truncation_index) * (
            impl.support_upper_bound**k
        )
        return interval_value(total, radius)
    raise TypeError(f"not a measure: {type(mu).__name__}")


def total_mass(mu: Measure, settings: Settings = DEFAULT) -> MomentValue:
    return moment(mu, 0, settings)


def cdf(mu: Measure, x, settings: Settings = DEFAULT) -> MomentValue:
    """F(x) = mu([0, x]) with the right-continuous convention."""
    x = Fraction(x)
    if isinstance(mu, DiscreteFinite):
        total = sum((m for loc, m in mu.atoms if loc <= x), Fraction(0))
        return exact_value(_guard(total, settings))
    if isinstance(mu, PiecewisePolyDensity):
        if mu.signed:
            raise ValueError("CDF requires an unsigned density")
        bps = mu.breakpoints
        total = Fraction(0)
        for p, lo, hi in zip(mu.pieces, bps, bps[1:]):
            if x <= lo:
                break
            total += power_moment(p, lo, min(x, hi), 0)
        return exact_value(_guard(total, settings))
    if isinstance(mu, DiscreteRule):
        impl = mu.impl
        total = sum(
            (m for loc, m in mu.atoms() if loc <= x), Fraction(0)
        )
        _guard(total, settings)
        if impl.locations_increasing and impl.location(
            mu.truncation_index + 1
        ) > x:
            # every truncated atom lies strictly to the right of x
            return exact_value(total)
        return interval_value(total, impl.tail_mass_bound(mu.truncation_index))
    raise TypeError(f"not a measure: {type(mu).__name__}")


def carleman_partial_sum(mu: Measure, K: int, settings: Settings = DEFAULT) -> float:
    """Partial sum of s_k^(-1/(2k)), k = 1..K (diagnostic only).

    Divergence of the full series is a determinacy criterion, but no finite
    prefix can decide it; this is a float diagnostic, not a certificate.
    """
    if isinstance(mu, PiecewisePolyDensity) and mu.signed:
        raise ValueError("Carleman sums require an unsigned measure")
    if total_mass(mu, settings).lower <= 0:
        raise ValueError("Carleman sums are undefined for zero mass")
    acc = 0.0
    for k in range(1, K + 1):
        s = moment(mu, k, settings).value
        acc += float(s) ** (-1.0 / (2 * k))
    return acc


def support_bounds(mu: Measure) -> tuple[Fraction, Fraction]:
    if isinstance(mu, DiscreteFinite):
        return mu.support
    if isinstance(mu, PiecewisePolyDensity):
        return mu.support
    if isinstance(mu, DiscreteRule):
        impl = mu.impl
        first = impl.location(impl.index_start)
        return min(first, impl.support_upper_bound), impl.support_upper_bound
    raise TypeError(f"not a measure: {type(mu).__name__}")


# ---------------------------------------------------------------------------
# incremental scaled moment scanners
#
# Deep scans (hundreds to thousands of consecutive orders) dominate the cost
# of the staged constructions. Rescaling the axis by a common integer D so
# every breakpoint/atom becomes an integer turns each scan step into a few
# bigint-by-smallint multiplications, with no rational gcd churn on the
# power bookkeeping. The scanner yields D^(ell+1-ish) times the true moment;
# with one shared D across measures, signs and ratios of same-order values
# are exactly those of the true moments.
# ---------------------------------------------------------------------------


def common_scale(mus: list[Measure]) -> int:
    """Least common integer D making all support coordinates integral."""
    import math as _math

    dens = [1]
    for mu in mus:
        if isinstance(mu, DiscreteFinite):
            dens.extend(x.denominator for x, _ in mu.atoms)
        elif isinstance(mu, PiecewisePolyDensity):
            dens.extend(b.denominator for b in mu.breakpoints)
        elif isinstance(mu, DiscreteRule):
            impl = mu.impl
            dens.extend(x.denominator for x, _ in mu.atoms())
            dens.append(impl.support_upper_bound.denominator)
        else:
            raise TypeError(f"not a measure: {type(mu).__name__}")
    return _math.lcm(*dens)


class _PiecewiseScanner:
    """Scaled moments D^(ell+1) * s_ell(density) for consecutive ell.

    Integer core: piece coefficients are premultiplied by one constant
    denominator C, and the order-dependent 1/(ell+j+1) factors are cleared
    by their running lcm, so a scan step costs only bigint-by-smallint
    multiplies. ``current_pair`` exposes the value as (numerator, positive
    scale); ratios and signs across scanners that share the axis scale D
    and the current order are exact.
    """

    def __init__(self, density: PiecewisePolyDensity, D: int, ell: int):
        import math as _math

        self.ell = ell
        raw = []
        dens = [1]
        for p, lo, hi in zip(
            density.pieces, density.breakpoints, density.breakpoints[1:]
        ):
            if is_zero(p):
                continue
            U = D * lo
            V = D * hi
            if U.denominator != 1 or V.denominator != 1:
                raise ValueError("scale does not clear the breakpoints")
            coeffs = [c / Fraction(D) ** j for j, c in enumerate(p)]
            raw.append((int(U), int(V), coeffs))
            dens.extend(c.denominator for c in coeffs)
        self.C = _math.lcm(*dens)
        self.terms = [
            [
                U,
                V,
                [int(c * self.C) for c in coeffs],
                U ** (ell + 1),
                V ** (ell + 1),
            ]
            for U, V, coeffs in raw
        ]
        self.maxdeg = max((len(t[2]) - 1 for t in self.terms), default=0)

    def current_pair(self) -> tuple[int, int]:
        import math as _math

        ell = self.ell
        L = _math.lcm(*range(ell + 1, ell + self.maxdeg + 2))
        total = 0
        for U, V, ints, powU, powV in self.terms:
            pu, pv = powU, powV
            for j, ci in enumerate(ints):
                if ci:
                    total += ci * (pv - pu) * (L // (ell + j + 1))
                pu *= U
                pv *= V
        return total, self.C * L

    def current(self) -> Fraction:
        n, m = self.current_pair()
        return Fraction(n, m)

    def step(self) -> None:
        self.ell += 1
        for t in self.terms:
            t[3] *= t[0]
            t[4] *= t[1]


class _DiscreteScanner:
    """Scaled moments D^ell * s_ell for atom lists, with rule tail radii."""

    def __init__(
        self,
        atoms: list[tuple[Fraction, Fraction]],
        D: int,
        ell: int,
        tail: Fraction = Fraction(0),
        sup: Fraction | None = None,
    ):
        self.ell = ell
        self.atoms = []
        for x, m in atoms:
            loc = D * x
            if loc.denominator != 1:
                raise ValueError("scale does not clear the atom locations")
            self.atoms.append([int(loc), m, int(loc) ** ell])
        self.tail = tail
        if tail != 0:
            s = D * sup
            if s.denominator != 1:
                raise ValueError("scale does not clear the support bound")
            self.sup = int(s)
            self.sup_pow = self.sup**ell
        else:
            self.sup = None
            self.sup_pow = None

    def current(self) -> tuple[Fraction, Fraction]:
        total = Fraction(0)
        for loc, m, pw in self.atoms:
            total += m * pw
        radius = self.tail * self.sup_pow if self.tail != 0 else Fraction(0)
        return total, radius

    def step(self) -> None:
        self.ell += 1
        for a in self.atoms:
            a[2] *= a[0]
        if self.sup_pow is not None:
            self.sup_pow *= self.sup


def scaled_moment_prefix(
    mus: list[Measure], K: int, settings: Settings = DEFAULT
) -> list[list[MomentValue]]:
    """Moments 0..K of several measures under one common scale D.

    Returned values are D^ell * s_ell (piecewise densities carry one more
    factor of D, applied uniformly so cross-measure signs stay valid).
    """
    D = common_scale(mus)
    out: list[list[MomentValue]] = [[] for _ in mus]
    scanners = []
    for mu in mus:
        if isinstance(mu, PiecewisePolyDensity):
            scanners.append(("p", _PiecewiseScanner(mu, D, 0)))
        elif isinstance(mu, DiscreteFinite):
            scanners.append(("d", _DiscreteScanner(list(mu.atoms), D, 0)))
        else:
            impl = mu.impl
            scanners.append(
                (
                    "d",
                    _DiscreteScanner(
                        mu.atoms(),
                        D,
                        0,
                        impl.tail_mass_bound(mu.truncation_index),
                        impl.support_upper_bound,
                    ),
                )
            )
    # piecewise scanners yield an extra factor D (from dx); compensate the
    # discrete scanners so every column shares the exact same scaling D^(ell+1)
    for k in range(K + 1):
        for i, (kind, sc) in enumerate(scanners):
            if kind == "p":
                value, radius = sc.current(), Fraction(0)
            else:
                value, radius = sc.current()
                value *= D
                radius *= D
            _guard(value, settings)
            out[i].append(interval_value(value, radius))
            sc.step()
    return out


def moment_table(
    mu: Measure, k_max: int, settings: Settings = DEFAULT
) -> list[dict]:
    """Rows (k, value, error_radius, exact) for CSV emission."""
    rows = []
    for k in range(k_max + 1):
        mv = moment(mu, k, settings)
        rows.append(
            {
                "k": k,
                "value": rat_str(mv.value),
                "error_radius": rat_str(mv.error_radius),
                "exact": mv.exact,
            }
        )
    return rows


# ---------------------------------------------------------------------------
# JSON measure descriptions (rationals as strings)
# ---------------------------------------------------------------------------


def measure_to_json(mu: Measure) -> dict:
    if isinstance(mu, DiscreteFinite):
        return {
            "kind": "discrete",
            "atoms": [[rat_str(x), rat_str(m)] for x, m in mu.atoms],
        }
    if isinstance(mu, PiecewisePolyDensity):
        return {
            "kind": "density",
            "breakpoints": [rat_str(b) for b in mu.breakpoints],
            "pieces": [[rat_str(c) for c in p] for p in mu.pieces],
            "signed": mu.signed,
        }
    if isinstance(mu, DiscreteRule):
        return {
            "kind": "rule",
            "name": mu.name,
            "params": dict(mu.params),
            "truncation": mu.truncation_index,
        }
    raise TypeError(f"not a measure: {type(mu).__name__}")


def measure_from_json(data: dict) -> Measure:
    kind = data.get("kind")
    if kind == "discrete":
        return DiscreteFinite(
            tuple((rat(x), rat(m)) for x, m in data["atoms"])
        )
    if kind == "density":
        return PiecewisePolyDensity(
            tuple(rat(b) for b in data["breakpoints"]),
            tuple(poly([rat(c) for c in p]) for p in data["pieces"]),
            signed=bool(data.get("signed", False)),
        )
    if kind == "rule":
        return DiscreteRule(
            data["name"],
            tuple((k, str(v)) for k, v in data.get("params", {}).items()),
            int(data["truncation"]),
        )
    raise ValueError(f"unknown measure kind: {kind!r}")


def measure_hash(mu: Measure) -> str:
    import hashlib

    blob = json.dumps(measure_to_json(mu), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def alternating_cdf_f_measure(truncation: int = 40) -> DiscreteRule:
    """Strictly decreasing mass function on points increasing to 2."""
    return DiscreteRule("alternating-cdf-f", (), truncation)


def alternating_cdf_g_measure(a, truncation: int = 40) -> DiscreteRule:
    """Right-shifted companion with an anchor atom at (1+a)/2."""
    return DiscreteRule("alternating-cdf-g", (("a", rat_str(rat(a))),), truncation)
