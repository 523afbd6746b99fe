"""Comparison of measures in the tail order on moment sequences.

The tail order holds between two measures when one moment sequence
eventually dominates the other. Three entry points:

* ``compare_empirical`` scans a finite moment prefix. Its verdicts are
  labeled "heuristic": a prefix can never prove eventual dominance, so only
  a certifier can upgrade the label.
* ``decide_piecewise`` is an exact decision procedure for unsigned piecewise
  polynomial densities: the sign of the difference on the rightmost interval
  where the densities differ settles the order, and the class is totally
  ordered, so the answer is labeled "proved".
* ``certify_cdf_dominance`` / ``certify_eventual_positive`` implement the two
  sufficient conditions (CDF dominance from a point on, and eventual
  positivity of a signed density at the right end of its support).

All verdict certificates carry enough data to be re-checked independently.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .config import DEFAULT, Settings
from .measures import (
    DiscreteFinite,
    DiscreteRule,
    Measure,
    MomentValue,
    PiecewisePolyDensity,
    cdf,
    moment,
    piecewise_combine,
    rat_str,
    scaled_moment_prefix,
    sign_of_difference,
    support_bounds,
)
from .polynomials import (
    antiderivative,
    add,
    evaluate,
    is_zero,
    nonneg_on,
    poly,
    refine_root_below,
    region_signs,
    scale,
    sub,
)

STRICTLY_BELOW = "strictly-below"
STRICTLY_ABOVE = "strictly-above"
EQUAL_PREFIX = "equal-prefix"
ALTERNATION = "alternation"
UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class TailVerdict:
    """Outcome of a tail-order comparison between mu1 and mu2.

    ``strictly-below`` means mu1 precedes mu2. ``label`` is "proved" only
    when a certifier established the claim for all sufficiently large k;
    prefix scans are "heuristic".
    """

    kind: str
    label: str
    certificate: dict | None = None

    def to_json(self) -> dict:
        out = {"verdict": self.kind, "label": self.label}
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out


def moment_difference_signs(
    mu1: Measure, mu2: Measure, K: int, settings: Settings = DEFAULT
) -> list[str]:
    """Signs of s_k(mu2) - s_k(mu1) for k = 0..K ('+', '-', '0', '?').

    Both prefixes are computed under one common scale with incremental
    scanners; scaling by a shared positive factor leaves every sign intact.
    """
    left, right = scaled_moment_prefix([mu1, mu2], K, settings)
    return [sign_of_difference(a, b) for a, b in zip(left, right)]


def _alternation_witness(signs: list[str]) -> list[tuple[int, str]]:
    runs: list[tuple[int, str]] = []
    for k, s in enumerate(signs):
        if s in ("+", "-") and (not runs or runs[-1][1] != s):
            runs.append((k, s))
    return runs


def compare_empirical(
    mu1: Measure, mu2: Measure, K: int | None = None, settings: Settings = DEFAULT
) -> TailVerdict:
    """Scan sign(s_k(mu2) - s_k(mu1)) for k <= K (prefix heuristic).

    Not a proof of eventual dominance: constant signs up to K say nothing
    about k > K unless paired with a certifier. Indeterminate signs (interval
    arithmetic too coarse) break runs and can force an undetermined verdict.
    """
    if K is None:
        K = settings.compare_depth
    signs = moment_difference_signs(mu1, mu2, K, settings)

    # eventual-equality prefix: everything from some index on is exactly zero
    last_nonzero = max(
        (k for k, s in enumerate(signs) if s != "0"), default=-1
    )
    if last_nonzero < 0 or all(s == "0" for s in signs[last_nonzero:]):
        return TailVerdict(
            EQUAL_PREFIX,
            "heuristic",
            {"cert": "equal-prefix", "agree_from": last_nonzero + 1, "checked_to": K},
        )

    # four or more strict sign changes outrank a stable suffix: right after
    # the last flip the suffix is always constant, and treating that as
    # dominance would hide exactly the pairs this scan is meant to expose
    witness = _alternation_witness(signs)
    if len(witness) >= 5:  # at least four strict sign changes
        return TailVerdict(
            ALTERNATION,
            "heuristic",
            {
                "cert": "alternation-witness",
                "indices": [[k, s] for k, s in witness],
                "checked_to": K,
            },
        )

    for strict, kind in (("+", STRICTLY_BELOW), ("-", STRICTLY_ABOVE)):
        bad = [k for k, s in enumerate(signs) if s not in ("0", strict)]
        n0 = (max(bad) + 1) if bad else 0
        if n0 <= K and strict in signs[n0:]:
            return TailVerdict(
                kind,
                "heuristic",
                {"cert": "moment-prefix", "n0": n0, "checked_to": K},
            )
    reason = "indeterminate-signs" if "?" in signs else "no-stable-pattern"
    return TailVerdict(
        UNDETERMINED, "n/a", {"cert": "undetermined", "depth": K, "reason": reason}
    )


# ---------------------------------------------------------------------------
# exact decision procedure for piecewise polynomial densities
# ---------------------------------------------------------------------------


def decide_piecewise(
    d1: PiecewisePolyDensity, d2: PiecewisePolyDensity
) -> TailVerdict:
    """Exact total-order decision for unsigned piecewise densities.

    Forms the difference on the common breakpoint refinement and inspects
    the rightmost interval where it is not identically zero: the constant
    sign of the difference on the rightmost root-free subinterval settles
    eventual dominance of the moments. Never alternates: this class is
    totally ordered.
    """
    if d1.signed or d2.signed:
        raise ValueError("decide_piecewise requires unsigned densities")
    diff = piecewise_combine([(Fraction(1), d2), (Fraction(-1), d1)])
    bps, pieces = diff.breakpoints, diff.pieces
    for i in range(len(pieces) - 1, -1, -1):
        if is_zero(pieces[i]):
            continue
        lo, hi = bps[i], bps[i + 1]
        roots, samples, signs = region_signs(pieces[i], lo, hi)
        sgn = signs[-1]
        witness = samples[-1]
        # left end of the certified interval: past every interior root, so
        # the sign is constant on [left, hi] (0 allowed at left itself)
        interior = [r for r in roots if not (r[0] == hi and r[1] == hi)]
        if not interior:
            left = lo
        else:
            rlo, rhi = interior[-1]
            if rhi >= hi:
                rlo, rhi = refine_root_below(pieces[i], rlo, rhi, hi)
            left = rhi
        kind = STRICTLY_BELOW if sgn > 0 else STRICTLY_ABOVE
        return TailVerdict(
            kind,
            "proved",
            {
                "cert": "rightmost-difference",
                "interval": [rat_str(left), rat_str(hi)],
                "sign": "+" if sgn > 0 else "-",
                "witness": rat_str(witness),
            },
        )
    return TailVerdict(
        EQUAL_PREFIX, "proved", {"cert": "equal-prefix", "agree_from": 0}
    )


# ---------------------------------------------------------------------------
# sufficient condition 1: CDF dominance from a point onward
# ---------------------------------------------------------------------------


def _cdf_events(mu: Measure, lo: Fraction, hi: Fraction) -> list[Fraction]:
    if isinstance(mu, DiscreteFinite):
        return [x for x, _ in mu.atoms if lo <= x <= hi]
    if isinstance(mu, PiecewisePolyDensity):
        return [b for b in mu.breakpoints if lo <= b <= hi]
    if isinstance(mu, DiscreteRule):
        return [x for x, _ in mu.atoms() if lo <= x <= hi]
    raise TypeError


def _cdf_segment_poly(mu: Measure, lo: Fraction, hi: Fraction) -> tuple:
    """CDF of an exact measure restricted to [lo, hi) as one polynomial."""
    base = cdf(mu, lo).value
    if isinstance(mu, DiscreteFinite):
        return poly([base])
    bps = mu.breakpoints
    for i in range(len(mu.pieces)):
        if bps[i] <= lo and hi <= bps[i + 1]:
            ad = antiderivative(mu.pieces[i])
            return add(sub(ad, poly([evaluate(ad, lo)])), poly([base]))
    return poly([base])  # segment outside the support


def certify_cdf_dominance(
    mu1: Measure, mu2: Measure, x0, settings: Settings = DEFAULT
) -> TailVerdict:
    """Certify mu1 <= mu2 in the tail order from CDF dominance.

    Verifies F1(x0) > F2(x0) and F1 >= F2 everywhere on [x0, b] (note the
    reversal: the measure whose CDF dominates has the smaller moments). Exact
    for finite-atom and piecewise polynomial measures; rule-based measures
    are only interval-checked, so a dominance that the intervals cannot
    separate comes back undetermined rather than falsely certified.
    """
    x0 = Fraction(x0)
    b = max(support_bounds(mu1)[1], support_bounds(mu2)[1])
    F1, F2 = cdf(mu1, x0, settings), cdf(mu2, x0, settings)
    if not F1.lower > F2.upper:
        if F1.upper > F2.lower and not (F1.exact and F2.exact):
            return _cdf_undetermined(x0, "intervals-cannot-separate-at-x0")
        return _cdf_failure(x0, F1, F2)

    events = sorted(
        set(_cdf_events(mu1, x0, b)) | set(_cdf_events(mu2, x0, b)) | {x0, b}
    )
    exact_kinds = not (
        isinstance(mu1, DiscreteRule) or isinstance(mu2, DiscreteRule)
    )
    if exact_kinds:
        for lo, hi in zip(events, events[1:]):
            seg = sub(
                _cdf_segment_poly(mu1, lo, hi), _cdf_segment_poly(mu2, lo, hi)
            )
            ok, witness = nonneg_on(seg, lo, hi)
            if not ok:
                return _cdf_failure(
                    witness, cdf(mu1, witness, settings), cdf(mu2, witness, settings)
                )
        return TailVerdict(
            STRICTLY_BELOW,
            "proved",
            {"cert": "cdf-dominance", "x0": rat_str(x0)},
        )

    # rule-based measures: interval checks at the recorded atoms only
    for e in events:
        G1, G2 = cdf(mu1, e, settings), cdf(mu2, e, settings)
        if G1.upper < G2.lower:
            return _cdf_failure(e, G1, G2)
    return _cdf_undetermined(
        x0, "rule-measures-checked-only-at-truncated-atoms"
    )


def _cdf_failure(x, F1: MomentValue, F2: MomentValue) -> TailVerdict:
    return TailVerdict(
        UNDETERMINED,
        "n/a",
        {
            "cert": "cdf-dominance-failed",
            "violating_x": rat_str(Fraction(x)),
            "F1": rat_str(F1.value),
            "F2": rat_str(F2.value),
        },
    )


def _cdf_undetermined(x0, reason: str) -> TailVerdict:
    return TailVerdict(
        UNDETERMINED,
        "n/a",
        {"cert": "cdf-dominance-undetermined", "x0": rat_str(Fraction(x0)), "reason": reason},
    )


# ---------------------------------------------------------------------------
# sufficient condition 2: eventual positivity of a signed density
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EventualPositivity:
    """Certificate that the moments of a signed density end up positive.

    ``first_positive_order`` is the first k whose exact moment is strictly
    positive; the hypotheses (density positive at x0, nonnegative right of
    x0) guarantee positivity of every sufficiently large order.
    """

    status: str  # "certified" | "failed" | "undetermined"
    x0: Fraction
    first_positive_order: int | None = None
    witness: Fraction | None = None

    @property
    def certified(self) -> bool:
        return self.status == "certified"

    def to_json(self) -> dict:
        out = {"cert": "density-dominance", "status": self.status, "x0": rat_str(self.x0)}
        if self.first_positive_order is not None:
            out["first_positive_order"] = self.first_positive_order
        if self.witness is not None:
            out["witness"] = rat_str(self.witness)
        return out


def certify_eventual_positive(
    f: PiecewisePolyDensity, x0, settings: Settings = DEFAULT
) -> EventualPositivity:
    """Verify f(x0) > 0 and f >= 0 on [x0, b]; then locate the first k
    whose moment is positive by exact evaluation (capped scan)."""
    x0 = Fraction(x0)
    a, b = f.support
    if f.evaluate(x0) <= 0:
        return EventualPositivity("failed", x0, witness=x0)
    for p, lo, hi in zip(f.pieces, f.breakpoints, f.breakpoints[1:]):
        if hi <= x0:
            continue
        ok, witness = nonneg_on(p, max(lo, x0), hi)
        if not ok:
            return EventualPositivity("failed", x0, witness=witness)
    for k in range(settings.positivity_cap + 1):
        if moment(f, k, settings).value > 0:
            return EventualPositivity("certified", x0, first_positive_order=k)
    return EventualPositivity("undetermined", x0)


def verify_rightmost_difference(
    d1: PiecewisePolyDensity, d2: PiecewisePolyDensity, certificate: dict
) -> bool:
    """Independent replay of a decide_piecewise certificate.

    Checks that the signed difference is nonzero with the claimed sign at the
    witness, keeps that sign (weakly) on the certified interval, and vanishes
    identically to its right.
    """
    diff = piecewise_combine([(Fraction(1), d2), (Fraction(-1), d1)])
    if certificate.get("cert") == "equal-prefix":
        return diff.is_identically_zero()
    lo = Fraction(certificate["interval"][0])
    hi = Fraction(certificate["interval"][1])
    sgn = 1 if certificate["sign"] == "+" else -1
    if sgn * diff.evaluate(Fraction(certificate["witness"])) <= 0:
        return False
    for p, plo, phi in zip(diff.pieces, diff.breakpoints, diff.breakpoints[1:]):
        seg_lo, seg_hi = max(plo, lo), min(phi, hi)
        if seg_lo < seg_hi and not nonneg_on(scale(p, sgn), seg_lo, seg_hi)[0]:
            return False
        if plo >= hi and not is_zero(p):
            return False
    return True
