"""Exact set algebra over the naturals for filter and density questions.

Sets are represented in an eventually periodic normal form: a modulus M,
one threshold per residue class (membership means n >= threshold in that
class), plus finite include/exclude patches. This family is closed under
union, intersection, complement and difference, and membership, emptiness,
equality and the harmonic measure theta(S) = sum(1/n, n in S) are all
decidable exactly: theta diverges iff some residue class is active.

Two extensions cover what the constructions produce: geometric sets
{c * r^k} with an exact convergent theta value, and certified-infinite
prefix sets (an explicit finite prefix plus a machine-checked reason the
set keeps growing), which participate in finite-intersection-property
arguments the way an infinite set does.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .config import DEFAULT, Settings


class UnsupportedSetOperation(ValueError):
    """The requested combination leaves the decidable vocabulary."""


@dataclass(frozen=True)
class StructuredSet:
    """Eventually periodic subset of the naturals plus thin extensions.

    ``thresholds[r]`` is None when residue class r (mod modulus) is empty,
    otherwise the least member of that class. ``include``/``exclude`` are
    finite patches (include disjoint from the periodic part, exclude inside
    it). ``geoms`` lists geometric rays (c, r) for {c * r^k : k >= 0}.
    ``complemented`` flips membership of the whole description; for purely
    periodic sets it is normalized away on construction.
    """

    modulus: int = 1
    thresholds: tuple[int | None, ...] = (None,)
    include: frozenset[int] = frozenset()
    exclude: frozenset[int] = frozenset()
    geoms: tuple[tuple[int, int], ...] = ()
    complemented: bool = False

    def __post_init__(self):
        if self.modulus < 1 or len(self.thresholds) != self.modulus:
            raise ValueError("need one threshold per residue class")
        ths = []
        for r, t in enumerate(self.thresholds):
            if t is not None:
                if t < 0:
                    raise ValueError("thresholds must be nonnegative")
                t += (r - t) % self.modulus  # least class member >= t
            ths.append(t)
        geoms = tuple(sorted(set((int(c), int(r)) for c, r in self.geoms)))
        for c, r in geoms:
            if c < 1 or r < 2:
                raise ValueError("geometric rays need c >= 1 and ratio >= 2")
        include = frozenset(int(x) for x in self.include)
        exclude = frozenset(int(x) for x in self.exclude)
        if any(x < 0 for x in include | exclude):
            raise ValueError("patches must be natural numbers")
        base = lambda n: self._in_periodic(n, ths) or self._in_geoms(n, geoms)
        include = frozenset(x for x in include if not base(x))
        exclude = frozenset(x for x in exclude if base(x))
        object.__setattr__(self, "thresholds", tuple(ths))
        object.__setattr__(self, "geoms", geoms)
        object.__setattr__(self, "include", include)
        object.__setattr__(self, "exclude", exclude)
        if self.complemented and not geoms:
            # materialize the complement: periodic sets are closed under it
            flipped = _complement_periodic(
                tuple(ths), self.modulus, include, exclude
            )
            object.__setattr__(self, "modulus", flipped.modulus)
            object.__setattr__(self, "thresholds", flipped.thresholds)
            object.__setattr__(self, "include", flipped.include)
            object.__setattr__(self, "exclude", flipped.exclude)
            object.__setattr__(self, "complemented", False)

    def _in_periodic(self, n: int, ths=None) -> bool:
        ths = self.thresholds if ths is None else ths
        t = ths[n % self.modulus]
        return t is not None and n >= t

    def _in_geoms(self, n: int, geoms=None) -> bool:
        for c, r in self.geoms if geoms is None else geoms:
            v = c
            while v < n:
                v *= r
            if v == n:
                return True
        return False

    def __contains__(self, n: int) -> bool:
        n = int(n)
        if n < 0:
            return False
        inside = (
            (self._in_periodic(n) or self._in_geoms(n) or n in self.include)
            and n not in self.exclude
        )
        return inside != self.complemented

    # -- constructors -------------------------------------------------------

    @staticmethod
    def naturals() -> "StructuredSet":
        return StructuredSet(1, (0,))

    @staticmethod
    def empty() -> "StructuredSet":
        return StructuredSet(1, (None,))

    @staticmethod
    def finite(elements) -> "StructuredSet":
        return StructuredSet(1, (None,), include=frozenset(elements))

    @staticmethod
    def progression(start: int, step: int) -> "StructuredSet":
        """{start + k * step : k >= 0}."""
        if step < 1 or start < 0:
            raise ValueError("need start >= 0 and step >= 1")
        ths = [None] * step
        ths[start % step] = start
        return StructuredSet(step, tuple(ths))

    @staticmethod
    def from_(n: int) -> "StructuredSet":
        """{m : m >= n}."""
        return StructuredSet(1, (max(0, n),))

    @staticmethod
    def geometric(c: int, r: int) -> "StructuredSet":
        return StructuredSet(1, (None,), geoms=((c, r),))

    # -- structure tests ----------------------------------------------------

    @property
    def has_periodic_part(self) -> bool:
        return any(t is not None for t in self.thresholds)

    def is_empty(self) -> bool:
        if self.complemented:
            return False  # the complement of a thin set is never empty
        return not (
            self.has_periodic_part or self.geoms or self.include
        )

    def is_finite(self) -> bool:
        if self.complemented:
            return False
        return not self.has_periodic_part and not self.geoms

    def is_infinite_set(self) -> bool:
        return not self.is_finite()

    def elements(self, limit: int | None = None) -> list[int]:
        """All elements when finite, else members below limit."""
        if self.is_finite():
            out = set(self.include)
            return sorted(out)
        if limit is None:
            raise UnsupportedSetOperation("infinite set needs a limit")
        return [n for n in range(limit) if n in self]

    # -- boolean algebra ----------------------------------------------------

    def complement(self) -> "StructuredSet":
        if self.geoms or self.complemented:
            return StructuredSet(
                self.modulus,
                self.thresholds,
                self.include,
                self.exclude,
                self.geoms,
                not self.complemented,
            )
        return _complement_periodic(
            self.thresholds, self.modulus, self.include, self.exclude
        )

    def union(self, other: "StructuredSet") -> "StructuredSet":
        if self.complemented or other.complemented:
            # ~A | B == ~(A & ~B); fall back through De Morgan
            return (
                self.complement().intersection(other.complement()).complement()
            )
        M = math.lcm(self.modulus, other.modulus)
        ths = []
        for r in range(M):
            cand = [
                t
                for t in (
                    self._class_threshold(r),
                    other._class_threshold(r),
                )
                if t is not None
            ]
            ths.append(min(cand) if cand else None)
        out = StructuredSet(M, tuple(ths), geoms=self.geoms + other.geoms)
        return _repatch(out, self.patch_candidates() | other.patch_candidates(),
                        lambda n: n in self or n in other)

    def intersection(self, other: "StructuredSet") -> "StructuredSet":
        if self.complemented and not other.complemented:
            return other.difference(self.complement())
        if other.complemented and not self.complemented:
            return self.difference(other.complement())
        if self.complemented and other.complemented:
            return (
                self.complement().union(other.complement()).complement()
            )
        if self.geoms and other.geoms:
            raise UnsupportedSetOperation(
                "intersection of two geometric-bearing sets"
            )
        if self.geoms or other.geoms:
            geo, plain = (self, other) if self.geoms else (other, self)
            if plain.is_finite():
                return StructuredSet.finite(
                    x for x in plain.elements() if x in geo
                )
            if plain.complement().is_finite():
                # cofinite cut: drop finitely many members from the rays
                missing = plain.complement().elements()
                return StructuredSet(
                    geo.modulus,
                    geo.thresholds,
                    frozenset(x for x in geo.include if x in plain),
                    geo.exclude | frozenset(missing),
                    geo.geoms,
                )
            raise UnsupportedSetOperation(
                "geometric ray against an infinite, non-cofinite set"
            )
        M = math.lcm(self.modulus, other.modulus)
        ths = []
        for r in range(M):
            t1 = self._class_threshold(r)
            t2 = other._class_threshold(r)
            ths.append(max(t1, t2) if t1 is not None and t2 is not None else None)
        out = StructuredSet(M, tuple(ths))
        return _repatch(out, self.patch_candidates() | other.patch_candidates(),
                        lambda n: n in self and n in other)

    def difference(self, other: "StructuredSet") -> "StructuredSet":
        if other.is_finite():
            hit = frozenset(x for x in other.elements() if x in self)
            return StructuredSet(
                self.modulus,
                self.thresholds,
                self.include - hit,
                self.exclude | hit,
                self.geoms,
                self.complemented,
            ) if not self.complemented else StructuredSet.naturals().difference(
                self.complement().union(other)
            )
        return self.intersection(other.complement())

    def _class_threshold(self, r: int) -> int | None:
        # raw threshold for the refined class r of a larger modulus; the
        # constructor rounds it up to the least member of that class
        return self.thresholds[r % self.modulus]

    def patch_candidates(self) -> frozenset[int]:
        return self.include | self.exclude

    def is_subset(self, other: "StructuredSet") -> bool:
        return self.difference(other).is_empty()

    def equals(self, other: "StructuredSet") -> bool:
        return self.is_subset(other) and other.is_subset(self)

    def to_json(self) -> dict:
        return {
            "modulus": self.modulus,
            "thresholds": list(self.thresholds),
            "include": sorted(self.include),
            "exclude": sorted(self.exclude),
            "geoms": [list(g) for g in self.geoms],
            "complemented": self.complemented,
        }


def _complement_periodic(
    thresholds: tuple, modulus: int, include: frozenset, exclude: frozenset
) -> StructuredSet:
    ths = []
    extra: set[int] = set(exclude)
    for r in range(modulus):
        t = thresholds[r]
        if t is None:
            ths.append(r)
        else:
            ths.append(None)
            extra.update(range(r, t, modulus))
    out = StructuredSet(modulus, tuple(ths))
    return _repatch(
        out,
        frozenset(extra) | include,
        lambda n: not (
            ((thresholds[n % modulus] is not None and n >= thresholds[n % modulus])
             or n in include) and n not in exclude
        ),
    )


def _repatch(base: StructuredSet, candidates: frozenset, truth) -> StructuredSet:
    include = set(base.include)
    exclude = set(base.exclude)
    for n in candidates:
        want = truth(n)
        have = n in base
        if want and not have:
            include.add(n)
            exclude.discard(n)
        elif have and not want:
            exclude.add(n)
            include.discard(n)
    return StructuredSet(
        base.modulus,
        base.thresholds,
        frozenset(include),
        frozenset(exclude),
        base.geoms,
        base.complemented,
    )


@dataclass(frozen=True)
class CertifiedInfiniteSet:
    """Explicit finite prefix plus a machine-checked growth certificate.

    Stands in for sets produced by open-ended constructions (dominance index
    sets, moment agreement sets): only a prefix is computable, but the
    construction guarantees indefinitely many further members. For
    intersection arguments it behaves like an infinite set.
    """

    prefix: tuple[int, ...]
    certificate: dict
    removed: frozenset[int] = frozenset()

    def __post_init__(self):
        pf = tuple(sorted(set(int(x) for x in self.prefix)))
        object.__setattr__(self, "prefix", pf)

    def __contains__(self, n: int) -> bool:
        return n in self.prefix and n not in self.removed

    def without(self, finite: StructuredSet) -> "CertifiedInfiniteSet":
        hit = frozenset(x for x in self.prefix if x in finite)
        return CertifiedInfiniteSet(
            self.prefix, self.certificate, self.removed | hit
        )


# ---------------------------------------------------------------------------
# theta measure and filter membership
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ThetaResult:
    converges: bool
    value: Fraction | None = None  # exact when convergent
    witness: tuple[int, int] | None = None  # (start, step) of a divergent AP

    def to_json(self) -> dict:
        if self.converges:
            return {"theta": "converges", "value": str(self.value)}
        return {"theta": "diverges", "witness_progression": list(self.witness)}


def theta_measure(S: StructuredSet) -> ThetaResult:
    """Decide sum(1/n, n in S, n >= 1): diverges iff S contains a full
    arithmetic progression; otherwise the exact rational value."""
    if S.complemented:
        inner = StructuredSet(
            S.modulus, S.thresholds, S.include, S.exclude, S.geoms, False
        )
        res = theta_measure(inner)
        if res.converges:
            # co-thin set: inner has no active residue class, so it consists
            # of finitely many patch elements plus geometric rays. Beyond c a
            # ray member is divisible by its ratio, so any start coprime to
            # all ratios and beyond the finite members spawns a progression
            # (step = lcm of the ratios) that never meets the inner set.
            ratios = [r for _, r in S.geoms]
            step = math.lcm(*ratios) if ratios else 1
            finite_members = set(inner.include) | {c for c, _ in S.geoms}
            start = max(finite_members, default=0) + 1
            while any(start % r == 0 for r in ratios):
                start += 1
            for k in range(16):
                assert (start + k * step) in S
            return ThetaResult(False, witness=(start, step))
        return ThetaResult(False, witness=res.witness)

    for r, t in enumerate(S.thresholds):
        if t is not None:
            # divergent witness: slide past 0 and the finite exclusions so
            # the whole reported progression lies inside S
            start = max([t, 1] + [x + 1 for x in S.exclude])
            start += (r - start) % S.modulus
            return ThetaResult(False, witness=(start, S.modulus))

    total = Fraction(0)
    for c, r in S.geoms:
        # sum 1/(c r^k) = r / (c (r - 1)), minus any patched-out members
        total += Fraction(r, c * (r - 1))
        for x in S.exclude:
            if x >= 1 and StructuredSet.geometric(c, r).__contains__(x):
                total -= Fraction(1, x)
        if 0 in StructuredSet.geometric(c, r):
            pass  # c >= 1, so 0 never appears
    for x in S.include:
        if x >= 1:
            total += Fraction(1, x)
    return ThetaResult(True, value=total)


def in_frechet(S: StructuredSet) -> bool:
    """Cofinite test: complement finite."""
    return S.complement().is_finite()


def in_msz_filter(S: StructuredSet) -> bool:
    """Complement has finite harmonic mass."""
    return theta_measure(S.complement()).converges


@dataclass(frozen=True)
class MszVerdict:
    status: str  # "certified" | "not-msz" | "undecided-prefix"
    partial_sum: Fraction | None = None
    value: Fraction | None = None

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.partial_sum is not None:
            out["partial_sum"] = str(self.partial_sum)
        if self.value is not None:
            out["theta"] = str(self.value)
        return out


def is_msz_sequence(seq, certificate: dict | None = None) -> MszVerdict:
    """Decide whether an increasing integer sequence has divergent
    reciprocal sum.

    Structured sets are decided exactly. An explicit prefix is certified
    only through a run certificate (disjoint increasing blocks [l, 2l],
    each inside the claimed set, each of harmonic mass >= 1/2, produced by
    a construction that extends indefinitely); a bare prefix yields only
    its partial sum.
    """
    if isinstance(seq, StructuredSet):
        res = theta_measure(seq)
        if res.converges:
            return MszVerdict("not-msz", value=res.value)
        return MszVerdict("certified")
    if isinstance(seq, CertifiedInfiniteSet):
        certificate = certificate or (
            seq.certificate if seq.certificate.get("cert") == "harmonic-run" else None
        )
        prefix = list(seq.prefix)
    else:
        prefix = sorted(int(x) for x in seq)
        if any(x < 0 for x in prefix) or len(set(prefix)) != len(prefix):
            raise ValueError("need a strictly increasing nonnegative sequence")
    partial = sum((Fraction(1, n) for n in prefix if n >= 1), Fraction(0))
    if certificate and certificate.get("cert") == "harmonic-run":
        runs = [tuple(r) for r in certificate["runs"]]
        members = set(prefix)
        prev_end = 0
        for lo, hi in runs:
            if lo <= prev_end or hi != 2 * lo:
                return MszVerdict("undecided-prefix", partial_sum=partial)
            if any(i not in members for i in range(lo, hi + 1)):
                return MszVerdict("undecided-prefix", partial_sum=partial)
            if sum(Fraction(1, i) for i in range(lo, hi + 1)) < Fraction(1, 2):
                return MszVerdict("undecided-prefix", partial_sum=partial)
            prev_end = hi
        if runs:
            return MszVerdict("certified", partial_sum=partial)
    return MszVerdict("undecided-prefix", partial_sum=partial)


# ---------------------------------------------------------------------------
# finite intersection property
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FipResult:
    holds: bool
    witness: tuple[int, ...] | None = None  # indices of an empty subfamily

    def to_json(self) -> dict:
        if self.holds:
            return {"fip": "yes"}
        return {"fip": "no", "empty_subfamily": list(self.witness)}


def has_fip(family: list, settings: Settings = DEFAULT) -> FipResult:
    """Decide the finite intersection property for a finite family.

    Fast path: when every member but at most one is cofinite and the
    remaining one is infinite, all finite intersections are infinite (a
    cofinite cut removes finitely many elements), so the answer is yes
    without touching the elements. Otherwise the family must be small
    enough for the exhaustive check, which reduces to emptiness of the full
    intersection (any empty subfamily forces the full one empty).
    """
    structured = [s for s in family if isinstance(s, StructuredSet)]
    certified = [s for s in family if isinstance(s, CertifiedInfiniteSet)]
    if len(structured) + len(certified) != len(family):
        raise TypeError("family members must be structured or certified sets")

    non_cofinite = [s for s in structured if not in_frechet(s)]
    if len(certified) + len(non_cofinite) <= 1:
        lone = certified[0] if certified else (
            non_cofinite[0] if non_cofinite else None
        )
        if lone is None or isinstance(lone, CertifiedInfiniteSet) or lone.is_infinite_set():
            return FipResult(True)

    if certified:
        raise UnsupportedSetOperation(
            "certified-infinite sets support FIP only against cofinite families"
        )
    if len(structured) > settings.fip_bound:
        raise UnsupportedSetOperation(
            f"family larger than the exhaustive bound {settings.fip_bound}"
        )
    total = StructuredSet.naturals()
    for s in structured:
        total = total.intersection(s)
    if not total.is_empty():
        return FipResult(True)
    # shrink to a witness subfamily greedily
    idx = list(range(len(structured)))
    for i in list(idx):
        trial = [j for j in idx if j != i]
        inter = StructuredSet.naturals()
        for j in trial:
            inter = inter.intersection(structured[j])
        if inter.is_empty():
            idx = trial
    return FipResult(False, tuple(idx))


# ---------------------------------------------------------------------------
# set expression grammar (CLI surface)
#
#   expr := atom (op atom)*          op := '|' | 'U' | union sign
#                                        | '&' | intersection sign
#                                        | '\' | set-minus sign
#   atom := '(' 'ap' START STEP ')' | '(' 'geom' C R ')'
#         | '{' n (',' n)* '}' | 'N' | 'from' '(' n ')'
#         | ('complement' | '~') '(' expr ')' | '(' expr ')'
#
# binary operators share one precedence level and associate left to right
# ---------------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(ap|geom|complement|from|N|\d+|[(){},|&~\\]|∪|∩|∖|U)"
)


def _tokenize(text: str) -> list[str]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"bad set expression near {text[pos:pos + 12]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens: list[str]):
        self.toks = tokens
        self.pos = 0

    def peek(self) -> str | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ValueError(f"expected {expected!r}, got {tok!r}")
        self.pos += 1
        return tok

    def parse(self) -> StructuredSet:
        out = self.expr()
        if self.peek() is not None:
            raise ValueError(f"trailing tokens at {self.peek()!r}")
        return out

    def expr(self) -> StructuredSet:
        # all binary operators share one precedence level, left associative
        node = self.atom()
        while self.peek() in ("|", "U", "∪", "&", "∩", "\\", "∖"):
            op = self.take()
            rhs = self.atom()
            if op in ("|", "U", "∪"):
                node = node.union(rhs)
            elif op in ("&", "∩"):
                node = node.intersection(rhs)
            else:
                node = node.difference(rhs)
        return node

    def atom(self) -> StructuredSet:
        tok = self.peek()
        if tok == "N":
            self.take()
            return StructuredSet.naturals()
        if tok in ("~", "complement"):
            self.take()
            self.take("(")
            inner = self.expr()
            self.take(")")
            return inner.complement()
        if tok == "from":
            self.take()
            self.take("(")
            n = int(self.take())
            self.take(")")
            return StructuredSet.from_(n)
        if tok == "{":
            self.take()
            elems = []
            while self.peek() != "}":
                elems.append(int(self.take()))
                if self.peek() == ",":
                    self.take()
            self.take("}")
            return StructuredSet.finite(elems)
        if tok == "(":
            self.take()
            head = self.peek()
            if head == "ap":
                self.take()
                start, step = int(self.take()), int(self.take())
                self.take(")")
                return StructuredSet.progression(start, step)
            if head == "geom":
                self.take()
                c, r = int(self.take()), int(self.take())
                self.take(")")
                return StructuredSet.geometric(c, r)
            inner = self.expr()
            self.take(")")
            return inner
        raise ValueError(f"unexpected token {tok!r}")


def parse_set(text: str) -> StructuredSet:
    """Parse the CLI set grammar, e.g. '(ap 3 4) | {1,2} \\ {7}'."""
    return _Parser(_tokenize(text)).parse()
