"""Two-player games with probability-vector payoffs under the right-to-left
lexicographic order.

Payoffs supported on {1..N} are probability mass vectors; on that class the
tail order on moment sequences is the lexicographic order comparing from the
last coordinate down. One player maximizes, the other minimizes the common
payoff (the zero-sum mirror). Everything runs on exact rationals: lex
comparisons are discontinuous, so floating point would silently certify
wrong answers.

Nonexistence of equilibria is decided through the projected-game cascade:
any lex equilibrium must be a Nash equilibrium of the top-coordinate
real-valued game, whose equilibria are enumerated exactly; a candidate that
stops being an equilibrium of the next coordinate's game restricted to its
support is eliminated, and eliminating every candidate certifies that no
equilibrium exists. All reports can be replayed by an independent checker.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .measures import rat, rat_str


@dataclass(frozen=True)
class DistGame:
    """Common-payoff matrix game: payoff[i][j] is a probability vector.

    Player 1 picks the row and prefers lexicographically larger payoffs
    (from the last coordinate); Player 2 picks the column and prefers
    smaller ones.
    """

    payoffs: tuple[tuple[tuple[Fraction, ...], ...], ...]

    def __post_init__(self):
        rows = tuple(
            tuple(tuple(Fraction(x) for x in cell) for cell in row)
            for row in self.payoffs
        )
        if not rows or not rows[0]:
            raise ValueError("need at least one row and one column")
        n = len(rows[0][0])
        for row in rows:
            if len(row) != len(rows[0]):
                raise ValueError("ragged payoff matrix")
            for cell in row:
                if len(cell) != n:
                    raise ValueError("payoff vectors must share one support")
                if any(x < 0 for x in cell) or sum(cell) != 1:
                    raise ValueError("payoffs must be probability vectors")
        object.__setattr__(self, "payoffs", rows)

    @property
    def rows(self) -> int:
        return len(self.payoffs)

    @property
    def cols(self) -> int:
        return len(self.payoffs[0])

    @property
    def support_size(self) -> int:
        return len(self.payoffs[0][0])

    def to_json(self) -> dict:
        return {
            "payoffs": [
                [[rat_str(x) for x in cell] for cell in row]
                for row in self.payoffs
            ]
        }

    @staticmethod
    def from_json(data: dict) -> "DistGame":
        return DistGame(
            tuple(
                tuple(tuple(rat(x) for x in cell) for cell in row)
                for row in data["payoffs"]
            )
        )


def zero_sum_cycle_demo_game() -> DistGame:
    """2x2 game over {1,2,3} without any lex equilibrium.

    The top-coordinate projection has a unique mixed equilibrium, which the
    middle coordinate then refutes, so the cascade empties out.
    """
    t = lambda *xs: tuple(Fraction(x) for x in xs)
    return DistGame(
        (
            (t("3/10", "1/5", "1/2"), t("3/5", "3/10", "1/10")),
            (t("4/5", "1/10", "1/10"), t("3/10", "1/5", "1/2")),
        )
    )


@dataclass(frozen=True)
class MixedProfile:
    """Pair of exact mixed strategies (rows for P1, columns for P2)."""

    sigma1: tuple[Fraction, ...]
    sigma2: tuple[Fraction, ...]

    def __post_init__(self):
        for sig in (self.sigma1, self.sigma2):
            if any(p < 0 for p in sig) or sum(sig) != 1:
                raise ValueError("mixed strategies must be exact simplex points")
        object.__setattr__(self, "sigma1", tuple(Fraction(p) for p in self.sigma1))
        object.__setattr__(self, "sigma2", tuple(Fraction(p) for p in self.sigma2))

    def to_json(self) -> dict:
        return {
            "sigma1": [rat_str(p) for p in self.sigma1],
            "sigma2": [rat_str(p) for p in self.sigma2],
        }

    @staticmethod
    def from_json(data: dict) -> "MixedProfile":
        return MixedProfile(
            tuple(rat(p) for p in data["sigma1"]),
            tuple(rat(p) for p in data["sigma2"]),
        )

    @staticmethod
    def pure(i: int, m: int, j: int, n: int) -> "MixedProfile":
        s1 = [Fraction(0)] * m
        s1[i] = Fraction(1)
        s2 = [Fraction(0)] * n
        s2[j] = Fraction(1)
        return MixedProfile(tuple(s1), tuple(s2))


def lex_compare(p, q) -> int:
    """Right-to-left lexicographic order: -1, 0 or +1 as p <, =, > q."""
    p = [Fraction(x) for x in p]
    q = [Fraction(x) for x in q]
    if len(p) != len(q):
        raise ValueError("vectors must have equal length")
    for a, b in zip(reversed(p), reversed(q)):
        if a != b:
            return 1 if a > b else -1
    return 0


def expected_payoff(
    G: DistGame, profile: MixedProfile
) -> tuple[Fraction, ...]:
    """Exact expected payoff vector of a mixed profile."""
    n = G.support_size
    out = [Fraction(0)] * n
    for i, pi in enumerate(profile.sigma1):
        if pi == 0:
            continue
        for j, qj in enumerate(profile.sigma2):
            if qj == 0:
                continue
            cell = G.payoffs[i][j]
            for t in range(n):
                out[t] += pi * qj * cell[t]
    return tuple(out)


def project(G: DistGame, coordinate: int) -> tuple[tuple[Fraction, ...], ...]:
    """Real-valued matrix game from one payoff coordinate (1-based)."""
    if not 1 <= coordinate <= G.support_size:
        raise ValueError("coordinate out of range")
    t = coordinate - 1
    return tuple(
        tuple(cell[t] for cell in row) for row in G.payoffs
    )


# ---------------------------------------------------------------------------
# exact zero-sum matrix games by support enumeration
# ---------------------------------------------------------------------------


class GameSizeError(ValueError):
    pass


def _solve_square(A: list[list[Fraction]], b: list[Fraction]):
    n = len(A)
    M = [row[:] + [b[i]] for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [v * inv for v in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [v - f * w for v, w in zip(M[r], M[col])]
    return [M[i][n] for i in range(n)]


@dataclass(frozen=True)
class ZeroSumSolution:
    """Exact value and all extreme optimal strategies of a matrix game.

    The equilibria of a zero-sum game form the product of the two optimal
    polytopes, so the game has either exactly one equilibrium (both
    polytopes are points) or a continuum.
    """

    value: Fraction
    row_strategies: tuple[tuple[Fraction, ...], ...]  # extreme maximizer mixes
    col_strategies: tuple[tuple[Fraction, ...], ...]  # extreme minimizer mixes

    @property
    def unique(self) -> bool:
        return len(self.row_strategies) == 1 and len(self.col_strategies) == 1

    def to_json(self) -> dict:
        return {
            "value": rat_str(self.value),
            "row_strategies": [[rat_str(p) for p in s] for s in self.row_strategies],
            "col_strategies": [[rat_str(p) for p in s] for s in self.col_strategies],
            "unique": self.unique,
        }


def solve_zero_sum(
    A, size_bound: int = 6
) -> ZeroSumSolution:
    """Exact solution of the zero-sum game with payoff matrix A
    (row player maximizes) via support enumeration.

    Enumerates square support pairs, solves the induced linear systems over
    the rationals and keeps feasible, optimal basic solutions; the extreme
    points of both optimal polytopes all arise this way.
    """
    A = [[Fraction(x) for x in row] for row in A]
    m, n = len(A), len(A[0])
    if m > size_bound or n > size_bound:
        raise GameSizeError(f"matrix beyond the {size_bound}x{size_bound} bound")

    candidates: list[tuple[Fraction, tuple, tuple]] = []
    for size in range(1, min(m, n) + 1):
        for I in itertools.combinations(range(m), size):
            for J in itertools.combinations(range(n), size):
                # x restricted to I with equal column payoffs v on J, sum 1
                sysA = []
                sysb = []
                for j in J[1:]:
                    sysA.append(
                        [A[i][J[0]] - A[i][j] for i in I]
                    )
                    sysb.append(Fraction(0))
                sysA.append([Fraction(1)] * size)
                sysb.append(Fraction(1))
                x = _solve_square(sysA, sysb)
                sysA = []
                sysb = []
                for i in I[1:]:
                    sysA.append(
                        [A[I[0]][j] - A[i][j] for j in J]
                    )
                    sysb.append(Fraction(0))
                sysA.append([Fraction(1)] * size)
                sysb.append(Fraction(1))
                y = _solve_square(sysA, sysb)
                if x is None or y is None:
                    continue
                if any(v < 0 for v in x) or any(v < 0 for v in y):
                    continue
                xfull = [Fraction(0)] * m
                for idx, i in enumerate(I):
                    xfull[i] = x[idx]
                yfull = [Fraction(0)] * n
                for idx, j in enumerate(J):
                    yfull[j] = y[idx]
                v = sum(
                    xfull[i] * A[i][J[0]] for i in range(m)
                )
                # optimality: x guarantees >= v on every column, y <= v on
                # every row
                if any(
                    sum(xfull[i] * A[i][j] for i in range(m)) < v
                    for j in range(n)
                ):
                    continue
                if any(
                    sum(A[i][j] * yfull[j] for j in range(n)) > v
                    for i in range(m)
                ):
                    continue
                candidates.append((v, tuple(xfull), tuple(yfull)))

    if not candidates:
        raise RuntimeError("no equilibrium found; matrix game logic broken")
    value = candidates[0][0]
    assert all(v == value for v, _, _ in candidates)
    rows = tuple(sorted({x for _, x, _ in candidates}))
    cols = tuple(sorted({y for _, _, y in candidates}))
    return ZeroSumSolution(value, rows, cols)


# ---------------------------------------------------------------------------
# lexicographic best responses and equilibrium checks
# ---------------------------------------------------------------------------


def lex_best_response(
    G: DistGame, player: int, opponent: tuple[Fraction, ...]
) -> list[tuple[int, ...]]:
    """Nested face chain of the player's lexicographic best responses.

    Optimizes coordinates from the most significant down: at each level the
    face shrinks to the pure strategies attaining the optimum (max for
    Player 1, min for Player 2); mixtures over the final face are exactly
    the lex-optimal strategies, all achieving one payoff vector.
    """
    if player not in (1, 2):
        raise ValueError("player must be 1 or 2")
    opponent = tuple(Fraction(p) for p in opponent)
    count = G.rows if player == 1 else G.cols
    n = G.support_size

    def coord_payoff(pure: int, t: int) -> Fraction:
        if player == 1:
            return sum(
                opponent[j] * G.payoffs[pure][j][t] for j in range(G.cols)
            )
        return sum(
            opponent[i] * G.payoffs[i][pure][t] for i in range(G.rows)
        )

    face = tuple(range(count))
    chain = [face]
    for t in range(n - 1, -1, -1):
        vals = {s: coord_payoff(s, t) for s in face}
        best = max(vals.values()) if player == 1 else min(vals.values())
        face = tuple(s for s in face if vals[s] == best)
        chain.append(face)
    return chain


def check_lex_equilibrium(G: DistGame, profile: MixedProfile) -> dict:
    """Exact equilibrium test with an improving deviation on failure.

    A mixed strategy is lex optimal iff its support lies inside the final
    best-response face (all face mixtures share the optimal payoff vector,
    and the lex maximum over the simplex is attained at a vertex).
    """
    for player, sigma, opponent in (
        (1, profile.sigma1, profile.sigma2),
        (2, profile.sigma2, profile.sigma1),
    ):
        face = lex_best_response(G, player, opponent)[-1]
        outside = [i for i, p in enumerate(sigma) if p > 0 and i not in face]
        if outside:
            dev = face[0]
            count = len(sigma)
            deviated = [Fraction(0)] * count
            deviated[dev] = Fraction(1)
            if player == 1:
                old = expected_payoff(G, MixedProfile(sigma, opponent))
                new = expected_payoff(G, MixedProfile(tuple(deviated), opponent))
            else:
                old = expected_payoff(G, MixedProfile(opponent, sigma))
                new = expected_payoff(G, MixedProfile(opponent, tuple(deviated)))
            return {
                "equilibrium": False,
                "player": player,
                "deviation": dev,
                "payoff_before": [rat_str(x) for x in old],
                "payoff_after": [rat_str(x) for x in new],
                "lex_sign": lex_compare(new, old),
            }
    return {"equilibrium": True}


# ---------------------------------------------------------------------------
# existence analysis via the projected-game cascade
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EquilibriumReport:
    """Outcome of the cascade: a certified equilibrium, a certified
    nonexistence (per-candidate elimination data), or an abstention."""

    status: str  # "equilibrium" | "no-equilibrium" | "inconclusive"
    profile: MixedProfile | None = None
    certificate: dict | None = None

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.profile is not None:
            out["profile"] = self.profile.to_json()
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out


def _restrict(G: DistGame, rows, cols) -> DistGame:
    return DistGame(
        tuple(
            tuple(G.payoffs[i][j] for j in cols) for i in rows
        )
    )


def analyze_existence(G: DistGame, size_bound: int = 6) -> EquilibriumReport:
    """Decide lex-equilibrium existence through the coordinate cascade.

    Any lex equilibrium is a Nash equilibrium of the top-coordinate game
    (improving the most significant coordinate is a lex improvement
    regardless of the rest), so the top game's equilibria are the only
    candidates. A continuum there means abstention. The unique candidate is
    then tested coordinate by coordinate on the games restricted to its
    support; the first level where it stops being an equilibrium eliminates
    it, and with no candidates left no lex equilibrium can exist.
    """
    N = G.support_size
    if N == 1:
        sol = solve_zero_sum(project(G, 1), size_bound)
        profile = MixedProfile(sol.row_strategies[0], sol.col_strategies[0])
        check = check_lex_equilibrium(G, profile)
        assert check["equilibrium"]
        return EquilibriumReport(
            "equilibrium",
            profile,
            {"cascade": [{"coordinate": 1, "solution": sol.to_json()}]},
        )

    top = solve_zero_sum(project(G, N), size_bound)
    if not top.unique:
        return EquilibriumReport(
            "inconclusive",
            None,
            {
                "reason": "equilibrium-continuum",
                "coordinate": N,
                "solution": top.to_json(),
            },
        )
    candidate = MixedProfile(top.row_strategies[0], top.col_strategies[0])
    rows = tuple(i for i, p in enumerate(candidate.sigma1) if p > 0)
    cols = tuple(j for j, p in enumerate(candidate.sigma2) if p > 0)
    sub = _restrict(G, rows, cols)
    sub_profile = MixedProfile(
        tuple(candidate.sigma1[i] for i in rows),
        tuple(candidate.sigma2[j] for j in cols),
    )

    trail = [{"coordinate": N, "solution": top.to_json()}]
    for t in range(N - 1, 0, -1):
        A = project(sub, t)
        refute = _zero_sum_refutation(A, sub_profile)
        if refute is not None:
            side, dev, old, new = refute
            # lift the deviation back to the full strategy space
            full_dev = (rows if side == 1 else cols)[dev]
            dev_profile = _deviated(candidate, side, full_dev)
            payoff_now = expected_payoff(G, candidate)
            payoff_dev = expected_payoff(G, dev_profile)
            trail.append(
                {
                    "coordinate": t,
                    "eliminates": candidate.to_json(),
                    "coordinate_game_solution": solve_zero_sum(
                        project(G, t), size_bound
                    ).to_json(),
                    "player": side,
                    "deviation": full_dev,
                    "coordinate_payoff_before": rat_str(old),
                    "coordinate_payoff_after": rat_str(new),
                    "payoff_before": [rat_str(x) for x in payoff_now],
                    "payoff_after": [rat_str(x) for x in payoff_dev],
                    "lex_sign_for_deviator": lex_compare(payoff_dev, payoff_now)
                    * (1 if side == 1 else -1),
                }
            )
            return EquilibriumReport(
                "no-equilibrium", None, {"cascade": trail}
            )
        trail.append({"coordinate": t, "survives": True})

    check = check_lex_equilibrium(G, candidate)
    if check["equilibrium"]:
        return EquilibriumReport("equilibrium", candidate, {"cascade": trail})
    trail.append({"final_check": check})
    return EquilibriumReport("no-equilibrium", None, {"cascade": trail})


def _deviated(profile: MixedProfile, player: int, pure: int) -> MixedProfile:
    if player == 1:
        s = [Fraction(0)] * len(profile.sigma1)
        s[pure] = Fraction(1)
        return MixedProfile(tuple(s), profile.sigma2)
    s = [Fraction(0)] * len(profile.sigma2)
    s[pure] = Fraction(1)
    return MixedProfile(profile.sigma1, tuple(s))


def _zero_sum_refutation(A, profile: MixedProfile):
    """Pure deviation improving a player in the real matrix game, if any."""
    A = [[Fraction(x) for x in row] for row in A]
    m, n = len(A), len(A[0])
    x, y = profile.sigma1, profile.sigma2
    value = sum(x[i] * A[i][j] * y[j] for i in range(m) for j in range(n))
    for i in range(m):
        gain = sum(A[i][j] * y[j] for j in range(n))
        if gain > value:
            return (1, i, value, gain)
    for j in range(n):
        loss = sum(x[i] * A[i][j] for i in range(m))
        if loss < value:
            return (2, j, value, loss)
    return None


def verify_report(G: DistGame, report: EquilibriumReport) -> bool:
    """Replay a report using only lex comparisons and exact expectations."""
    if report.status == "equilibrium":
        if report.profile is None:
            return False
        return check_lex_equilibrium(G, report.profile)["equilibrium"]
    if report.status == "no-equilibrium":
        cascade = (report.certificate or {}).get("cascade", [])
        if not cascade:
            return False
        N = G.support_size
        top = solve_zero_sum(project(G, N))
        if not top.unique:
            return False
        recorded = cascade[0].get("solution", {})
        if recorded != top.to_json():
            return False
        candidate = MixedProfile(top.row_strategies[0], top.col_strategies[0])
        for step in cascade[1:]:
            if "eliminates" in step:
                side = step["player"]
                dev = _deviated(candidate, side, step["deviation"])
                before = expected_payoff(G, candidate)
                after = expected_payoff(G, dev)
                if [rat_str(v) for v in before] != step["payoff_before"]:
                    return False
                if [rat_str(v) for v in after] != step["payoff_after"]:
                    return False
                t = step["coordinate"]
                if "coordinate_game_solution" in step:
                    resolved = solve_zero_sum(project(G, t)).to_json()
                    if resolved != step["coordinate_game_solution"]:
                        return False
                # the deviation must hold all higher coordinates fixed and
                # strictly improve coordinate t for its player
                if any(before[s] != after[s] for s in range(t, N)):
                    return False
                gain = after[t - 1] - before[t - 1]
                if side == 1 and gain <= 0:
                    return False
                if side == 2 and gain >= 0:
                    return False
                want = 1 if side == 1 else -1
                if lex_compare(after, before) != want:
                    return False
                return True
        # eliminated by the final lex check instead
        return not check_lex_equilibrium(G, candidate)["equilibrium"]
    return False
