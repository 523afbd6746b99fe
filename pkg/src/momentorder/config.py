"""Runtime settings: precision budget, search caps, default depths."""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Settings:
    # hard cap on numerator+denominator bits of any exact value; exceeding it
    # raises PrecisionExceeded instead of silently degrading
    precision_bits: int = 4_000_000
    # default depth for empirical moment-prefix comparisons
    compare_depth: int = 200
    # cap for the exponent searches inside the staged constructions
    ell_search_cap: int = 5000
    # cap for the first-positive-moment scan of the eventual-positivity check
    positivity_cap: int = 10_000
    # largest family size accepted by the exhaustive FIP decision
    fip_bound: int = 12

    def with_updates(self, **kw) -> "Settings":
        return replace(self, **kw)


DEFAULT = Settings()


def settings_from_json(data: dict) -> Settings:
    allowed = {f for f in Settings.__dataclass_fields__}
    unknown = set(data) - allowed
    if unknown:
        raise ValueError(f"unknown settings keys: {sorted(unknown)}")
    return DEFAULT.with_updates(**{k: int(v) for k, v in data.items()})
