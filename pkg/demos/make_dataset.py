"""Regenerate demos/data/banks.csv, a synthetic 30-bank table.

The schema mirrors a commercial-bank rating sheet (asset size, provision
coverage, capital adequacy, non-performing loans, profitability) with four
institution categories. All names and figures are invented; asset sizes lean
on the category so the default ranking loosely follows institution tier.
"""

from pathlib import Path

import numpy as np

HERE = Path(__file__).parent

GROUPS = [
    ("Large State-owned Commercial Bank",
     ["Meridian", "Continental", "Unity", "Harbor", "Pacifica"],
     (60_000, 120_000)),
    ("Joint-stock Commercial Bank",
     ["Evergrowth", "Lighthouse", "Crestline", "Silverbridge", "Northwind",
      "Beacon", "Atlas"],
     (18_000, 70_000)),
    ("City Commercial Bank",
     ["Lakeshore", "Riverton", "Stonegate", "Fairport", "Eastfield",
      "Hillcrest", "Westbrook", "Oakmont", "Seacliff", "Milltown"],
     (3_000, 20_000)),
    ("Rural Commercial Bank",
     ["Greenfield", "Springvale", "Clearwater", "Maplewood", "Sunridge",
      "Pinehollow", "Wheatland", "Foxglen"],
     (900, 9_000)),
]

HEADER = (
    "bank,bank_type,asset_size,provision_coverage,capital_adequacy_ratio,"
    "non_performing_loans_ratio,asset_profit_ratio,capital_profit_ratio"
)


def main() -> None:
    rng = np.random.default_rng(20240601)
    rows = []
    for type_label, places, (lo, hi) in GROUPS:
        short = type_label.split()[0] if "State-owned" not in type_label else "State"
        for place in places:
            quality = rng.uniform(0.0, 1.0)
            asset = rng.uniform(lo, hi)
            provision = 130 + 900 * (0.35 * quality + 0.65 * rng.uniform(0, 1))
            capital = 9.5 + 8.0 * (0.5 * quality + 0.5 * rng.uniform(0, 1))
            npl = 3.4 - 2.8 * (0.6 * quality + 0.4 * rng.uniform(0, 1))
            asset_profit = 0.3 + 1.3 * (0.4 * quality + 0.6 * rng.uniform(0, 1))
            capital_profit = 6.0 + 12.0 * (0.4 * quality + 0.6 * rng.uniform(0, 1))
            name = f"{place} {short} Bank" if short != "City" else f"Bank of {place}"
            rows.append(
                f"{name},{type_label},{asset:.0f},{provision:.2f},{capital:.2f},"
                f"{npl:.2f},{asset_profit:.2f},{capital_profit:.2f}"
            )
    out = HERE / "data" / "banks.csv"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(HEADER + "\n" + "\n".join(rows) + "\n", encoding="utf-8")
    print(f"wrote {out} ({len(rows)} banks)")


if __name__ == "__main__":
    main()
