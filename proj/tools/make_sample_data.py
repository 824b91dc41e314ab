#!/usr/bin/env python3
"""Generate the bundled synthetic price file (long form, one row per asset and day).

Returns follow a market + sector factor model, so the correlation graph has
the dense, clustered structure of real equity data. Output is deterministic.
"""
import argparse
import csv

import numpy as np
import pandas as pd

SECTORS = ["TEC", "FIN", "HLT", "ENR", "CON"]


def generate(n_assets, n_days, seed):
    rng = np.random.default_rng(seed)
    dates = pd.bdate_range("2020-01-02", periods=n_days + 1)
    market = rng.normal(0.0004, 0.011, n_days + 1)
    sector_moves = rng.normal(0.0, 0.008, (n_days + 1, len(SECTORS)))

    rows = []
    for a in range(n_assets):
        sector = a % len(SECTORS)
        name = f"{SECTORS[sector]}{a // len(SECTORS) + 1:02d}"
        beta_m = rng.uniform(0.6, 1.4)
        beta_s = rng.uniform(0.5, 1.5)
        drift = rng.normal(0.0002, 0.0004)
        idio = rng.normal(0.0, rng.uniform(0.007, 0.014), n_days + 1)
        ret = drift + beta_m * market + beta_s * sector_moves[:, sector] + idio
        ret[0] = 0.0
        close = rng.uniform(20, 300) * np.cumprod(1.0 + ret)
        spread = np.abs(rng.normal(0.0, 0.006, n_days + 1))
        open_ = close * (1.0 + rng.normal(0.0, 0.004, n_days + 1))
        high = np.maximum(open_, close) * (1.0 + spread)
        low = np.minimum(open_, close) * (1.0 - spread)
        volume = rng.integers(200_000, 5_000_000, n_days + 1)
        for t, d in enumerate(dates):
            rows.append((d.strftime("%Y-%m-%d"), open_[t], high[t], low[t], close[t], volume[t], name))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--assets", type=int, default=40)
    ap.add_argument("--days", type=int, default=755)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--out", default="data/sample_prices.csv")
    args = ap.parse_args()

    with open(args.out, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["date", "open", "high", "low", "close", "volume", "Name"])
        for d, o, h, l, c, v, name in generate(args.assets, args.days, args.seed):
            w.writerow([d, f"{o:.4f}", f"{h:.4f}", f"{l:.4f}", f"{c:.4f}", int(v), name])


if __name__ == "__main__":
    main()
