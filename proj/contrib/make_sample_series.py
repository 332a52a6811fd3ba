#!/usr/bin/env python3
"""Writes the synthetic stand-ins for the FRED BUSLOANS and EDANQ series.

The real series are not redistributed here. These files only share the
summary statistics the acceptance suite checks against (range and median of
the monthly loan stock 2000-2019, median of the quarterly maturity series,
and the median of the normalized flow over 2000-2017). The shapes are made
up. Re-running the script reproduces the bundled files byte for byte.

    python3 contrib/make_sample_series.py data/
"""

import math
import statistics
import sys
from datetime import date
from pathlib import Path

STOCK_MIN, STOCK_MEDIAN, STOCK_MAX = 862.8, 1357.0, 2373.0
MATURITY_MEDIAN = 17.58
FLOW_MEDIAN = 926.2


def monthly_dates():
    return [date(y, m, 1) for y in range(2000, 2020) for m in range(1, 13)]


def quarterly_dates():
    return [date(y, m, 1) for y in range(2000, 2018) for m in (1, 4, 7, 10)][:-2]  # ends 2017Q2


# Rough mid-year levels; monthly values are interpolated between them.
KNOTS = [1050, 1080, 960, 900, 870, 950, 1100, 1300, 1560, 1450,
         1230, 1250, 1420, 1550, 1700, 1900, 2050, 2120, 2230, 2370]


def raw_stock(d):
    t = d.year + (d.month - 1) / 12 - 2000
    i = min(int(t), len(KNOTS) - 2)
    w = t - i
    return KNOTS[i] * (1 - w) + KNOTS[i + 1] * w + 6 * math.sin(2.1 * t)


def anchor(values, lo, mid, hi):
    """Monotone piecewise-linear rescale so min/median/max hit the targets."""
    s = sorted(values)
    vmin, vmax = s[0], s[-1]
    vmid = statistics.median(s)

    def f(v):
        if v <= vmid:
            return lo + (v - vmin) * (mid - lo) / (vmid - vmin)
        return mid + (v - vmid) * (hi - mid) / (vmax - vmid)

    return [round(f(v), 1) for v in values]


def fix_median(values, target):
    """Nudges the upper middle value so the even-length median is exact."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    n = len(values)
    lo_i, hi_i = order[n // 2 - 1], order[n // 2]
    values[hi_i] = round(2 * target - values[lo_i], 2)
    assert values[lo_i] <= values[hi_i] <= values[order[n // 2 + 1]]
    return values


def interpolate(points, d):
    if d <= points[0][0]:
        return points[0][1]
    if d >= points[-1][0]:
        return points[-1][1]
    for (d0, v0), (d1, v1) in zip(points, points[1:]):
        if d0 <= d <= d1:
            return v0 + (v1 - v0) * (d - d0).days / (d1 - d0).days
    raise AssertionError


def flow_median(stock, maturity):
    y0, y1 = maturity[0][0].year, maturity[-1][0].year
    flows = [v * 12 / interpolate(maturity, d) for d, v in stock if y0 <= d.year <= y1]
    return statistics.median(flows)


def maturity_series(spread, tilt):
    # Terms lengthen as the stock grows, drift over time, and wobble.
    out = []
    for d in quarterly_dates():
        t = d.year + (d.month - 1) / 12 - 2000
        shape = raw_stock(d) / 100 + tilt * (t - 9) + 0.6 * math.sin(1.3 * t)
        out.append((d, shape))
    mid = statistics.median(v for _, v in out)
    return [(d, round(MATURITY_MEDIAN + spread * (v - mid), 2)) for d, v in out]


def main(outdir):
    dates = monthly_dates()
    values = fix_median(anchor([raw_stock(d) for d in dates], STOCK_MIN, STOCK_MEDIAN, STOCK_MAX), STOCK_MEDIAN)
    stock = list(zip(dates, values))

    # The flow median is not monotone in either parameter, so scan a grid.
    grid = [(k / 20, j / 10) for k in range(1, 30) for j in range(-20, 21)
            if min(v for _, v in maturity_series(k / 20, j / 10)) >= 6]
    spread, tilt = min(grid, key=lambda p: abs(flow_median(stock, maturity_series(*p)) - FLOW_MEDIAN))
    maturity = maturity_series(spread, tilt)
    # Even count: the median is the mean of the two middle values, pin it.
    mvals = fix_median([v for _, v in maturity], MATURITY_MEDIAN)
    maturity = [(d, v) for (d, _), v in zip(maturity, mvals)]

    out = Path(outdir)
    with open(out / "busloans_sample.csv", "w", newline="\n") as f:
        f.write("DATE,BUSLOANS\n")
        for d, v in stock:
            f.write(f"{d.isoformat()},{v:.1f}\n")
    with open(out / "edanq_sample.csv", "w", newline="\n") as f:
        f.write("DATE,EDANQ\n")
        for d, v in maturity:
            f.write(f"{d.isoformat()},{v:.2f}\n")

    s = [v for _, v in stock]
    m = [v for _, v in maturity]
    print(f"stock min {min(s)} median {statistics.median(s)} max {max(s)}")
    print(f"maturity median {statistics.median(m):.3f} range {min(m)}..{max(m)}")
    print(f"flow median {flow_median(stock, maturity):.2f}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data")
