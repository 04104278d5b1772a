import math

import numpy as np

def loglog_slope(ns, errors):
    """Least-squares slope of log(error) against log(n).

    None with fewer than three points or any non-positive error.
    """
    if len(ns) != len(errors):
        raise ValueError("ns and errors must have the same length (%d != %d)" % (len(ns), len(errors)))
    if len(ns) < 3 or not all(_is_positive(e) for e in errors):
        return None
    slope, _ = np.polyfit(np.log(np.asarray(ns, dtype=float)), np.log(np.asarray(errors, dtype=float)), 1)
    return float(slope)

def slope_within(slope, target, tol):
    return slope is not None and abs(slope - target) <= tol

def expected_rate(scale, smooth=True):
    """Decay exponent of the error for a power scale n^theta, else None.

    Smooth functions follow b_n / n, so -(1 - theta). Functions that are
    only Lipschitz follow sqrt(b_n / n), so half of that.
    """
    if scale.kind != "power":
        return None
    rate = -(1.0 - scale.theta)
    return rate if smooth else rate / 2.0

def slope_verdicts(scale, smooth_by_label, slopes, tol):
    """Expected slope and within-tolerance flag per label.

    A label with no expected rate gets None for both.
    """
    expected, ok = {}, {}
    for label, smooth in smooth_by_label.items():
        expected[label] = expected_rate(scale, smooth)
        ok[label] = None if expected[label] is None else slope_within(slopes.get(label), expected[label], tol)
    return expected, ok

def _is_positive(value):
    return value is not None and value > 0 and math.isfinite(value)
