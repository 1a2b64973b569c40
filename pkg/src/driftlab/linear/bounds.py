"""Closed-form runtime bounds for the (1+1) EA on linear functions."""

import math


def onemax_upper(n: int) -> float:
    """e n (1 + ln(n/2)): expected-time upper bound for the ones count,
    from drift >= level/(e n) and expected start level n/2."""
    return math.e * n * (1.0 + math.log(n / 2.0))


def binval_upper(n: int) -> float:
    """e n (1 + ln((2^n - 1)/2)): the binary-value analogue (quadratic in n)."""
    # math.log on the exact integer keeps this valid for any n
    return math.e * n * (1.0 + math.log(2**n - 1) - math.log(2.0))


def linear_upper_139(n: int) -> float:
    """(e/(e-2)) n ln n ~ 1.39 e n ln n: leading term of the upper bound
    for every monotone linear function (asymptotic)."""
    return math.e / (math.e - 2.0) * n * math.log(n)


def onemax_lower_asymptotic(n: int) -> float:
    """e n ln n: leading term of the lower bound for any function with a
    unique global optimum (asymptotic)."""
    return math.e * n * math.log(n)


_CATALOG = {
    "onemax_upper": (onemax_upper, False, "e n (1 + ln(n/2))"),
    "binval_upper": (binval_upper, False, "e n (1 + ln((2^n - 1)/2))"),
    "linear_upper_139": (linear_upper_139, True, "(e/(e-2)) n ln n"),
    "onemax_lower_asymptotic": (onemax_lower_asymptotic, True, "e n ln n"),
}


def bound_catalog(name: str, n: int) -> float:
    """Evaluate a catalog bound by name."""
    try:
        fn, _, _ = _CATALOG[name]
    except KeyError:
        raise ValueError(
            f"unknown bound {name!r}; available: {sorted(_CATALOG)}"
        ) from None
    return fn(n)


def catalog_entries():
    """(name, formula text, asymptotic flag) for every catalog bound."""
    return [(name, text, asym) for name, (_, asym, text) in _CATALOG.items()]


def is_asymptotic(name: str) -> bool:
    return _CATALOG[name][1]
