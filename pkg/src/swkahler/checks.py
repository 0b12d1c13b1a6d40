"""Oracle sweeps behind ``swkahler selftest``."""

from __future__ import annotations

from math import gcd

from . import elliptic

GRID = [(chi, g, d) for chi in range(7) for g in range(5) for d in range(11)]


def closed_vs_series() -> bool:
    return all(elliptic.sw_mult_series(*k) == elliptic.sw_mult_closed(*k) for k in GRID)


def dolgachev_constancy() -> bool:
    return all(elliptic.sw_mult_closed(1, 0, d) == 1 for d in range(21))


def blowup_invariance() -> bool:
    same = all(
        elliptic.sw_mult_blowup(*k, a) == elliptic.sw_mult_closed(*k)
        for k in GRID
        for a in (0, 1)
    )
    return same and all(elliptic.sw_mult_blowup(*k, a) == 0 for k in GRID for a in (2, 3, 4))


def recovery_round_trip(max_q: int = 12) -> bool:
    for p_g in (0, 1, 2):
        for p in range(2, max_q + 1):
            for q in range(p, max_q + 1):
                d, d2 = elliptic.expected_divisibilities(p, q, p_g)
                data = elliptic.RecoveryInput(p_g, gcd(p, q), d, d2)
                if elliptic.recover_multiplicities(data) != (p, q):
                    return False
    return True


CHECKS = {
    "closed_vs_series_grid": closed_vs_series,
    "dolgachev_constancy": dolgachev_constancy,
    "blowup_invariance": blowup_invariance,
    "recovery_round_trip": recovery_round_trip,
}


def run_all() -> list[tuple[str, bool]]:
    return [(name, fn()) for name, fn in CHECKS.items()]
