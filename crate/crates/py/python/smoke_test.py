"""Smoke test for the relkort extension module."""

import math

import relkort


def main():
    eos = relkort.Eos.cubic_vdw()
    a, b = eos.spinodal()
    assert abs(a - 1.0) < 1e-9 and abs(b - 2.0) < 1e-9

    mx = relkort.maxwell(eos)
    assert abs(mx["pi_star"] - 0.2375) < 1e-10
    assert abs(mx["nu_minus0"] - (3 - math.sqrt(3)) / 2) < 1e-10

    rows = relkort.continue_family(eos, 0.05, 0.2)
    assert rows[0].m == 0.0 and abs(rows[-1].m - 0.2) < 1e-12

    p = relkort.heteroclinic_profile(eos, 0.05, samples=2001)
    nu = p.nu
    assert len(p) == 2001
    assert all(x < y for x, y in zip(nu, nu[1:]))
    assert p.first_integral_drift() < 1e-12
    dev01, dev11 = p.flux_constancy()
    assert dev01 < 1e-8 and dev11 < 1e-8

    try:
        relkort.heteroclinic_profile(eos, 5.0, dm=0.05)
    except relkort.RelkortError:
        pass
    else:
        raise AssertionError("expected an error beyond the family")
    print("smoke test passed")


if __name__ == "__main__":
    main()
