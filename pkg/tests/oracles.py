"""Independent reference computations used to freeze expected values."""

import itertools
import math


def enumerate_qm_outcomes(p, efficiency, q, dark1, dark2):
    """Brute force over photon number, each photon's fate and both dark counts.

    ``p`` is (p0, p1, p2); ``q`` the single-photon probability of exiting to D1.
    """
    fate_prob = {"lost": 1 - efficiency, "D1": efficiency * q, "D2": efficiency * (1 - q)}
    out = {}
    for n, pn in enumerate(p):
        for fates in itertools.product(fate_prob, repeat=n):
            pf = pn * math.prod(fate_prob[f] for f in fates)
            for k1, k2 in itertools.product((False, True), repeat=2):
                pk = (dark1 if k1 else 1 - dark1) * (dark2 if k2 else 1 - dark2)
                key = ("D1" in fates or k1, "D2" in fates or k2)
                out[key] = out.get(key, 0.0) + pf * pk
    return out


def qm_alpha(p1, p2):
    """Open-port alpha for perfect detectors: coincidences p2/2, singles p1/2 + 3 p2/4."""
    return (p2 / 2) / (p1 / 2 + 3 * p2 / 4) ** 2


def qm_fit_visibility(p1, p2, v0):
    """Sinusoid-fit visibility of P(D1) = p1 q + p2 (2q - q^2), q = (1 + v0 cos)/2.

    The q^2 term adds a constant and a second harmonic; on a uniform grid the
    second harmonic is orthogonal to the fit basis, leaving
    a = p1/2 + p2 (1 - (1 + v0^2/2)/4) and b = v0/2.
    """
    a = p1 / 2 + p2 * (1 - (1 + v0**2 / 2) / 4)
    return (v0 / 2) / a


def count_compatible(n):
    """Grid points i/(n-1), j/(n-1) with i <= j."""
    return sum(1 for i in range(n) for j in range(n) if i <= j)
