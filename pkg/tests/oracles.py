"""Extended-precision brute-force oracles used to pin expected test values.

Everything here is deliberately independent of the package under test: plain
partial sums and log-products evaluated with mpmath at 40 digits, truncated by
raw term count rather than by any adaptive stopping rule.  Tests freeze values
produced by these functions (or call them live for spot checks); the library
is never used to generate its own expectations.
"""

from mpmath import mp, mpf

mp.dps = 40


def mp_ln_gamma_q(x, q, terms=3000):
    """Log of the q-Gamma product: (1-q)^(1-x) * prod_n (1-q^(n+1))/(1-q^(n+x))."""
    x = mpf(x)
    q = mpf(q)
    total = (1 - x) * mp.log(1 - q)
    for n in range(terms):
        total += mp.log(1 - q ** (n + 1)) - mp.log(1 - q ** (n + x))
    return total


def mp_gamma_q(x, q, terms=3000):
    return mp.e ** mp_ln_gamma_q(x, q, terms)


def mp_psi_q(x, q, terms=3000):
    """-ln(1-q) + ln(q) * sum_{n>=1} q^(n x)/(1-q^n), raw partial sum."""
    x = mpf(x)
    q = mpf(q)
    s = mpf(0)
    for n in range(1, terms + 1):
        s += q ** (n * x) / (1 - q ** n)
    return -mp.log(1 - q) + mp.log(q) * s


def mp_psi_q_m(m, x, q, terms=3000):
    """(ln q)^(m+1) * sum_{n>=1} n^m q^(n x)/(1-q^n), raw partial sum."""
    x = mpf(x)
    q = mpf(q)
    s = mpf(0)
    for n in range(1, terms + 1):
        s += mpf(n) ** m * q ** (n * x) / (1 - q ** n)
    return mp.log(q) ** (m + 1) * s


def mp_q_bracket(x, q):
    return (1 - mpf(q) ** mpf(x)) / (1 - mpf(q))


def mp_psi_q_root(q, lo=0.5, hi=8.0, iters=200, terms=3000):
    """Bisection for the positive zero of psi_q on the raw partial sums."""
    lo = mpf(lo)
    hi = mpf(hi)
    flo = mp_psi_q(lo, q, terms)
    fhi = mp_psi_q(hi, q, terms)
    assert flo < 0 < fhi, (flo, fhi)
    for _ in range(iters):
        mid = (lo + hi) / 2
        if mp_psi_q(mid, q, terms) < 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def mp_ratio_gamma_q(x, y, q, terms=3000):
    return mp.e ** (mp_ln_gamma_q(x, q, terms) - mp_ln_gamma_q(y, q, terms))


def mp_psi_classical(x, terms=200000):
    """-gamma + (x-1) * sum_{n>=0} 1/((1+n)(n+x)) with an integral tail patch."""
    x = mpf(x)
    s = mpf(0)
    for n in range(terms):
        s += 1 / ((1 + n) * (n + x))
    # Remaining tail, midpoint integral estimate; at 2e5 terms this is far
    # below the digits any test asserts on.
    a = mpf(terms) - mpf("0.5")
    tail = mp.log((a + x) / (a + 1))
    return -mp.euler + (x - 1) * s + tail


def mp_ln_gamma_classical(x):
    return mp.loggamma(mpf(x))
