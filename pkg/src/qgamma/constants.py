"""Project-wide certification constants.

Finite-difference steps and comparison slacks live here so every module and
test certifies against the same numbers.
"""

# Log-space slack when checking lower <= ratio <= upper at a sample point.
# Equivalent to a relative slack of ~1e-9 on the exponentiated values.
CERT_SLACK_LOG = 1e-9

# Slack for the geometric-convexity midpoint check, log space.
CONVEXITY_SLACK_LOG = 1e-9

# Slack for nondecrease of x * (ln f)'(x) along a grid.
SLOPE_SLACK = 1e-10

# Interior margin required at strict-inequality spot checks.
STRICT_MARGIN = 1e-12

# Minimum spacing enforced between paired samples (x, y) or (mu, lambda)
# under a strict ordering constraint; below this the margins drown in noise.
MIN_PAIR_GAP = 1e-6

# Central finite-difference steps used by the derivative-consistency suites.
FD_STEP_LN_GAMMA_Q = 1e-5
FD_STEP_Q_BRACKET = 1e-6
FD_STEP_LN_GAMMA_CLASSICAL = 1e-4
