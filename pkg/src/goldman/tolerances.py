"""Global tolerance ladder.

All numeric thresholds used across the package live here so there is a
single page of constants and no per-call tuning.
"""

# Construction-time requirements (relator defect, unitarity of images).
CONSTRUCTION = 1e-10

# Verification of algebraic identities on floating-point data.
VERIFICATION = 1e-8

# Finite-difference schemes (step validation, convergence-order windows).
FINITE_DIFFERENCE = 1e-4

# Relative singular-value cutoff for every rank / nullspace decision.
SVD_RELATIVE = 1e-8

# A rank decision is rejected as ambiguous when kept and discarded
# singular values are closer than this factor.
RANK_AMBIGUITY_FACTOR = 10.0

# Internal target for Newton projection; well below CONSTRUCTION so that
# retraction-based curves are smooth enough for second-order differencing.
NEWTON_TARGET = 1e-13

# Newton projection refuses inputs farther than this from the relator
# variety (locally convergent method; no global guarantees).
NEWTON_TRUST_DEFECT = 0.1

# Deformation trust region: |t| * ||direction|| must stay below this.
DEFORM_TRUST = 0.1

# Smallest admissible finite-difference step before roundoff dominates.
MIN_FD_STEP = 1e-9
