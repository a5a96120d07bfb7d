"""
Mulambda Configuration
======================
All configurable parameters loaded from environment variables with sensible defaults.
"""

import os
from typing import Dict, List, Tuple

# =============================================================================
# ENGINE CAPS
# =============================================================================
ELEMENT_CAP = int(os.environ.get("MULAMBDA_ELEMENT_CAP", "100000"))  # Max |G| for full enumeration
SUBGROUP_CAP = int(os.environ.get("MULAMBDA_SUBGROUP_CAP", "200000"))  # Max subgroups per lattice

# =============================================================================
# PARALLELISM
# =============================================================================
DEFAULT_THREADS = int(os.environ.get("MULAMBDA_THREADS", str(os.cpu_count() or 1)))

# =============================================================================
# MOEBIUS
# =============================================================================
# Restrict overgroup sums to MaxInt(G); non-members get an explicit zero
MAXINT_RESTRICTION = os.environ.get("MULAMBDA_MAXINT_RESTRICTION", "1").lower() not in ("0", "false", "no")

# =============================================================================
# LATTICE CACHE
# =============================================================================
CACHE_DIR = os.environ.get(
    "MULAMBDA_CACHE_DIR",
    os.path.join(os.path.expanduser("~"), ".cache", "mulambda")
)
CACHE_FORMAT_VERSION = 1  # Bump on any canonicalization change
CACHE_FILE_PREFIX = "lattice-"
CACHE_FILE_SUFFIX = ".npz"

# =============================================================================
# LOGGING
# =============================================================================
LOG_LEVEL = os.environ.get("MULAMBDA_LOG_LEVEL", "WARNING").upper()
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

# =============================================================================
# OUTPUT
# =============================================================================
OUTPUT_FORMATS: List[str] = ["human", "json", "csv"]
DEFAULT_FORMAT = os.environ.get("MULAMBDA_FORMAT", "human")

EXIT_OK = 0
EXIT_FINDING = 1  # Property failure or table mismatch
EXIT_ERROR = 2  # Operational error

# =============================================================================
# FAMILY TABLES
# =============================================================================
FAMILY_SWEEP_LIMIT = int(os.environ.get("MULAMBDA_FAMILY_SWEEP_LIMIT", str(2 ** 15)))
FAMILY_NAMES: List[str] = ["l2", "sz", "ree"]

# =============================================================================
# FINITE FIELDS
# =============================================================================
# Modulus polynomials per (p, e), coefficients lowest degree first.
# Fields missing here fall back to the smallest monic irreducible.
FIELD_MODULI: Dict[Tuple[int, int], List[int]] = {
    (2, 2): [1, 1, 1],
    (2, 3): [1, 1, 0, 1],
    (2, 4): [1, 1, 0, 0, 1],
    (2, 5): [1, 0, 1, 0, 0, 1],
    (2, 6): [1, 1, 0, 1, 1, 0, 1],
    (3, 2): [2, 2, 1],
    (3, 3): [1, 2, 0, 1],
    (3, 4): [2, 0, 0, 2, 1],
    (5, 2): [2, 4, 1],
    (5, 3): [3, 3, 0, 1],
    (7, 2): [3, 6, 1],
}
MAX_FIELD_ORDER = 1024  # Dense add/mul tables above this are refused

# =============================================================================
# SPORADIC CONSTRUCTORS
# =============================================================================
SZ_ORDER_8 = 29120
U3_ORDER_3 = 6048
