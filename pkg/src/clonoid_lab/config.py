"""Global enumeration guards.

``CLONOID_LAB_GUARD`` overrides the table guard (maximum number of points of a
function table ``|A|^k`` or number of enumerated candidates).
"""

import os

DEFAULT_TABLE_GUARD = 1 << 20
MAX_RING_SIZE = 4096
MAX_MODULE_SIZE = 4096
VERIFY_LIMIT = 256  # exhaustive axiom checks up to this many elements
SUBMODULE_LIMIT = 256
RANK_SEARCH_LIMIT = 1 << 24


def table_guard() -> int:
    raw = os.environ.get("CLONOID_LAB_GUARD")
    if raw:
        try:
            value = int(raw)
        except ValueError:
            return DEFAULT_TABLE_GUARD
        if value > 0:
            return value
    return DEFAULT_TABLE_GUARD
