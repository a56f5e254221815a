import os
import sys

# Prefer an in-tree build over any installed copy when ctest points at one.
_build = os.environ.get("RAMCHORD_BUILD_PYTHONPATH")
if _build:
    sys.meta_path[:] = [f for f in sys.meta_path if not type(f).__module__.startswith("_editable_skbc_")]
    sys.path.insert(0, _build)
