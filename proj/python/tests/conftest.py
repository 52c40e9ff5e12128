import os
import sys

stage = os.environ.get("DFINUM_PY_STAGE")
if stage:
    sys.path.insert(0, stage)
