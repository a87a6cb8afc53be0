import os
import sys
from pathlib import Path

# make the suite runnable from a fresh checkout without installing;
# PYTHONPATH covers the subprocess-based CLI tests
SRC = str(Path(__file__).resolve().parent.parent / "src")
if SRC not in sys.path:
    sys.path.insert(0, SRC)
os.environ["PYTHONPATH"] = SRC + os.pathsep + os.environ.get("PYTHONPATH", "")
