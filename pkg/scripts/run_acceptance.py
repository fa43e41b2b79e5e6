"""Run the acceptance criteria and print one PASS/FAIL line per criterion."""

import subprocess
import sys
from pathlib import Path

root = Path(__file__).resolve().parent.parent
proc = subprocess.run([sys.executable, "-m", "pytest", "-q", "-m", "acceptance", "tests/test_acceptance.py"],
                      cwd=root, capture_output=True, text=True)
lines = [ln for ln in proc.stdout.splitlines() if ln.startswith(("PASS ", "FAIL "))]
print("\n".join(dict.fromkeys(lines)))
if proc.returncode:
    print(proc.stdout[-3000:])
sys.exit(proc.returncode)
