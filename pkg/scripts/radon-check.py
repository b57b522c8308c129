#!/usr/bin/env python3
"""
Radon complexity checker for the multiclass_gl package.

The CLI module and utils are excluded by default; pass --include-all to
check everything.
"""

import subprocess
import sys

PACKAGE = "src/multiclass_gl/"
DEFAULT_EXCLUDES = ["src/multiclass_gl/utils/*", "src/multiclass_gl/main.py"]


def run_radon_check(min_complexity="B", exclude_defaults=True):
    """Run radon cyclomatic complexity over the package."""
    cmd = ["radon", "cc", PACKAGE, "--min", min_complexity, "--show-complexity"]

    if exclude_defaults:
        cmd.extend(["--exclude", ",".join(DEFAULT_EXCLUDES)])

    try:
        result = subprocess.run(cmd, capture_output=True, text=True, check=True)
    except FileNotFoundError:
        print("radon is not installed; pip install -r requirements-dev.txt")
        return False
    except subprocess.CalledProcessError as e:
        print(f"Radon check failed: {e}")
        print(e.stdout)
        print(e.stderr)
        return False

    print(result.stdout)
    return True


if __name__ == "__main__":
    min_complexity = "B"
    exclude_defaults = True

    for arg in sys.argv[1:]:
        if arg in ["A", "B", "C", "D", "E", "F"]:
            min_complexity = arg
        elif arg == "--include-all":
            exclude_defaults = False

    success = run_radon_check(min_complexity, exclude_defaults)
    sys.exit(0 if success else 1)
