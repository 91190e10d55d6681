"""Print one PASS/FAIL line per acceptance criterion (same checks as tests/test_acceptance.py)."""
import sys

from metadist.acceptance import main

if __name__ == "__main__":
    sys.exit(main())
