"""Acceptance gate: criteria 1-9 at their stated tolerances.

Each test prints one pass/fail line (also collected into the terminal
summary).  Run directly with ``python tests/test_acceptance.py`` for just the
nine lines.
"""

import sys

import pytest

from latsum.verify import CRITERIA

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # pragma: no cover - run as a script from elsewhere
    ACCEPTANCE_LINES = []


@pytest.mark.parametrize("number", range(1, 10), ids=lambda n: f"criterion_{n}")
def test_criterion(number):
    result = CRITERIA[number - 1]()
    line = result.summary()
    print(line)
    ACCEPTANCE_LINES.append(line)
    failures = "\n".join(f"  {name}: {detail}" for name, _, detail in result.failures)
    assert result.passed, f"{line}\n{failures}"


if __name__ == "__main__":
    ok = True
    for fn in CRITERIA:
        r = fn()
        print(r.summary(), flush=True)
        ok &= r.passed
    sys.exit(0 if ok else 1)
