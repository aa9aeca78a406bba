import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE_LINES = []
NEGATIVITY_RANGE = {"min": np.inf, "max": -np.inf, "count": 0}


@pytest.fixture(scope="session", autouse=True)
def record_negativities():
    """Track the range of every negativity the package computes during the session."""
    from fermiamp import analysis, entanglement

    original = entanglement.negativity_stack

    def recording(rhos):
        out = original(rhos)
        if out.size:
            NEGATIVITY_RANGE["min"] = min(NEGATIVITY_RANGE["min"], float(out.min()))
            NEGATIVITY_RANGE["max"] = max(NEGATIVITY_RANGE["max"], float(out.max()))
            NEGATIVITY_RANGE["count"] += out.size
        return out

    with pytest.MonkeyPatch.context() as mp:
        mp.setattr(entanglement, "negativity_stack", recording)
        mp.setattr(analysis, "negativity_stack", recording)
        yield


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
    if NEGATIVITY_RANGE["count"]:
        terminalreporter.write_line(
            f"negativities computed this session: {NEGATIVITY_RANGE['count']}, "
            f"range [{NEGATIVITY_RANGE['min']:.6g}, {NEGATIVITY_RANGE['max']:.6g}]"
        )
