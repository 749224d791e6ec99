"""Shared fixtures, independent numeric oracles, and the acceptance summary.

The oracles here deliberately avoid the package's own linear-algebra paths
(loop-based partial trace, Kraus-sum channel) so the tests cross-check two
independent implementations: `trace_out_oracle` uses einsum contraction and
`damp_qubit_oracle` applies the analytic 2x2 block map of the damping channel.
"""
from __future__ import annotations

import numpy as np
import pytest

# --- independent oracles ------------------------------------------------------


def trace_out_oracle(mat: np.ndarray, n_modes: int, keep: list[int]) -> np.ndarray:
    """Partial trace by einsum contraction (big-endian qubit order)."""
    rows = list(range(n_modes))
    cols = [n_modes + i if i in keep else i for i in range(n_modes)]
    out = [i for i in keep] + [n_modes + i for i in keep]
    tensor = mat.reshape((2,) * (2 * n_modes))
    k = len(keep)
    return np.einsum(tensor, rows + cols, out).reshape(2**k, 2**k)


def damp_qubit_oracle(mat: np.ndarray, n_modes: int, pos: int, p: float) -> np.ndarray:
    """Amplitude damping of one qubit via its analytic 2x2 block action:

        [[r00, r01], [r10, r11]] -> [[r00 + p*r11, sqrt(1-p)*r01],
                                     [sqrt(1-p)*r10, (1-p)*r11]]

    where r_ab are the operator blocks of the target qubit.
    """
    tensor = mat.reshape((2,) * (2 * n_modes))
    tensor = np.moveaxis(tensor, (pos, n_modes + pos), (0, 1))
    r00, r01, r10, r11 = tensor[0, 0], tensor[0, 1], tensor[1, 0], tensor[1, 1]
    sq = np.sqrt(1.0 - p)
    out = np.empty_like(tensor)
    out[0, 0] = r00 + p * r11
    out[0, 1] = sq * r01
    out[1, 0] = sq * r10
    out[1, 1] = (1.0 - p) * r11
    out = np.moveaxis(out, (0, 1), (pos, n_modes + pos))
    return out.reshape(mat.shape)


def random_density_matrix(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Ginibre-random full-rank density matrix."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


# --- acceptance summary -------------------------------------------------------

_ACCEPTANCE: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _ACCEPTANCE.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in sorted(_ACCEPTANCE):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")
