import numpy as np
import pytest

from nekbounds import load_fixture
from nekbounds.oracle import GeneratorConfig, generate_nekrasov

# Filled by test_acceptance.py, printed once at the end of the run.
ACCEPTANCE_RESULTS = {}


@pytest.fixture(scope="session")
def A1():
    return load_fixture("A1")


@pytest.fixture(scope="session")
def example_matrices():
    return {name: load_fixture(name) for name in ("A1", "A2", "A3", "A4", "A5", "A6")}


def seeded_matrices(count=500, complex_every=0):
    """Deterministic corpus: seeds 1..count, n cycling through 2..12."""
    out = []
    for seed in range(1, count + 1):
        n = 2 + (seed - 1) % 11
        cfg = GeneratorConfig(
            n=n,
            seed=seed,
            off_diag_scale=float(1 + seed % 5),
            sdd_fraction=0.25,
            allow_complex=bool(complex_every and seed % complex_every == 0),
        )
        out.append(generate_nekrasov(cfg))
    return out


@pytest.fixture(scope="session")
def corpus():
    return seeded_matrices(500)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        ok, desc = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key:>2}: {desc}")
