from pathlib import Path

import pytest

from src.core.loader import load_structure
from src.lib.evaluator import EvalContext, NegationPolicy

ROOT = Path(__file__).resolve().parent.parent


@pytest.fixture(scope="session", autouse=True)
def repo_root():
    # Structure names resolve against STRUCTURES_DIR, which is relative.
    with pytest.MonkeyPatch.context() as patch:
        patch.chdir(ROOT)
        yield ROOT


@pytest.fixture
def m3():
    return load_structure("m3")


@pytest.fixture
def h3star():
    return load_structure("h3star")


@pytest.fixture
def m3_ctx(m3):
    return EvalContext(m3, NegationPolicy.STANDARD, rank=2)


@pytest.fixture
def h3_ctx(h3star):
    return EvalContext(h3star, NegationPolicy.ALGEBRAIC, rank=2)


@pytest.fixture
def names(m3_ctx):
    """V_<=2 over M3 by shape: empty, then the entry on {} valued 0, 1/2 and 1."""
    empty, zero, half, one = m3_ctx.store.universe(2)
    return {"empty": empty, "0": zero, "1/2": half, "1": one}
