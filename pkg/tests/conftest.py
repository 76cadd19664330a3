import numpy as np
import pytest

from anyonsim import AnyonState


def table_diff(a: AnyonState | dict, b: AnyonState | dict) -> float:
    """Max componentwise amplitude difference, ignoring the phi tag."""
    ta = a.amplitudes if isinstance(a, AnyonState) else a
    tb = b.amplitudes if isinstance(b, AnyonState) else b
    keys = set(ta) | set(tb)
    return max((abs(complex(ta.get(k, 0.0)) - complex(tb.get(k, 0.0))) for k in keys), default=0.0)


def random_state(rng: np.random.Generator, m: int, phi: float, n: int | None = None) -> AnyonState:
    occs = [occ for occ in range(1 << m) if n is None or occ.bit_count() == n]
    amps = rng.normal(size=len(occs)) + 1j * rng.normal(size=len(occs))
    amps /= np.linalg.norm(amps)
    return AnyonState(m, phi, {occ: complex(a) for occ, a in zip(occs, amps)})


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
