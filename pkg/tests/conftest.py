import mpmath
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

mpmath.mp.dps = 80


def mp_value(k_or_basis, delta):
    """High-precision float value of sum(delta_j * sqrt(s_j)), independent of the package."""
    from sqrtsum.numtheory import square_free_basis

    basis = square_free_basis(k_or_basis) if isinstance(k_or_basis, int) else k_or_basis
    return mpmath.fsum(d * mpmath.sqrt(s) for d, s in zip(delta, basis))


@pytest.fixture
def mpv():
    return mp_value
