import os

import pytest
from hypothesis import HealthCheck, settings

from homlie2.gf2k import GF2, GF4, GF16
from homlie2.linalg import Matrix

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

FIELDS = (GF2, GF4, GF16)


def matrix_from_terms(g, terms):
    """Matrix with entries (coefficient, output label, input label)."""
    n = g.dim
    rows = [[0] * n for _ in range(n)]
    for c, out, inp in terms:
        rows[g.basis.index(out)][g.basis.index(inp)] ^= c
    return Matrix(g.field, rows, n)


def primed(d):
    """Relabel cochain values onto the adjoint module's primed labels."""
    return {k: {f"{a}'": b for a, b in v.items()} for k, v in d.items()}


@pytest.fixture(params=FIELDS, ids=lambda F: f"GF{F.q}")
def field(request):
    return request.param
