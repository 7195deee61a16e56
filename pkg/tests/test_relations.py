import pytest

from g2chev.ring import parse_ring
from g2chev.replay.relations import verify_relations


@pytest.mark.parametrize("sel", ["zmod:5^2", "zmod:7^2", "trunc:4,3", "q"])
def test_relations_pass(sel):
    res = verify_relations(parse_ring(sel), trials=20, seed=5)
    assert len(res) == 6
    assert all(r.passed for r in res), [r.as_dict() for r in res if not r.passed]


def test_relations_deterministic():
    ring = parse_ring("zmod:5^2")
    a = [r.witness for r in verify_relations(ring, trials=10, seed=1)]
    b = [r.witness for r in verify_relations(ring, trials=10, seed=1)]
    assert a == b
