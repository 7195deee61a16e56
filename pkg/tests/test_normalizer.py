from g2chev.matrix import Matrix
from g2chev.replay.normalizer import (
    T1_DIAG,
    T2_DIAG,
    ZEROED,
    NormalizerUnknowns,
    build_system,
    normalizer_kernel,
    torus_derivative,
    verify_normalizer,
)
from g2chev.rootsys import root


def test_unknown_count():
    unk = NormalizerUnknowns()
    assert len(ZEROED) == 15
    assert unk.count == 237
    assert len(unk.names()) == 237
    assert unk.names()[181] == "a1,1"


def test_torus_derivative_is_odd_under_root_negation():
    D = torus_derivative(root(1)).diagonal()
    assert D[:4] == [2, -2, -3, 3]
    assert D[12:] == [0, 0]
    # the printed T1, T2 are even under a <-> -a
    assert all(T1_DIAG[2 * i] == T1_DIAG[2 * i + 1] for i in range(6))
    assert all(T2_DIAG[2 * i] == T2_DIAG[2 * i + 1] for i in range(6))


def test_system_shape():
    rows, unk = build_system()
    assert unk.count == 237
    assert all(isinstance(k, int) and 0 <= k < 237 for r in rows for k in r)


def test_printed_kernel_is_zero():
    rep = normalizer_kernel("printed")
    assert (rep.unknowns, rep.rank, rep.kernel_dimension) == (237, 237, 0)
    assert rep.modular_ranks == [237, 237, 237]
    assert rep.consistent


def test_dropping_minus_a2_leaves_a_kernel():
    rep = normalizer_kernel("printed", equations=(1, 2, -1))
    assert (rep.unknowns, rep.rank, rep.kernel_dimension) == (223, 222, 1)
    assert rep.consistent


def test_report():
    res = verify_normalizer()
    assert [r.status for r in res] == ["pass", "pass", "note", "pass"]
    derived = res[2].witness
    assert derived["kernel_dimension"] == 0
