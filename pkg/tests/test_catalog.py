import pytest

from liekit import catalog
from liekit.catalog import KnownFacts, from_selector, make
from liekit.errors import InvalidParams, NotADerivation
from liekit.exactlin import Matrix
from liekit.liealg import center, is_nilpotent, is_solvable, killing_form, validate

from oracles import adjoint_trace_killing, gl_basis, gl_closed_form, gl_coords


@pytest.mark.parametrize("selector", catalog.STANDARD_CATALOG)
def test_every_entry_validates(selector):
    entry = from_selector(selector)
    validate(entry.algebra)
    assert entry.selector == from_selector(entry.selector).selector


def test_examples():
    sl2 = make("sl", 2)
    assert sl2.algebra.dim == 3
    assert sl2.known_facts == KnownFacts(3, 0, False, False, True)
    assert sl2.algebra.labels == ("E12", "E21", "H1")
    assert killing_form(sl2.algebra).gram == Matrix([[0, 4, 0], [4, 0, 0], [0, 0, 8]])
    h = make("heisenberg", 3)
    assert h.algebra.dim == 3
    assert h.known_facts == KnownFacts(0, 1, True, True, False)
    ab = make("abelian", 4)
    assert ab.algebra.dim == 4
    assert ab.known_facts.killing_rank == 0
    assert ab.known_facts.is_solvable and ab.known_facts.is_nilpotent


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_gl_killing_closed_form(n):
    entry = make("gl", n)
    gram = killing_form(entry.algebra).gram.tolist()
    basis = gl_basis(n)
    assert gram == adjoint_trace_killing(basis, gl_coords)
    for a, X in enumerate(basis):
        for b, Y in enumerate(basis):
            assert gram[a][b] == gl_closed_form(n, X, Y)


@pytest.mark.parametrize("selector", ["sl(2)", "sl(3)", "sl(4)", "so(3)", "so(5)", "sp(2)", "sp(4)"])
def test_semisimple_ranks(selector):
    entry = from_selector(selector)
    assert entry.known_facts.killing_rank == entry.algebra.dim
    assert entry.known_facts.is_semisimple


def test_dimensions():
    assert make("so", 4).algebra.dim == 6
    assert make("sp", 4).algebra.dim == 10
    assert make("sp", 6).algebra.dim == 21
    assert make("heisenberg", 5).algebra.dim == 5
    assert make("upper_triangular", 3).algebra.dim == 6


@pytest.mark.parametrize("n", [2, 3, 4])
def test_triangular_families(n):
    strict = make("strictly_upper", n).algebra
    assert is_nilpotent(strict)
    upper = make("upper_triangular", n).algebra
    assert is_solvable(upper) and not is_nilpotent(upper)


def test_matrix_realization_matches_structure_constants():
    entry = make("sp", 4)
    mats = entry.matrices
    g = entry.algebra
    for i, A in enumerate(mats):
        for j, B in enumerate(mats):
            want = A @ B - B @ A
            got = Matrix.zeros(4)
            for k, c in g.bracket_terms(i, j):
                got = got + mats[k].scale(c)
            assert got == want


def test_direct_sum_and_semidirect():
    s = from_selector("direct_sum(sl(2), heisenberg(3))")
    assert s.algebra.dim == 6
    assert center(s.algebra).dim == 1
    sd = from_selector("semidirect(abelian(2), [[1, 0], [0, -1]])")
    assert sd.algebra.dim == 3
    assert is_solvable(sd.algebra) and not is_nilpotent(sd.algebra)
    # nested selector text re-parses to the same algebra
    again = from_selector(sd.selector)
    assert again.algebra.structure_constants == sd.algebra.structure_constants


def test_invalid_params():
    for bad in [("sl", 0), ("heisenberg", 4), ("sp", 3), ("gl",), ("gl", 2, 3), ("nope", 2), ("sl", True)]:
        with pytest.raises(InvalidParams):
            make(*bad)
    for bad in ["sl(", "sl(2) + 1", "sl(n=2)", "[1, 2]"]:
        with pytest.raises(InvalidParams):
            from_selector(bad)


def test_not_a_derivation():
    # on heisenberg(3) a derivation must satisfy D z = (trace of D on x, y) z
    with pytest.raises(NotADerivation):
        from_selector("semidirect(heisenberg(3), [[1, 0, 0], [0, 1, 0], [0, 0, 0]])")
    with pytest.raises(NotADerivation):
        make("semidirect", make("abelian", 2), [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
