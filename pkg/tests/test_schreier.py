import pytest

from conftest import subgroup, w
from protop.automata import index, member, stallings_from_generators
from protop.enumeration import enumerate_index_subgroups
from protop.errors import NotMember, WordTooLong
from protop.schreier import express_over_schreier_basis, schreier_ball
from protop.words import exponent_vector, format_word, product


def b_kernel(u):
    return exponent_vector(u)[1] == 0


def test_b_exponent_kernel_radius_one():
    ball = schreier_ball(b_kernel, 2, 1)
    assert ball.num_vertices == 3
    assert "a" in [format_word(x) for x in ball.basis]
    assert [format_word(x) for x in ball.chunk(0)] == ["a"]
    assert express_over_schreier_basis(ball, w("a")) == [1]


def test_b_exponent_kernel_conjugate():
    ball = schreier_ball(b_kernel, 2, 3)
    fac = express_over_schreier_basis(ball, w("baB"))
    assert len(fac) == 1
    assert format_word(ball.basis[abs(fac[0]) - 1]) == "baB"
    with pytest.raises(WordTooLong):
        express_over_schreier_basis(ball, w("bbaBB"))
    with pytest.raises(NotMember):
        express_over_schreier_basis(ball, w("b"))


def test_whole_group_ball():
    ball = schreier_ball(lambda u: True, 2, 3)
    assert ball.num_vertices == 1
    assert sorted(format_word(x) for x in ball.basis) == ["a", "b"]


def test_balls_extend_previous_trees():
    prev = None
    for m in range(5):
        ball = schreier_ball(b_kernel, 2, m, prev)
        if prev is not None:
            assert prev.tree <= ball.tree
            assert ball.reps[:prev.num_vertices] == prev.reps
            assert ball.basis[:len(prev.basis)] == prev.basis
        assert all(d <= m for d in ball.depth)
        prev = ball


@pytest.mark.parametrize("gens", ["aa,b", "aa,bb,ab", "a,babaB", "aab,bAb"])
def test_reconstructs_finitely_generated_subgroups(gens):
    H = subgroup(gens)
    ball = schreier_ball(lambda u: member(H, u), 2, H.num_vertices + 1)
    assert stallings_from_generators(2, ball.basis) == H


def test_reconstructs_finite_index_subgroups():
    for K in enumerate_index_subgroups(2, 3):
        ball = schreier_ball(lambda u: member(K, u), 2, 3)
        assert stallings_from_generators(2, ball.basis) == K
        assert index(K) == ball.num_vertices


def test_factorizations_multiply_out():
    ball = schreier_ball(b_kernel, 2, 7)
    for text in ["abaB", "bbAAbBBB", "aBab", "bAAB"]:
        h = w(text)
        fac = express_over_schreier_basis(ball, h)
        assert product(2, [ball.basis[abs(i) - 1] if i > 0 else ~ball.basis[abs(i) - 1] for i in fac]) == h
