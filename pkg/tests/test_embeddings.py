"""Vector enumeration, embeddings, primitive representations."""

from klat.embeddings import (contains_U_summand, feasible_divisibilities,
                             find_primitive_embeddings, glue_check,
                             iter_embeddings, iter_image_tuples,
                             represent_primitive, vectors_with_norm)
from klat.lattices import Sublattice, make_lattice, rescale, span


def naive_vectors_with_norm(lattice, target, bound):
    from itertools import product
    out = []
    for v in product(range(-bound, bound + 1), repeat=lattice.rank):
        if any(v) and lattice.norm(v) == target:
            out.append(v)
    return out


def test_vectors_with_norm_matches_naive():
    for spec, target in (("A2", 2), ("U+<-2>", -2),
                         ("A1+A1", 4), ("U+U", 2)):
        l = make_lattice(spec)
        got = set(vectors_with_norm(l, target, 2))
        want = set(naive_vectors_with_norm(l, target, 2))
        assert got == want, spec


def test_iter_embeddings_finds_A1_in_U():
    sols = list(iter_embeddings(make_lattice("A1"), make_lattice("U"), 2))
    images = {s.images[0] for s in sols}
    assert (1, 1) in images
    assert all(make_lattice("U").norm(s.images[0]) == 2 for s in sols)


def test_iter_embeddings_gram_is_respected():
    a2 = make_lattice("A2")
    u2 = make_lattice("U+U")
    for sol in iter_embeddings(a2, u2, 1):
        x, y = sol.images
        assert u2.norm(x) == 2 and u2.norm(y) == 2
        assert u2.inner(x, y) == -1


def test_symmetry_reduction_covers_all_sublattices():
    sub = make_lattice("A1+A1")
    amb = make_lattice("U+U")
    def key(images):
        canon = []
        for v in images:
            first = next((x for x in v if x), 0)
            canon.append(tuple(-x for x in v) if first < 0 else v)
        return frozenset(canon)
    all_keys = {key(t) for t in iter_image_tuples(sub, amb, 2)}
    reduced_keys = {key(t) for t in iter_image_tuples(
        sub, amb, 2, up_to_basis_swaps=True)}
    assert reduced_keys == all_keys


def test_find_primitive_embeddings():
    sols = find_primitive_embeddings(make_lattice("A1"),
                                     make_lattice("U+U"), 2)
    assert sols
    assert all(s.primitive for s in sols)


def test_contains_U_summand_verdicts():
    assert contains_U_summand(make_lattice("U+A2"))[0] == "yes-syntactic"
    assert contains_U_summand(make_lattice("<2>+<2>"))[0] == "no"
    # every pairing in U(2)+U(2) is even, so no two vectors pair to 1
    assert contains_U_summand(make_lattice("U(2)+U(2)"))[0] == "no"


def test_feasible_divisibilities():
    l = make_lattice("U+U+U+<-6>")
    assert set(feasible_divisibilities(l)) <= {1, 2, 3, 6}
    # unimodular: only divisibility 1 exists
    assert list(feasible_divisibilities(make_lattice("U+U"))) == [1]


def test_represent_primitive_wall_classes():
    l = make_lattice("U+U+U+<-6>")
    res = represent_primitive(l, -6, coord_bound=3)
    divs = {d for _, d in res.solutions}
    assert {1, 2, 3, 6} <= divs
    for w, d in res.solutions:
        assert l.norm(w) == -6


def test_glue_check():
    amb = make_lattice("U+U")
    sub = span(amb, [(1, 1, 0, 0)])
    assert glue_check(sub, (0, 0, 1, 1))
    # v + e for e in the sublattice: span is not saturated
    assert not glue_check(sub, (1, -1, 0, 0))
