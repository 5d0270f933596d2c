from itertools import permutations, product
from unittest import TestCase, main

from kruskal.exceptions import ResourceLimitError, ValidationError
from kruskal.options import profile
from kruskal.orders import (
    FinPoset, MORPHISM_EMBEDDING, MORPHISM_NONE, MORPHISM_QUASI, OrderMap, OrdTerm, antichain, automorphisms,
    canonical_form, canonicalize, chain, discrete_times_chain, enumerate_canonical, enumerate_maps,
    enumerate_ord_terms, higman_leq, induced_suborder, lex_double, make_poset, morphism_checks, ord_leq, ord_lt,
    ordterm, pointwise_leq, poset_from_code, sum_order,
)
from kruskal.utils import invert

TINY = profile('tiny')


class TestPosets(TestCase):

    def test_make_poset(self):
        p = make_poset(3, [(0, 1), (1, 2)], close=True)
        self.assertTrue(p.leq(0, 2))
        self.assertFalse(p.leq(2, 0))
        self.assertRaises(ValidationError, make_poset, 2, [(0, 1), (1, 0)])
        self.assertRaises(ValidationError, make_poset, 3, [(0, 1), (1, 2)])
        self.assertRaises(ValidationError, make_poset, 2, [(0, 5)])

    def test_codes(self):
        self.assertEqual(canonicalize(chain(3)).code, '3_01_12')
        self.assertEqual(canonicalize(antichain(2)).code, '2')
        self.assertEqual(canonicalize(chain(0)).code, '0')
        self.assertEqual(poset_from_code('2_01').matrix, chain(2).matrix)
        self.assertRaises(ValidationError, poset_from_code, '2_10')
        self.assertRaises(ValidationError, poset_from_code, 'x_01')

    def test_canonical_form_is_relabeling_invariant(self):
        reversed_chain = make_poset(3, [(2, 1), (1, 0), (2, 0)])
        c, iso = canonical_form(reversed_chain)
        self.assertEqual(c, canonicalize(chain(3)))
        self.assertEqual(iso.values, (2, 1, 0))
        v = make_poset(3, [(1, 0), (1, 2)])
        w = make_poset(3, [(0, 2), (0, 1)])
        self.assertEqual(canonicalize(v), canonicalize(w))

    def test_canonical_form_of_every_relabeling(self):
        for k in range(6):
            for c in enumerate_canonical(k, TINY):
                for perm in permutations(range(k)):
                    matrix = [[False] * k for _ in range(k)]
                    for i, j in product(range(k), repeat=2):
                        matrix[perm[i]][perm[j]] = c.matrix[i][j]
                    p = FinPoset(k, tuple(tuple(row) for row in matrix))
                    self.assertEqual(canonicalize(p).matrix, c.matrix, (c.code, perm))

    def test_enumerate_canonical(self):
        counts = [len(enumerate_canonical(k, TINY)) for k in range(5)]
        self.assertEqual(counts, [1, 1, 2, 5, 16])
        for k in range(4):
            for c in enumerate_canonical(k, TINY):
                self.assertEqual(canonicalize(c).matrix, c.matrix)

    def test_enumeration_bound(self):
        self.assertRaises(ResourceLimitError, enumerate_canonical, 7, TINY)

    def test_induced_suborder(self):
        sub = induced_suborder(chain(3), [2, 0])
        self.assertEqual(sub.shape.code, '2_01')
        self.assertEqual(sub.en.values, (0, 2))
        self.assertEqual(sub.members, frozenset([0, 2]))
        self.assertRaises(ValidationError, induced_suborder, chain(2), [3])

    def test_constructions(self):
        s = sum_order([chain(2), chain(2)], [False, True])
        self.assertTrue(s.leq(0, 1))
        self.assertTrue(s.leq(3, 2))
        self.assertFalse(s.leq(1, 2))
        d = lex_double(chain(2))
        self.assertTrue(d.leq(0, 1))
        self.assertTrue(d.leq(1, 2))
        self.assertFalse(d.leq(1, 0))
        ladder = discrete_times_chain(2, 3)
        self.assertEqual(ladder.size, 6)
        self.assertTrue(ladder.leq(0, 2))
        self.assertFalse(ladder.leq(0, 3))


class TestMaps(TestCase):

    def test_morphism_kinds(self):
        self.assertEqual(morphism_checks(OrderMap(chain(2), antichain(2), (0, 1))), MORPHISM_QUASI)
        self.assertEqual(morphism_checks(OrderMap(antichain(2), chain(2), (0, 1))), MORPHISM_NONE)
        self.assertEqual(morphism_checks(OrderMap(chain(2), chain(3), (0, 2))), MORPHISM_EMBEDDING)
        self.assertRaises(ValidationError, morphism_checks, OrderMap(chain(2), chain(2), (0, 2)))

    def test_enumerate_maps(self):
        self.assertEqual(len(enumerate_maps(chain(2), chain(3), MORPHISM_EMBEDDING, TINY)), 3)
        # a 2-antichain maps into a 2-chain in no order-reflecting way
        self.assertEqual(enumerate_maps(antichain(2), chain(2), options=TINY), [])
        self.assertEqual(len(enumerate_maps(chain(2), antichain(2), options=TINY)), 2)

    def test_automorphisms(self):
        self.assertEqual(len(automorphisms(antichain(3))), 6)
        self.assertEqual(len(automorphisms(chain(3))), 1)

    def test_pointwise(self):
        f = OrderMap(chain(1), chain(2), (0,))
        g = OrderMap(chain(1), chain(2), (1,))
        self.assertTrue(pointwise_leq(f, g))
        self.assertFalse(pointwise_leq(g, f))

    def test_compose_and_inverse(self):
        f = OrderMap(chain(2), chain(3), (0, 2))
        g = OrderMap(chain(3), chain(4), (1, 2, 3))
        self.assertEqual(g.compose(f).values, (1, 3))
        swap = OrderMap(antichain(2), antichain(2), (1, 0))
        self.assertEqual(swap.inverse().values, (1, 0))
        self.assertRaises(ValidationError, f.inverse)

    def test_invert(self):
        self.assertEqual(invert((2, 0, 1)), {2: 0, 0: 1, 1: 2})
        self.assertRaises(ValidationError, invert, (0, 1, 0))


class TestSequences(TestCase):

    def test_higman(self):
        self.assertTrue(higman_leq(chain(2), (), (1,)))
        self.assertTrue(higman_leq(chain(2), (0,), (1,)))
        self.assertFalse(higman_leq(chain(2), (1,), (0,)))
        self.assertTrue(higman_leq(antichain(2), (0, 1), (0, 0, 1)))
        self.assertFalse(higman_leq(antichain(2), (0, 1), (1, 0)))

    def test_higman_is_a_partial_order(self):
        for z in (chain(2), antichain(2)):
            seqs = [s for n in range(4) for s in product(range(2), repeat=n)]
            for s in seqs:
                self.assertTrue(higman_leq(z, s, s))
            for s, t in product(seqs, repeat=2):
                if s != t and higman_leq(z, s, t):
                    self.assertFalse(higman_leq(z, t, s), (s, t))
                    for u in seqs:
                        if higman_leq(z, t, u):
                            self.assertTrue(higman_leq(z, s, u), (s, t, u))

    def test_higman_with_function(self):
        self.assertTrue(higman_leq(lambda a, b: a <= b, [1, 3], [0, 2, 1, 5]))
        self.assertFalse(higman_leq(lambda a, b: a <= b, [3, 3], [0, 4, 1]))


class TestOrdinals(TestCase):

    def test_entries(self):
        self.assertEqual(len(ordterm(2, [2, 1, 1])), 3)
        self.assertRaises(ValidationError, ordterm, 2, [0, 1])
        self.assertRaises(ValidationError, OrdTerm, 1, (1,))
        self.assertEqual(str(ordterm(2, [2, 0])), '<2,0>')
        self.assertEqual(str(OrdTerm.natural(3)), '3')

    def test_order(self):
        self.assertTrue(ord_lt(ordterm(2, [0, 0, 0]), ordterm(2, [1])))
        self.assertTrue(ord_leq(ordterm(2, [1]), ordterm(2, [1, 0])))
        self.assertFalse(ord_leq(ordterm(2, [2]), ordterm(2, [1, 1, 1])))
        self.assertTrue(ord_leq(ordterm(2, []), ordterm(2, [0])))
        self.assertRaises(ValidationError, ord_leq, ordterm(2, [1]), OrdTerm.natural(1))

    def test_linear(self):
        terms = enumerate_ord_terms(2, 3, 3)
        self.assertEqual(len(terms), 35)
        self.assertEqual(len(set(terms)), 35)
        for s in terms:
            for t in terms:
                self.assertTrue(ord_leq(s, t) or ord_leq(t, s))
                if ord_leq(s, t) and ord_leq(t, s):
                    self.assertEqual(s, t)


if __name__ == '__main__':
    main()
