from unittest import TestCase, main

from kruskal.dilator import (
    MonotonicityWitness, dual_product_dilator, eval_order, is_monotone, lex_product_dilator, product_dilator,
    seq_dilator, unary_dilator,
)
from kruskal.exceptions import PreconditionError, WitnessError
from kruskal.falsify import (
    FOUND, INCONCLUSIVE, NONE, bad_search, check_witness, descent_search, is_antichain, is_bad,
    ladder_bad_sequence, lemma32_antichain, pigeonhole_bound,
)
from kruskal.options import profile
from kruskal.orders import OrderMap, antichain, chain, ordterm, poset_from_code

TINY = profile('tiny')


class TestBadSearch(TestCase):

    def test_found(self):
        r = bad_search(antichain(3), 3, options=TINY)
        self.assertEqual(r.status, FOUND)
        self.assertEqual(r.witness, [0, 1, 2])
        self.assertTrue(r)

    def test_none(self):
        r = bad_search(chain(3), 2, options=TINY)
        self.assertEqual(r.status, NONE)
        self.assertFalse(r)

    def test_width(self):
        r = bad_search(antichain(5), 3, width_bound=2, options=TINY)
        self.assertEqual(r.status, INCONCLUSIVE)
        self.assertEqual(bad_search(antichain(2), 3, width_bound=2, options=TINY).status, NONE)

    def test_budget(self):
        r = bad_search(antichain(10), 10, budget=3, options=TINY)
        self.assertEqual(r.status, INCONCLUSIVE)
        self.assertEqual(r.reason, 'budget exhausted')

    def test_generator(self):
        r = bad_search(iter([3, 2, 1]), 3, leq=lambda a, b: a <= b, options=TINY)
        self.assertEqual(r.witness, [3, 2, 1])
        r = bad_search(iter([1, 3, 0, 2]), 2, leq=lambda a, b: a <= b, options=TINY)
        self.assertEqual(r.witness, [1, 0])
        self.assertRaises(PreconditionError, bad_search, iter([1, 2]), 1, options=TINY)

    def test_length(self):
        self.assertRaises(PreconditionError, bad_search, chain(2), 0, options=TINY)

    def test_presentation(self):
        two = eval_order(product_dilator(1, TINY), poset_from_code('2'), TINY)
        r = bad_search(two, 2, options=TINY)
        self.assertEqual(r.status, FOUND)
        self.assertTrue(is_antichain(r.witness, two.leq))

    def test_helpers(self):
        leq = lambda a, b: a <= b
        self.assertTrue(is_bad([2, 1, 0], leq))
        self.assertFalse(is_bad([0, 1], leq))
        self.assertFalse(is_antichain([2, 1], leq))
        self.assertEqual(pigeonhole_bound(unary_dilator(['c'], ['u', 'v'], options=TINY)), 3)


class TestConstructions(TestCase):

    def test_antichain(self):
        result = lemma32_antichain(product_dilator(2, TINY), 'p01@2', 3, TINY)
        self.assertTrue(result.ok)
        self.assertEqual(len(result.elements), 3)
        self.assertEqual(result.target.size, 8)

    def test_antichain_of_lex(self):
        result = lemma32_antichain(lex_product_dilator(2, TINY), 'l01@2', 3, TINY)
        self.assertFalse(result.ok)
        self.assertIsNotNone(result.witness)

    def test_antichain_preconditions(self):
        unary = unary_dilator(['c'], ['u'], options=TINY)
        self.assertRaises(PreconditionError, lemma32_antichain, unary, 'u@1', 3, TINY)
        self.assertRaises(PreconditionError, lemma32_antichain, seq_dilator(2, TINY), 's0@1', 3, TINY)

    def test_ladder(self):
        d = dual_product_dilator(2, TINY)
        w = is_monotone(d, TINY).witness
        ladder = ladder_bad_sequence(d, w, 5, TINY)
        self.assertTrue(ladder.bad)
        self.assertEqual(len(ladder.elements), 5)

    def test_fake_witness(self):
        d = product_dilator(1, TINY)
        shape = poset_from_code('1')
        f = OrderMap(shape, chain(1), (0,))
        w = MonotonicityWitness(shape, d.token('p0@1'), chain(1), f, f)
        self.assertRaises(WitnessError, check_witness, d, w)
        self.assertRaises(WitnessError, ladder_bad_sequence, d, w, 3, TINY)
        self.assertRaises(WitnessError, check_witness, d, None)

    def test_descent(self):
        chain_ = descent_search(2, ordterm(2, [1]), 4)
        self.assertEqual([str(t) for t in chain_], ['<0,0,0>', '<0,0>', '<0>', '<>'])
        self.assertEqual(descent_search(2, ordterm(2, []), 4), [])
        self.assertRaises(PreconditionError, descent_search, 3, ordterm(2, [1]), 4)


if __name__ == '__main__':
    main()
