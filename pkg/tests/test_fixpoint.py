from unittest import TestCase, main

from kruskal.dilator import product_dilator, seq_dilator, unary_dilator
from kruskal.exceptions import ConstructionError, PreconditionError
from kruskal.fixpoint import (
    FixTerm, degenerate_isomorphism, enumerate_terms, height, leaf, length, leq_T, mk_term, term_system,
)
from kruskal.options import profile

TINY = profile('tiny')


class TestFixpoint(TestCase):

    def setUp(self):
        self.seq2 = seq_dilator(2, TINY)
        self.seq3 = seq_dilator(3, TINY)

    def test_enumerate_height_one(self):
        terms, truncated = enumerate_terms(self.seq2, 1, options=TINY)
        self.assertFalse(truncated)
        self.assertEqual([t.serialized for t in terms], ['(empty:)', '(s0@1:(empty:))'])

    def test_seq2_is_a_chain(self):
        terms, _ = enumerate_terms(self.seq2, 2, options=TINY)
        self.assertEqual(len(terms), 3)
        for i, s in enumerate(terms):
            for t in terms[i:]:
                self.assertTrue(leq_T(self.seq2, s, t))

    def test_truncation(self):
        terms, truncated = enumerate_terms(self.seq3, 2, max_count=4, options=TINY)
        self.assertTrue(truncated)
        self.assertEqual(len(terms), 4)

    def test_empty_is_least(self):
        e = leaf(self.seq3, 'empty')
        terms, _ = enumerate_terms(self.seq3, 2, options=TINY)
        for t in terms:
            self.assertTrue(leq_T(self.seq3, e, t), t)

    def test_mk_term(self):
        e = leaf(self.seq3, 'empty')
        s0e = mk_term(self.seq3, [e], self.seq3.token('s0@1'))
        self.assertEqual(str(s0e), '(s0@1:(empty:))')
        self.assertRaises(ConstructionError, mk_term, self.seq3, [e], self.seq3.token('s01@2'))
        t = mk_term(self.seq3, [s0e, e], self.seq3.token('s01@2_01'))
        self.assertEqual(t.children, (e, s0e))
        self.assertEqual((height(t), length(t)), (2, 4))
        self.assertRaises(ConstructionError, mk_term, self.seq3, [e], product_dilator(1, TINY).token('p0@1'))

    def test_immutable(self):
        e = leaf(self.seq2, 'empty')
        self.assertIsInstance(e, FixTerm)
        self.assertRaises(AttributeError, setattr, e, 'token', None)

    def test_kappa_inverts_decompose(self):
        system = term_system(self.seq3)
        terms, _ = enumerate_terms(self.seq3, 2, options=TINY)
        for t in terms:
            self.assertEqual(system.kappa(*system.decompose(t)), t)

    def test_order_laws(self):
        system = term_system(self.seq3)
        terms, _ = enumerate_terms(self.seq3, 2, options=TINY)
        for s in terms:
            self.assertTrue(system.leq(s, s))
            for t in terms:
                if system.leq(s, t) and system.leq(t, s):
                    self.assertEqual(s, t)
                for u in terms:
                    if system.leq(s, t) and system.leq(t, u):
                        self.assertTrue(system.leq(s, u), (s, t, u))

    def test_child_is_below(self):
        terms, _ = enumerate_terms(self.seq3, 2, options=TINY)
        for t in terms:
            for c in t.children:
                self.assertEqual(term_system(self.seq3).compare(c, t), 'LT')

    def test_degenerate(self):
        d = unary_dilator(['c', 'd'], options=TINY)
        self.assertTrue(degenerate_isomorphism(d, TINY))
        self.assertRaises(PreconditionError, degenerate_isomorphism, self.seq2, TINY)


if __name__ == '__main__':
    main()
