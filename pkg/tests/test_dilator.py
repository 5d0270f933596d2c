from itertools import product
from unittest import TestCase, main

from kruskal.dilator import (
    CodedDilator, MonotonicityWitness, TraceToken, apply_map, check_functoriality, check_structure, check_transitivity,
    check_support_naturality, dual_product_dilator, elements_over, eval_order, finite_at_one, full_elem,
    is_degenerate, is_monotone, is_normal, is_unary, leq_W, lex_product_dilator, make_elem, normal_form,
    oracle_agreement, prime_transform, product_dilator, restrict_to_union, seq_dilator, tabulate, unary_dilator,
    unary_wpo_decision, validate, wz_dilator,
)
from kruskal.exceptions import PreconditionError, ResourceLimitError, StructureError, ValidationError
from kruskal.options import profile
from kruskal.orders import (
    EMPTY, OrderMap, antichain, chain, enumerate_maps, identity_map, pointwise_leq, poset_from_code,
)

TINY = profile('tiny')


def rigged_seq3(options=TINY):
    "seq:3 with the entry <> <= <x, x> over one point switched off."
    d = seq_dilator(3, options)
    key = (poset_from_code('1'), (), 'empty', (0,), 's00@1')
    return d.with_table({key: False}, name='seq:3-rigged')


class TestDilator(TestCase):

    def test_traces(self):
        d = seq_dilator(2, TINY)
        self.assertEqual(d.n_max, 1)
        self.assertEqual([t.id for t in d.trace], ['empty', 's0@1'])
        self.assertEqual(len(seq_dilator(3, TINY).tokens_of_shape(poset_from_code('2'))), 2)
        self.assertTrue(product_dilator(2, TINY).has_token('p01@2'))
        self.assertRaises(StructureError, d.token, 'p0@1')

    def test_eval_order_counts(self):
        self.assertEqual(len(eval_order(product_dilator(1, TINY), chain(1), TINY)), 1)
        self.assertEqual(len(eval_order(seq_dilator(2, TINY), chain(1), TINY)), 2)
        # sequences of length < 3 over two points
        self.assertEqual(len(eval_order(seq_dilator(3, TINY), antichain(2), TINY)), 7)
        self.assertEqual(len(eval_order(wz_dilator(antichain(2), TINY), chain(2), TINY)), 5)

    def test_leq_W(self):
        d = seq_dilator(3, TINY)
        bottom = make_elem(d, chain(2), [0], d.token('s0@1'))
        top = make_elem(d, chain(2), [1], d.token('s0@1'))
        self.assertTrue(leq_W(d, bottom, top))
        self.assertFalse(leq_W(d, top, bottom))
        self.assertTrue(leq_W(d, top, top))

    def test_product_over_antichain(self):
        d = product_dilator(2, TINY)
        ab = normal_form(d, antichain(2), (0, 1))
        ba = normal_form(d, antichain(2), (1, 0))
        self.assertNotEqual(ab, ba)
        self.assertFalse(leq_W(d, ab, ba))
        self.assertFalse(leq_W(d, ba, ab))
        r = restrict_to_union(d, ab, ab)
        self.assertEqual(r.s, (0, 1))
        self.assertEqual(r.sigma, r.tau)

    def test_restrict_disjoint(self):
        d = seq_dilator(3, TINY)
        x = make_elem(d, chain(2), [0], d.token('s0@1'))
        y = make_elem(d, chain(2), [1], d.token('s0@1'))
        r = restrict_to_union(d, x, y)
        self.assertEqual(r.shape.code, '2_01')
        self.assertEqual((r.s, r.t), ((0,), (1,)))

    def test_make_elem_shape(self):
        d = seq_dilator(3, TINY)
        self.assertRaises(ValidationError, make_elem, d, chain(2), [0, 1], d.token('s0@1'))

    def test_apply_map(self):
        d = product_dilator(2, TINY)
        x = normal_form(d, antichain(2), (0, 1))
        self.assertEqual(apply_map(d, identity_map(antichain(2)), x), x)
        inclusion = OrderMap(antichain(2), chain(2), (0, 1))
        self.assertRaises(ValidationError, apply_map, d, inclusion, x)
        into_chain = OrderMap(chain(2), antichain(2), (0, 1))
        y = normal_form(d, chain(2), (1, 0))
        image = apply_map(d, into_chain, y)
        self.assertEqual(image, normal_form(d, antichain(2), (1, 0)))
        empty = normal_form(seq_dilator(2, TINY), chain(1), ())
        moved = apply_map(seq_dilator(2, TINY), OrderMap(chain(1), chain(2), (1,)), empty)
        self.assertEqual(moved.support, frozenset())
        self.assertEqual(moved.token.id, 'empty')

    def test_prime_at_one(self):
        w = prime_transform(product_dilator(1, TINY), TINY)
        self.assertEqual(w.n_max, 3)
        one = eval_order(w, chain(1), TINY)
        self.assertEqual(sorted(e.token.id for e in one.elements), ['plus', 'star'])
        self.assertFalse(one.poset.comparable(0, 1))
        self.assertEqual(finite_at_one(w), 2)

    def test_prime_bound(self):
        self.assertRaises(ResourceLimitError, prime_transform, seq_dilator(4, TINY), TINY)

    def test_tabulate(self):
        d = seq_dilator(2, TINY)
        t = tabulate(d, TINY)
        self.assertIsNone(t.functor)
        self.assertEqual([x.id for x in t.trace], [x.id for x in d.trace])
        self.assertEqual(eval_order(t, chain(2), TINY).poset, eval_order(d, chain(2), TINY).poset)
        self.assertTrue(validate(t, TINY))


class TestValidation(TestCase):

    def test_builtins_pass(self):
        for d in (seq_dilator(2, TINY), product_dilator(2, TINY), wz_dilator(chain(2), TINY)):
            report = validate(d, TINY)
            self.assertTrue(report.ok, report.failures())

    def test_prime_passes(self):
        report = validate(prime_transform(product_dilator(1, TINY), TINY), TINY)
        self.assertTrue(report.ok, report.failures())

    def test_transitivity_break(self):
        report = validate(rigged_seq3(), TINY)
        v = report['transitivity']
        self.assertFalse(v.ok)
        code, x, y, z = v.witness
        self.assertEqual(code, '1')
        self.assertEqual((x.token.id, z.token.id), ('empty', 's00@1'))
        self.assertTrue(report['reflexivity'].ok)

    def test_transitivity_reach(self):
        v = check_transitivity(seq_dilator(3, TINY), TINY)
        self.assertTrue(v)
        self.assertEqual(v.bound, 3)
        self.assertIn('up to 3 of the 6 points', v.message)
        v = check_transitivity(seq_dilator(2, TINY), TINY)
        self.assertEqual(v.bound, 3)
        self.assertIn('all shapes up to 3 points', v.message)
        v = check_transitivity(product_dilator(2, TINY), TINY.replace(transitivity_bound=5))
        self.assertTrue(v)
        self.assertEqual(v.bound, 5)

    def test_structure_errors(self):
        c = poset_from_code('1')
        bad_shape = CodedDilator('bad', 0, [TraceToken('a', c)])
        self.assertRaises(StructureError, check_structure, bad_shape, TINY)
        bad_id = CodedDilator('bad', 1, [TraceToken('a b', c)])
        self.assertRaises(StructureError, check_structure, bad_id, TINY)
        self.assertRaises(StructureError, CodedDilator, 'dup', 1, [TraceToken('a', c), TraceToken('a', c)])
        not_covering = CodedDilator('bad', 1, [TraceToken('a', c)],
                                    table={(poset_from_code('2'), (0,), 'a', (0,), 'a'): True})
        self.assertRaises(StructureError, validate, not_covering, TINY)

    def test_missing_action(self):
        c = poset_from_code('2')
        d = CodedDilator('swap', 2, [TraceToken('a', c)], table={(c, (0, 1), 'a', (0, 1), 'a'): True})
        self.assertRaises(StructureError, check_structure, d, TINY)


class TestProperties(TestCase):

    def test_normality(self):
        self.assertTrue(is_normal(seq_dilator(3, TINY), TINY))
        self.assertTrue(is_normal(product_dilator(2, TINY), TINY))
        self.assertFalse(is_normal(dual_product_dilator(2, TINY), TINY))
        v = is_normal(lex_product_dilator(2, TINY), TINY)
        self.assertFalse(v)
        self.assertIsNotNone(v.witness)

    def test_constant_is_normal(self):
        d = unary_dilator(['c'], name='constant', options=TINY)
        self.assertTrue(is_degenerate(d))
        self.assertTrue(is_normal(d, TINY))
        self.assertTrue(validate(d, TINY))

    def test_monotone(self):
        for d in (seq_dilator(2, TINY), seq_dilator(3, TINY), product_dilator(2, TINY),
                  lex_product_dilator(2, TINY)):
            self.assertTrue(is_monotone(d, TINY), d.name)

    def test_monotone_pointwise(self):
        for d in (seq_dilator(3, TINY), product_dilator(2, TINY)):
            for x in (chain(2), antichain(2)):
                elements = eval_order(d, x, TINY).elements
                for y in (chain(2), chain(3), antichain(2), antichain(3)):
                    maps = enumerate_maps(x, y, options=TINY)
                    for f, g in product(maps, repeat=2):
                        if not pointwise_leq(f, g):
                            continue
                        for e in elements:
                            self.assertTrue(leq_W(d, apply_map(d, f, e), apply_map(d, g, e)), (d.name, f, g, e))

    def test_monotonicity_witness(self):
        d = dual_product_dilator(2, TINY)
        v = is_monotone(d, TINY)
        self.assertFalse(v)
        w = v.witness
        self.assertIsInstance(w, MonotonicityWitness)
        x = full_elem(w.token)
        self.assertFalse(leq_W(d, apply_map(d, w.f, x), apply_map(d, w.g, x)))

    def test_unary(self):
        up = unary_dilator(['c'], ['u', 'v'], name='unary:up', options=TINY)
        down = unary_dilator(['c'], ['u', 'v'], relation='down', name='unary:down', options=TINY)
        self.assertTrue(is_unary(up))
        self.assertFalse(is_unary(product_dilator(2, TINY)))
        self.assertTrue(unary_wpo_decision(up, TINY))
        self.assertFalse(unary_wpo_decision(down, TINY))
        self.assertRaises(PreconditionError, unary_wpo_decision, product_dilator(2, TINY), TINY)

    def test_direct_semantics(self):
        for d in (seq_dilator(2, TINY), product_dilator(2, TINY), wz_dilator(antichain(2), TINY, label='2')):
            self.assertTrue(oracle_agreement(d, TINY), d.name)
            self.assertTrue(check_support_naturality(d, TINY), d.name)
            self.assertTrue(check_functoriality(d, TINY), d.name)
        self.assertRaises(PreconditionError, oracle_agreement, tabulate(seq_dilator(2, TINY), TINY), TINY)

    def test_elements_over_empty(self):
        d = unary_dilator(['c', 'd'], ['u'], options=TINY)
        self.assertEqual(sorted(e.token.id for e in elements_over(d, EMPTY)), ['c', 'd'])


if __name__ == '__main__':
    main()
