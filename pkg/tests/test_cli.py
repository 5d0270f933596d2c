import json
import os
import tempfile
from contextlib import redirect_stderr, redirect_stdout
from io import StringIO
from unittest import TestCase, main, mock

from kruskal import logger
from kruskal.options import profile, set_options
from kruskal.serialize import dump_dilator
from kruskal.tools import EXIT_FAILED, EXIT_INPUT, EXIT_OK
from kruskal.tools.cli import main as cli_main
from kruskal.tools.suite import run_suite, semantic_corpus
from kruskal.trees import tree_leq

from .test_dilator import rigged_seq3

TINY = profile('tiny')
GOLDEN = os.path.join(os.path.dirname(__file__), 'golden')


class CliTestCase(TestCase):

    def setUp(self):
        self.level = logger.level
        self.tmp = tempfile.TemporaryDirectory()

    def tearDown(self):
        set_options(None)
        logger.setLevel(self.level)
        self.tmp.cleanup()

    def run_cli(self, *argv):
        out, err = StringIO(), StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            code = cli_main(list(argv))
        return code, out.getvalue(), err.getvalue()


class TestCli(CliTestCase):

    def test_validate(self):
        code, out, _ = self.run_cli('validate', '-p', 'tiny', 'seq:3')
        self.assertEqual(code, EXIT_OK)
        self.assertIn('seq:3: valid', out)
        self.assertIn('normal = true', out)
        self.assertIn('monotone = true', out)

    def test_validate_bound(self):
        code, out, _ = self.run_cli('validate', '-p', 'tiny', '-b', '2', 'seq:2')
        self.assertEqual(code, EXIT_OK)
        self.assertIn('(bound 2)', out)
        self.assertNotIn('(bound 3)', out)
        code, _, _ = self.run_cli('validate', '-b', '-1', 'seq:2')
        self.assertEqual(code, EXIT_INPUT)

    def test_validate_json(self):
        code, out, _ = self.run_cli('validate', '-p', 'tiny', '-f', 'json', 'seq:2')
        self.assertEqual(code, EXIT_OK)
        obj = json.loads(out)
        self.assertTrue(obj['valid'])
        self.assertTrue(obj['unary'])

    def test_validate_malformed(self):
        path = os.path.join(self.tmp.name, 'broken.json')
        with open(path, 'w') as f:
            json.dump({'trace': []}, f)
        code, _, err = self.run_cli('validate', '-p', 'tiny', path)
        self.assertEqual(code, EXIT_INPUT)
        self.assertIn('Malformed', err)

    def test_validate_rigged(self):
        path = os.path.join(self.tmp.name, 'rigged.json')
        dump_dilator(rigged_seq3(), path, TINY)
        code, out, _ = self.run_cli('validate', '-p', 'tiny', path)
        self.assertEqual(code, EXIT_FAILED)
        line, = [l for l in out.splitlines() if l.strip().startswith('transitivity')]
        self.assertIn('FAILED', line)

    def test_unknown_dilator(self):
        code, _, _ = self.run_cli('validate', '-p', 'tiny', 'bogus')
        self.assertEqual(code, EXIT_INPUT)

    def test_term_cmp(self):
        code, out, _ = self.run_cli('term', '-p', 'tiny', 'seq:2', 'cmp', '(empty:)', '(s0@1:(empty:))')
        self.assertEqual((code, out), (EXIT_OK, 'LT\n'))
        code, out, _ = self.run_cli('term', '-p', 'tiny', 'seq:2', 'cmp', '(empty:)', '(empty:)')
        self.assertEqual(out, 'EQ\n')

    def test_term_enum(self):
        code, out, _ = self.run_cli('term', '-p', 'tiny', 'seq:2', 'enum', '--height', '1')
        self.assertEqual(code, EXIT_OK)
        with open(os.path.join(GOLDEN, 'seq2_height1.txt')) as f:
            self.assertEqual(out, f.read())

    def test_term_errors(self):
        code, _, _ = self.run_cli('term', '-p', 'tiny', 'seq:2', 'cmp', '(empty:', '(empty:)')
        self.assertEqual(code, EXIT_INPUT)
        code, _, _ = self.run_cli('term', '-p', 'tiny', 'seq:2', 'cmp', '(s0@1:)', '(empty:)')
        self.assertEqual(code, EXIT_INPUT)

    def test_tree_cmp(self):
        big, small = '0*(0*() 0*())', '0*()'
        code, out, _ = self.run_cli('tree', '-p', 'tiny', 'cmp', '2', '3', big, small)
        self.assertEqual((code, out), (EXIT_OK, 'GT\n'))
        code, out, _ = self.run_cli('tree', '-p', 'tiny', 'cmp', '--oracle', '2', 'inf', big, small)
        self.assertEqual(out, 'GT\n')
        code, out, _ = self.run_cli('tree', '-p', 'tiny', 'cmp', '2', '3', '1*()', small)
        self.assertEqual(out, 'INC\n')

    def test_tree_universe(self):
        code, _, err = self.run_cli('tree', '-p', 'tiny', 'cmp', '1', 'inf', '1*()', '0*()')
        self.assertEqual(code, EXIT_FAILED)
        self.assertIn('PreconditionError', err)

    def test_map_tree_to_fix(self):
        code, out, _ = self.run_cli('map', '-p', 'tiny', 'tree-to-fix', '0*()', '-n', '2')
        self.assertEqual((code, out), (EXIT_OK, '(empty:)\n'))
        code, out, _ = self.run_cli('map', '-p', 'tiny', 'tree-to-fix', '0*()', '0*(0*())', '-n', '3', '--check')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out.splitlines(), ['(empty:)', '(s0@1:(empty:))', 'reflection: ok'])

    def test_map_delabel(self):
        code, _, err = self.run_cli('map', '-p', 'tiny', 'delabel', '0*()', '-m', '2', '-n', '2')
        self.assertEqual(code, EXIT_FAILED)
        self.assertIn('m < n required', err)
        code, out, _ = self.run_cli('map', '-p', 'tiny', 'delabel', '0*()', '-m', '1', '-n', '2')
        self.assertEqual(out, '0*(0*(0*()) 0*(0*()))\n')

    def test_map_to_prime(self):
        code, out, _ = self.run_cli('map', '-p', 'tiny', 'to-prime', '(empty:)', '-d', 'seq:2')
        self.assertEqual(code, EXIT_OK)
        self.assertIn('(star:)', out)
        self.assertIn('(plus:)', out)

    def test_map_wz_iso(self):
        code, term, _ = self.run_cli('map', '-p', 'tiny', 'wz-iso', '<1,0>', '-d', 'wz:2')
        self.assertEqual(code, EXIT_OK)
        code, out, _ = self.run_cli('map', '-p', 'tiny', 'wz-iso', term.strip(), '-d', 'wz:2')
        self.assertEqual(out, '<1,0>\n')

    def test_map_needs_dilator(self):
        code, _, err = self.run_cli('map', '-p', 'tiny', 'fix-to-tree', '(empty:)')
        self.assertEqual(code, EXIT_FAILED)
        self.assertIn('--dilator', err)

    def test_falsify_descent(self):
        code, out, _ = self.run_cli('falsify', 'descent', '<1>', '--steps', '4')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out.splitlines(), ['<0,0,0>', '<0,0>', '<0>', '<>'])

    def test_falsify_ladder(self):
        code, out, _ = self.run_cli('falsify', '-p', 'tiny', 'ladder', 'dual:2')
        self.assertEqual(code, EXIT_OK)
        self.assertIn('bad: true', out)
        code, _, _ = self.run_cli('falsify', '-p', 'tiny', 'ladder', 'seq:2')
        self.assertEqual(code, EXIT_FAILED)

    def test_falsify_bad_search(self):
        code, out, _ = self.run_cli('falsify', '-p', 'tiny', 'bad-search', 'prod:1', '2', '--length', '2')
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(out.startswith('FOUND'))
        code, out, _ = self.run_cli('falsify', '-p', 'tiny', 'bad-search', 'prod:1', '2', '--length', '3')
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(out.startswith('NONE'))

    def test_falsify_antichain(self):
        code, _, _ = self.run_cli('falsify', '-p', 'tiny', 'antichain', 'prod:2', '--length', '3')
        self.assertEqual(code, EXIT_OK)
        code, out, _ = self.run_cli('falsify', '-p', 'tiny', 'antichain', 'lex:2', '--length', '3')
        self.assertEqual(code, EXIT_FAILED)
        self.assertIn('comparable', out)


class TestSuite(CliTestCase):

    def test_gadgets(self):
        code, out, _ = self.run_cli('suite', '-p', 'tiny', '--only', 'gadgets')
        self.assertEqual(code, EXIT_OK)
        self.assertIn('PASS   label-gadgets-incomparable', out)
        self.assertIn('PASS   full-tree-monotone', out)
        self.assertIn('3 checks, 0 failed', out)

    def test_gadgets_catch_indiscriminate_embedding(self):
        with mock.patch('kruskal.tools.suite.tree_leq', lambda s, t: True):
            report = run_suite(TINY, only=['gadgets'])
        self.assertEqual([v.name for v in report.failures()], ['full-tree-monotone', 'label-gadgets-incomparable'])

    def test_prime_covers_corpus(self):
        report = run_suite(TINY, only=['prime'])
        self.assertTrue(report.ok, report.failures())
        names = [v.name for v in report.verdicts if v.name.startswith('prime-valid')]
        self.assertEqual(names, ['prime-valid(%s)' % d.name for d in semantic_corpus(TINY)])

    def test_selected_checks(self):
        report = run_suite(TINY, only=['degenerate', 'ordinals'])
        self.assertTrue(report.ok, report.failures())
        self.assertEqual([v.name for v in report.verdicts], ['degenerate-isomorphism', 'ord-order', 'ord-descent'])

    def test_trees(self):
        self.assertTrue(run_suite(TINY, only=['trees']))

    def test_catches_broken_embedding(self):
        def prefix_only(leq, s, t):
            return len(s) <= len(t) and all(leq(a, b) for a, b in zip(s, t))

        tree_leq.cache_clear()
        try:
            with mock.patch('kruskal.trees.higman_leq', prefix_only):
                report = run_suite(TINY, only=['trees'])
        finally:
            tree_leq.cache_clear()
        self.assertFalse(report.ok)
        self.assertEqual(report.failures()[0].name, 'tree-oracle-equivalence')


if __name__ == '__main__':
    main()
