import os
from unittest import TestCase, main, mock

from kruskal.exceptions import ConfigurationError
from kruskal.options import (
    PROFILE_ENV, RESOURCE_CAP_ENV, KruskalOptions, get_options, profile, resolve, set_options,
)


class TestOptions(TestCase):

    def tearDown(self):
        set_options(None)

    def test_defaults(self):
        o = KruskalOptions()
        self.assertEqual(o.poset_bound, 6)
        self.assertEqual(o.term_height, 3)
        self.assertEqual(o.ladder_length, 5)
        self.assertEqual(o.tree_vertices, 6)
        self.assertEqual(o.transitivity_bound, 6)

    def test_unknown_option(self):
        self.assertRaises(ConfigurationError, KruskalOptions, {'no_such_bound': 1})
        o = KruskalOptions()
        self.assertRaises(ConfigurationError, setattr, o, 'no_such_bound', 1)

    def test_negative_bound(self):
        self.assertRaises(ConfigurationError, KruskalOptions, {'poset_bound': -1})

    def test_replace(self):
        o = KruskalOptions().replace(term_height=1)
        self.assertEqual(o.term_height, 1)
        self.assertEqual(KruskalOptions().term_height, 3)

    def test_profiles(self):
        self.assertEqual(profile('tiny').term_height, 2)
        self.assertEqual(profile('thorough').tree_vertices, 6)
        self.assertEqual(profile('default').as_dict(), KruskalOptions().as_dict())
        self.assertRaises(ConfigurationError, profile, 'huge')

    def test_resource_cap(self):
        with mock.patch.dict(os.environ, {RESOURCE_CAP_ENV: '4'}):
            self.assertEqual(profile('tiny').poset_bound, 4)
        with mock.patch.dict(os.environ, {RESOURCE_CAP_ENV: 'many'}):
            self.assertRaises(ConfigurationError, profile, 'tiny')

    def test_profile_from_environment(self):
        set_options(None)
        with mock.patch.dict(os.environ, {PROFILE_ENV: 'tiny'}):
            self.assertEqual(get_options().term_count, 500)
        explicit = KruskalOptions({'term_count': 7})
        self.assertIs(resolve(explicit), explicit)


if __name__ == '__main__':
    main()
