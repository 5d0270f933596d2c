import logging
from contextlib import contextmanager
from unittest import TestCase, main

from io import StringIO

from kruskal import logger
from kruskal.dilator import seq_dilator, validate
from kruskal.falsify import bad_search
from kruskal.options import profile
from kruskal.orders import antichain

TINY = profile('tiny')


@contextmanager
def capture_log():
    stream = StringIO()
    orig_handler = logger.handlers[0]
    del logger.handlers[:]
    logger.addHandler(logging.StreamHandler(stream))
    yield stream
    del logger.handlers[:]
    logger.addHandler(orig_handler)


class Testlogger(TestCase):

    def setUp(self):
        self.level = logger.level

    def tearDown(self):
        logger.setLevel(self.level)

    def test_info(self):
        logger.setLevel(logging.INFO)
        with capture_log() as log:
            validate(seq_dilator(2, TINY), TINY)
        self.assertIn("Validated seq:2", log.getvalue())

    def test_loglevel_higher(self):
        logger.setLevel(logging.ERROR)
        with capture_log() as log:
            validate(seq_dilator(2, TINY), TINY)
        # no log message
        self.assertEqual(len(log.getvalue()), 0)

    def test_budget_warning(self):
        logger.setLevel(logging.WARNING)
        with capture_log() as log:
            bad_search(antichain(6), 6, budget=2, options=TINY)
        self.assertIn("budget of 2 steps exhausted", log.getvalue())


if __name__ == '__main__':
    main()
