from __future__ import absolute_import, print_function

import unittest
import logging

from kruskal import logger

from .test_options import TestOptions
from .test_orders import TestPosets, TestMaps, TestSequences, TestOrdinals
from .test_dilator import TestDilator, TestValidation, TestProperties
from .test_fixpoint import TestFixpoint
from .test_trees import TestTrees, TestTreeOracle
from .test_bridges import TestBridges
from .test_falsify import TestBadSearch, TestConstructions
from .test_serialize import TestFormats, TestGrammars
from .test_cli import TestCli, TestSuite

from .test_logger import Testlogger

logger.setLevel(logging.INFO)

if __name__ == '__main__':
    unittest.main()
