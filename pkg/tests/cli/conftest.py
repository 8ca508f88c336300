import logging

import pytest


@pytest.fixture(autouse=True)
def restore_root_logger():
    """
    The command group reconfigures the root logger onto the runner's stderr, which is closed afterwards.
    """
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)
