"""
Root conftest: puts the flat top-level modules on sys.path for tests/
"""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
