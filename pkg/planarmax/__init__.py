# -*- coding:utf-8 -*-
"""
@Version: 0.3.0
@License: Unlicense
@Required Python Version: 3.9+
@Required Modules: tomli numpy networkx
"""

import os

from .bench import *
from .errors import *
from .export import *
from .formulations import *
from .heuristics import *
from .logger import *
from .mps import *
from .oracle import *
from .pbsolver import *
from .planarity import *
from .preprocess import *
from .types import *

if os.name == 'posix':
    import signal

    def terminate(signal_number, frame):
        raise KeyboardInterrupt

    signal.signal(signal.SIGTERM, terminate)
