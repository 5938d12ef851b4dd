# -*- coding:utf-8 -*-
import sys

from planarmax.cli import main

if __name__ == '__main__':
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        pass
