# -*- coding:utf-8 -*-
__all__ = ['LOG']

import logging
import logging.handlers
import sys
from pathlib import Path
from typing import Optional

from .config import SCRIPT_DIR, SCRIPT_PATH

logging._srcfile = None
logging.logThreads = False
logging.logProcesses = False
logging.logMultiprocessing = False
logging.raiseExceptions = False


class _Logger(logging.Logger):
    """
    自定义的日志记录类

    Args:
        name (str): 日志记录器名
        log_dir (Path, optional): 日志文件目录. Defaults to SCRIPT_DIR / 'log'.
    """

    def __init__(self, name: str, log_dir: Optional[Path] = None) -> None:
        super().__init__(name)

        formatter = logging.Formatter("<{asctime}> [{levelname}] {message}", datefmt='%Y-%m-%d %H:%M:%S', style='{')

        stream_handler = logging.StreamHandler(sys.stdout)
        stream_handler.setLevel(logging.DEBUG)
        stream_handler.setFormatter(formatter)
        self.addHandler(stream_handler)

        if log_dir is None:
            log_dir = SCRIPT_DIR / 'log'

        try:
            log_dir.mkdir(0o755, exist_ok=True)

            log_filepath = log_dir / f'{SCRIPT_PATH.stem}.log'
            file_handler = logging.handlers.TimedRotatingFileHandler(
                str(log_filepath), when='MIDNIGHT', backupCount=5, encoding='utf-8'
            )
        except OSError as err:
            self.warning(f"Failed to create log file under {log_dir}. reason:{err}")
            return

        file_handler.setLevel(logging.INFO)
        file_handler.setFormatter(formatter)
        self.addHandler(file_handler)


LOG = _Logger(__name__)
