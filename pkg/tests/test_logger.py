# -*- coding:utf-8 -*-
import logging.handlers

from planarmax.config import SCRIPT_PATH
from planarmax.logger import _Logger


def _close(logger):
    for handler in logger.handlers:
        handler.close()


def test_file_handler_under_log_dir(tmp_path):
    logger = _Logger('planarmax_test_ok', log_dir=tmp_path / 'log')
    try:
        kinds = [type(handler) for handler in logger.handlers]
        assert logging.handlers.TimedRotatingFileHandler in kinds
        assert (tmp_path / 'log' / f'{SCRIPT_PATH.stem}.log').exists()
    finally:
        _close(logger)


def test_unwritable_log_dir_warns_on_stdout(tmp_path, capsys):
    blocker = tmp_path / 'log'
    blocker.write_text('')

    logger = _Logger('planarmax_test_blocked', log_dir=blocker)
    try:
        assert len(logger.handlers) == 1
        out = capsys.readouterr().out
        assert "[WARNING] Failed to create log file" in out

        logger.info("still logging")
        assert "still logging" in capsys.readouterr().out
    finally:
        _close(logger)
