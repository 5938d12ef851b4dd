# -*- coding:utf-8 -*-
__all__ = ['SCRIPT_PATH', 'SCRIPT_DIR', 'MODULE_DIR', 'CONFIG', 'load_config', 'init_config']

import sys
from pathlib import Path
from typing import Any, Dict, Union

import tomli

SCRIPT_PATH = Path(sys.argv[0])
SCRIPT_DIR = SCRIPT_PATH.parent
MODULE_DIR = Path(__file__).parent

REQUIRED_KEYS = ['Solver', 'Kuratowski', 'FacialWalks', 'Schnyder', 'LeftRight', 'Heuristic', 'Oracle', 'Bench']


def load_config(path: Union[str, Path, None] = None) -> Dict[str, Any]:
    """
    读取toml配置 缺失的表以空dict补齐

    Args:
        path (str | Path, optional): 配置文件路径. Defaults to <script dir>/config/config.toml.

    Returns:
        dict[str, Any]: 配置
    """

    if path is None:
        path = SCRIPT_DIR / "config/config.toml"

    try:
        with Path(path).open("rb") as file:
            config = tomli.load(file)

    except FileNotFoundError:
        with (MODULE_DIR / "config_example/minimal.toml").open("rb") as file:
            config = tomli.load(file)

    for required_key in REQUIRED_KEYS:
        if not (required_key in config and isinstance(config[required_key], dict)):
            config[required_key] = {}

    return config


def init_config() -> Path:
    """
    将配置样例复制到<script dir>/config

    Returns:
        Path: 配置目录
    """

    import shutil

    config_dir = SCRIPT_DIR / "config"
    config_dir.mkdir(parents=True, exist_ok=True)
    if not (config_dir / "config.toml").exists():
        shutil.copyfile(str(MODULE_DIR / "config_example/minimal.toml"), str(config_dir / "config.toml"))
    shutil.copyfile(str(MODULE_DIR / "config_example/full.toml"), str(config_dir / "config_full_example.toml"))

    return config_dir


CONFIG = load_config()
