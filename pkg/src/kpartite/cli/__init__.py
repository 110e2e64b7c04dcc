from .commands import COMMANDS, cmd_classify, cmd_law, cmd_mean, cmd_mix, cmd_simulate, cmd_starve
from .config import dump_run_config, load_run_config, resolve_path
from .main import build_parser, main

__all__ = [
    "COMMANDS",
    "build_parser",
    "cmd_classify",
    "cmd_law",
    "cmd_mean",
    "cmd_mix",
    "cmd_simulate",
    "cmd_starve",
    "dump_run_config",
    "load_run_config",
    "main",
    "resolve_path",
]
