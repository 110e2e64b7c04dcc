"""Точка входа kpartite.

Использование:
  uv run run.py classify --preset case2bsss
  uv run run.py simulate --config presets/case3.md --reps 20000 --workers 4
  uv run run.py mix --preset case3 --nu 50
"""

import sys

from src.logger import setup_logging

setup_logging()

from src.kpartite.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
