#!/usr/bin/env python3
"""Run the lpdpl command line (train, eval, classify, sweep, inspect, dictsize)."""

import sys
from pathlib import Path

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.cli import main


if __name__ == "__main__":
    sys.exit(main())
