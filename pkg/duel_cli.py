#!/usr/bin/env python3
"""
Stochastic Duel CLI
Thin wrapper so the solver can be run from a checkout: python duel_cli.py case-study
"""

import sys

from stochastic_duel.main import main

if __name__ == "__main__":
    sys.exit(main())
