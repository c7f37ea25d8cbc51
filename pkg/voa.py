"""
VOA verification entry point.

Usage:
    ./voa verify --gram lattices/a1_negative.json --suite table4
    ./voa census --gram lattices/d2_negative.json
"""

import sys

from engines.verification.cli import main

if __name__ == '__main__':
    sys.exit(main())
