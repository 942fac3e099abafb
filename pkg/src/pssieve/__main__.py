"""
Point d'entrée python -m pssieve
"""

import sys

from pssieve.cli import main

sys.exit(main())
