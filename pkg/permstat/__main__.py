"""Allow ``python -m permstat``."""

import sys

from permstat.cli import main

sys.exit(main())
