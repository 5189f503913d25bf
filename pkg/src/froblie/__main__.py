"""Allow ``python -m froblie``."""
import sys

from .cli import main

sys.exit(main())
