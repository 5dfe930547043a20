"""Module entry point: ``python -m kreinspec``."""
import sys

from .cli import main

sys.exit(main())
