import sys

from .flowcli.cli import main

sys.exit(main())
