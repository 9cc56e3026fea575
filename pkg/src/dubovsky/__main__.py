import sys

from dubovsky.cli import main

sys.exit(main())
