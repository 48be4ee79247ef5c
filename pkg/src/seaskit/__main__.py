import sys

from seaskit.cli import main

sys.exit(main())
