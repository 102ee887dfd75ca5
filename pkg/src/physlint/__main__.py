import sys

from physlint.cli import main

sys.exit(main())
