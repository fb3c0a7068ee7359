import sys

from qcoeff.cli import main

sys.exit(main())
