import sys

from zerodec.cli import main

sys.exit(main())
