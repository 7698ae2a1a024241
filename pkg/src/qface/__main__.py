import sys

from qface.cli import main

sys.exit(main())
