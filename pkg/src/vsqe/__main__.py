import sys

from vsqe.cli import main

sys.exit(main())
