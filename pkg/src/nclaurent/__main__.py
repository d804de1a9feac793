import sys

from nclaurent.cli import main

sys.exit(main())
