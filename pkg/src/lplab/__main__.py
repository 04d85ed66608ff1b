import sys

from lplab.cli import main

sys.exit(main())
