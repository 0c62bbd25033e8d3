import sys

from modenergy.cli import main

sys.exit(main())
