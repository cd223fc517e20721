import sys

from seamrep.cli import main

sys.exit(main())
