import sys

from genuscount.app.cli import main

sys.exit(main())
