import sys

from pilot_clustering.harness.cli import main

sys.exit(main())
