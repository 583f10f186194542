import sys
from ResidueForge.cli import main

sys.exit(main())
