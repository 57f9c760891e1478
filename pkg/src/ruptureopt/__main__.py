import sys

from ruptureopt.cli import main

sys.exit(main())
