import sys

from fmetric import cli

sys.exit(cli.main())
