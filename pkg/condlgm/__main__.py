import sys

from condlgm.cli._main import main


sys.exit(main())
