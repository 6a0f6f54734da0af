import sys

from src.presentation.cli.main import main

sys.exit(main())
