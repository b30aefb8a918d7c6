# -*- coding: utf-8 -*-
import sys

from TauLibrary.cli import main

sys.exit(main())
