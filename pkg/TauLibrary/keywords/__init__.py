# -*- coding: utf-8 -*-

from ._logging import _LoggingKeywords
from ._runonfailure import _RunOnFailureKeywords
from ._tautable import _TauTableKeywords
from ._verification import _VerificationKeywords

__all__ = ["_LoggingKeywords",
           "_RunOnFailureKeywords",
           "_TauTableKeywords",
           "_VerificationKeywords"]
