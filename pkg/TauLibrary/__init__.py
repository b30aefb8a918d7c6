# -*- coding: utf-8 -*-
from TauLibrary.keywords import *
from TauLibrary.keywords.keywordgroup import ignore_on_fail
from TauLibrary.version import VERSION

__version__ = VERSION


class TauLibrary(
    _LoggingKeywords,
    _RunOnFailureKeywords,
    _TauTableKeywords,
    _VerificationKeywords
):
    """TauLibrary computes GL2 and GL3 tau functions exactly and verifies the identities they satisfy.

    Everything is exact: polynomials have rational coefficients, loop-group
    matrices carry truncated Laurent series and no floating point value is
    ever formed. A failing identity is reported with the number of nonzero
    residual terms and the first offending coefficient.

    = Tau tables =

    A tau table is a memoized lattice of tau functions over a finite
    ``window`` of coordinate indices. Open one with `Open Tau Table`; it
    becomes the current table used by `Get Tau`, `Q System Should Hold`,
    `Birkhoff Factorization Should Hold` and `Tau Should Match Fock Oracle`.
    Several tables can be open at once and are selected with
    `Switch Tau Table`, by index or alias, like connections in other
    libraries.

    | ${gl2}= | Open Tau Table | 2 | -4..4 |
    | Open Tau Table | 3 | -3..3 | alias=gl3 |
    | Get Tau | 1 | l=1 |
    | Switch Tau Table | ${gl2} |
    | Q System Should Hold | 3 |

    = Verification suites =

    `Run Verification Suite` runs one named battery of identity checks and
    returns a report; `Verification Suite Should Pass` fails the test when
    any case fails. `List Verification Suites` shows the available names:

    | *Suite*          | *Checks*                                                    |
    | q-system         | GL2 Q-system, quadratic rearrangement, shift consistency    |
    | desnanot-jacobi  | Desnanot-Jacobi identity for Hankel determinants            |
    | zero-curvature-2 | GL2 connection matrices, zero curvature, Baker relations    |
    | birkhoff-2       | GL2 Birkhoff factor from tau functions                      |
    | gl3-four         | GL3 bilinear equations and closed forms                     |
    | gl3-components   | GL3 rational component equations                            |
    | zero-curvature-3 | GL3 elementary connection matrices and lattice paths        |
    | birkhoff-3       | GL3 Birkhoff factor from tau functions                      |
    | fock-cross       | tau functions as fermionic matrix elements, operator checks |
    | correlations     | one-component fermion correlation functions                 |
    | det-identities   | Vandermonde, Heine and Cauchy-type determinants             |

    = Ranges =

    Integer ranges are written ``lo..hi`` and are inclusive. A range with
    ``lo > hi`` is empty; an empty window makes every tau with ``k > 0`` zero.

    = Logging =

    The Robot variable ``${TAU_LOG_LEVEL}`` limits what the library logs:
    ``DEBUG`` (default) logs every memoized tau entry, ``INFO`` only
    summaries, ``WARN`` only problems.
    """

    ROBOT_LIBRARY_SCOPE = 'GLOBAL'
    ROBOT_LIBRARY_VERSION = VERSION

    def __init__(self, run_on_failure='Log Tau Table'):
        """TauLibrary can be imported with an optional failure keyword.

        ``run_on_failure`` names a keyword to run when a TauLibrary keyword
        fails. `Log Tau Table` is the default; ``Nothing`` disables it. See
        `Register Keyword To Run On Failure`.

        Examples:
        | Library | TauLibrary |
        | Library | TauLibrary | run_on_failure=Nothing |
        """
        for base in TauLibrary.__bases__:
            base.__init__(self)
        self.register_keyword_to_run_on_failure(run_on_failure)

    @ignore_on_fail
    def get_keyword_names(self):
        return [
            name for name in dir(self)
            if not name.startswith('_') and callable(getattr(self, name)) and name != 'get_keyword_names'
        ]
