"""Statistics of the cube configuration E_n."""
from .delta import (DeltaTable, GammaSpectrum, check_increment_bound, check_LO_gap, delta,
                    gamma_spectrum)
from .singular import (SingularityReport, singular_exact, singular_mc,
                       two_close_rows_count)
from .threshold import ThresholdReport, bounds_report, threshold_count

__all__ = ["DeltaTable", "GammaSpectrum", "check_increment_bound", "check_LO_gap", "delta",
           "gamma_spectrum", "SingularityReport", "singular_exact", "singular_mc",
           "two_close_rows_count", "ThresholdReport", "bounds_report", "threshold_count"]
