"""Certified analytic computations: linear forms, approximation constants,
heights, the Baker-Wüstholz threshold and root isolation for thresholds."""

from .bw import bw_threshold
from .heights import alpha3_conjugate_bound, minpoly_and_heights
from .jz import jz_params, theta_bounds, vartheta_bounds
from .linform import eval_linear_form, lambda_nonzero_probe, pq_bound_check
from .polys import IntPolynomial, NoRealRoot, isolate_largest_root
from .thresholds import threshold_manifest

__all__ = ["IntPolynomial", "NoRealRoot", "alpha3_conjugate_bound", "bw_threshold",
           "eval_linear_form", "isolate_largest_root", "jz_params", "lambda_nonzero_probe",
           "minpoly_and_heights", "pq_bound_check", "theta_bounds", "threshold_manifest",
           "vartheta_bounds"]
