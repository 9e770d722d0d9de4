"""gspforge: genus-2 curves whose mod-ell torsion realizes GSp4(F_ell) tamely.

Exact arithmetic throughout; the compiled kernels only accelerate scans and
breadth-first closures, and everything they report is re-verified exactly.
"""
from .arith import Factorization, bezout, crt_solve, factorize, is_prime, padic_valuation
from .errors import GspForgeError
from .finitefield import FpPoly, PrimeField, deuring_poly, supersingular_param
from .hypercurve import (HyperCurve, WeilData, count_points, frobenius_data,
                         reduce_curve, weil_admissible)
from .igusa import classify_reduction, igusa_invariants, poly_discriminant, reduction_guards
from .sympgroup import closure, gsp_order, is_transvection, multiplier, sp_order
from .synth import (Certificate, certificate_from_json, certificate_to_json,
                    prime_set, synthesize)
from .verify import diagnose_curve, verify_certificate, verify_ell5
from .weilselect import DEFAULT_SEED, search_curve, select_aux

__version__ = "0.1.0"

__all__ = [
    "Factorization", "bezout", "crt_solve", "factorize", "is_prime",
    "padic_valuation", "GspForgeError", "FpPoly", "PrimeField", "deuring_poly",
    "supersingular_param", "HyperCurve", "WeilData", "count_points",
    "frobenius_data", "reduce_curve", "weil_admissible", "classify_reduction",
    "igusa_invariants", "poly_discriminant", "reduction_guards", "closure",
    "gsp_order", "is_transvection", "multiplier", "sp_order", "Certificate",
    "certificate_from_json", "certificate_to_json", "prime_set", "synthesize",
    "diagnose_curve", "verify_certificate", "verify_ell5", "DEFAULT_SEED",
    "search_curve", "select_aux", "__version__",
]
