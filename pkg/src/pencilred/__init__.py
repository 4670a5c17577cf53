"""Reduction theory for pencils of integral symmetric matrices.

Library layout:

- forms:     binary forms, discriminants, certified roots, Mahler measure
- pencil:    pairs of symmetric matrices, the unimodular action, f_{A,B}
- covariant: the reduction covariant H_{A,B} and its determinant identity
- reduce:    LLL reduction of pencils, short vectors, Siegel coordinates
- orbits:    L_f arithmetic, pencils from orbit data and curve divisors
- heights:   divisor/point heights, the family filter, height inequalities
- equidist:  seeded sampling harness for covariant statistics
- cli:       command-line adapters
"""

from .errors import (DegenerateForm, DegeneratePencil, DimensionMismatch,
                     DimensionTooLarge, DivisorMeetsWeierstrass, DomainError,
                     EmptyStatistics, HeightExceedsCutoff, InconsistentW,
                     InvalidDatum, NotFound, NotPrimitive, PrecisionExhausted,
                     PreconditionError, RangeError, SingularVariant)
from .forms import (BinaryForm, RootEntry, RootSet, complex_roots,
                    discriminant, height, is_irreducible,
                    leading_coefficient_bound_check, mahler_measure,
                    mahler_measure_with_error, real_root_count,
                    form_from_linear_factors, DEFAULT_PRECISION)
from .pencil import (Pencil, UnimodularMatrix, act, invariant_form,
                     pencil_discriminant)
from .covariant import (DiagonalizingBasis, GramMatrix, covariant_variant,
                        det_identity_check, reduction_covariant,
                        simultaneous_diagonalize)
from .reduce import (IwasawaCoordinates, ReductionResult, SIEGEL_C,
                     cusp_membership, epsilon_small_test, iwasawa_coordinates,
                     lll_reduce, shortest_vector, stabilizer_order)
from .orbits import (AlgebraElement, DivisorSpec, IntegralizeResult,
                     OrbitDatum, datum_from_divisor, element_from_poly,
                     generator, integralize, norm, norm_of_one_formula, one,
                     pencil_from_datum, tau_functional, validate_datum)
from .heights import (BoundCheck, FamilyParams, divisor_height,
                      family_membership, kappa_constant,
                      point_height_bound_check, prop_bound_check,
                      vector_length_bound_check)
from .equidist import (SampleBatch, SampleItem, component_histogram,
                       density_trend, sample_pencils, small_vector_frequency)

__version__ = "0.1.0"
