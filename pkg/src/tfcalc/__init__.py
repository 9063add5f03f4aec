"""Multilinear time-frequency calculus on periodic lattices.

STFT, cross-Wigner transforms, Weyl and localization operators, weighted
modulation-space norms, exact admissibility checks for the continuity
theorems, and a verification harness.
"""

from ._accel import backend_name
from .grid import (Grid, GridMismatchError, PhaseFn, Signal, gaussian, hermite1, inner,
                   make_grid, norm, random_test_signal)
from .tf_transforms import (SignalVector, WindowVector, involution, modulate, stft,
                            stft_tensor, tensor_product, translate, wigner, wigner_multi)
from .operators import (Kernel, KernelSizeError, LocalizationSpec, Symbol,
                        localization_apply, localization_kernel, localization_weak,
                        weyl_apply, weyl_apply_multi, weyl_symbol_of_localization, weyl_weak)
from .modspaces import (lp_weighted_norm, mixed_norm, modulation_norm, modulation_norm_multi,
                        phase_modulation_norm, symbol_convolve)
from .admissibility import (check_convolution_thm, check_localization_thm, check_weyl_bound_thm,
                            check_wigner_thm, explain)

__version__ = "0.1.0"
