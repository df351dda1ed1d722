"""
Numerical verification of the kernel, multiplier and growth estimates
"""
from .base import BoundCheck, Sample, fit_region
from .envelopes import EnvelopeRegion, EnvelopeSpec, Regime, Target, kernel_spec
from .growth import GrowthCheck, norm_growth_experiment
from .kernel_checks import GtEnvelopeCheck, KernelBoundsCheck, check_Gt_envelope, check_kernel_bounds
from .lemma_checks import Lemma51Check, MultiplierLqCheck, check_lemma51, check_multiplier_Lq
from .registry import CHECK_REGISTRY, get_check

__all__ = [
    "BoundCheck",
    "Sample",
    "fit_region",
    "EnvelopeRegion",
    "EnvelopeSpec",
    "Regime",
    "Target",
    "kernel_spec",
    "GrowthCheck",
    "norm_growth_experiment",
    "GtEnvelopeCheck",
    "KernelBoundsCheck",
    "check_Gt_envelope",
    "check_kernel_bounds",
    "Lemma51Check",
    "MultiplierLqCheck",
    "check_lemma51",
    "check_multiplier_Lq",
    "CHECK_REGISTRY",
    "get_check",
]
