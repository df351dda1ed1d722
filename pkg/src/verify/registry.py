"""
Check registry for the verify subcommand
"""
from typing import Dict, Type

from ..exceptions import DomainError
from .base import BoundCheck
from .growth import GrowthCheck
from .kernel_checks import GtEnvelopeCheck, KernelBoundsCheck
from .lemma_checks import Lemma51Check, MultiplierLqCheck

# Registry of all available checks
CHECK_REGISTRY: Dict[str, Type[BoundCheck]] = {
    "kernel": KernelBoundsCheck,
    "gt": GtEnvelopeCheck,
    "lemma51": Lemma51Check,
    "growth": GrowthCheck,
    "lq": MultiplierLqCheck,
}


def get_check(name: str) -> Type[BoundCheck]:
    if name not in CHECK_REGISTRY:
        raise DomainError(f"unknown check {name!r}; choose from {', '.join(CHECK_REGISTRY)}")
    return CHECK_REGISTRY[name]
