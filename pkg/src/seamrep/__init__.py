"""Exact computations in Temperley-Lieb and boundary seam algebras."""

from seamrep.qscalar import (
    GENERIC,
    DenominatorVanishes,
    GenericScalar,
    LaurentPoly,
    QNumberVanishes,
    RootScalar,
    UnityOrder,
    qfact,
    qnum,
    root_backend,
    specialize,
)

__all__ = [
    "GENERIC",
    "DenominatorVanishes",
    "GenericScalar",
    "LaurentPoly",
    "QNumberVanishes",
    "RootScalar",
    "UnityOrder",
    "qfact",
    "qnum",
    "root_backend",
    "specialize",
]

__version__ = "0.1.0"
