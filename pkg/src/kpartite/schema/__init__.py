from .asymptotics import SCENARIOS, AsymptoticMean, BranchClassification, ExtensionConstants, LimitLaw
from .branch import BDBranch, PotentialCoeffs, Spectrum
from .mixing import ConductanceReport, MixingBound
from .network import Component, FullState, NetworkSpec, PowerLawRate, Rational, StarState, to_fraction
from .run import ComponentConfig, RateConfig, ResultEnvelope, RunConfig
from .simulation import (
    GeometricSumCheck,
    OccupancyReport,
    OccupancyTriple,
    SimConfig,
    SimReport,
    StarvationEstimate,
)

__all__ = [
    "SCENARIOS",
    "AsymptoticMean",
    "BDBranch",
    "BranchClassification",
    "Component",
    "ComponentConfig",
    "ConductanceReport",
    "ExtensionConstants",
    "FullState",
    "GeometricSumCheck",
    "LimitLaw",
    "MixingBound",
    "NetworkSpec",
    "OccupancyReport",
    "OccupancyTriple",
    "PotentialCoeffs",
    "PowerLawRate",
    "RateConfig",
    "Rational",
    "ResultEnvelope",
    "RunConfig",
    "SimConfig",
    "SimReport",
    "Spectrum",
    "StarState",
    "StarvationEstimate",
    "to_fraction",
]
