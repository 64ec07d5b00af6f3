"""Capacity per unit cost of on-off keying over single-mode Gaussian channels."""
from .capacity import (CPCResult, Infinite, OOKParams, Scheme, cross_entropy_term,
                       default_threshold, generic_cpc, is_infinite, ook_mutual_information,
                       pnr_cpc, quantum_cpc_bound, threshold_cpc, threshold_probs)
from .channel import (ChannelMatrices, FiducialParams, OutputNoise, channel_from_spec,
                      fiducial_decompose, fiducial_from_noise, gamma_displacement,
                      output_noise, validate_channel)
from .errors import (AbsoluteContinuityViolation, ChannelError, DegenerateThreshold,
                     NotCompletelyPositive, NotPSD, NotSymmetric, SingularX,
                     ZeroNoiseChannel)
from .photostats import PhotonDistribution, cutoff_for, moments, photon_distribution

__version__ = "0.1.0"
