from embq.zeroone.estimate import estimate_mu, estimate_series, wilson_interval
from embq.zeroone.extension import extension_property_holds
from embq.zeroone.models import MuEstimate, SampleConfig
from embq.zeroone.sampling import sample_random_structure, sample_stream
from embq.zeroone.theta import agreement_rate, agreement_sentence, asympt_theta

__all__ = [
    "MuEstimate",
    "SampleConfig",
    "agreement_rate",
    "agreement_sentence",
    "asympt_theta",
    "estimate_mu",
    "estimate_series",
    "extension_property_holds",
    "sample_random_structure",
    "sample_stream",
    "wilson_interval",
]
