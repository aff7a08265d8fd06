"""
Pulse library
Envelopes, pulse sets per link, standard pulse arrangements, rms area and mixing angles.
"""

from .builders import (
    COMPOSITE_PHASES_5,
    composite_sequence,
    interaction_time,
    make_composite,
    make_counterdiabatic,
    make_ddp_pair,
    make_fractional_pair,
    make_pap_train,
    make_stirap_pair,
)
from .pulse_set import (
    LINK_P,
    LINK_S,
    CompositeSequence,
    Link,
    MixingAngles,
    PulseSet,
    mixing_angle_rate,
    mixing_angles,
    normalize_link,
    rms_area,
)
from .shapes import SHAPE_KINDS, PulseShape, eval_shape, eval_shape_derivative

__all__ = [
    "COMPOSITE_PHASES_5",
    "LINK_P",
    "LINK_S",
    "SHAPE_KINDS",
    "CompositeSequence",
    "Link",
    "MixingAngles",
    "PulseSet",
    "PulseShape",
    "composite_sequence",
    "eval_shape",
    "eval_shape_derivative",
    "interaction_time",
    "make_composite",
    "make_counterdiabatic",
    "make_ddp_pair",
    "make_fractional_pair",
    "make_pap_train",
    "make_stirap_pair",
    "mixing_angle_rate",
    "mixing_angles",
    "normalize_link",
    "rms_area",
]
