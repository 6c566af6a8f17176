"""Dense linear algebra over labeled multipartite systems."""

from .layout import MAX_TOTAL_DIM, SystemLayout
from .objects import ChannelSpec, InstrumentSpec, IsometrySpec, StateSpec, layout
from .ops import (apply, apply_instrument, compose, merge_labels, partial_trace, permute,
                  purify, relabel, stinespring, tensor, tensor_channels)
from .standard import (STANDARD_KINDS, amplitude_damping, dephasing, depolarizing, erasure,
                       identity_channel, named_channel, standard_object, weyl, weyl_operators)
from .io import (channel_from_json, channel_to_json, load_channel, load_state,
                 state_from_json, state_to_json)
from .validation import check_channel, check_groups, check_state

__all__ = [
    "MAX_TOTAL_DIM", "SystemLayout", "StateSpec", "ChannelSpec", "IsometrySpec",
    "InstrumentSpec", "layout", "apply", "apply_instrument", "compose", "merge_labels",
    "partial_trace", "permute", "purify", "relabel", "stinespring", "tensor",
    "tensor_channels", "STANDARD_KINDS", "standard_object", "weyl", "weyl_operators",
    "depolarizing", "dephasing", "erasure", "amplitude_damping", "identity_channel",
    "named_channel", "state_from_json", "state_to_json", "channel_from_json",
    "channel_to_json", "load_state", "load_channel", "check_state", "check_channel",
    "check_groups",
]
