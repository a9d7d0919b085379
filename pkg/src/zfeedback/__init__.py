"""Error-free feedback coding over the adversarial Z-channel."""

from .core import CodeParams, ConfigError, ChannelContractError, Phase
from .encoder import Encoder, select_params
from .decoder import Decoder, decode
from .channel import run_session, simulate, verify_exhaustive

__all__ = [
    "CodeParams", "ConfigError", "ChannelContractError", "Phase",
    "Encoder", "select_params", "Decoder", "decode",
    "run_session", "simulate", "verify_exhaustive",
]
