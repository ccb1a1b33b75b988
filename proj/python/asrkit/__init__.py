# Copyright 2026  ASRKit Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#  http://www.apache.org/licenses/LICENSE-2.0
#
# THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
# KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
# WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
# MERCHANTABLITY OR NON-INFRINGEMENT.
# See the Apache 2 License for the specific language governing permissions and
# limitations under the License.

"""Python bindings for the speech recognition core.

The heavy lifting (DSP frontend, acoustic model, CTC, Kneser-Ney LM,
scoring) lives in the C++ extension; this package re-exports it.
"""

from asrkit._core import (  # noqa: F401
    AcousticModel,
    Alphabet,
    ConfigError,
    DataError,
    NGramModel,
    beam_search_decode,
    cer,
    clipped_relu,
    conv_output_shape,
    ctc_grad,
    ctc_loss,
    decode_pcm,
    encode_pcm,
    greedy_decode,
    highpass,
    normalize_text,
    paired_t_test,
    resample,
    segment,
    spectrogram,
    wer,
)

__all__ = [
    "AcousticModel",
    "Alphabet",
    "ConfigError",
    "DataError",
    "NGramModel",
    "beam_search_decode",
    "cer",
    "clipped_relu",
    "conv_output_shape",
    "ctc_grad",
    "ctc_loss",
    "decode_pcm",
    "encode_pcm",
    "greedy_decode",
    "highpass",
    "normalize_text",
    "paired_t_test",
    "resample",
    "segment",
    "spectrogram",
    "wer",
]

__version__ = "0.1.0"
