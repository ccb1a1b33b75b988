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

"""Smoke tests for the python bindings; depth lives in the C++ suites."""

import math

import numpy as np
import pytest

import asrkit


def tone(freq, seconds=1.0, rate=16000, amp=0.5):
    t = np.arange(int(seconds * rate)) / rate
    return amp * np.sin(2 * math.pi * freq * t)


def test_clipped_relu():
    assert asrkit.clipped_relu(25.0) == 20.0
    assert asrkit.clipped_relu(-3.0) == 0.0
    assert asrkit.clipped_relu(5.0) == 5.0


def test_wav_roundtrip_and_dsp():
    samples = tone(440.0)
    wav = asrkit.encode_pcm(samples, 16000)
    decoded, rate = asrkit.decode_pcm(wav)
    assert rate == 16000
    assert decoded.shape == samples.shape
    assert np.max(np.abs(decoded - samples)) < 1e-4  # 16-bit quantization

    filtered = asrkit.highpass(np.full(16000, 0.5), 16000, 150.0)
    assert np.max(np.abs(filtered[1600:])) < 1e-3

    up = asrkit.resample(tone(1000.0, 0.5, 8000), 8000, 16000)
    assert up.shape[0] == 16000 // 2

    spans, rejections = asrkit.segment(tone(440.0, 5.0), 16000)
    assert spans == [(0.0, 5.0)]
    assert rejections == []


def test_spectrogram_shape_and_peak():
    feats = asrkit.spectrogram(tone(1000.0), 16000)
    assert feats.shape == (99, 161)
    assert int(np.argmax(feats[10])) == 20

    normalized = asrkit.spectrogram(tone(1000.0), 16000, normalize=True)
    assert abs(float(normalized.mean())) < 1e-6


def test_alphabet_and_ctc():
    alphabet = asrkit.Alphabet(["a", "b", " "])
    assert len(alphabet) == 3
    assert alphabet.blank_index == 3
    labels = alphabet.encode("ab a")
    assert alphabet.decode(labels) == "ab a"

    # One frame, target "a" with P(a) = 0.6.
    logprobs = np.log(np.array([[0.6, 0.3, 0.05, 0.05]]))
    loss, feasible = asrkit.ctc_loss(logprobs, [0])
    assert feasible
    assert abs(loss + math.log(0.6)) < 1e-12

    grad = asrkit.ctc_grad(logprobs, [0])
    assert grad.shape == logprobs.shape
    assert abs(float(grad.sum(axis=1)[0])) < 1e-9

    frames = np.log(
        np.array(
            [
                [0.9, 0.04, 0.03, 0.03],
                [0.03, 0.03, 0.04, 0.9],
                [0.04, 0.9, 0.03, 0.03],
            ]
        )
    )
    assert asrkit.greedy_decode(frames, alphabet) == "ab"


def test_ngram_lm_and_decode():
    lm = asrkit.NGramModel.train(["a b", "a c", "b a"], order=2)
    assert lm.order == 2
    p = 10.0 ** lm.log_prob(["a"], "b")
    assert abs(p - 1429.0 / 5400.0) < 1e-9

    arpa = lm.to_arpa()
    back = asrkit.NGramModel.from_arpa(arpa)
    assert abs(back.score("a b") - lm.score("a b")) < 1e-9

    alphabet = asrkit.Alphabet(["a", "b", "c", " "])
    logprobs = np.log(np.full((4, 5), 0.01))
    logprobs[0, 0] = math.log(0.9)
    logprobs[1, 4] = math.log(0.9)
    logprobs[2, 1] = math.log(0.9)
    logprobs[3, 4] = math.log(0.9)
    hyps = asrkit.beam_search_decode(logprobs, alphabet, lm, beam_width=16, alpha=0.5, beta=0.5)
    assert hyps[0][0] == "ab"
    assert all(hyps[i][1] >= hyps[i + 1][1] for i in range(len(hyps) - 1))


def test_eval_metrics():
    report = asrkit.wer("a b c", "a x c")
    assert report["substitutions"] == 1
    assert abs(report["wer"] - 1.0 / 3.0) < 1e-12

    assert asrkit.cer("ab", "b")["deletions"] == 1

    t, p, df = asrkit.paired_t_test([0.30, 0.25, 0.40, 0.20], [0.35, 0.30, 0.38, 0.31])
    assert df == 3
    assert abs(t + 1.7873696499288343) < 1e-9
    assert abs(p - 0.17184168611479167) < 1e-7

    with pytest.raises(ValueError):
        asrkit.wer("", "a")


def test_normalize_text():
    alphabet = asrkit.Alphabet(["ا", "أ", "ب", " "])
    text, rejection = asrkit.normalize_text("اَب", alphabet)
    assert rejection is None
    assert text == "اب"  # fatha stripped

    text, rejection = asrkit.normalize_text("اx", alphabet)
    assert text is None
    assert "U+78" in rejection
