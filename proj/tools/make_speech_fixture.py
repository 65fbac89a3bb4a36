#!/usr/bin/env python3
"""Regenerate tests/fixtures/speech.wav: a deterministic synthetic voiced-speech signal.

Harmonic series on a slowly wandering pitch, shaped by three formant
resonances, gated by a syllable-rate envelope, plus a little breath noise.
Mono, 16 kHz, 2 s, PCM16.
"""
import argparse
import wave

import numpy as np

SAMPLE_RATE = 16000
DURATION_S = 2.0
FORMANTS = [(600.0, 150.0, 1.0), (1200.0, 200.0, 0.6), (2600.0, 300.0, 0.2)]


def synthesize(seed: int = 7) -> np.ndarray:
    n = int(SAMPLE_RATE * DURATION_S)
    t = np.arange(n) / SAMPLE_RATE
    rng = np.random.default_rng(seed)

    f0 = 110.0 + 25.0 * np.sin(2 * np.pi * 0.6 * t)
    phase = 2 * np.pi * np.cumsum(f0) / SAMPLE_RATE
    voiced = np.zeros(n)
    for h in range(1, 40):
        fh = h * f0
        envelope = sum(g * np.exp(-(((fh - f) / bw) ** 2)) for f, bw, g in FORMANTS) + 0.01
        voiced += envelope / h * np.sin(h * phase)

    syllables = (0.5 * (1 - np.cos(2 * np.pi * 2.5 * t))) ** 2
    signal = voiced * syllables + 0.002 * rng.standard_normal(n)
    signal = signal / np.abs(signal).max() * 0.8
    return np.clip(np.round(signal * 32768), -32768, 32767).astype("<i2")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("out", nargs="?", default="tests/fixtures/speech.wav")
    args = parser.parse_args()
    codes = synthesize()
    with wave.open(args.out, "wb") as w:
        w.setnchannels(1)
        w.setsampwidth(2)
        w.setframerate(SAMPLE_RATE)
        w.writeframes(codes.tobytes())


if __name__ == "__main__":
    main()
